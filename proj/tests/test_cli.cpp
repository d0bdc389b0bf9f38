#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dengue/csv.hpp"
#include "dengue/format.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args)
{
    const std::string cmd = std::string(DENGUE_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path d = fs::temp_directory_path() / ("dengue_cli_" + name);
    fs::remove_all(d);
    return d;
}

fs::path write_scenario(const std::string& name, const std::string& text)
{
    const fs::path p = fs::temp_directory_path() / ("dengue_cli_" + name + ".scn");
    std::ofstream(p) << text;
    return p;
}

double peak_ih(const dengue::Trajectory& tr)
{
    double m = 0.0;
    for (const auto& s : tr.states) m = std::max(m, s.reduced[dengue::kIh]);
    return m;
}

// Value after "key = " in a text report.
double field(const std::string& text, const std::string& key)
{
    const auto pos = text.find(key + " = ");
    if (pos == std::string::npos) return std::nan("");
    const auto start = pos + key.size() + 3;
    return *dengue::parse_double(text.substr(start, text.find('\n', start) - start));
}

}  // namespace

TEST(Cli, SimulateControlLowersPeak)
{
    const auto a = run("simulate --builtin capeverde2009");
    const auto b = run("simulate --builtin capeverde2009 --control 0.2");
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    const auto ta = dengue::trajectory_from_csv(a.out);
    const auto tb = dengue::trajectory_from_csv(b.out);
    EXPECT_EQ(ta.times.size(), 201u);
    EXPECT_EQ(ta.times.back(), 100.0);
    EXPECT_GT(peak_ih(ta), 2.0 * peak_ih(tb));
    EXPECT_LT(tb.states.back().reduced[dengue::kIm], 1.0);
}

TEST(Cli, SimulateWritesFiles)
{
    const fs::path dir = scratch_dir("sim");
    const auto r = run("simulate --builtin capeverde2009 --t-end 10 --svg --out " + dir.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    const auto tr = dengue::trajectory_from_csv(read_file(dir / "trajectory.csv"));
    EXPECT_EQ(tr.times.size(), 21u);
    EXPECT_EQ(read_file(dir / "trajectory.svg").rfind("<svg", 0), 0u);
    fs::remove_all(dir);
}

TEST(Cli, SimulateZeroHorizon)
{
    const auto r = run("simulate --builtin capeverde2009 --t-end 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(dengue::trajectory_from_csv(r.out).times.size(), 1u);
}

TEST(Cli, AnalyzeCapeVerde)
{
    const auto r = run("analyze --builtin capeverde2009");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(field(r.out, "R0 (spectral)"), 2.396, 1e-3);
    EXPECT_NEAR(field(r.out, "R0 (closed form)"), 2.396, 1e-3);
    EXPECT_NE(r.out.find("c* = 0.156961"), std::string::npos);
    EXPECT_NE(r.out.find("equilibrium endemic:"), std::string::npos);
}

TEST(Cli, AnalyzeWithControl)
{
    const fs::path dir = scratch_dir("ana");
    const auto r = run("analyze --builtin capeverde2009 --control 0.2 --out " + dir.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_LT(field(r.out, "R0 (spectral)"), 1.0);
    EXPECT_NE(r.out.find("endemic equilibrium: none"), std::string::npos);
    EXPECT_EQ(read_file(dir / "report.txt"), r.out);
    EXPECT_NE(read_file(dir / "report.json").find("\"brdfe_refined\""), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, AnalyzeJson)
{
    const auto r = run("analyze --builtin capeverde2009 --json");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.front(), '{');
    EXPECT_NE(r.out.find("\"spectral\""), std::string::npos);
}

TEST(Cli, AnalyzeMosquitoCollapse)
{
    const auto p = write_scenario("collapse", "base = capeverde2009\nmu_b = 0\n");
    const auto r = run("analyze --scenario " + p.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("mosquito collapse: yes"), std::string::npos);
    EXPECT_NE(r.out.find("no control needed"), std::string::npos);
    fs::remove(p);
}

TEST(Cli, Threshold)
{
    const auto r = run("threshold --builtin capeverde2009");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("c* = 0.156961\n", 0), 0u);

    const auto coarse = run("threshold --builtin capeverde2009 --tol 1e-2");
    ASSERT_EQ(coarse.code, 0);
    EXPECT_LE(field(coarse.out, "bracket width"), 1e-2);
    EXPECT_NEAR(field(coarse.out, "R0(c*)"), 1.0, 1e-6);
}

TEST(Cli, ThresholdNoControlNeeded)
{
    const auto p = write_scenario("nocontrol", "base = capeverde2009\nbeta_mh = 0\n");
    const auto r = run("threshold --scenario " + p.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("no control needed", 0), 0u);
    fs::remove(p);
}

TEST(Cli, ThresholdUnattainable)
{
    const auto r = run("threshold --builtin capeverde2009 --c-cap 0.1");
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(r.out.rfind("unattainable", 0), 0u);
}

TEST(Cli, SweepMatchesAnalyze)
{
    const auto s = run("sweep --builtin capeverde2009");
    ASSERT_EQ(s.code, 0);
    std::istringstream lines(s.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, "c,R0,stability");
    const auto a = run("analyze --builtin capeverde2009");
    const double r0_sweep = *dengue::parse_double(first.substr(2, first.find(',', 2) - 2));
    EXPECT_EQ(r0_sweep, field(a.out, "R0 (spectral)"));
    std::size_t rows = 0;
    for (std::string l; std::getline(lines, l);) ++rows;
    EXPECT_EQ(rows, 6u);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("simulate").code, 2);
    EXPECT_EQ(run("simulate --builtin nowhere").code, 2);
    EXPECT_EQ(run("simulate --scenario /nonexistent/file.scn").code, 2);
    EXPECT_EQ(run("simulate --builtin capeverde2009 --control -1").code, 2);
    EXPECT_EQ(run("threshold --builtin capeverde2009 --tol 0").code, 2);
    EXPECT_EQ(run("sweep --builtin capeverde2009 --c-step 0").code, 2);

    const auto bad = write_scenario("bad", "base = capeverde2009\nbogus = 3\n");
    EXPECT_EQ(run("analyze --scenario " + bad.string()).code, 2);
    fs::remove(bad);

    const auto stiff = write_scenario("underflow", "base = capeverde2009\nrtol = 1e-300\natol = 1e-300\n");
    EXPECT_EQ(run("simulate --scenario " + stiff.string()).code, 3);
    fs::remove(stiff);

    EXPECT_EQ(run("--help").code, 0);
}
