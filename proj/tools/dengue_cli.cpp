// dengue: simulate and analyze the host-vector Dengue model with adulticide
// control.
//
//   dengue simulate  --builtin capeverde2009 --control 0.2 --out run --svg
//   dengue analyze   --scenario my.scn [--json]
//   dengue threshold --builtin capeverde2009 --tol 1e-6
//   dengue sweep     --builtin capeverde2009 --c-min 0 --c-max 0.3 --c-step 0.05
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 model-regime error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dengue/dengue.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kRegime = 4 };

struct CommonOptions {
    std::string scenario_path;
    std::string builtin;
    std::string out_dir;
    std::optional<double> control;
    std::optional<double> t_end;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    auto* scn = cmd->add_option("--scenario", o.scenario_path, "Scenario file (key = value lines)");
    auto* bi = cmd->add_option("--builtin", o.builtin, "Built-in scenario")->check(CLI::IsMember({"capeverde2009"}));
    scn->excludes(bi);
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--control", o.control, "Override the control level c (1/day)");
    cmd->add_option("--t-end", o.t_end, "Override the simulation horizon (days)");
}

dengue::Scenario resolve(const CommonOptions& o)
{
    dengue::Scenario sc;
    if (!o.scenario_path.empty())
        sc = dengue::load_scenario(o.scenario_path);
    else if (!o.builtin.empty())
        sc = *dengue::builtin_scenario(o.builtin);
    else
        throw dengue::ConfigError(0, "one of --scenario or --builtin is required");
    if (o.control) {
        try {
            sc.control = dengue::ControlLevel(*o.control);
        } catch (const dengue::DomainError& e) {
            throw dengue::ConfigError(0, std::string("--control: ") + e.what());
        }
    }
    if (o.t_end) sc.solver.t_end = *o.t_end;
    if (!o.out_dir.empty()) sc.output_dir = o.out_dir;
    dengue::validate_scenario(sc);
    return sc;
}

std::filesystem::path output_path(const dengue::Scenario& sc, const std::string& file)
{
    std::filesystem::path dir(sc.output_dir);
    std::filesystem::create_directories(dir);
    return dir / file;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Host-vector Dengue model with insecticide control"};
    app.require_subcommand(1);

    CommonOptions sim_opt, ana_opt, thr_opt, swp_opt;
    bool svg = false, json = false;
    double tol = dengue::kDefaultThresholdTol;
    double c_min = 0.0, c_max = 0.3, c_step = 0.05;
    std::optional<double> c_cap;

    auto* sim = app.add_subcommand("simulate", "Integrate the model and write the trajectory as CSV");
    add_common(sim, sim_opt);
    sim->add_flag("--svg", svg, "Also write a two-panel SVG plot");

    auto* ana = app.add_subcommand("analyze", "Equilibria, R0, stability and control threshold");
    add_common(ana, ana_opt);
    ana->add_flag("--json", json, "Print the machine-readable report instead of text");
    ana->add_option("--tol", tol, "Threshold bisection tolerance (1/day)");

    auto* thr = app.add_subcommand("threshold", "Minimum constant control with R0 < 1");
    add_common(thr, thr_opt);
    thr->add_option("--tol", tol, "Bisection tolerance (1/day)");
    thr->add_option("--c-cap", c_cap, "Largest admissible control level (default: collapse bound)");

    auto* swp = app.add_subcommand("sweep", "R0 and BRDFE stability over a grid of control levels");
    add_common(swp, swp_opt);
    swp->add_option("--c-min", c_min, "First control level");
    swp->add_option("--c-max", c_max, "Last control level");
    swp->add_option("--c-step", c_step, "Grid spacing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*sim) {
            const auto sc = resolve(sim_opt);
            const auto traj = dengue::integrate(sc.params, sc.control, sc.initial, sc.solver);
            const std::string csv = dengue::trajectory_to_csv(traj);
            if (sc.output_dir.empty()) {
                std::cout << csv;
            } else {
                dengue::write_file_atomic(output_path(sc, "trajectory.csv"), csv);
            }
            if (svg) {
                const std::string title = sc.name + ", c = " + dengue::format_double(sc.control.value());
                const auto path = sc.output_dir.empty() ? std::filesystem::path("trajectory.svg")
                                                        : output_path(sc, "trajectory.svg");
                dengue::write_file_atomic(path, dengue::trajectory_to_svg(traj, title));
            }
        } else if (*ana) {
            const auto sc = resolve(ana_opt);
            const auto rep = dengue::analyze(sc, tol);
            const std::string text = dengue::report_text(rep);
            const std::string js = dengue::report_json(rep).dump(2) + "\n";
            std::cout << (json ? js : text);
            if (!sc.output_dir.empty()) {
                dengue::write_file_atomic(output_path(sc, "report.txt"), text);
                dengue::write_file_atomic(output_path(sc, "report.json"), js);
            }
        } else if (*thr) {
            const auto sc = resolve(thr_opt);
            const auto outcome = dengue::min_control(sc.params, tol, c_cap);
            std::cout << dengue::threshold_text(outcome);
            if (std::holds_alternative<dengue::Unattainable>(outcome)) return kRegime;
        } else if (*swp) {
            const auto sc = resolve(swp_opt);
            std::vector<double> grid;
            try {
                grid = dengue::control_grid(c_min, c_max, c_step);
            } catch (const dengue::DomainError& e) {
                throw dengue::ConfigError(0, e.what());
            }
            const std::string csv = dengue::sweep_to_csv(dengue::sweep(sc.params, grid));
            if (sc.output_dir.empty())
                std::cout << csv;
            else
                dengue::write_file_atomic(output_path(sc, "sweep.csv"), csv);
        }
    } catch (const dengue::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const dengue::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const dengue::StepSizeError& e) {
        std::cerr << "numerical failure at t = " << dengue::format_double(e.time()) << ": " << e.what() << '\n';
        return kNumerical;
    } catch (const dengue::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const dengue::RegimeError& e) {
        std::cerr << "model regime: " << e.what() << '\n';
        return kRegime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}
