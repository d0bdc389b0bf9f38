#pragma once

// Scenario files: flat "key = value" lines, '#' starts a comment.
//
//   base = capeverde2009     # optional, must come first
//   mu_h = 1/(71*365)        # arithmetic on numbers and earlier keys
//   K    = k*N_h
//   c    = 0.2
//
// Parameter keys use the model symbols (N_h, B, beta_mh, ...). Initial
// conditions are S_h0 ... I_m0 and R_h0; solver keys are t0, t_end, rtol,
// atol, h_init, h_max, output_step. With human_total_rule = true (default),
// S_h0 is derived as N_h - E_h0 - I_h0 - R_h0.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dengue/errors.hpp"
#include "dengue/format.hpp"
#include "dengue/integrator.hpp"
#include "dengue/model.hpp"

namespace dengue {

struct Scenario {
    std::string name = "custom";
    ModelParams params = capeverde2009_params();
    ControlLevel control;
    State7 initial;
    double R_h0 = 0.0;
    bool human_total_rule = true;
    SolverConfig solver;
    std::string output_dir;
};

// Outbreak of 2009 in Cape Verde, no control, 100-day horizon.
inline Scenario capeverde2009_scenario()
{
    Scenario s;
    s.name = "capeverde2009";
    s.params = capeverde2009_params();
    s.initial = capeverde2009_initial(s.params);
    return s;
}

namespace detail {

inline const std::vector<std::string>& param_keys()
{
    static const std::vector<std::string> keys = {"N_h", "B", "beta_mh", "beta_hm", "mu_h", "eta_h",
                                                  "mu_m", "mu_b", "mu_A", "eta_A", "eta_m", "nu_h",
                                                  "m", "k", "K"};
    return keys;
}

inline const std::vector<std::string>& numeric_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k = param_keys();
        for (const char* extra : {"c", "S_h0", "E_h0", "I_h0", "R_h0", "A_m0", "S_m0", "E_m0", "I_m0", "t0",
                                  "t_end", "rtol", "atol", "h_init", "h_max", "output_step"})
            k.emplace_back(extra);
        return k;
    }();
    return keys;
}

// Recursive-descent evaluator for + - * / and parentheses over numbers and
// previously assigned keys.
class ExprParser {
public:
    ExprParser(std::string_view text, const std::map<std::string, double>& vars, std::size_t line)
        : s_(text), vars_(vars), line_(line) {}

    double parse()
    {
        const double v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(line_, "bad value: " + what); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char ch)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr()
    {
        double v = term();
        while (true) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    double term()
    {
        double v = factor();
        while (true) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else
                return v;
        }
    }

    double factor()
    {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        skip_ws();
        if (pos_ >= s_.size()) fail("expression ends early");
        const char ch = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            const auto it = vars_.find(name);
            if (it == vars_.end()) fail("'" + name + "' is not defined before use");
            return it->second;
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size()) {
            const char d = s_[pos_];
            const bool exp_sign = (d == '+' || d == '-') && pos_ > start &&
                                  (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E');
            if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' || d == 'E' || exp_sign)
                ++pos_;
            else
                break;
        }
        const auto v = parse_double(s_.substr(start, pos_ - start));
        if (!v) fail("cannot read number '" + std::string(s_.substr(start, pos_ - start)) + "'");
        return *v;
    }

    std::string_view s_;
    const std::map<std::string, double>& vars_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::map<std::string, double> scenario_values(const Scenario& s)
{
    std::map<std::string, double> v;
    const auto& p = s.params.values();
    v["N_h"] = p.N_h; v["B"] = p.B; v["beta_mh"] = p.beta_mh; v["beta_hm"] = p.beta_hm;
    v["mu_h"] = p.mu_h; v["eta_h"] = p.eta_h; v["mu_m"] = p.mu_m; v["mu_b"] = p.mu_b;
    v["mu_A"] = p.mu_A; v["eta_A"] = p.eta_A; v["eta_m"] = p.eta_m; v["nu_h"] = p.nu_h;
    v["m"] = p.m; v["k"] = p.k; v["K"] = p.K;
    v["c"] = s.control.value();
    v["S_h0"] = s.initial.S_h(); v["E_h0"] = s.initial.E_h(); v["I_h0"] = s.initial.I_h();
    v["R_h0"] = s.R_h0; v["A_m0"] = s.initial.A_m(); v["S_m0"] = s.initial.S_m();
    v["E_m0"] = s.initial.E_m(); v["I_m0"] = s.initial.I_m();
    v["t0"] = s.solver.t0; v["t_end"] = s.solver.t_end; v["rtol"] = s.solver.rtol;
    v["atol"] = s.solver.atol; v["h_init"] = s.solver.h_init; v["h_max"] = s.solver.h_max;
    v["output_step"] = s.solver.output_step;
    return v;
}

}  // namespace detail

inline std::optional<Scenario> builtin_scenario(std::string_view name)
{
    if (name == "capeverde2009") return capeverde2009_scenario();
    return std::nullopt;
}

// Checks the admissible-region and human-total rules; throws ConfigError
// naming the violated bound.
inline void validate_scenario(const Scenario& s)
{
    const auto& p = s.params;
    if (const char* v = omega_violation(p, s.initial))
        throw ConfigError(0, std::string("initial condition outside Omega: violates ") + v);
    if (s.R_h0 < 0.0) throw ConfigError(0, "initial condition outside Omega: violates R_h0 >= 0");
    const double total = s.initial.S_h() + s.initial.E_h() + s.initial.I_h() + s.R_h0;
    if (s.human_total_rule && std::abs(total - p.N_h()) > 1e-9 * p.N_h())
        throw ConfigError(0, "initial humans S_h0 + E_h0 + I_h0 + R_h0 must equal N_h");
    try {
        s.solver.validate();
    } catch (const DomainError& e) {
        throw ConfigError(0, e.what());
    }
}

inline Scenario parse_scenario(std::string_view text)
{
    Scenario sc;
    sc.name = "custom";
    std::map<std::string, double> vars;
    std::map<std::string, std::size_t> assigned_at;
    std::optional<bool> total_rule;
    bool have_base = false;
    const auto& known = detail::numeric_keys();
    const std::set<std::string> known_set(known.begin(), known.end());

    std::size_t line_no = 0;
    std::size_t start = 0;
    bool seen_any = false;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "missing key");
        if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
        if (assigned_at.count(key))
            throw ConfigError(line_no, "'" + key + "' already set on line " + std::to_string(assigned_at[key]));
        assigned_at[key] = line_no;

        if (key == "base") {
            if (seen_any) throw ConfigError(line_no, "'base' must be the first setting");
            const auto b = builtin_scenario(value);
            if (!b) throw ConfigError(line_no, "unknown base scenario '" + value + "'");
            sc = *b;
            vars = detail::scenario_values(sc);
            have_base = true;
        } else if (key == "name") {
            sc.name = value;
        } else if (key == "output_dir") {
            sc.output_dir = value;
        } else if (key == "human_total_rule") {
            if (value == "true" || value == "on" || value == "1")
                total_rule = true;
            else if (value == "false" || value == "off" || value == "0")
                total_rule = false;
            else
                throw ConfigError(line_no, "human_total_rule must be true or false");
        } else if (known_set.count(key)) {
            vars[key] = detail::ExprParser(value, vars, line_no).parse();
            if (!std::isfinite(vars[key])) throw ConfigError(line_no, "'" + key + "' is not finite");
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
        seen_any = true;
    }

    auto line_of = [&](const std::string& key) -> std::size_t {
        const auto it = assigned_at.find(key);
        return it == assigned_at.end() ? 0 : it->second;
    };

    // Parameters.
    if (!vars.count("K") && vars.count("k") && vars.count("N_h")) vars["K"] = vars["k"] * vars["N_h"];
    for (const auto& key : detail::param_keys())
        if (!vars.count(key)) throw ConfigError(0, "missing parameter '" + key + "'");
    ParamValues pv;
    pv.N_h = vars["N_h"]; pv.B = vars["B"]; pv.beta_mh = vars["beta_mh"]; pv.beta_hm = vars["beta_hm"];
    pv.mu_h = vars["mu_h"]; pv.eta_h = vars["eta_h"]; pv.mu_m = vars["mu_m"]; pv.mu_b = vars["mu_b"];
    pv.mu_A = vars["mu_A"]; pv.eta_A = vars["eta_A"]; pv.eta_m = vars["eta_m"]; pv.nu_h = vars["nu_h"];
    pv.m = vars["m"]; pv.k = vars["k"]; pv.K = vars["K"];
    try {
        sc.params = ModelParams(pv);
    } catch (const DomainError& e) {
        std::string what = e.what();
        std::size_t at = 0;
        for (const auto& key : detail::param_keys())
            if (what.find("parameter " + key + " ") != std::string::npos) at = line_of(key);
        throw ConfigError(at, what);
    }

    // Control.
    if (vars.count("c")) {
        try {
            sc.control = ControlLevel(vars["c"]);
        } catch (const DomainError& e) {
            throw ConfigError(line_of("c"), e.what());
        }
    }

    // Initial condition. Unset mosquito levels follow the outbreak rule
    // A_m0 = k N_h, S_m0 = m N_h unless a base already supplied them.
    auto get = [&](const char* key, double fallback) {
        const auto it = vars.find(key);
        return it == vars.end() ? fallback : it->second;
    };
    if (!have_base) {
        // Re-derive defaults that depend on parameters set in this file.
        if (!assigned_at.count("A_m0")) vars["A_m0"] = pv.k * pv.N_h;
        if (!assigned_at.count("S_m0")) vars["S_m0"] = pv.m * pv.N_h;
    }
    sc.human_total_rule = total_rule.value_or(true);
    State7 x;
    x[kEh] = get("E_h0", 0.0);
    x[kIh] = get("I_h0", 0.0);
    sc.R_h0 = get("R_h0", 0.0);
    x[kAm] = get("A_m0", pv.k * pv.N_h);
    x[kSm] = get("S_m0", pv.m * pv.N_h);
    x[kEm] = get("E_m0", 0.0);
    x[kIm] = get("I_m0", 0.0);
    const double derived_Sh = pv.N_h - x[kEh] - x[kIh] - sc.R_h0;
    if (sc.human_total_rule) {
        if (assigned_at.count("S_h0") && std::abs(vars["S_h0"] - derived_Sh) > 1e-9 * pv.N_h)
            throw ConfigError(line_of("S_h0"), "S_h0 contradicts human_total_rule (expected N_h - E_h0 - I_h0 - R_h0)");
        x[kSh] = derived_Sh;
    } else {
        if (!vars.count("S_h0")) throw ConfigError(0, "S_h0 is required when human_total_rule = false");
        x[kSh] = vars["S_h0"];
    }
    sc.initial = x;

    // Solver.
    sc.solver.t0 = get("t0", sc.solver.t0);
    sc.solver.t_end = get("t_end", sc.solver.t_end);
    sc.solver.rtol = get("rtol", sc.solver.rtol);
    sc.solver.atol = get("atol", sc.solver.atol);
    sc.solver.h_init = get("h_init", sc.solver.h_init);
    sc.solver.h_max = get("h_max", sc.solver.h_max);
    sc.solver.output_step = get("output_step", sc.solver.output_step);

    validate_scenario(sc);
    return sc;
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace dengue
