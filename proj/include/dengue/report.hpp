#pragma once

// Aggregated analysis of a scenario and its text / JSON renderings, plus
// the control sweep table.

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dengue/equilibria.hpp"
#include "dengue/format.hpp"
#include "dengue/reproduction.hpp"
#include "dengue/scenario.hpp"
#include "dengue/stability.hpp"
#include "dengue/threshold.hpp"

namespace dengue {

struct EquilibriumEntry {
    std::string label;
    Equilibrium equilibrium;
    StabilityReport stability;
};

struct AnalysisReport {
    std::string scenario;
    double c = 0.0;
    double viability = 0.0;
    std::optional<double> offspring_ratio;
    bool mosquito_collapse = false;
    std::optional<double> r0_spectral;
    std::optional<double> r0_closed_form;
    std::optional<R0Factors> factors;
    std::vector<EquilibriumEntry> equilibria;
    std::optional<double> endemic_closed_form_residual;
    std::string endemic_note;  // why there is no endemic equilibrium, if so
    ControlOutcome threshold;
};

inline AnalysisReport analyze(const Scenario& sc, double threshold_tol = kDefaultThresholdTol)
{
    const ModelParams& p = sc.params;
    const ControlLevel c = sc.control;
    AnalysisReport rep;
    rep.scenario = sc.name;
    rep.c = c.value();
    rep.viability = mosquito_viability(p, c);
    if (p.mu_b() > 0.0) rep.offspring_ratio = basic_offspring_number(p, c);
    rep.mosquito_collapse = !(rep.viability > 0.0);

    auto add = [&](std::string label, const Equilibrium& e) {
        rep.equilibria.push_back({std::move(label), e, classify(p, c, e)});
    };
    add("trivial", trivial_equilibrium(p, c));

    if (rep.mosquito_collapse) {
        rep.endemic_note = "mosquito population collapses; only the trivial equilibrium exists";
    } else {
        rep.r0_spectral = r0_spectral(p, c);
        rep.r0_closed_form = r0_closed_form(p, c);
        rep.factors = r0_factors(p, c);
        const Equilibrium b = brdfe(p, c);
        add("brdfe", b);
        if (!(b.residual_norm < kResidualWarning)) add("brdfe_refined", refine(p, c, b.state));
        try {
            const Equilibrium guess = endemic_closed_form(p, c);
            rep.endemic_closed_form_residual = guess.residual_norm;
            add("endemic", endemic_equilibrium(p, c));
        } catch (const RegimeError& e) {
            rep.endemic_note = e.what();
        } catch (const RefinementError& e) {
            rep.endemic_note = std::string("endemic refinement failed: ") + e.what();
        }
    }
    rep.threshold = min_control(p, threshold_tol);
    return rep;
}

namespace detail {

inline std::string state_text(const State7& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < kDim; ++i) {
        if (i) out += ", ";
        out += std::string(kCompartmentNames[i]) + "=" + format_double(s[i]);
    }
    return out + ")";
}

}  // namespace detail

inline std::string threshold_text(const ControlOutcome& outcome)
{
    std::ostringstream os;
    if (const auto* r = std::get_if<ThresholdResult>(&outcome)) {
        os << "c* = " << format_fixed(r->c_star, 6) << '\n';
        os << "bracket = [" << format_double(r->c_lo) << ", " << format_double(r->c_hi) << "]\n";
        os << "bracket width = " << format_double(r->c_hi - r->c_lo) << '\n';
        os << "R0(c*) = " << format_double(r->r0_at_c_star) << '\n';
        os << "iterations = " << r->iterations << '\n';
        os << "collapse bound = " << format_double(r->collapse_bound) << '\n';
    } else if (const auto* n = std::get_if<NoControlNeeded>(&outcome)) {
        os << "no control needed";
        if (n->r0_at_zero)
            os << " (R0 at c = 0 is " << format_double(*n->r0_at_zero) << ")";
        else
            os << " (mosquito population collapses without control)";
        os << '\n';
    } else {
        const auto& u = std::get<Unattainable>(outcome);
        os << "unattainable: R0 >= 1 up to c = " << format_double(u.c_cap) << " (R0 there "
           << format_double(u.r0_at_cap) << ")\n";
    }
    return os.str();
}

inline std::string report_text(const AnalysisReport& r)
{
    std::ostringstream os;
    os << "scenario = " << r.scenario << '\n';
    os << "c = " << format_double(r.c) << '\n';
    os << "mosquito viability M = " << format_double(r.viability) << '\n';
    os << "basic offspring ratio = " << (r.offspring_ratio ? format_double(*r.offspring_ratio) : "undefined") << '\n';
    if (r.mosquito_collapse) os << "mosquito collapse: yes\n";
    if (r.r0_spectral) {
        os << "R0 (spectral) = " << format_double(*r.r0_spectral) << '\n';
        os << "R0 (closed form) = " << format_double(*r.r0_closed_form) << '\n';
        os << "R_hm = " << format_double(r.factors->R_hm) << '\n';
        os << "R_mh = " << format_double(r.factors->R_mh) << '\n';
    }
    for (const auto& e : r.equilibria) {
        os << "equilibrium " << e.label << ":\n";
        os << "  state = " << detail::state_text(e.equilibrium.state) << '\n';
        os << "  residual = " << format_double(e.equilibrium.residual_norm) << '\n';
        os << "  refined = " << (e.equilibrium.refined ? "true" : "false") << '\n';
        os << "  stability = " << to_string(e.stability.classification) << '\n';
        os << "  spectral abscissa = " << format_double(e.stability.spectral_abscissa) << '\n';
        if (e.stability.residual_warning) os << "  warning: not a fixed point to 1e-9\n";
    }
    if (r.endemic_closed_form_residual)
        os << "endemic closed-form residual = " << format_double(*r.endemic_closed_form_residual) << '\n';
    if (!r.endemic_note.empty()) os << "endemic equilibrium: none (" << r.endemic_note << ")\n";
    os << "threshold:\n";
    std::istringstream th(threshold_text(r.threshold));
    for (std::string line; std::getline(th, line);) os << "  " << line << '\n';
    return os.str();
}

inline nlohmann::json report_json(const AnalysisReport& r)
{
    using nlohmann::json;
    json j;
    j["scenario"] = r.scenario;
    j["c"] = r.c;
    j["mosquito_viability"] = r.viability;
    j["basic_offspring_ratio"] = r.offspring_ratio ? json(*r.offspring_ratio) : json(nullptr);
    j["mosquito_collapse"] = r.mosquito_collapse;
    if (r.r0_spectral) {
        j["r0"] = {{"spectral", *r.r0_spectral}, {"closed_form", *r.r0_closed_form}};
        j["r0_factors"] = {{"R_hm", r.factors->R_hm}, {"R_mh", r.factors->R_mh}};
    } else {
        j["r0"] = nullptr;
        j["r0_factors"] = nullptr;
    }
    j["equilibria"] = json::array();
    for (const auto& e : r.equilibria) {
        json state;
        for (std::size_t i = 0; i < kDim; ++i) state[kCompartmentNames[i]] = e.equilibrium.state[i];
        json eig = json::array();
        for (const auto& z : e.stability.eigenvalues) eig.push_back({z.real(), z.imag()});
        json stab = {{"classification", to_string(e.stability.classification)},
                     {"spectral_abscissa", e.stability.spectral_abscissa},
                     {"eigenvalues", eig},
                     {"residual_warning", e.stability.residual_warning}};
        if (e.stability.r0_at_point) stab["r0_at_point"] = *e.stability.r0_at_point;
        j["equilibria"].push_back({{"label", e.label},
                                   {"kind", to_string(e.equilibrium.kind)},
                                   {"state", state},
                                   {"residual", e.equilibrium.residual_norm},
                                   {"refined", e.equilibrium.refined},
                                   {"stability", stab}});
    }
    j["endemic_closed_form_residual"] =
        r.endemic_closed_form_residual ? json(*r.endemic_closed_form_residual) : json(nullptr);
    j["endemic_note"] = r.endemic_note;
    if (const auto* t = std::get_if<ThresholdResult>(&r.threshold)) {
        j["threshold"] = {{"status", "found"},        {"c_star", t->c_star}, {"r0_at_c_star", t->r0_at_c_star},
                          {"c_lo", t->c_lo},          {"c_hi", t->c_hi},     {"iterations", t->iterations},
                          {"collapse_bound", t->collapse_bound}};
    } else if (const auto* n = std::get_if<NoControlNeeded>(&r.threshold)) {
        j["threshold"] = {{"status", "no_control_needed"},
                          {"r0_at_zero", n->r0_at_zero ? json(*n->r0_at_zero) : json(nullptr)}};
    } else {
        const auto& u = std::get<Unattainable>(r.threshold);
        j["threshold"] = {{"status", "unattainable"}, {"c_cap", u.c_cap}, {"r0_at_cap", u.r0_at_cap}};
    }
    return j;
}

struct SweepRow {
    double c = 0.0;
    std::optional<double> r0;  // empty on mosquito collapse
    std::string stability;     // classification of the BRDFE, or "collapse"
};

// Grid c_min, c_min + step, ..., up to c_max (inclusive within 1e-9 step).
inline std::vector<double> control_grid(double c_min, double c_max, double step)
{
    if (!(c_min >= 0.0) || !std::isfinite(c_max) || c_max < c_min)
        throw DomainError("control grid needs 0 <= c_min <= c_max");
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("control grid step must be > 0");
    std::vector<double> g;
    for (std::size_t i = 0;; ++i) {
        const double c = c_min + static_cast<double>(i) * step;
        if (c > c_max + 1e-9 * step) break;
        g.push_back(std::min(c, c_max));
    }
    return g;
}

inline std::vector<SweepRow> sweep(const ModelParams& p, const std::vector<double>& grid)
{
    std::vector<SweepRow> rows;
    for (const auto& pt : r0_profile(p, grid)) {
        SweepRow row{pt.c, pt.r0, "collapse"};
        if (pt.r0) {
            const ControlLevel c(pt.c);
            row.stability = to_string(classify(p, c, brdfe(p, c)).classification);
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "c,R0,stability\n";
    for (const auto& r : rows)
        out += format_double(r.c) + ',' + (r.r0 ? format_double(*r.r0) : std::string()) + ',' + r.stability + '\n';
    return out;
}

}  // namespace dengue
