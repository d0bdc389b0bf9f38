#pragma once

// Minimum constant adulticide level that keeps R0 below one.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dengue/errors.hpp"
#include "dengue/model.hpp"
#include "dengue/reproduction.hpp"

namespace dengue {

struct ThresholdResult {
    double c_star = 0.0;
    double r0_at_c_star = 0.0;
    double c_lo = 0.0;  // R0(c_lo) > 1
    double c_hi = 0.0;  // R0(c_hi) < 1
    int iterations = 0;
    double collapse_bound = 0.0;
};

// R0 < 1 already without control (or no mosquitoes survive at c = 0).
struct NoControlNeeded {
    std::optional<double> r0_at_zero;  // empty when the mosquitoes collapse at c = 0
};

// R0 >= 1 on the whole admissible interval [0, c_cap].
struct Unattainable {
    double c_cap = 0.0;
    double r0_at_cap = 0.0;
};

using ControlOutcome = std::variant<ThresholdResult, NoControlNeeded, Unattainable>;

inline constexpr double kDefaultThresholdTol = 1e-6;
inline constexpr double kThresholdR0Tol = 1e-6;

namespace detail {

// R0(c), extended by continuity with 0 where the mosquitoes collapse.
inline double r0_or_zero(const ModelParams& p, double c, R0Route route)
{
    const ControlLevel cl(c);
    if (!(mosquito_viability(p, cl) > 0.0)) return 0.0;
    return r0(p, cl, route);
}

}  // namespace detail

// Bisection on g(c) = R0(c) - 1 over [0, c_cap]. c_cap defaults to the
// collapse bound, beyond which the disease-free equilibrium with mosquitoes
// no longer exists. Stops once the bracket is no wider than tol and
// |g(c_star)| < 1e-6.
inline ControlOutcome min_control(const ModelParams& p, double tol = kDefaultThresholdTol,
                                  std::optional<double> c_cap = std::nullopt,
                                  R0Route route = R0Route::Spectral)
{
    if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("min_control: tolerance must be finite and > 0");
    const double collapse = collapse_control(p);
    if (c_cap && (!(*c_cap >= 0.0) || !std::isfinite(*c_cap)))
        throw DomainError("min_control: control cap must be finite and >= 0");

    if (collapse <= 0.0) return NoControlNeeded{};
    const double g0 = r0(p, ControlLevel(0.0), route) - 1.0;
    if (g0 < 0.0) return NoControlNeeded{g0 + 1.0};

    double hi = c_cap ? std::min(*c_cap, collapse) : collapse;
    const double g_hi = detail::r0_or_zero(p, hi, route) - 1.0;
    if (g_hi >= 0.0) return Unattainable{hi, g_hi + 1.0};

    ThresholdResult res;
    res.collapse_bound = collapse;
    double lo = 0.0;
    double mid = 0.5 * (lo + hi);
    double g_mid = detail::r0_or_zero(p, mid, route) - 1.0;
    for (int it = 0; it < 200; ++it) {
        if (hi - lo <= tol && std::abs(g_mid) < kThresholdR0Tol) break;
        if (g_mid > 0.0)
            lo = mid;
        else
            hi = mid;
        mid = 0.5 * (lo + hi);
        g_mid = detail::r0_or_zero(p, mid, route) - 1.0;
        res.iterations = it + 1;
    }
    res.c_star = mid;
    res.r0_at_c_star = g_mid + 1.0;
    res.c_lo = lo;
    res.c_hi = hi;
    return res;
}

struct ProfilePoint {
    double c = 0.0;
    std::optional<double> r0;  // empty: mosquito collapse at this c
};

inline std::vector<ProfilePoint> r0_profile(const ModelParams& p, const std::vector<double>& grid,
                                            R0Route route = R0Route::Spectral)
{
    std::vector<ProfilePoint> out;
    out.reserve(grid.size());
    for (double c : grid) {
        const ControlLevel cl(c);
        ProfilePoint pt{c, std::nullopt};
        if (mosquito_viability(p, cl) > 0.0) pt.r0 = r0(p, cl, route);
        out.push_back(pt);
    }
    return out;
}

}  // namespace dengue
