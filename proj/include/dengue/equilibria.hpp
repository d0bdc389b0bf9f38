#pragma once

// Fixed points of the reduced model: trivial (no mosquitoes), biologically
// realistic disease-free (BRDFE) and endemic, plus Newton refinement.

#include <algorithm>
#include <cmath>
#include <string>

#include "dengue/errors.hpp"
#include "dengue/jacobian.hpp"
#include "dengue/matrix.hpp"
#include "dengue/model.hpp"
#include "dengue/reproduction.hpp"

namespace dengue {

enum class EquilibriumKind { Trivial, BRDFE, Endemic };

inline const char* to_string(EquilibriumKind k)
{
    switch (k) {
    case EquilibriumKind::Trivial: return "trivial";
    case EquilibriumKind::BRDFE: return "brdfe";
    case EquilibriumKind::Endemic: return "endemic";
    }
    return "?";
}

struct Equilibrium {
    EquilibriumKind kind = EquilibriumKind::Trivial;
    State7 state;
    double residual_norm = 0.0;  // max_i |rhs_i| / scale_i at state
    bool refined = false;
    int iterations = 0;          // Newton iterations, 0 for closed forms
};

// max_i |rhs_i(x)| / scale_i with the integrator's component scales.
inline double residual(const ModelParams& p, ControlLevel c, const State7& x)
{
    const State7 f = rhs(p, c, x);
    const auto sc = component_scales(p);
    double r = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) r = std::max(r, std::abs(f[i]) / sc[i]);
    return r;
}

inline Equilibrium trivial_equilibrium(const ModelParams& p, ControlLevel c = ControlLevel{})
{
    Equilibrium e;
    e.kind = EquilibriumKind::Trivial;
    e.state[kSh] = p.N_h();
    e.residual_norm = residual(p, c, e.state);
    return e;
}

// BRDFE = (N_h, 0, 0, k N_h M / (eta_A mu_b), k N_h M / (mu_b mu_m), 0, 0).
//
// This is the published closed form. It is an exact fixed point for c = 0
// and K = k N_h. For c > 0 the exact disease-free adult level is
// K M / (mu_b (mu_m + c)); the residual of the returned state records the
// difference, and refine() recovers the exact root.
inline Equilibrium brdfe(const ModelParams& p, ControlLevel c)
{
    const double M = mosquito_viability(p, c);
    if (!(M > 0.0))
        throw RegimeError("mosquito population collapses; only trivial equilibrium exists");
    Equilibrium e;
    e.kind = EquilibriumKind::BRDFE;
    const double kN = p.k() * p.N_h();
    e.state[kSh] = p.N_h();
    e.state[kAm] = kN * M / (p.eta_A() * p.mu_b());
    e.state[kSm] = kN * M / (p.mu_b() * p.mu_m());
    e.residual_norm = residual(p, c, e.state);
    return e;
}

// Endemic equilibrium from the published closed form, unrefined. The
// residual is measured, not assumed: the expression is exact at c = 0 but
// one of its c-dependent terms is dimensionally inconsistent, and away from
// c = 0 it is only an approximation. Use endemic_equilibrium() for the root.
inline Equilibrium endemic_closed_form(const ModelParams& p, ControlLevel control)
{
    const double M = mosquito_viability(p, control);
    if (!(M > 0.0)) throw RegimeError("no endemic equilibrium in Omega: mosquito population collapses");
    if (!(r0_closed_form(p, control) > 1.0)) throw RegimeError("no endemic equilibrium in Omega: R0 <= 1");

    const double c = control.value();
    const double N = p.N_h(), B = p.B(), k = p.k();
    const double mu_h = p.mu_h(), nu_h = p.nu_h(), eta_h = p.eta_h();
    const double mu_m = p.mu_m(), eta_m = p.eta_m(), mu_b = p.mu_b();
    const double b_hm = p.beta_hm(), b_mh = p.beta_mh();

    const double xi =
        N * mu_h *
        (-B * B * k * b_hm * b_mh * nu_h * eta_m * M +
         mu_b * mu_m * mu_m * (eta_m + mu_m) * (mu_h + nu_h) * (mu_h + eta_h) +
         c * c * mu_b * (eta_h + mu_h) * (mu_h + nu_h) * (c + eta_m + 3.0 * mu_m) +
         c * mu_b * mu_m * (mu_h + nu_h) * (mu_h * (3.0 * mu_m + 2.0) + eta_h * (2.0 * eta_m + 3.0 * mu_m)));
    const double chi = B * b_hm * (eta_h + mu_h) *
                       (-mu_b * mu_h * (c + mu_m) * (c + eta_m + mu_m) - B * k * b_mh * eta_m * M) *
                       (mu_h + nu_h);

    const double I_h = xi / chi;
    const double denom = c * N + B * I_h * b_hm + N * mu_m;

    Equilibrium e;
    e.kind = EquilibriumKind::Endemic;
    e.state[kIh] = I_h;
    e.state[kSh] = N - (mu_h + nu_h) * (mu_h + eta_h) / (mu_h * nu_h) * I_h;
    e.state[kEh] = (mu_h + eta_h) / nu_h * I_h;
    e.state[kAm] = M / (p.eta_A() * mu_b) * k * N;
    e.state[kSm] = k * N * N * M / (mu_b * denom);
    e.state[kIm] = B * I_h * k * N * b_hm * eta_m * M / (mu_b * (c + mu_m) * (c + eta_m + mu_m) * denom);
    e.state[kEm] = (mu_m + c) / eta_m * e.state[kIm];
    require_finite(e.state, "endemic_closed_form");
    e.residual_norm = residual(p, control, e.state);
    return e;
}

inline constexpr double kRefineTolerance = 1e-10;
inline constexpr int kRefineMaxIterations = 100;
inline constexpr int kRefineMaxHalvings = 30;

namespace detail {

// Kind of a fixed point judged from which populations are present.
inline EquilibriumKind infer_kind(const ModelParams& p, const State7& x)
{
    const auto sc = component_scales(p);
    auto zero = [&](std::size_t i) { return std::abs(x[i]) <= 1e-9 * sc[i]; };
    const bool disease_free = zero(kEh) && zero(kIh) && zero(kEm) && zero(kIm);
    if (!disease_free) return EquilibriumKind::Endemic;
    return (zero(kAm) && zero(kSm)) ? EquilibriumKind::Trivial : EquilibriumKind::BRDFE;
}

}  // namespace detail

// Damped Newton iteration on rhs = 0 started from guess. The step is halved
// up to 30 times until the scaled residual decreases; the iteration stops
// once the residual is below 1e-10, after one polishing step.
inline Equilibrium refine(const ModelParams& p, ControlLevel c, const State7& guess)
{
    require_finite(guess, "refine");
    State7 x = guess;
    double res = residual(p, c, x);
    int it = 0;
    bool polished = false;
    while (true) {
        if (res < kRefineTolerance && (polished || res == 0.0)) break;
        if (it >= kRefineMaxIterations)
            throw RefinementError(res, "refine: no convergence in " + std::to_string(kRefineMaxIterations) +
                                           " iterations, last residual " + std::to_string(res));
        ++it;
        const State7 f = rhs(p, c, x);
        Vector<kDim> minus_f;
        for (std::size_t i = 0; i < kDim; ++i) minus_f[i] = -f[i];
        Vector<kDim> dx;
        try {
            dx = solve(jacobian(p, c, x), minus_f);
        } catch (const NumericalError&) {
            throw RefinementError(res, "refine: singular Jacobian");
        }
        double lambda = 1.0;
        bool improved = false;
        State7 trial;
        double trial_res = res;
        for (int halving = 0; halving <= kRefineMaxHalvings; ++halving) {
            for (std::size_t i = 0; i < kDim; ++i) trial[i] = x[i] + lambda * dx[i];
            bool finite = true;
            for (std::size_t i = 0; i < kDim; ++i) finite = finite && std::isfinite(trial[i]);
            if (finite) {
                trial_res = residual(p, c, trial);
                if (trial_res < res) {
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!improved) {
            if (res < kRefineTolerance) break;  // already at rounding level
            throw RefinementError(res, "refine: damped step failed to reduce residual " + std::to_string(res));
        }
        if (res < kRefineTolerance) polished = true;
        x = trial;
        res = trial_res;
    }
    Equilibrium e;
    e.kind = detail::infer_kind(p, x);
    e.state = x;
    e.residual_norm = res;
    e.refined = true;
    e.iterations = it;
    return e;
}

// The endemic equilibrium: the closed form refined by Newton. Throws
// RegimeError when the hypotheses fail or the refined root is not an
// interior point of Omega.
inline Equilibrium endemic_equilibrium(const ModelParams& p, ControlLevel c)
{
    const Equilibrium guess = endemic_closed_form(p, c);
    Equilibrium e = refine(p, c, guess.state);
    bool interior = e.kind == EquilibriumKind::Endemic && in_omega(p, e.state);
    for (std::size_t i = 0; i < kDim; ++i) interior = interior && e.state[i] > 0.0;
    if (!interior) throw RegimeError("no endemic equilibrium in Omega: refinement left the interior");
    e.kind = EquilibriumKind::Endemic;
    return e;
}

}  // namespace dengue
