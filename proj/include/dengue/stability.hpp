#pragma once

// Local stability of equilibria from the eigenvalues of the 7x7 Jacobian of
// the reduced system. The eliminated R_h direction carries the eigenvalue
// -mu_h and does not change any classification, so it is not computed.

#include <algorithm>
#include <array>
#include <complex>
#include <optional>

#include "dengue/eigenvalues.hpp"
#include "dengue/equilibria.hpp"
#include "dengue/jacobian.hpp"
#include "dengue/reproduction.hpp"

namespace dengue {

enum class StabilityClass { AsymptoticallyStable, Unstable, Marginal };

inline const char* to_string(StabilityClass s)
{
    switch (s) {
    case StabilityClass::AsymptoticallyStable: return "asymptotically_stable";
    case StabilityClass::Unstable: return "unstable";
    case StabilityClass::Marginal: return "marginal";
    }
    return "?";
}

struct StabilityReport {
    std::array<std::complex<double>, kDim> eigenvalues{};
    double spectral_abscissa = 0.0;
    double tol_margin = 0.0;
    StabilityClass classification = StabilityClass::Marginal;
    std::optional<double> r0_at_point;
    // Set when the classified point is not a fixed point to 1e-9.
    bool residual_warning = false;
};

// Largest rate in the model; sets the scale of the Marginal band.
inline double rate_scale(const ModelParams& p, ControlLevel c)
{
    return std::max({p.B(), p.mu_h(), p.eta_h(), p.mu_m() + c.value(), p.mu_b(), p.mu_A(), p.eta_A(),
                     p.eta_m(), p.nu_h()});
}

inline constexpr double kMarginRelative = 1e-9;
inline constexpr double kResidualWarning = 1e-9;

inline StabilityReport classify(const ModelParams& p, ControlLevel c, const Equilibrium& eq)
{
    StabilityReport rep;
    rep.eigenvalues = eigenvalues(jacobian(p, c, eq.state));
    rep.spectral_abscissa = spectral_abscissa(rep.eigenvalues);
    rep.tol_margin = kMarginRelative * rate_scale(p, c);
    if (rep.spectral_abscissa < -rep.tol_margin)
        rep.classification = StabilityClass::AsymptoticallyStable;
    else if (rep.spectral_abscissa > rep.tol_margin)
        rep.classification = StabilityClass::Unstable;
    else
        rep.classification = StabilityClass::Marginal;
    if (eq.kind == EquilibriumKind::BRDFE) rep.r0_at_point = r0_spectral(p, c);
    rep.residual_warning = !(eq.residual_norm < kResidualWarning);
    return rep;
}

}  // namespace dengue
