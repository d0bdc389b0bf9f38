#pragma once

// Basic reproduction number at the biologically realistic disease-free
// equilibrium, by the next-generation matrix and by closed form.
//
// The infected subsystem is ordered (E_h, I_h, E_m, I_m). Linearization uses
// S_h = N_h and S_m = k N_h M / (mu_b mu_m), the published disease-free
// mosquito level, so that both routes reproduce the published R0 and control
// threshold. At c > 0 that level differs from the exact fixed point of the
// flow (see brdfe() in equilibria.hpp).

#include <cmath>
#include <complex>
#include <utility>

#include "dengue/eigenvalues.hpp"
#include "dengue/errors.hpp"
#include "dengue/model.hpp"

namespace dengue {

using Matrix4 = Matrix<4, 4>;

struct NgmDecomposition {
    Matrix4 J_F;    // new infections
    Matrix4 J_V;    // transitions, lower triangular
    Matrix4 J_V_inv;
    Matrix4 ngm;    // J_F * J_V^-1
};

// Susceptible levels (S_h, S_m) at which the next-generation matrix is taken.
inline std::pair<double, double> disease_free_susceptibles(const ModelParams& p, ControlLevel c)
{
    const double M = mosquito_viability(p, c);
    if (!(M > 0.0))
        throw RegimeError("mosquito population collapses (M <= 0); no disease-free equilibrium with mosquitoes");
    return {p.N_h(), p.k() * p.N_h() * M / (p.mu_b() * p.mu_m())};
}

namespace detail {

// Inverse of a lower-triangular matrix by forward substitution on the
// columns of the identity.
inline Matrix4 lower_triangular_inverse(const Matrix4& L)
{
    Matrix4 X;
    for (std::size_t col = 0; col < 4; ++col)
        for (std::size_t i = 0; i < 4; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (std::size_t j = 0; j < i; ++j) s -= L(i, j) * X(j, col);
            X(i, col) = s / L(i, i);
        }
    return X;
}

}  // namespace detail

inline NgmDecomposition build_ngm(const ModelParams& p, ControlLevel control)
{
    const auto [S_h, S_m] = disease_free_susceptibles(p, control);
    const double c = control.value();
    NgmDecomposition d;
    d.J_F(0, 3) = p.B() * p.beta_mh() * S_h / p.N_h();
    d.J_F(2, 1) = p.B() * p.beta_hm() * S_m / p.N_h();

    d.J_V(0, 0) = p.nu_h() + p.mu_h();
    d.J_V(1, 0) = -p.nu_h();
    d.J_V(1, 1) = p.eta_h() + p.mu_h();
    d.J_V(2, 2) = p.mu_m() + p.eta_m() + c;
    d.J_V(3, 2) = -p.eta_m();
    d.J_V(3, 3) = p.mu_m() + c;

    d.J_V_inv = detail::lower_triangular_inverse(d.J_V);
    d.ngm = d.J_F * d.J_V_inv;
    return d;
}

// Spectral radius of the next-generation matrix, from its eigenvalues.
inline double r0_spectral(const ModelParams& p, ControlLevel c)
{
    return spectral_radius(eigenvalues(build_ngm(p, c).ngm));
}

// R0^2 = B^2 k beta_hm beta_mh eta_m nu_h M /
//        (mu_b (eta_h + mu_h) mu_m (c + mu_m) (c + eta_m + mu_m) (mu_h + nu_h))
inline double r0_squared_closed_form(const ModelParams& p, ControlLevel control)
{
    const double M = mosquito_viability(p, control);
    if (!(M > 0.0))
        throw RegimeError("mosquito population collapses (M <= 0); R0 is undefined");
    const double c = control.value();
    const double num = p.B() * p.B() * p.k() * p.beta_hm() * p.beta_mh() * p.eta_m() * p.nu_h() * M;
    const double den = p.mu_b() * (p.eta_h() + p.mu_h()) * p.mu_m() * (c + p.mu_m()) *
                       (c + p.eta_m() + p.mu_m()) * (p.mu_h() + p.nu_h());
    return num / den;
}

inline double r0_closed_form(const ModelParams& p, ControlLevel c)
{
    return std::sqrt(r0_squared_closed_form(p, c));
}

// R0^2 written with free susceptible levels, evaluated at (S_h, S_m).
inline double r0_squared_at(const ModelParams& p, ControlLevel control, double S_h, double S_m)
{
    const double c = control.value();
    const double N = p.N_h();
    return p.B() * p.B() * S_h * S_m * p.beta_hm() * p.beta_mh() * p.eta_m() * p.nu_h() /
           (N * N * (p.eta_h() + p.mu_h()) * (c + p.mu_m()) * (c + p.eta_m() + p.mu_m()) *
            (p.mu_h() + p.nu_h()));
}

// The two transmission legs; their product is R0^2.
struct R0Factors {
    double R_hm = 0.0;  // human -> mosquito
    double R_mh = 0.0;  // mosquito -> human
};

inline R0Factors r0_factors(const ModelParams& p, ControlLevel control)
{
    const auto [S_h, S_m] = disease_free_susceptibles(p, control);
    const double c = control.value();
    const double N = p.N_h();
    R0Factors f;
    f.R_hm = p.B() * S_m * p.beta_hm() * p.nu_h() / (N * (p.eta_h() + p.mu_h()) * (p.mu_h() + p.nu_h()));
    f.R_mh = p.B() * S_h * p.beta_mh() * p.eta_m() / (N * (c + p.mu_m()) * (c + p.eta_m() + p.mu_m()));
    return f;
}

enum class R0Route { Spectral, ClosedForm };

inline double r0(const ModelParams& p, ControlLevel c, R0Route route = R0Route::Spectral)
{
    return route == R0Route::Spectral ? r0_spectral(p, c) : r0_closed_form(p, c);
}

}  // namespace dengue
