#pragma once

// Host-vector Dengue transmission model with adulticide control.
//
// Humans: S_h -> E_h -> I_h -> R_h with constant total N_h.
// Mosquitoes: aquatic stage A_m (egg, larva, pupa) matures into adult
// females S_m -> E_m -> I_m. The adulticide removes adults at rate c and has
// no effect on A_m.
//
// The state is carried in reduced 7-dimensional form; R_h = N_h - S_h - E_h -
// I_h is only reconstructed for output.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "dengue/errors.hpp"
#include "dengue/matrix.hpp"

namespace dengue {

inline constexpr std::size_t kDim = 7;

// Index of each compartment inside the reduced state vector.
enum Compartment : std::size_t { kSh = 0, kEh, kIh, kAm, kSm, kEm, kIm };

inline constexpr std::array<const char*, kDim> kCompartmentNames = {
    "S_h", "E_h", "I_h", "A_m", "S_m", "E_m", "I_m"};

// Raw parameter values, as read from a scenario. Validation happens when a
// ModelParams is built from it.
struct ParamValues {
    double N_h = 0.0;      // persons
    double B = 0.0;        // bites per day
    double beta_mh = 0.0;  // P(infection | bite), mosquito -> human
    double beta_hm = 0.0;  // P(infection | bite), human -> mosquito
    double mu_h = 0.0;     // human mortality, 1/day
    double eta_h = 0.0;    // human recovery, 1/day
    double mu_m = 0.0;     // adult mosquito mortality, 1/day
    double mu_b = 0.0;     // eggs per capita per day
    double mu_A = 0.0;     // aquatic-stage mortality, 1/day
    double eta_A = 0.0;    // maturation rate, 1/day
    double eta_m = 0.0;    // 1 / extrinsic incubation, 1/day
    double nu_h = 0.0;     // 1 / intrinsic incubation, 1/day
    double m = 0.0;        // female mosquitoes per human
    double k = 0.0;        // aquatic-stage individuals per human
    double K = 0.0;        // aquatic carrying capacity
};

// Validated, immutable model parameters.
class ModelParams {
public:
    explicit ModelParams(const ParamValues& v) : v_(v) { validate(); }

    const ParamValues& values() const noexcept { return v_; }

    double N_h() const noexcept { return v_.N_h; }
    double B() const noexcept { return v_.B; }
    double beta_mh() const noexcept { return v_.beta_mh; }
    double beta_hm() const noexcept { return v_.beta_hm; }
    double mu_h() const noexcept { return v_.mu_h; }
    double eta_h() const noexcept { return v_.eta_h; }
    double mu_m() const noexcept { return v_.mu_m; }
    double mu_b() const noexcept { return v_.mu_b; }
    double mu_A() const noexcept { return v_.mu_A; }
    double eta_A() const noexcept { return v_.eta_A; }
    double eta_m() const noexcept { return v_.eta_m; }
    double nu_h() const noexcept { return v_.nu_h; }
    double m() const noexcept { return v_.m; }
    double k() const noexcept { return v_.k; }
    double K() const noexcept { return v_.K; }

private:
    void validate() const
    {
        auto finite = [](const char* name, double x) {
            if (!std::isfinite(x))
                throw DomainError(std::string("parameter ") + name + " is not finite");
        };
        auto positive = [&](const char* name, double x) {
            finite(name, x);
            if (!(x > 0.0))
                throw DomainError(std::string("parameter ") + name + " must be > 0");
        };
        auto nonnegative = [&](const char* name, double x) {
            finite(name, x);
            if (x < 0.0)
                throw DomainError(std::string("parameter ") + name + " must be >= 0");
        };
        auto probability = [&](const char* name, double x) {
            finite(name, x);
            if (x < 0.0 || x > 1.0)
                throw DomainError(std::string("parameter ") + name + " must lie in [0, 1]");
        };
        positive("N_h", v_.N_h);
        nonnegative("B", v_.B);
        probability("beta_mh", v_.beta_mh);
        probability("beta_hm", v_.beta_hm);
        positive("mu_h", v_.mu_h);
        positive("eta_h", v_.eta_h);
        positive("mu_m", v_.mu_m);
        nonnegative("mu_b", v_.mu_b);
        positive("mu_A", v_.mu_A);
        positive("eta_A", v_.eta_A);
        positive("eta_m", v_.eta_m);
        positive("nu_h", v_.nu_h);
        positive("m", v_.m);
        positive("k", v_.k);
        positive("K", v_.K);
    }

    ParamValues v_;
};

// Constant adulticide removal rate c (1/day).
class ControlLevel {
public:
    constexpr ControlLevel() = default;
    explicit ControlLevel(double c) : c_(c)
    {
        if (!std::isfinite(c) || c < 0.0)
            throw DomainError("control level must be finite and >= 0");
    }

    double value() const noexcept { return c_; }

private:
    double c_ = 0.0;
};

// Reduced state (S_h, E_h, I_h, A_m, S_m, E_m, I_m).
struct State7 {
    Vector<kDim> x{};

    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }

    double S_h() const { return x[kSh]; }
    double E_h() const { return x[kEh]; }
    double I_h() const { return x[kIh]; }
    double A_m() const { return x[kAm]; }
    double S_m() const { return x[kSm]; }
    double E_m() const { return x[kEm]; }
    double I_m() const { return x[kIm]; }

    friend bool operator==(const State7&, const State7&) = default;
};

// Full state with R_h reconstructed from the constant human total.
struct State8 {
    State7 reduced;
    double R_h = 0.0;

    friend bool operator==(const State8&, const State8&) = default;
};

// Cape Verde 2009 outbreak parameters.
inline ParamValues capeverde2009_values()
{
    ParamValues v;
    v.N_h = 480000.0;
    v.B = 1.0;
    v.beta_mh = 0.375;
    v.beta_hm = 0.375;
    v.mu_h = 1.0 / (71.0 * 365.0);
    v.eta_h = 1.0 / 3.0;
    v.mu_m = 1.0 / 11.0;
    v.mu_b = 6.0;
    v.mu_A = 1.0 / 4.0;
    v.eta_A = 0.08;
    v.eta_m = 1.0 / 11.0;
    v.nu_h = 1.0 / 4.0;
    v.m = 6.0;
    v.k = 3.0;
    v.K = v.k * v.N_h;
    return v;
}

inline ModelParams capeverde2009_params() { return ModelParams(capeverde2009_values()); }

// Initial condition of the 2009 outbreak: E_h0 = 216, I_h0 = 434, R_h0 = 0,
// S_h0 = N_h - E_h0 - I_h0, A_m0 = k N_h, S_m0 = m N_h, no infected mosquitoes.
inline State7 capeverde2009_initial(const ModelParams& p)
{
    State7 s;
    s[kEh] = 216.0;
    s[kIh] = 434.0;
    s[kSh] = p.N_h() - s[kEh] - s[kIh];
    s[kAm] = p.k() * p.N_h();
    s[kSm] = p.m() * p.N_h();
    return s;
}

// Per-component magnitude: N_h for humans, k N_h for A_m, m N_h for adults.
inline Vector<kDim> component_scales(const ModelParams& p)
{
    const double h = p.N_h(), a = p.k() * p.N_h(), v = p.m() * p.N_h();
    return {h, h, h, a, v, v, v};
}

inline void require_finite(const State7& x, const char* who)
{
    for (std::size_t i = 0; i < kDim; ++i)
        if (!std::isfinite(x[i]))
            throw DomainError(std::string(who) + ": component " + kCompartmentNames[i] +
                              " is not finite");
}

namespace detail {

// rhs without the finiteness check; trial stages of the integrator may go
// non-finite and are rejected by step control instead.
inline State7 rhs_unchecked(const ModelParams& p, ControlLevel control, const State7& s)
{
    const double c = control.value();
    const double N = p.N_h();
    const double force_h = p.B() * p.beta_mh() * s.I_m() / N;  // per susceptible human
    const double force_m = p.B() * p.beta_hm() * s.I_h() / N;  // per susceptible mosquito
    const double adults = s.S_m() + s.E_m() + s.I_m();

    State7 d;
    d[kSh] = p.mu_h() * N - (force_h + p.mu_h()) * s.S_h();
    d[kEh] = force_h * s.S_h() - (p.nu_h() + p.mu_h()) * s.E_h();
    d[kIh] = p.nu_h() * s.E_h() - (p.eta_h() + p.mu_h()) * s.I_h();
    d[kAm] = p.mu_b() * (1.0 - s.A_m() / p.K()) * adults - (p.eta_A() + p.mu_A()) * s.A_m();
    d[kSm] = -(force_m + p.mu_m()) * s.S_m() + p.eta_A() * s.A_m() - c * s.S_m();
    d[kEm] = force_m * s.S_m() - (p.mu_m() + p.eta_m()) * s.E_m() - c * s.E_m();
    d[kIm] = p.eta_m() * s.E_m() - p.mu_m() * s.I_m() - c * s.I_m();
    return d;
}

}  // namespace detail

// Time derivative of the reduced state (the R_h equation is dropped).
inline State7 rhs(const ModelParams& p, ControlLevel control, const State7& s)
{
    require_finite(s, "rhs");
    return detail::rhs_unchecked(p, control, s);
}

// dR_h/dt for a reconstructed state; completes the human block of rhs.
inline double recovered_rate(const ModelParams& p, const State8& s)
{
    return p.eta_h() * s.reduced.I_h() - p.mu_h() * s.R_h;
}

// R_h = N_h - S_h - E_h - I_h. A negative result is returned as is: it marks
// a state outside the admissible region.
inline State8 reconstruct_rh(const ModelParams& p, const State7& s)
{
    return State8{s, p.N_h() - s.S_h() - s.E_h() - s.I_h()};
}

// Mosquito viability: eta_A mu_b - c (eta_A + mu_A) - mu_m (mu_A + eta_A).
// Positive iff the adult population can sustain itself under control c.
inline double mosquito_viability(const ModelParams& p, ControlLevel control)
{
    const double c = control.value();
    return p.eta_A() * p.mu_b() - c * (p.eta_A() + p.mu_A()) - p.mu_m() * (p.mu_A() + p.eta_A());
}

// (eta_A + mu_A)(mu_m + c) / (mu_b eta_A). Below one exactly when
// mosquito_viability is positive.
//
// Note: this is the ratio as the model literature states it; the
// conventional basic offspring number of the mosquito is its reciprocal.
inline double basic_offspring_number(const ModelParams& p, ControlLevel control)
{
    const double denom = p.mu_b() * p.eta_A();
    if (denom == 0.0) throw DomainError("basic offspring number undefined for mu_b * eta_A = 0");
    return (p.eta_A() + p.mu_A()) * (p.mu_m() + control.value()) / denom;
}

// Collapse bound: the control level at which mosquito_viability reaches zero.
// Negative when the mosquitoes collapse even without control.
inline double collapse_control(const ModelParams& p)
{
    return p.eta_A() * p.mu_b() / (p.eta_A() + p.mu_A()) - p.mu_m();
}

// Slack used by in_omega, relative to each bound.
inline constexpr double kOmegaSlack = 1e-9;

// Which constraint of the admissible region a state violates, or nullptr.
inline const char* omega_violation(const ModelParams& p, const State7& s)
{
    const auto sc = component_scales(p);
    for (std::size_t i = 0; i < kDim; ++i) {
        if (!std::isfinite(s[i])) return "finite components";
        if (s[i] < -kOmegaSlack * sc[i]) {
            switch (i) {
            case kSh: return "S_h >= 0";
            case kEh: return "E_h >= 0";
            case kIh: return "I_h >= 0";
            case kAm: return "A_m >= 0";
            case kSm: return "S_m >= 0";
            case kEm: return "E_m >= 0";
            default: return "I_m >= 0";
            }
        }
    }
    const double humans = p.N_h(), aquatic = p.k() * p.N_h(), adults = p.m() * p.N_h();
    if (s.S_h() + s.E_h() + s.I_h() > humans * (1.0 + kOmegaSlack)) return "S_h + E_h + I_h <= N_h";
    if (s.A_m() > aquatic * (1.0 + kOmegaSlack)) return "A_m <= k N_h";
    if (s.S_m() + s.E_m() + s.I_m() > adults * (1.0 + kOmegaSlack)) return "S_m + E_m + I_m <= m N_h";
    return nullptr;
}

// Membership in the closed region of biological interest, with slack
// 1e-9 * bound on every inequality.
inline bool in_omega(const ModelParams& p, const State7& s) { return omega_violation(p, s) == nullptr; }

// dX/dt = M(X) X + F with M(X) Metzler on the admissible region.
struct MetzlerForm {
    Matrix<kDim, kDim> M_of_X;
    Vector<kDim> F{};
};

inline MetzlerForm metzler_decomposition(const ModelParams& p, ControlLevel control, const State7& s)
{
    require_finite(s, "metzler_decomposition");
    const double c = control.value();
    const double N = p.N_h();
    const double force_h = p.B() * p.beta_mh() * s.I_m() / N;
    const double force_m = p.B() * p.beta_hm() * s.I_h() / N;
    const double adults = s.S_m() + s.E_m() + s.I_m();

    MetzlerForm out;
    auto& M = out.M_of_X;
    M(kSh, kSh) = -force_h - p.mu_h();
    M(kEh, kSh) = force_h;
    M(kEh, kEh) = -p.nu_h() - p.mu_h();
    M(kIh, kEh) = p.nu_h();
    M(kIh, kIh) = -p.eta_h() - p.mu_h();
    // Logistic egg laying: mu_b (S+E+I) - mu_b A (S+E+I)/K, the second part
    // folded into the diagonal.
    M(kAm, kAm) = -p.mu_b() * adults / p.K() - p.eta_A() - p.mu_A();
    M(kAm, kSm) = p.mu_b();
    M(kAm, kEm) = p.mu_b();
    M(kAm, kIm) = p.mu_b();
    M(kSm, kAm) = p.eta_A();
    M(kSm, kSm) = -force_m - p.mu_m() - c;
    M(kEm, kSm) = force_m;
    M(kEm, kEm) = -p.mu_m() - p.eta_m() - c;
    M(kIm, kEm) = p.eta_m();
    M(kIm, kIm) = -p.mu_m() - c;
    out.F[kSh] = p.mu_h() * N;
    return out;
}

}  // namespace dengue
