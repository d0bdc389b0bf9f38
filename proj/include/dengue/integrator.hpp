#pragma once

// Explicit Runge-Kutta integration of the reduced model.
//
// integrate() uses the Dormand-Prince 5(4) embedded pair with FSAL, local
// error control in a weighted RMS norm and Hairer's 4th-order continuous
// extension to report on a uniform grid. integrate_fixed_rk4() is the
// classical fixed-step scheme and serves as an independent reference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dengue/errors.hpp"
#include "dengue/model.hpp"

namespace dengue {

struct SolverConfig {
    double t0 = 0.0;
    double t_end = 100.0;
    double rtol = 1e-8;
    double atol = 1e-8;  // multiplied by component_scales()
    double h_init = 1e-3;
    double h_max = 1.0;
    double output_step = 0.5;
    std::size_t max_steps = 10'000'000;

    // t_end == t0 is accepted and yields a single-point trajectory.
    void validate() const
    {
        auto bad = [](const std::string& what) { throw DomainError("solver config: " + what); };
        if (!std::isfinite(t0) || !std::isfinite(t_end)) bad("t0 and t_end must be finite");
        if (t_end < t0) bad("t_end must not precede t0");
        if (!(rtol > 0.0) || !std::isfinite(rtol)) bad("rtol must be > 0");
        if (!(atol > 0.0) || !std::isfinite(atol)) bad("atol must be > 0");
        if (!(h_init > 0.0) || !(h_init <= h_max) || !std::isfinite(h_max))
            bad("need 0 < h_init <= h_max");
        if (!(output_step > 0.0) || !std::isfinite(output_step)) bad("output_step must be > 0");
    }
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State8> states;
    StepStats stats;
};

inline constexpr double kMinStepSize = 1e-12;

namespace detail {

inline State7 axpy(const State7& y, double h, std::initializer_list<std::pair<double, const State7*>> terms)
{
    State7 out = y;
    for (std::size_t i = 0; i < kDim; ++i) {
        double acc = 0.0;
        for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
        out[i] += h * acc;
    }
    return out;
}

// Dormand-Prince 5(4) tableau.
namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (error estimator weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous extension
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

struct DpStep {
    State7 y_new;
    State7 k7;  // f(t + h, y_new), reused as next k1
    State7 err;
    State7 k1, k3, k4, k5, k6;
};

inline DpStep dp_step(const ModelParams& p, ControlLevel c, const State7& y, const State7& k1, double h)
{
    using namespace dp;
    DpStep s;
    s.k1 = k1;
    const State7 k2 = rhs_unchecked(p, c, axpy(y, h, {{a21, &k1}}));
    s.k3 = rhs_unchecked(p, c, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    s.k4 = rhs_unchecked(p, c, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &s.k3}}));
    s.k5 = rhs_unchecked(p, c, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &s.k3}, {a54, &s.k4}}));
    s.k6 = rhs_unchecked(p, c, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &s.k3}, {a64, &s.k4}, {a65, &s.k5}}));
    s.y_new = axpy(y, h, {{b1, &k1}, {b3, &s.k3}, {b4, &s.k4}, {b5, &s.k5}, {b6, &s.k6}});
    s.k7 = rhs_unchecked(p, c, s.y_new);
    for (std::size_t i = 0; i < kDim; ++i)
        s.err[i] = h * (e1 * k1[i] + e3 * s.k3[i] + e4 * s.k4[i] + e5 * s.k5[i] + e6 * s.k6[i] +
                        e7 * s.k7[i]);
    return s;
}

// Coefficients of the dense-output polynomial for one accepted step.
struct DenseSegment {
    double t_old = 0.0, h = 0.0;
    State7 r1, r2, r3, r4, r5;

    DenseSegment(double t, double step, const State7& y, const DpStep& s) : t_old(t), h(step)
    {
        using namespace dp;
        for (std::size_t i = 0; i < kDim; ++i) {
            const double ydiff = s.y_new[i] - y[i];
            const double bspl = h * s.k1[i] - ydiff;
            r1[i] = y[i];
            r2[i] = ydiff;
            r3[i] = bspl;
            r4[i] = ydiff - h * s.k7[i] - bspl;
            r5[i] = h * (d1 * s.k1[i] + d3 * s.k3[i] + d4 * s.k4[i] + d5 * s.k5[i] + d6 * s.k6[i] +
                         d7 * s.k7[i]);
        }
    }

    State7 at(double t) const
    {
        const double th = (t - t_old) / h;
        const double th1 = 1.0 - th;
        State7 out;
        for (std::size_t i = 0; i < kDim; ++i)
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        return out;
    }
};

inline std::vector<double> output_grid(double t0, double t_end, double step)
{
    std::vector<double> grid{t0};
    if (t_end == t0) return grid;
    for (std::size_t i = 1;; ++i) {
        const double t = t0 + static_cast<double>(i) * step;
        if (t >= t_end - 1e-9 * step) break;
        grid.push_back(t);
    }
    grid.push_back(t_end);
    return grid;
}

inline std::string format_time(double t)
{
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

}  // namespace detail

// Adaptive Dormand-Prince integration, reported on the uniform grid
// t0, t0 + output_step, ..., t_end. Negative components are never clipped.
inline Trajectory integrate(const ModelParams& p, ControlLevel c, const State7& x0,
                            const SolverConfig& cfg = {})
{
    cfg.validate();
    require_finite(x0, "integrate");
    if (const char* v = omega_violation(p, x0))
        throw DomainError(std::string("integrate: initial state violates ") + v);

    const auto scale = component_scales(p);
    const auto grid = detail::output_grid(cfg.t0, cfg.t_end, cfg.output_step);

    Trajectory traj;
    traj.times.reserve(grid.size());
    traj.states.reserve(grid.size());
    traj.times.push_back(grid[0]);
    traj.states.push_back(reconstruct_rh(p, x0));
    std::size_t next_out = 1;

    double t = cfg.t0;
    State7 y = x0;
    State7 k1 = rhs(p, c, y);
    double h = std::min(cfg.h_init, cfg.h_max);
    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;
    std::size_t steps = 0;

    while (next_out < grid.size()) {
        if (++steps > cfg.max_steps)
            throw StepSizeError(t, "integrate: step budget exhausted at t = " + detail::format_time(t));
        const double remaining = cfg.t_end - t;
        const bool last = h >= remaining;
        const double step = last ? remaining : h;

        detail::DpStep s = detail::dp_step(p, c, y, k1, step);
        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < kDim; ++i) {
            if (!std::isfinite(s.y_new[i])) finite = false;
            const double w = cfg.atol * scale[i] + cfg.rtol * std::max(std::abs(y[i]), std::abs(s.y_new[i]));
            const double r = s.err[i] / w;
            err += r * r;
        }
        err = finite ? std::sqrt(err / kDim) : std::numeric_limits<double>::infinity();

        if (err <= 1.0) {
            ++traj.stats.accepted;
            const double t_new = last ? cfg.t_end : t + step;
            const detail::DenseSegment seg(t, step, y, s);
            while (next_out < grid.size() && grid[next_out] <= t_new) {
                const double tg = grid[next_out];
                const State7 yg = (tg == t_new) ? s.y_new : seg.at(tg);
                traj.times.push_back(tg);
                traj.states.push_back(reconstruct_rh(p, yg));
                ++next_out;
            }
            t = t_new;
            y = s.y_new;
            k1 = s.k7;
            const double fac = err == 0.0 ? fac_max : std::clamp(safety * std::pow(err, -0.2), fac_min, fac_max);
            h = std::min(step * fac, cfg.h_max);
        } else {
            ++traj.stats.rejected;
            const double fac = std::isfinite(err) ? std::max(fac_min, safety * std::pow(err, -0.2)) : fac_min;
            h = step * fac;
        }
        if (h < kMinStepSize)
            throw StepSizeError(t, "integrate: step size underflow at t = " + detail::format_time(t));
    }
    return traj;
}

namespace detail {

template <class Step>
Trajectory fixed_step(const ModelParams& p, const State7& x0, double h, double t_end, Step&& step)
{
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("fixed-step integration needs h > 0");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("fixed-step integration needs t_end >= 0");
    require_finite(x0, "fixed-step integration");
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(reconstruct_rh(p, x0));
    State7 y = x0;
    const auto n = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * h;
        const double t_next = (i + 1 == n) ? t_end : static_cast<double>(i + 1) * h;
        y = step(y, t_next - t);
        for (std::size_t k = 0; k < kDim; ++k)
            if (!std::isfinite(y[k]))
                throw NumericalError("fixed-step integration diverged at t = " + format_time(t_next));
        traj.times.push_back(t_next);
        traj.states.push_back(reconstruct_rh(p, y));
        ++traj.stats.accepted;
    }
    return traj;
}

}  // namespace detail

// Classical 4th-order Runge-Kutta with constant step h on [0, t_end]; every
// step is reported.
inline Trajectory integrate_fixed_rk4(const ModelParams& p, ControlLevel c, const State7& x0, double h,
                                      double t_end)
{
    return detail::fixed_step(p, x0, h, t_end, [&](const State7& y, double dt) {
        const State7 k1 = detail::rhs_unchecked(p, c, y);
        const State7 k2 = detail::rhs_unchecked(p, c, detail::axpy(y, dt, {{0.5, &k1}}));
        const State7 k3 = detail::rhs_unchecked(p, c, detail::axpy(y, dt, {{0.5, &k2}}));
        const State7 k4 = detail::rhs_unchecked(p, c, detail::axpy(y, dt, {{1.0, &k3}}));
        return detail::axpy(y, dt, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
    });
}

// The 5th-order solution of the embedded pair taken with constant step h,
// without error control. Used to measure the order of the pair.
inline Trajectory integrate_fixed_dopri5(const ModelParams& p, ControlLevel c, const State7& x0, double h,
                                         double t_end)
{
    return detail::fixed_step(p, x0, h, t_end, [&](const State7& y, double dt) {
        return detail::dp_step(p, c, y, detail::rhs_unchecked(p, c, y), dt).y_new;
    });
}

}  // namespace dengue
