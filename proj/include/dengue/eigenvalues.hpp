#pragma once

// Eigenvalues of small dense real matrices: balancing, reduction to upper
// Hessenberg form by stabilized elementary similarity transforms, then
// Francis double-shift QR.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "dengue/errors.hpp"
#include "dengue/matrix.hpp"

namespace dengue {

namespace detail {

template <std::size_t N>
void balance(Matrix<N, N>& a)
{
    constexpr double radix = std::numeric_limits<double>::radix;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < N; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < N; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (std::size_t j = 0; j < N; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < N; ++j) a(j, i) *= f;
            }
        }
    }
}

template <std::size_t N>
void to_hessenberg(Matrix<N, N>& a)
{
    for (std::size_t m = 1; m + 1 < N; ++m) {
        double x = 0.0;
        std::size_t i = m;
        for (std::size_t j = m; j < N; ++j)
            if (std::abs(a(j, m - 1)) > std::abs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        if (i != m) {
            for (std::size_t j = m - 1; j < N; ++j) std::swap(a(i, j), a(m, j));
            for (std::size_t j = 0; j < N; ++j) std::swap(a(j, i), a(j, m));
        }
        if (x == 0.0) continue;
        for (i = m + 1; i < N; ++i) {
            double y = a(i, m - 1);
            if (y == 0.0) continue;
            y /= x;
            a(i, m - 1) = 0.0;
            for (std::size_t j = m; j < N; ++j) a(i, j) -= y * a(m, j);
            for (std::size_t j = 0; j < N; ++j) a(j, m) += y * a(j, i);
        }
    }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
template <std::size_t N>
std::array<std::complex<double>, N> hessenberg_qr(Matrix<N, N>& a)
{
    using std::abs;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t max_iterations = 30 * N * N;
    std::array<std::complex<double>, N> w{};

    double anorm = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = (i > 0 ? i - 1 : 0); j < N; ++j) anorm += abs(a(i, j));

    long nn = static_cast<long>(N) - 1;
    double t = 0.0;
    std::size_t total = 0;
    auto A = [&a](long i, long j) -> double& {
        return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    };

    while (nn >= 0) {
        int its = 0;
        long l = 0;
        do {
            for (l = nn; l > 0; --l) {
                double s = abs(A(l - 1, l - 1)) + abs(A(l, l));
                if (s == 0.0) s = anorm;
                if (abs(A(l, l - 1)) <= eps * s) {
                    A(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = A(nn, nn);
            if (l == nn) {
                w[static_cast<std::size_t>(nn--)] = x + t;
                continue;
            }
            double y = A(nn - 1, nn - 1);
            double ww = A(nn, nn - 1) * A(nn - 1, nn);
            if (l == nn - 1) {
                const double p = 0.5 * (y - x);
                const double q = p * p + ww;
                double z = std::sqrt(abs(q));
                x += t;
                const auto hi = static_cast<std::size_t>(nn), lo = hi - 1;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    w[lo] = w[hi] = x + z;
                    if (z != 0.0) w[hi] = x - ww / z;
                } else {
                    w[lo] = {x + p, z};
                    w[hi] = {x + p, -z};
                }
                nn -= 2;
                continue;
            }
            if (++total > max_iterations)
                throw NumericalError("eigenvalues: QR iteration did not converge after " +
                                     std::to_string(max_iterations) + " iterations");
            if (its > 0 && its % 10 == 0) {
                // Exceptional shift.
                t += x;
                for (long i = 0; i <= nn; ++i) A(i, i) -= x;
                const double s = abs(A(nn, nn - 1)) + abs(A(nn - 1, nn - 2));
                y = x = 0.75 * s;
                ww = -0.4375 * s * s;
            }
            ++its;
            long m = nn - 2;
            double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
            for (; m >= l; --m) {
                z = A(m, m);
                r = x - z;
                double s = y - z;
                p = (r * s - ww) / A(m + 1, m) + A(m, m + 1);
                q = A(m + 1, m + 1) - z - r - s;
                r = A(m + 2, m + 1);
                s = abs(p) + abs(q) + abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double u = abs(A(m, m - 1)) * (abs(q) + abs(r));
                const double v = abs(p) * (abs(A(m - 1, m - 1)) + abs(z) + abs(A(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (long i = m; i < nn - 1; ++i) {
                A(i + 2, i) = 0.0;
                if (i != m) A(i + 2, i - 1) = 0.0;
            }
            for (long k = m; k < nn; ++k) {
                if (k != m) {
                    p = A(k, k - 1);
                    q = A(k + 1, k - 1);
                    r = 0.0;
                    if (k + 1 != nn) r = A(k + 2, k - 1);
                    x = abs(p) + abs(q) + abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) A(k, k - 1) = -A(k, k - 1);
                } else {
                    A(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for (long j = k; j <= nn; ++j) {
                    p = A(k, j) + q * A(k + 1, j);
                    if (k + 1 != nn) {
                        p += r * A(k + 2, j);
                        A(k + 2, j) -= p * z;
                    }
                    A(k + 1, j) -= p * y;
                    A(k, j) -= p * x;
                }
                const long mmin = nn < k + 3 ? nn : k + 3;
                for (long i = l; i <= mmin; ++i) {
                    p = x * A(i, k) + y * A(i, k + 1);
                    if (k + 1 != nn) {
                        p += z * A(i, k + 2);
                        A(i, k + 2) -= p * r;
                    }
                    A(i, k + 1) -= p * q;
                    A(i, k) -= p;
                }
            }
        } while (nn >= 0 && l < nn - 1);
    }
    return w;
}

}  // namespace detail

// All eigenvalues of a, sorted by descending real part, then descending
// imaginary part. Throws NumericalError if QR needs more than 30 n^2 sweeps.
template <std::size_t N>
std::array<std::complex<double>, N> eigenvalues(Matrix<N, N> a)
{
    static_assert(N >= 1 && N <= 16, "eigenvalues supports 1 <= n <= 16");
    for (double v : a.data)
        if (!std::isfinite(v)) throw DomainError("eigenvalues: matrix has non-finite entries");
    detail::balance(a);
    detail::to_hessenberg(a);
    auto w = detail::hessenberg_qr(a);
    std::sort(w.begin(), w.end(), [](const std::complex<double>& lhs, const std::complex<double>& rhs) {
        if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
        return lhs.imag() > rhs.imag();
    });
    return w;
}

template <std::size_t N>
double spectral_abscissa(const std::array<std::complex<double>, N>& w)
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& z : w) best = std::max(best, z.real());
    return best;
}

template <std::size_t N>
double spectral_radius(const std::array<std::complex<double>, N>& w)
{
    double best = 0.0;
    for (const auto& z : w) best = std::max(best, std::abs(z));
    return best;
}

}  // namespace dengue
