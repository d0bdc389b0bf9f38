#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "dengue/errors.hpp"

namespace dengue {

// Small dense row-major matrix with compile-time extents.
template <std::size_t R, std::size_t C>
struct Matrix {
    std::array<double, R * C> data{};

    static constexpr std::size_t rows() { return R; }
    static constexpr std::size_t cols() { return C; }

    double& operator()(std::size_t i, std::size_t j) { return data[i * C + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * C + j]; }

    static Matrix identity() requires(R == C)
    {
        Matrix m;
        for (std::size_t i = 0; i < R; ++i) m(i, i) = 1.0;
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <std::size_t N>
using Vector = std::array<double, N>;

template <std::size_t R, std::size_t K, std::size_t C>
Matrix<R, C> operator*(const Matrix<R, K>& a, const Matrix<K, C>& b)
{
    Matrix<R, C> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <std::size_t R, std::size_t C>
Vector<R> operator*(const Matrix<R, C>& a, const Vector<C>& x)
{
    Vector<R> y{};
    for (std::size_t i = 0; i < R; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < C; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

template <std::size_t N>
double trace(const Matrix<N, N>& a)
{
    double t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += a(i, i);
    return t;
}

// Solves a x = b by Gaussian elimination with partial pivoting.
template <std::size_t N>
Vector<N> solve(Matrix<N, N> a, Vector<N> b)
{
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < N; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) throw NumericalError("solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < N; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < N; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vector<N> x{};
    for (std::size_t ii = N; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < N; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

// Determinant via the same elimination; used by tests and diagnostics.
template <std::size_t N>
double determinant(Matrix<N, N> a)
{
    double det = 1.0;
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < N; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < N; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < N; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < N; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

}  // namespace dengue
