// oracle.hpp: independent reference arithmetic for tests
//
// Plain nested-vector matrices with naive loops, a cyclic Jacobi eigensolver
// for real symmetric matrices, and a Taylor-series exponential. Nothing here
// calls into the library or Eigen, so expected values computed with it do not
// share code paths with the implementation under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "oqs/matcore.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(std::size_t r, std::size_t c)
{
    return Mat(r, std::vector<C>(c, C{}));
}

inline Mat eye(std::size_t n)
{
    Mat m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat mul(const Mat& a, const Mat& b)
{
    Mat out = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Mat axpy(const Mat& a, C s, const Mat& b) // a + s·b
{
    Mat out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[i][j] += s * b[i][j];
    return out;
}

inline Mat scale(C s, const Mat& a)
{
    return axpy(zeros(a.size(), a[0].size()), s, a);
}

inline Mat dag(const Mat& a)
{
    Mat out = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = std::conj(a[i][j]);
    return out;
}

inline Mat kron(const Mat& a, const Mat& b)
{
    const std::size_t rb = b.size(), cb = b[0].size();
    Mat out = zeros(a.size() * rb, a[0].size() * cb);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < cb; ++l) out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    return out;
}

/// BρB† − ½(B†Bρ + ρB†B)
inline Mat dissipator(const Mat& b, const Mat& rho)
{
    const Mat bd = dag(b);
    const Mat bdb = mul(bd, b);
    Mat out = mul(mul(b, rho), bd);
    out = axpy(out, -0.5, mul(bdb, rho));
    return axpy(out, -0.5, mul(rho, bdb));
}

/// B†MB − ½(B†BM + MB†B)
inline Mat adjoint_dissipator(const Mat& b, const Mat& m)
{
    const Mat bd = dag(b);
    const Mat bdb = mul(bd, b);
    Mat out = mul(mul(bd, m), b);
    out = axpy(out, -0.5, mul(bdb, m));
    return axpy(out, -0.5, mul(m, bdb));
}

inline double max_abs(const Mat& a)
{
    double m = 0.0;
    for (const auto& row : a)
        for (const auto& x : row) m = std::max(m, std::abs(x));
    return m;
}

inline Mat from(const oqs::ComplexMatrix& m)
{
    Mat out = zeros(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (oqs::Index i = 0; i < m.rows(); ++i)
        for (oqs::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

/// max |a − b| entrywise (shapes must match).
inline double distance(const Mat& a, const oqs::ComplexMatrix& b)
{
    return max_abs(axpy(a, -1.0, from(b)));
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a)
{
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) { // columns p, q
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) { // rows p, q
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Real part of a matrix whose imaginary part is zero (asserted by caller).
inline std::vector<std::vector<double>> real_part(const Mat& a)
{
    std::vector<std::vector<double>> out(a.size(), std::vector<double>(a[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) out[i][j] = a[i][j].real();
    return out;
}

/// exp(a) by halving until ‖a‖_max·n < 0.5, a 30-term Taylor series, then squaring.
inline Mat expm_taylor(const Mat& a)
{
    const std::size_t n = a.size();
    int squarings = 0;
    Mat x = a;
    while (max_abs(x) * static_cast<double>(n) > 0.5) {
        x = scale(0.5, x);
        ++squarings;
    }
    Mat sum = eye(n);
    Mat term = eye(n);
    for (int k = 1; k <= 30; ++k) {
        term = scale(1.0 / k, mul(term, x));
        sum = axpy(sum, 1.0, term);
    }
    for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
    return sum;
}

} // namespace oracle
