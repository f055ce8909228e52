#pragma once

// Test-only oracles, independent of the library paths they check:
// exact rational projective arithmetic, finite-difference Wirtinger
// quotients, and a numeric SVD of the finite-difference Jacobian.

#include <array>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>
#include <Eigen/SVD>

#include "projconf/projective.hpp"

namespace oracles {

using projconf::Complex;
using projconf::PlanePoint;
using Rational = boost::multiprecision::cpp_rational;

using RMat3 = std::array<std::array<Rational, 3>, 3>;
using RPoint = std::array<Rational, 2>;

// exact image of a point under a rational homogeneous matrix
inline RPoint exact_apply(const RMat3& m, const RPoint& p) {
    std::array<Rational, 3> x{p[0], p[1], Rational(1)};
    std::array<Rational, 3> y{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) y[r] += m[r][c] * x[c];
    if (y[2] == 0) throw std::runtime_error("exact_apply: image at infinity");
    return {y[0] / y[2], y[1] / y[2]};
}

// exact null vector of the 8x9 four-point correspondence system,
// via fraction-free Gauss-Jordan elimination
inline std::array<Rational, 9> exact_homography(const std::array<RPoint, 4>& src,
                                                const std::array<RPoint, 4>& dst) {
    std::vector<std::array<Rational, 9>> rows(8);
    for (int i = 0; i < 4; ++i) {
        const Rational &x = src[i][0], &y = src[i][1];
        const Rational &u = dst[i][0], &v = dst[i][1];
        rows[2 * i] = {x, y, 1, 0, 0, 0, -u * x, -u * y, -u};
        rows[2 * i + 1] = {0, 0, 0, x, y, 1, -v * x, -v * y, -v};
    }
    std::array<int, 8> pivot_col{};
    int rank = 0;
    for (int col = 0; col < 9 && rank < 8; ++col) {
        int pivot = -1;
        for (int r = rank; r < 8; ++r) {
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        Rational inv = rows[rank][col];
        for (auto& e : rows[rank]) e /= inv;
        for (int r = 0; r < 8; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col];
            for (int c = 0; c < 9; ++c) rows[r][c] -= f * rows[rank][c];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    if (rank != 8) throw std::runtime_error("exact_homography: rank deficient");
    // the one non-pivot column parametrizes the kernel
    std::array<bool, 9> is_pivot{};
    for (int r = 0; r < 8; ++r) is_pivot[pivot_col[r]] = true;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::array<Rational, 9> h{};
    h[free_col] = 1;
    for (int r = 0; r < 8; ++r) h[pivot_col[r]] = -rows[r][free_col];
    return h;
}

// largest-|entry| projective normalization for comparing with doubles
inline std::array<double, 9> to_unit_doubles(const std::array<Rational, 9>& h) {
    int at = 0;
    Rational best = 0;
    for (int i = 0; i < 9; ++i) {
        Rational a = h[i] < 0 ? Rational(-h[i]) : h[i];
        if (a > best) {
            best = a;
            at = i;
        }
    }
    std::array<double, 9> out{};
    for (int i = 0; i < 9; ++i) out[i] = double(Rational(h[i] / h[at]).convert_to<double>());
    return out;
}

// central-difference Beltrami quotient f_zbar / f_z
inline Complex fd_mu(const projconf::ProjectiveMap& m, PlanePoint z, double h = 1e-6) {
    Complex fx = (m(z + Complex(h, 0)) - m(z - Complex(h, 0))) / (2.0 * h);
    Complex fy = (m(z + Complex(0, h)) - m(z - Complex(0, h))) / (2.0 * h);
    return (fx + Complex(0, 1) * fy) / (fx - Complex(0, 1) * fy);
}

// finite-difference Jacobian, and the signed dilatation through Eigen's SVD
inline Eigen::Matrix2d fd_jacobian(const projconf::ProjectiveMap& m, PlanePoint z,
                                   double h = 1e-6) {
    Complex dx = (m(z + Complex(h, 0)) - m(z - Complex(h, 0))) / (2.0 * h);
    Complex dy = (m(z + Complex(0, h)) - m(z - Complex(0, h))) / (2.0 * h);
    Eigen::Matrix2d j;
    j << dx.real(), dy.real(), dx.imag(), dy.imag();
    return j;
}

inline double svd_signed_dilatation(const Eigen::Matrix2d& j) {
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(j);
    double l1 = svd.singularValues()[0], l2 = svd.singularValues()[1];
    double sign = j.determinant() < 0 ? -1.0 : 1.0;
    return sign * l1 / l2;
}

} // namespace oracles
