#pragma once

#include <cmath>
#include <complex>

namespace projconf {

using Complex = std::complex<double>;

// Points of the affine plane, identified with complex numbers z = x + iy.
using PlanePoint = Complex;

inline double dot(PlanePoint a, PlanePoint b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

// z-component of the 2D cross product; > 0 when b is counterclockwise of a.
inline double cross(PlanePoint a, PlanePoint b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

// 90 degree counterclockwise rotation.
inline PlanePoint rot90(PlanePoint a) { return {-a.imag(), a.real()}; }

inline bool is_finite(PlanePoint p) {
    return std::isfinite(p.real()) && std::isfinite(p.imag());
}

} // namespace projconf
