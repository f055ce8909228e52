#pragma once

#include <utility>

#include "projconf/errors.hpp"
#include "projconf/geometry.hpp"
#include "projconf/projective.hpp"

namespace projconf {

// Closed triangular region with positively oriented vertices.
class Triangle {
public:
    Triangle(PlanePoint a, PlanePoint b, PlanePoint c);

    PlanePoint a() const { return a_; }
    PlanePoint b() const { return b_; }
    PlanePoint c() const { return c_; }
    PlanePoint vertex(int i) const;

    // side lengths opposite the like-named vertices
    double side_a() const { return std::abs(c_ - b_); }
    double side_b() const { return std::abs(a_ - c_); }
    double side_c() const { return std::abs(b_ - a_); }

    double signed_area() const;
    double diameter() const;
    bool contains(PlanePoint p, double tol = 0.0) const;

private:
    PlanePoint a_, b_, c_;
};

// Weights (wa, wb, wc) up to scale; all positive for interior points.
struct BarycentricPoint {
    double wa, wb, wc;

    PlanePoint point_in(const Triangle& t) const;
};

ProperCircle circumcircle(const Triangle& t);

// Point with barycentric coordinates [a^t, b^t, c^t]: the barycenter for
// t = 0, the incircle center for t = 1, the symmedian point for t = 2.
PlanePoint exponent_t_center(double t_param, const Triangle& tri);

inline PlanePoint incenter(const Triangle& tri) { return exponent_t_center(1.0, tri); }

// Foot of the internal angle bisector from the given vertex on the opposite
// side, and the ratio in which it splits that side (equal to the ratio of
// the adjacent sides).
std::pair<PlanePoint, double> angle_bisector_edge_split(const Triangle& tri, int vertex);

} // namespace projconf
