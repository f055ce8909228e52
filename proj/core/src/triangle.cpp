#include "projconf/triangle.hpp"

#include <algorithm>
#include <cmath>

namespace projconf {

Triangle::Triangle(PlanePoint a, PlanePoint b, PlanePoint c) : a_(a), b_(b), c_(c) {
    if (!is_finite(a) || !is_finite(b) || !is_finite(c))
        throw DegenerateConfiguration("triangle vertex not finite");
    double diam = diameter();
    double area2 = cross(b_ - a_, c_ - a_); // twice the signed area
    if (!(area2 > 2e-12 * diam * diam))
        throw DegenerateConfiguration("triangle is degenerate or negatively oriented");
    double la = side_a(), lb = side_b(), lc = side_c();
    if (!(la < lb + lc && lb < lc + la && lc < la + lb))
        throw DegenerateConfiguration("triangle inequality violated");
}

PlanePoint Triangle::vertex(int i) const {
    switch (i % 3) {
        case 0: return a_;
        case 1: return b_;
        default: return c_;
    }
}

double Triangle::signed_area() const { return 0.5 * cross(b_ - a_, c_ - a_); }

double Triangle::diameter() const {
    return std::max({std::abs(b_ - a_), std::abs(c_ - b_), std::abs(a_ - c_)});
}

bool Triangle::contains(PlanePoint p, double tol) const {
    return cross(b_ - a_, p - a_) >= -tol &&
           cross(c_ - b_, p - b_) >= -tol &&
           cross(a_ - c_, p - c_) >= -tol;
}

PlanePoint BarycentricPoint::point_in(const Triangle& t) const {
    double s = wa + wb + wc;
    if (std::abs(s) <= 1e-300) throw Error("barycentric weights sum to zero");
    return (wa * t.a() + wb * t.b() + wc * t.c()) / s;
}

ProperCircle circumcircle(const Triangle& t) {
    PlanePoint u = t.b() - t.a();
    PlanePoint v = t.c() - t.a();
    double d = 2.0 * cross(u, v);
    double nu = std::norm(u), nv = std::norm(v);
    PlanePoint rel{(v.imag() * nu - u.imag() * nv) / d,
                   (u.real() * nv - v.real() * nu) / d};
    return ProperCircle{t.a() + rel, std::abs(rel)};
}

PlanePoint exponent_t_center(double t_param, const Triangle& tri) {
    double la = tri.side_a(), lb = tri.side_b(), lc = tri.side_c();
    // scale-free weights, so large |t| cannot overflow at sane aspect ratios
    double m = std::max({la, lb, lc});
    BarycentricPoint w{std::pow(la / m, t_param), std::pow(lb / m, t_param),
                       std::pow(lc / m, t_param)};
    return w.point_in(tri);
}

std::pair<PlanePoint, double> angle_bisector_edge_split(const Triangle& tri, int vertex) {
    // From vertex A the foot F on BC satisfies |BF|/|FC| = c/b
    PlanePoint p = tri.vertex(vertex + 1);
    PlanePoint q = tri.vertex(vertex + 2);
    double lp = std::abs(tri.vertex(vertex) - p); // side adjacent to p
    double lq = std::abs(tri.vertex(vertex) - q); // side adjacent to q
    PlanePoint foot = (lq * p + lp * q) / (lp + lq);
    return {foot, lp / lq};
}

} // namespace projconf
