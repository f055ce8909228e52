#include "projconf/projective.hpp"

#include <cmath>

namespace projconf {

namespace {

constexpr double kDetTol = 1e-12;

// Hartley-style normalization: centroid to origin, RMS distance sqrt(2).
Eigen::Matrix3d normalizing_transform(const std::array<PlanePoint, 4>& pts) {
    PlanePoint centroid{0.0, 0.0};
    for (auto p : pts) centroid += p;
    centroid /= 4.0;
    double rms = 0.0;
    for (auto p : pts) rms += std::norm(p - centroid);
    rms = std::sqrt(rms / 4.0);
    double s = rms > 0.0 ? std::sqrt(2.0) / rms : 1.0;
    Eigen::Matrix3d t;
    t << s, 0, -s * centroid.real(),
         0, s, -s * centroid.imag(),
         0, 0, 1;
    return t;
}

bool collinear(PlanePoint a, PlanePoint b, PlanePoint c) {
    // inputs are pre-normalized to unit scale
    return std::abs(cross(b - a, c - a)) <= 1e-10;
}

} // namespace

PlanePoint HomogeneousPoint::dehomogenize() const {
    double scale = v.norm();
    if (std::abs(v[2]) <= 1e-12 * scale)
        throw MapsToInfinity("homogeneous point lies on the line at infinity");
    return {v[0] / v[2], v[1] / v[2]};
}

bool HomogeneousPoint::same_point(const HomogeneousPoint& other, double tol) const {
    Eigen::Vector3d a = v.normalized();
    Eigen::Vector3d b = other.v.normalized();
    return std::min((a - b).norm(), (a + b).norm()) <= tol;
}

ProjectiveMap::ProjectiveMap(const Eigen::Matrix3d& m) {
    double norm = m.norm();
    if (!(norm > 0.0) || !m.allFinite())
        throw SingularMatrix("matrix entries not finite or all zero");
    m_ = m / norm;
    det_ = m_.determinant();
    if (std::abs(det_) <= kDetTol)
        throw SingularMatrix("matrix is singular after normalization");
    if (det_ < 0.0) {
        // [Ax] = [-Ax]; pick the representative with positive determinant
        m_ = -m_;
        det_ = -det_;
    }
}

ProjectiveMap ProjectiveMap::inverse() const {
    return ProjectiveMap(m_.inverse().eval());
}

bool ProjectiveMap::is_affine(double tol) const {
    return std::abs(m_(2, 0)) <= tol && std::abs(m_(2, 1)) <= tol;
}

PlanePoint ProjectiveMap::operator()(PlanePoint pt) const {
    if (!is_finite(pt)) throw Error("point has non-finite coordinates");
    Eigen::Vector3d x(pt.real(), pt.imag(), 1.0);
    Eigen::Vector3d y = m_ * x;
    if (std::abs(y[2]) <= 1e-12 * x.norm())
        throw MapsToInfinity("point maps to the line at infinity");
    return {y[0] / y[2], y[1] / y[2]};
}

ProjectiveMap homography_from_correspondences(const std::array<PlanePoint, 4>& src,
                                              const std::array<PlanePoint, 4>& dst) {
    Eigen::Matrix3d ts = normalizing_transform(src);
    Eigen::Matrix3d td = normalizing_transform(dst);

    std::array<PlanePoint, 4> s, d;
    for (int i = 0; i < 4; ++i) {
        s[i] = {ts(0, 0) * src[i].real() + ts(0, 2), ts(1, 1) * src[i].imag() + ts(1, 2)};
        d[i] = {td(0, 0) * dst[i].real() + td(0, 2), td(1, 1) * dst[i].imag() + td(1, 2)};
    }

    static constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (auto& t : kTriples) {
        if (collinear(s[t[0]], s[t[1]], s[t[2]]))
            throw DegenerateConfiguration("source quadruple has a collinear triple");
        if (collinear(d[t[0]], d[t[1]], d[t[2]]))
            throw DegenerateConfiguration("destination quadruple has a collinear triple");
    }

    // Exact 8x9 correspondence system; the homography spans its null space.
    Eigen::Matrix<double, 8, 9> sys = Eigen::Matrix<double, 8, 9>::Zero();
    for (int i = 0; i < 4; ++i) {
        double x = s[i].real(), y = s[i].imag();
        double u = d[i].real(), v = d[i].imag();
        sys.row(2 * i)     << x, y, 1, 0, 0, 0, -u * x, -u * y, -u;
        sys.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y, -v;
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 8, 9>> lu(sys);
    lu.setThreshold(1e-10);
    if (lu.dimensionOfKernel() != 1)
        throw DegenerateConfiguration("correspondence system is rank deficient");
    Eigen::Matrix<double, 9, 1> h = lu.kernel().col(0);

    Eigen::Matrix3d hn;
    hn << h[0], h[1], h[2],
          h[3], h[4], h[5],
          h[6], h[7], h[8];
    return ProjectiveMap(td.inverse() * hn * ts);
}

Conic::Conic(const Eigen::Matrix3d& q) {
    Eigen::Matrix3d sym = 0.5 * (q + q.transpose());
    double norm = sym.norm();
    if (!(norm > 0.0) || !sym.allFinite())
        throw Error("conic matrix not finite or zero");
    q_ = sym / norm;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            if (std::abs(q_(r, c)) > 1e-12) {
                if (q_(r, c) < 0.0) q_ = -q_;
                return;
            }
        }
    }
}

double Conic::operator()(PlanePoint p) const {
    Eigen::Vector3d x(p.real(), p.imag(), 1.0);
    return x.dot(q_ * x);
}

double conic_distance(const Conic& a, const Conic& b) {
    double dm = (a.matrix() - b.matrix()).norm();
    double dp = (a.matrix() + b.matrix()).norm();
    return std::min(dm, dp);
}

Conic pushforward_conic(const ProjectiveMap& map, const Conic& c) {
    // x on Q  <=>  Ax on A^-T Q A^-1
    Eigen::Matrix3d inv = map.matrix().inverse();
    return Conic(inv.transpose() * c.matrix() * inv);
}

Conic conic_from_circle(const GeneralizedCircle& gc) {
    if (const auto* circ = std::get_if<ProperCircle>(&gc)) {
        if (!(circ->radius > 0.0)) throw Error("circle radius must be positive");
        double cx = circ->center.real(), cy = circ->center.imag();
        Eigen::Matrix3d q;
        q << 1, 0, -cx,
             0, 1, -cy,
             -cx, -cy, cx * cx + cy * cy - circ->radius * circ->radius;
        return Conic(q);
    }
    // A line completes to the degenerate conic (line)*(line at infinity),
    // the limit of circles through it.
    const auto& line = std::get<Line>(gc);
    Eigen::Vector3d l(line.normal.real(), line.normal.imag(), -line.offset);
    Eigen::Vector3d linf(0, 0, 1);
    return Conic(l * linf.transpose() + linf * l.transpose());
}

bool is_circle(const Conic& c, double tol) {
    const Eigen::Matrix3d& q = c.matrix();
    // K^T q K with K = (1, i, 0) has real part q11 - q22, imaginary part 2*q12
    if (std::abs(q(0, 0) - q(1, 1)) >= tol || std::abs(2.0 * q(0, 1)) >= tol) return false;
    double s = 0.5 * (q(0, 0) + q(1, 1));
    if (std::abs(s) <= tol) return false; // no quadratic part: a line pair, not a circle
    double cx = -q(0, 2) / s, cy = -q(1, 2) / s;
    double r2 = cx * cx + cy * cy - q(2, 2) / s;
    return r2 > tol; // nondegenerate, with real points
}

GeneralizedCircle circle_from_conic(const Conic& c, double tol) {
    const Eigen::Matrix3d& q = c.matrix();
    double s = 0.5 * (q(0, 0) + q(1, 1));
    if (std::abs(q(0, 0)) <= tol && std::abs(q(1, 1)) <= tol && std::abs(q(0, 1)) <= tol) {
        // no quadratic terms: (line)*(line at infinity) from conic_from_circle
        PlanePoint n{q(0, 2), q(1, 2)};
        double len = std::abs(n);
        if (len <= tol) throw NotACircle("conic has no linear part either");
        return Line{n / len, -0.5 * q(2, 2) / len};
    }
    if (!is_circle(c, tol)) throw NotACircle("conic does not pass the circle-point test");
    double cx = -q(0, 2) / s, cy = -q(1, 2) / s;
    double r2 = cx * cx + cy * cy - q(2, 2) / s;
    return ProperCircle{{cx, cy}, std::sqrt(r2)};
}

Line preimage_of_infinity(const ProjectiveMap& map) {
    const Eigen::Matrix3d& m = map.matrix();
    if (map.is_affine())
        throw AffineMap("affine map: the preimage of the line at infinity is the line at infinity");
    // third row of A: the linear form whose zero set maps to infinity
    PlanePoint n{m(2, 0), m(2, 1)};
    double len = std::abs(n);
    return Line{n / len, -m(2, 2) / len};
}

} // namespace projconf
