#include "projconf/dilatation.hpp"

#include <cmath>
#include <limits>

namespace projconf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 2x2 Jacobian of the dehomogenized map at z; throws on the preimage of
// the line at infinity.
Eigen::Matrix2d jacobian_at(const ProjectiveMap& m, PlanePoint z) {
    const Eigen::Matrix3d& a = m.matrix();
    Eigen::Vector3d x(z.real(), z.imag(), 1.0);
    Eigen::Vector3d y = a * x;
    double w = y[2];
    if (std::abs(w) <= 1e-12 * x.norm())
        throw OnPreimageOfInfinity("point lies on the preimage of the line at infinity");
    Eigen::Matrix2d j;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            j(r, c) = (a(r, c) * w - y[r] * a(2, c)) / (w * w);
    return j;
}

} // namespace

double HalfCoefficients::norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(p) + q * q);
}

bool HalfCoefficients::is_affine(double tol) const {
    return std::abs(p) <= tol * norm();
}

HalfCoefficients coefficients_from_matrix(const ProjectiveMap& m) {
    const Eigen::Matrix3d& a = m.matrix();
    double a1 = 0.5 * (a(0, 0) + a(1, 1));
    double b1 = 0.5 * (a(0, 0) - a(1, 1));
    double a2 = 0.5 * (a(1, 0) - a(0, 1));
    double b2 = 0.5 * (a(1, 0) + a(0, 1));
    return HalfCoefficients{
        {a1, a2},
        {b1, b2},
        {a(0, 2), a(1, 2)},
        {0.5 * a(2, 0), -0.5 * a(2, 1)},
        a(2, 2),
    };
}

Eigen::Matrix3d raw_matrix_from_coefficients(const HalfCoefficients& h) {
    double a1 = h.a.real(), a2 = h.a.imag();
    double b1 = h.b.real(), b2 = h.b.imag();
    double p1 = h.p.real(), p2 = h.p.imag();
    Eigen::Matrix3d m;
    m << a1 + b1, -a2 + b2, h.c.real(),
         a2 + b2, a1 - b1, h.c.imag(),
         2 * p1, -2 * p2, h.q;
    return m;
}

ProjectiveMap matrix_from_coefficients(const HalfCoefficients& h) {
    return ProjectiveMap(raw_matrix_from_coefficients(h));
}

Line HyperbolicPencil::radical_line() const {
    PlanePoint axis = limit_inf - limit_zero;
    double len = std::abs(axis);
    if (!(len > 0.0)) throw Error("pencil limit points coincide");
    PlanePoint n = axis / len;
    PlanePoint mid = 0.5 * (limit_zero + limit_inf);
    return Line{n, dot(n, mid)};
}

GeneralizedCircle contour_circle(const HyperbolicPencil& pencil, double k) {
    if (!(k > 0.0)) throw Error("contour parameter must be positive");
    if (std::abs(k - 1.0) <= 1e-12) return pencil.radical_line();
    PlanePoint z0 = pencil.limit_zero, zi = pencil.limit_inf;
    double k2 = k * k;
    PlanePoint center = (z0 - k2 * zi) / (1.0 - k2);
    double radius = k * std::abs(z0 - zi) / std::abs(1.0 - k2);
    return ProperCircle{center, radius};
}

BeltramiField::BeltramiField(Complex alpha, Complex beta, Complex gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
    double scale = std::abs(alpha) + std::abs(beta) + std::abs(gamma);
    if (std::abs(alpha) <= 1e-12 * scale)
        throw AlphaZero("alpha vanishes: |mu| is constant, not a pencil");
    z_zero_ = -beta / alpha;
    z_inf_ = std::conj(gamma / alpha);
    double sep = std::abs(z_zero_ - z_inf_);
    if (!(sep > 1e-12 * (1.0 + std::abs(z_zero_))))
        throw SingularMatrix("pencil limit points coincide (degenerate map)");
}

Complex BeltramiField::mu(PlanePoint z) const {
    Complex den = -alpha_ * std::conj(z) + gamma_;
    Complex num = alpha_ * z + beta_;
    if (den == Complex(0.0, 0.0)) return Complex(kInf, 0.0);
    return num / den;
}

double BeltramiField::eccentricity(PlanePoint z) const {
    double dz = std::abs(z - z_zero_);
    double di = std::abs(z - z_inf_);
    if (di == 0.0) return kInf;
    return dz / di;
}

BeltramiField beltrami_field(const HalfCoefficients& h) {
    if (h.is_affine())
        throw AffineMap("affine input: mu is constant, use beltrami_constant_affine");
    Complex alpha = h.b * h.p - h.a * std::conj(h.p);
    Complex beta = h.b * h.q - h.c * std::conj(h.p);
    Complex gamma = h.a * h.q - h.c * h.p;
    return BeltramiField(alpha, beta, gamma);
}

Complex beltrami_constant_affine(const HalfCoefficients& h) {
    if (!h.is_affine()) throw NotAffine("map is not affine");
    // f(z) = (a z + b conj(z) + c)/q, so f_zbar / f_z = b / a
    if (std::abs(h.a) == 0.0) return Complex(kInf, 0.0);
    return h.b / h.a;
}

double eccentricity_of_map_at(const ProjectiveMap& m, PlanePoint z) {
    HalfCoefficients h = coefficients_from_matrix(m);
    if (h.is_affine()) return std::abs(beltrami_constant_affine(h));
    // direct modulus formula; stays defined even in the alpha = 0 corner
    // that beltrami_field rejects
    Complex alpha = h.b * h.p - h.a * std::conj(h.p);
    Complex beta = h.b * h.q - h.c * std::conj(h.p);
    Complex gamma = h.a * h.q - h.c * h.p;
    double num = std::abs(alpha * z + beta);
    double den = std::abs(-std::conj(alpha) * z + std::conj(gamma));
    if (den == 0.0) return kInf;
    return num / den;
}

DilatationSample dilatation_sample(const ProjectiveMap& m, PlanePoint z) {
    Eigen::Matrix2d j = jacobian_at(m, z);
    // Wirtinger parts: f_z = ((J00+J11) + i(J10-J01))/2, f_zbar = ((J00-J11) + i(J10+J01))/2
    Complex fz{0.5 * (j(0, 0) + j(1, 1)), 0.5 * (j(1, 0) - j(0, 1))};
    Complex fzb{0.5 * (j(0, 0) - j(1, 1)), 0.5 * (j(1, 0) + j(0, 1))};
    double afz = std::abs(fz), afzb = std::abs(fzb); // |f_z| +- |f_zbar| are the singular values
    double lam1 = afz + afzb;
    double lam2 = std::abs(afz - afzb);
    double det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);

    DilatationSample s;
    s.mu = (afz == 0.0) ? Complex(kInf, 0.0) : fzb / fz;
    s.eccentricity = (afz == 0.0) ? kInf : afzb / afz;
    if (lam2 == 0.0) {
        s.dilatation = kInf;
    } else {
        s.dilatation = (det < 0.0 ? -1.0 : 1.0) * lam1 / lam2;
    }
    return s;
}

double signed_dilatation_at(const ProjectiveMap& m, PlanePoint z) {
    return dilatation_sample(m, z).dilatation;
}

double det_identity_residual(const HalfCoefficients& h) {
    Complex alpha = h.b * h.p - h.a * std::conj(h.p);
    Complex beta = h.b * h.q - h.c * std::conj(h.p);
    Complex gamma = h.a * h.q - h.c * h.p;
    Complex lhs = alpha * std::conj(gamma) + std::conj(alpha) * beta;
    // symbolic expansion gives det(alpha beta; -conj(alpha) conj(gamma))
    // = -conj(p) det A for the coefficient matrix display used here
    Complex rhs = -std::conj(h.p) * raw_matrix_from_coefficients(h).determinant();
    return std::abs(lhs - rhs) / std::abs(rhs);
}

HyperbolicPencil circles_mapped_to_circles(const ProjectiveMap& m) {
    if (m.is_affine())
        throw AffineMap("affine map: no proper pencil of circles is mapped to circles");
    // A circle maps to a circle iff it passes through f^{-1}(K), K = [1, i, 0].
    // Split w = A^{-1} K into real and imaginary columns.
    Eigen::Matrix3d inv = m.matrix().inverse();
    Eigen::Vector3d wr = inv.col(0);
    Eigen::Vector3d wi = inv.col(1);
    Complex w3{wr[2], wi[2]}; // nonzero because the map is not affine
    Complex zx = Complex(wr[0], wi[0]) / w3;
    Complex zy = Complex(wr[1], wi[1]) / w3;

    // (zx - cx)^2 + (zy - cy)^2 = r^2 splits into two real equations in the
    // circle data (cx, cy, t = cx^2 + cy^2 - r^2):
    //   Im: centers lie on a line (the pencil axis)
    //   Re: fixes t, hence r^2, along that line
    Complex s = zx * zx + zy * zy;
    PlanePoint n{zx.imag(), zy.imag()};      // axis normal
    PlanePoint mvec{zx.real(), zy.real()};
    double nn = std::norm(n);
    if (!(nn > 0.0)) throw Error("preimage of the circle point is unexpectedly real");
    PlanePoint c0 = n * (s.imag() / (2.0 * nn));
    PlanePoint dir = rot90(n) / std::abs(n);

    // r^2 along c(sigma) = c0 + sigma*dir is a monic quadratic in sigma;
    // its roots are the point circles, i.e. the pencil limit points.
    double bq = dot(dir, c0 - mvec);
    double cq = std::norm(c0 - mvec) - std::norm(mvec) + s.real();
    double disc = bq * bq - cq;
    if (!(disc > 0.0)) throw Error("pencil discriminant not positive");
    double root = std::sqrt(disc);
    PlanePoint p1 = c0 + (-bq - root) * dir;
    PlanePoint p2 = c0 + (-bq + root) * dir;

    // label the limit points by the eccentricity of the map
    BeltramiField field = beltrami_field(coefficients_from_matrix(m));
    if (field.eccentricity(p1) <= field.eccentricity(p2)) return {p1, p2};
    return {p2, p1};
}

MaxEccentricity max_eccentricity_on_triangle(const BeltramiField& field, const Triangle& t) {
    double ecc[3];
    for (int i = 0; i < 3; ++i) {
        ecc[i] = field.eccentricity(t.vertex(i));
        if (!(ecc[i] < 1.0))
            throw NotOrientationPreserving("triangle vertex has eccentricity >= 1");
    }
    // redundant with convexity, but cheap: the |mu| = 1 line must miss T
    Line radical = field.pencil().radical_line();
    for (int i = 0; i < 3; ++i) {
        if (!(radical.signed_distance(t.vertex(i)) < 0.0))
            throw NotOrientationPreserving("triangle reaches the |mu| = 1 line");
    }
    MaxEccentricity best{ecc[0], 0};
    for (int i = 1; i < 3; ++i)
        if (ecc[i] > best.value) best = {ecc[i], i};
    return best;
}

} // namespace projconf
