#pragma once

#include "projconf/projective.hpp"
#include "projconf/triangle.hpp"

namespace projconf {

// Coefficients of f(z) = (a z + b conj(z) + c) / (p z + conj(p) conj(z) + q),
// the affine-chart form of a projective map. Homogeneous: any common real
// scale describes the same map.
struct HalfCoefficients {
    Complex a, b, c, p;
    double q;

    double norm() const;
    bool is_affine(double tol = 1e-12) const; // |p| <= tol * norm()
};

HalfCoefficients coefficients_from_matrix(const ProjectiveMap& m);
ProjectiveMap matrix_from_coefficients(const HalfCoefficients& h);

// The un-normalized matrix built from the coefficient display; needed where
// the scale must stay tied to the coefficients (determinant identity).
Eigen::Matrix3d raw_matrix_from_coefficients(const HalfCoefficients& h);

// Hyperbolic pencil of circles: the Apollonius family of two limit points.
struct HyperbolicPencil {
    PlanePoint limit_zero; // eccentricity 0
    PlanePoint limit_inf;  // eccentricity infinity

    Line radical_line() const; // the k = 1 member, the perpendicular bisector
};

// Apollonius contour { z : |z - limit_zero| = k |z - limit_inf| }.
// Returns the Line variant for k = 1 (within 1e-12).
GeneralizedCircle contour_circle(const HyperbolicPencil& pencil, double k);

// mu_f(z) = (alpha z + beta) / (-alpha conj(z) + gamma) for a non-affine map,
// with alpha = b p - a conj(p), beta = b q - c conj(p), gamma = a q - c p.
class BeltramiField {
public:
    BeltramiField(Complex alpha, Complex beta, Complex gamma);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    Complex gamma() const { return gamma_; }

    PlanePoint z_zero() const { return z_zero_; }
    PlanePoint z_inf() const { return z_inf_; }
    HyperbolicPencil pencil() const { return {z_zero_, z_inf_}; }

    Complex mu(PlanePoint z) const;
    // |mu(z)| = |z - z_zero| / |z - z_inf|; +infinity at z_inf
    double eccentricity(PlanePoint z) const;

private:
    Complex alpha_, beta_, gamma_;
    PlanePoint z_zero_, z_inf_;
};

BeltramiField beltrami_field(const HalfCoefficients& h);

// Constant Beltrami coefficient b/a of an affine map; 0 iff a similarity.
Complex beltrami_constant_affine(const HalfCoefficients& h);

inline double eccentricity_at(const BeltramiField& field, PlanePoint z) {
    return field.eccentricity(z);
}

// |mu| of any map at a point: constant for affine maps, the field value
// otherwise. Convenience used by the triangle-map layer.
double eccentricity_of_map_at(const ProjectiveMap& m, PlanePoint z);

// Pointwise data derived from the true Jacobian of the dehomogenized map.
struct DilatationSample {
    Complex mu;
    double eccentricity; // |mu|, may be +infinity
    double dilatation;   // signed +-lambda1/lambda2, |D| >= 1, may be +infinity
};

DilatationSample dilatation_sample(const ProjectiveMap& m, PlanePoint z);

// Signed dilatation +-lambda1/lambda2 at z, positive where orientation
// preserving. Never NaN; +infinity where the derivative is singular.
double signed_dilatation_at(const ProjectiveMap& m, PlanePoint z);

// Residual of the identity det(alpha beta; -conj(alpha) conj(gamma)) =
// -conj(p) det A, relative to |conj(p) det A|. The nonzero determinant is
// what makes |mu| the modulus of a Moebius transformation.
double det_identity_residual(const HalfCoefficients& h);

// The hyperbolic pencil whose circles are exactly the ones the map sends to
// circles, constructed independently of the Beltrami field from the
// incidence condition "the image conic passes the circle-point test",
// i.e. from the preimage of the imaginary circle point K = [1, i, 0].
HyperbolicPencil circles_mapped_to_circles(const ProjectiveMap& m);

struct MaxEccentricity {
    double value;
    int vertex; // argmax vertex index, 0..2
};

// Maximum of |mu| over a triangle where the map is orientation preserving;
// attained at a vertex because sublevel sets are disks.
MaxEccentricity max_eccentricity_on_triangle(const BeltramiField& field, const Triangle& t);

} // namespace projconf
