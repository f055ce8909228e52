#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "projconf/dilatation.hpp"
#include "projconf/triangle.hpp"

namespace projconf {

// Projective map between two triangles fixing the vertex correspondence and
// mapping the exponent-t-center of the source to that of the target.
// t = 0 is affine (piecewise linear), t = 1 angle bisector preserving,
// t = 2 circumcircle preserving.
struct TriangleMapFamily {
    Triangle source;
    Triangle target;
    double t;
    ProjectiveMap map;
};

TriangleMapFamily family_map(const Triangle& src, const Triangle& dst, double t_param);

inline TriangleMapFamily app_map(const Triangle& src, const Triangle& dst) {
    return family_map(src, dst, 1.0);
}

struct AffineTriangleMap {
    ProjectiveMap map;
    Complex mu; // constant Beltrami coefficient of the linear part
};

// The real affine map with the same vertex correspondence.
AffineTriangleMap affine_map(const Triangle& src, const Triangle& dst);

// Check of the circumcircle-preserving equalities: |mu| at the three source
// vertices of the t = 2 map agrees with |mu_h| of the affine map, and the
// interior never exceeds the vertex value.
struct CppReport {
    std::array<double, 3> vertex_eccentricity;
    double affine_eccentricity = 0.0;
    double vertex_affine_mismatch = 0.0; // max_v |ecc_v - affine_ecc|
    double grid_max = 0.0;               // max |mu| over the interior grid
    double grid_excess = 0.0;            // grid_max - max_v ecc_v
    int grid_n = 0;
};

CppReport verify_cpp_vertex_eccentricity(const Triangle& src, const Triangle& dst,
                                         int grid_n = 50);

// Sampling check that the angle bisector preserving map simultaneously
// minimizes the vertex eccentricities over all projective maps with the
// same vertex correspondence (parametrized by the image of the incenter).
struct OptimalityReport {
    int n_samples = 0;
    int n_skipped = 0;          // samples rejected as not orientation preserving
    double worst_margin = 0.0;  // min over samples and vertices of ecc_g - ecc_app
    double line_search_offset = 0.0; // |minimizer| along the slice, in units of
                                     // the half chord through the incenter image
    std::array<double, 3> app_vertex_eccentricity{};
    struct Witness {
        PlanePoint incenter_image;
        int vertex;
        double margin;
    };
    std::vector<Witness> witnesses; // the worst few samples
};

OptimalityReport optimality_search(const Triangle& src, const Triangle& dst,
                                   int n_samples, std::uint64_t seed);

// Numerical check of the SL2 lemma: among det-1 linear maps taking lines
// Rv, Rw to lines Rv~, Rw~, the least dilatation is attained exactly by the
// map taking angle bisectors to angle bisectors, unique up to sign.
struct Sl2Report {
    double min_dilatation = 0.0;
    double lambda_min = 0.0;           // family parameter of the scan minimizer
    double bisector_residual_plus = 0.0;
    double bisector_residual_minus = 0.0;
    Eigen::Matrix2d minimizer;         // canonical sign: positive trace if possible
};

Sl2Report sl2_bisector_minimality(Complex v, Complex w, Complex v_tilde, Complex w_tilde,
                                  int n_samples = 2000);

// JSON report text: {claim, n_samples, worst_margin, witnesses: [...]}
std::string report_json(const CppReport& rep);
std::string report_json(const OptimalityReport& rep);
std::string report_json(const Sl2Report& rep);

} // namespace projconf
