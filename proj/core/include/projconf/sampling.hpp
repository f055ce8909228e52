#pragma once

#include <cstdint>
#include <random>

#include "projconf/dilatation.hpp"
#include "projconf/mesh.hpp"
#include "projconf/triangle.hpp"

namespace projconf {

// Deterministic generators behind the verification suites. Everything is
// seeded; no global state.
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
PlanePoint random_point(Rng& rng, double box);

// Non-affine map with a well-conditioned contour pencil: limit points
// separated, not too far out, |alpha| bounded away from zero.
ProjectiveMap random_nonaffine_map(Rng& rng);

Triangle random_triangle(Rng& rng, double box = 1.0, double min_angle = 0.3);

// Triangle inside the disk around `center`; used to sample inside the
// orientation-preserving half-plane of a pencil.
Triangle random_triangle_in_disk(Rng& rng, PlanePoint center, double radius,
                                 double min_angle = 0.3);

// Jittered triangulated grid over [0,width] x [0,height]; nx * ny vertices.
MetricTriangulation grid_mesh(int nx, int ny, double width, double height, double jitter,
                              std::uint64_t seed);

// Moebius coefficients with the pole outside the safety margin of the mesh;
// the second element is the generated pair.
struct MoebiusPairSample {
    std::array<Complex, 4> coeffs;
    MeshPair pair;
};
MoebiusPairSample random_moebius_pair(const MetricTriangulation& mesh, Rng& rng);

// Move one interior vertex by rel_amount of its shortest incident edge;
// breaks discrete conformal equivalence while keeping the mesh valid.
MetricTriangulation perturb_one_vertex(const MetricTriangulation& mesh, double rel_amount,
                                       Rng& rng);

} // namespace projconf
