#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <vector>

#include "projconf/geometry.hpp"
#include "projconf/errors.hpp"

namespace projconf {

// Connected, consistently oriented triangulation with per-edge lengths and
// optional planar vertex positions. Immutable after construction.
class MetricTriangulation {
public:
    struct Edge {
        int i, j;          // i < j
        double length;
        int face_ij = -1;  // face containing the directed edge i -> j
        int face_ji = -1;  // face containing the directed edge j -> i
        bool interior() const { return face_ij >= 0 && face_ji >= 0; }
    };

    // Lengths derived from positions when absent; when both are given they
    // must agree to 1e-9 relative.
    static MetricTriangulation create(
        int n_vertices,
        std::vector<std::array<int, 3>> faces,
        std::optional<std::vector<PlanePoint>> positions,
        std::optional<std::vector<std::tuple<int, int, double>>> lengths);

    int n_vertices() const { return n_vertices_; }
    const std::vector<std::array<int, 3>>& faces() const { return faces_; }
    bool has_positions() const { return positions_.has_value(); }
    const std::vector<PlanePoint>& positions() const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i, int j) const;
    double length(int i, int j) const { return edge(i, j).length; }

    // vertex of the given face opposite to edge {i, j}
    int opposite_vertex(int face, int i, int j) const;

    // bounding-box diagonal of the positions (the normalization scale)
    double diameter() const;

    MetricTriangulation with_positions(std::vector<PlanePoint> positions) const;

private:
    MetricTriangulation() = default;

    int n_vertices_ = 0;
    std::vector<std::array<int, 3>> faces_;
    std::optional<std::vector<PlanePoint>> positions_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

// Two metric triangulations over identical combinatorics.
struct MeshPair {
    MetricTriangulation source;
    MetricTriangulation target;

    MeshPair(MetricTriangulation src, MetricTriangulation tgt);
};

// Length cross ratio of an interior edge, (l_im * l_jk) / (l_mj * l_ki),
// where k is opposite in the face containing i -> j and m opposite in the
// face containing j -> i. Independent of the direction chosen for the edge.
double length_cross_ratio(const MetricTriangulation& mesh, int i, int j);

enum class Verdict { Equivalent, Inconclusive, Inequivalent };

struct EquivalenceReport {
    double max_log_deviation = 0.0; // max |log lcr_src - log lcr_tgt|
    int worst_edge_i = -1, worst_edge_j = -1;
    int n_interior_edges = 0;

    Verdict verdict(double tol = 1e-8, double inconclusive_band = 1e-5) const;
};

EquivalenceReport check_equivalence_cross_ratios(const MeshPair& pair);

struct ScaleFactors {
    std::vector<double> u; // per-vertex logarithmic scale factors
};

struct ScaleFactorResult {
    ScaleFactors factors;
    double residual = 0.0;       // max edge equation error
    bool bipartite_gauge = false; // a 1-parameter gauge was fixed
};

// Least squares solve of u_i + u_j = 2 log(l~_ij / l_ij) over all edges.
ScaleFactorResult solve_scale_factors(const MeshPair& pair);

struct ContinuityReport {
    double t = 0.0;
    double max_discrepancy = 0.0; // normalized by the target diameter
    int worst_edge_i = -1, worst_edge_j = -1;
    int n_interior_edges = 0;
};

// Evaluate the exponent-t face maps of both faces incident to each interior
// edge at sample points of the shared edge and report the worst mismatch.
ContinuityReport edge_continuity(const MeshPair& pair, double t_param,
                                 int samples_per_edge = 17);

// Target mesh = vertexwise image under the Moebius map
// z -> (a z + b) / (c z + d); exactly discretely conformally equivalent
// because |T(u) - T(v)|^2 = |u - v|^2 |T'(u)| |T'(v)|.
MeshPair generate_moebius_pair(const MetricTriangulation& mesh,
                               const std::array<Complex, 4>& coeffs,
                               double margin_factor = 0.1);

} // namespace projconf
