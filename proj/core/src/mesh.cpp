#include "projconf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "projconf/triangle.hpp"
#include "projconf/triangle_maps.hpp"

namespace projconf {

namespace {

std::uint64_t edge_key(int i, int j) {
    if (i > j) std::swap(i, j);
    return (std::uint64_t(std::uint32_t(i)) << 32) | std::uint32_t(j);
}

double point_segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
    PlanePoint ab = b - a;
    double t = dot(p - a, ab) / std::norm(ab);
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double point_triangle_distance(PlanePoint p, PlanePoint a, PlanePoint b, PlanePoint c) {
    if (cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 && cross(a - c, p - c) >= 0)
        return 0.0;
    return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                     point_segment_distance(p, c, a)});
}

Triangle face_triangle(const MetricTriangulation& mesh, int f) {
    const auto& face = mesh.faces()[f];
    const auto& pos = mesh.positions();
    return Triangle(pos[face[0]], pos[face[1]], pos[face[2]]);
}

} // namespace

MetricTriangulation MetricTriangulation::create(
    int n_vertices,
    std::vector<std::array<int, 3>> faces,
    std::optional<std::vector<PlanePoint>> positions,
    std::optional<std::vector<std::tuple<int, int, double>>> lengths) {
    if (n_vertices <= 0) throw MeshError("mesh needs at least one vertex");
    if (faces.empty()) throw MeshError("mesh needs at least one face");
    if (!positions && !lengths)
        throw MeshError("mesh needs positions or edge lengths");
    if (positions && int(positions->size()) != n_vertices)
        throw MeshError("positions size does not match vertex count");

    MetricTriangulation mesh;
    mesh.n_vertices_ = n_vertices;
    mesh.faces_ = std::move(faces);
    mesh.positions_ = std::move(positions);

    // collect edges; a directed edge may appear in at most one face, which
    // also enforces consistent orientation
    auto edge_slot = [&](int i, int j) -> Edge& {
        auto key = edge_key(i, j);
        auto it = mesh.edge_index_.find(key);
        if (it == mesh.edge_index_.end()) {
            it = mesh.edge_index_.emplace(key, int(mesh.edges_.size())).first;
            mesh.edges_.push_back(Edge{std::min(i, j), std::max(i, j), 0.0, -1, -1});
        }
        return mesh.edges_[it->second];
    };
    for (int f = 0; f < int(mesh.faces_.size()); ++f) {
        const auto& face = mesh.faces_[f];
        for (int v : face)
            if (v < 0 || v >= n_vertices) throw MeshError("face vertex index out of range");
        if (face[0] == face[1] || face[1] == face[2] || face[2] == face[0])
            throw MeshError("face with repeated vertex");
        for (int e = 0; e < 3; ++e) {
            int i = face[e], j = face[(e + 1) % 3];
            Edge& edge = edge_slot(i, j);
            int& slot = (i < j) ? edge.face_ij : edge.face_ji;
            if (slot >= 0)
                throw MeshError("directed edge shared by two faces (inconsistent orientation "
                                "or non-manifold input)");
            slot = f;
        }
    }

    // lengths: provided, derived, or both (with agreement)
    std::unordered_map<std::uint64_t, double> given;
    if (lengths) {
        for (auto& [i, j, l] : *lengths) {
            if (i < 0 || i >= n_vertices || j < 0 || j >= n_vertices || i == j)
                throw MeshError("length entry with invalid vertex pair");
            if (!(l > 0.0) || !std::isfinite(l)) throw MeshError("edge length must be positive");
            if (!given.emplace(edge_key(i, j), l).second)
                throw MeshError("duplicate length entry for an edge");
        }
    }
    for (Edge& e : mesh.edges_) {
        auto it = given.find(edge_key(e.i, e.j));
        double derived = -1.0;
        if (mesh.positions_) {
            derived = std::abs((*mesh.positions_)[e.i] - (*mesh.positions_)[e.j]);
            if (!(derived > 0.0)) throw MeshError("coincident vertex positions on an edge");
        }
        if (it != given.end()) {
            e.length = it->second;
            if (derived > 0.0 && std::abs(derived - e.length) > 1e-9 * e.length)
                throw MeshError("given edge length disagrees with vertex positions");
        } else if (derived > 0.0) {
            e.length = derived;
        } else {
            throw MeshError("missing length for a mesh edge");
        }
    }
    if (lengths && given.size() != mesh.edges_.size())
        throw MeshError("length entries for edges that are not in any face");

    // per-face metric and orientation checks
    for (int f = 0; f < int(mesh.faces_.size()); ++f) {
        const auto& face = mesh.faces_[f];
        double a = mesh.length(face[1], face[2]);
        double b = mesh.length(face[2], face[0]);
        double c = mesh.length(face[0], face[1]);
        if (!(a < b + c && b < c + a && c < a + b))
            throw MeshError("face violates the strict triangle inequality");
        if (mesh.positions_) {
            const auto& pos = *mesh.positions_;
            if (cross(pos[face[1]] - pos[face[0]], pos[face[2]] - pos[face[0]]) <= 0.0)
                throw MeshError("face is not positively oriented");
        }
    }

    // connectivity over the edge graph
    std::vector<char> seen(n_vertices, 0);
    std::queue<int> fringe;
    fringe.push(mesh.faces_[0][0]);
    seen[mesh.faces_[0][0]] = 1;
    std::vector<std::vector<int>> adj(n_vertices);
    for (const Edge& e : mesh.edges_) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    int reached = 0;
    while (!fringe.empty()) {
        int v = fringe.front();
        fringe.pop();
        ++reached;
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                fringe.push(w);
            }
        }
    }
    if (reached != n_vertices) throw MeshError("mesh is not connected");

    return mesh;
}

const std::vector<PlanePoint>& MetricTriangulation::positions() const {
    if (!positions_) throw MissingPositions("mesh carries no vertex positions");
    return *positions_;
}

const MetricTriangulation::Edge& MetricTriangulation::edge(int i, int j) const {
    auto it = edge_index_.find(edge_key(i, j));
    if (it == edge_index_.end()) throw MeshError("no such edge in the mesh");
    return edges_[it->second];
}

int MetricTriangulation::opposite_vertex(int face, int i, int j) const {
    for (int v : faces_[face])
        if (v != i && v != j) return v;
    throw MeshError("edge vertices do not belong to the face");
}

double MetricTriangulation::diameter() const {
    const auto& pos = positions();
    double x0 = pos[0].real(), x1 = x0, y0 = pos[0].imag(), y1 = y0;
    for (PlanePoint p : pos) {
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    }
    return std::hypot(x1 - x0, y1 - y0);
}

MetricTriangulation MetricTriangulation::with_positions(std::vector<PlanePoint> positions) const {
    return create(n_vertices_, faces_, std::move(positions), std::nullopt);
}

MeshPair::MeshPair(MetricTriangulation src, MetricTriangulation tgt)
    : source(std::move(src)), target(std::move(tgt)) {
    if (source.n_vertices() != target.n_vertices() || source.faces() != target.faces())
        throw MeshError("meshes are not combinatorially equivalent");
}

double length_cross_ratio(const MetricTriangulation& mesh, int i, int j) {
    const auto& e = mesh.edge(i, j);
    if (!e.interior()) throw BoundaryEdge("length cross ratio needs an interior edge");
    int face_ij = (i < j) ? e.face_ij : e.face_ji;
    int face_ji = (i < j) ? e.face_ji : e.face_ij;
    int k = mesh.opposite_vertex(face_ij, i, j);
    int m = mesh.opposite_vertex(face_ji, i, j);
    return (mesh.length(i, m) * mesh.length(j, k)) /
           (mesh.length(m, j) * mesh.length(k, i));
}

Verdict EquivalenceReport::verdict(double tol, double inconclusive_band) const {
    if (max_log_deviation <= tol) return Verdict::Equivalent;
    if (max_log_deviation <= std::max(tol, inconclusive_band)) return Verdict::Inconclusive;
    return Verdict::Inequivalent;
}

EquivalenceReport check_equivalence_cross_ratios(const MeshPair& pair) {
    EquivalenceReport rep;
    for (const auto& e : pair.source.edges()) {
        if (!e.interior()) continue;
        ++rep.n_interior_edges;
        double dev = std::abs(std::log(length_cross_ratio(pair.source, e.i, e.j)) -
                              std::log(length_cross_ratio(pair.target, e.i, e.j)));
        if (dev > rep.max_log_deviation) {
            rep.max_log_deviation = dev;
            rep.worst_edge_i = e.i;
            rep.worst_edge_j = e.j;
        }
    }
    return rep;
}

ScaleFactorResult solve_scale_factors(const MeshPair& pair) {
    int n = pair.source.n_vertices();
    const auto& edges = pair.source.edges();

    // 2-coloring to detect a bipartite edge graph (never for triangulations,
    // whose faces are odd cycles, but the gauge is handled anyway)
    std::vector<int> color(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    bool bipartite = true;
    std::queue<int> fringe;
    color[0] = 0;
    fringe.push(0);
    while (!fringe.empty() && bipartite) {
        int v = fringe.front();
        fringe.pop();
        for (int w : adj[v]) {
            if (color[w] < 0) {
                color[w] = 1 - color[v];
                fringe.push(w);
            } else if (color[w] == color[v]) {
                bipartite = false;
                break;
            }
        }
    }

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    std::vector<double> r(edges.size());
    for (size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        r[k] = 2.0 * std::log(pair.target.length(e.i, e.j) / pair.source.length(e.i, e.j));
        rhs[e.i] += r[k];
        rhs[e.j] += r[k];
    }

    Eigen::VectorXd u(n);
    if (!bipartite) {
        // normal equations on the vertex-edge incidence: (D + A) u = rhs
        Eigen::SparseMatrix<double> m(n, n);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(edges.size() * 2 + n);
        Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
        for (const auto& e : edges) {
            trip.emplace_back(e.i, e.j, 1.0);
            trip.emplace_back(e.j, e.i, 1.0);
            deg[e.i] += 1.0;
            deg[e.j] += 1.0;
        }
        for (int i = 0; i < n; ++i) trip.emplace_back(i, i, deg[i]);
        m.setFromTriplets(trip.begin(), trip.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
        if (solver.info() != Eigen::Success)
            throw MeshError("scale factor normal equations could not be factored");
        u = solver.solve(rhs);
    } else {
        // one-parameter kernel spanned by the coloring sign vector s; fix the
        // alternating-sum gauge s.u = 0 by a rank-one shift
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd s(n);
        for (int i = 0; i < n; ++i) s[i] = color[i] == 0 ? 1.0 : -1.0;
        for (const auto& e : edges) {
            m(e.i, e.j) += 1.0;
            m(e.j, e.i) += 1.0;
            m(e.i, e.i) += 1.0;
            m(e.j, e.j) += 1.0;
        }
        m += s * s.transpose();
        u = m.ldlt().solve(rhs);
    }

    ScaleFactorResult res;
    res.bipartite_gauge = bipartite;
    res.factors.u.assign(u.data(), u.data() + n);
    for (size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        res.residual = std::max(res.residual, std::abs(u[e.i] + u[e.j] - r[k]));
    }
    return res;
}

ContinuityReport edge_continuity(const MeshPair& pair, double t_param, int samples_per_edge) {
    if (!pair.source.has_positions() || !pair.target.has_positions())
        throw MissingPositions("edge continuity needs positions on both meshes");
    if (samples_per_edge < 2) throw Error("need at least two samples per edge");

    int n_faces = int(pair.source.faces().size());
    std::vector<std::optional<ProjectiveMap>> face_maps(n_faces);
    auto map_of_face = [&](int f) -> const ProjectiveMap& {
        if (!face_maps[f]) {
            face_maps[f] =
                family_map(face_triangle(pair.source, f), face_triangle(pair.target, f), t_param)
                    .map;
        }
        return *face_maps[f];
    };

    ContinuityReport rep;
    rep.t = t_param;
    double scale = pair.target.diameter();
    const auto& pos = pair.source.positions();
    for (const auto& e : pair.source.edges()) {
        if (!e.interior()) continue;
        ++rep.n_interior_edges;
        const ProjectiveMap& left = map_of_face(e.face_ij);
        const ProjectiveMap& right = map_of_face(e.face_ji);
        for (int s = 0; s < samples_per_edge; ++s) {
            double w = double(s) / (samples_per_edge - 1);
            PlanePoint x = (1.0 - w) * pos[e.i] + w * pos[e.j];
            double d = std::abs(left(x) - right(x)) / scale;
            if (d > rep.max_discrepancy) {
                rep.max_discrepancy = d;
                rep.worst_edge_i = e.i;
                rep.worst_edge_j = e.j;
            }
        }
    }
    return rep;
}

MeshPair generate_moebius_pair(const MetricTriangulation& mesh,
                               const std::array<Complex, 4>& coeffs,
                               double margin_factor) {
    const auto& pos = mesh.positions();
    auto [a, b, c, d] = coeffs;
    Complex det = a * d - b * c;
    double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
    if (std::abs(det) <= 1e-12 * scale * scale)
        throw Error("Moebius coefficients are singular");

    if (std::abs(c) > 1e-14 * scale) {
        PlanePoint pole = -d / c;
        double margin = margin_factor * mesh.diameter();
        for (const auto& face : mesh.faces()) {
            double dist =
                point_triangle_distance(pole, pos[face[0]], pos[face[1]], pos[face[2]]);
            if (dist < margin)
                throw PoleTooClose("Moebius pole is within the safety margin of the mesh");
        }
    }

    std::vector<PlanePoint> image(pos.size());
    for (size_t i = 0; i < pos.size(); ++i)
        image[i] = (a * pos[i] + b) / (c * pos[i] + d);
    for (const auto& face : mesh.faces()) {
        if (cross(image[face[1]] - image[face[0]], image[face[2]] - image[face[0]]) <= 0.0)
            throw OrientationFlip("Moebius image of a face is not positively oriented");
    }
    return MeshPair(mesh, mesh.with_positions(std::move(image)));
}

} // namespace projconf
