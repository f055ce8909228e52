#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "projconf/mesh.hpp"
#include "projconf/mesh_io.hpp"
#include "projconf/sampling.hpp"

using namespace projconf;

namespace {

// two faces sharing edge {0, 1}: (0,1,2) left, (1,0,3) right
MetricTriangulation butterfly(PlanePoint p0, PlanePoint p1, PlanePoint p2, PlanePoint p3) {
    return MetricTriangulation::create(4, {{0, 1, 2}, {1, 0, 3}},
                                       std::vector<PlanePoint>{p0, p1, p2, p3}, std::nullopt);
}

MetricTriangulation scale_lengths(const MetricTriangulation& mesh,
                                  const std::vector<double>& u) {
    std::vector<std::tuple<int, int, double>> lengths;
    for (const auto& e : mesh.edges())
        lengths.push_back({e.i, e.j, std::exp(0.5 * (u[e.i] + u[e.j])) * e.length});
    return MetricTriangulation::create(mesh.n_vertices(), mesh.faces(), std::nullopt, lengths);
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/projconf_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("length cross ratio: equilateral pair and the split square") {
    double h = std::sqrt(3.0) / 2;
    MetricTriangulation equi = butterfly({0, 0}, {1, 0}, {0.5, h}, {0.5, -h});
    CHECK(length_cross_ratio(equi, 0, 1) == doctest::Approx(1.0).epsilon(1e-14));

    // unit square split by the diagonal: all cross ratios 1
    MetricTriangulation square = MetricTriangulation::create(
        4, {{0, 1, 2}, {0, 2, 3}},
        std::vector<PlanePoint>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::nullopt);
    CHECK(length_cross_ratio(square, 0, 2) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(length_cross_ratio(square, 0, 1), BoundaryEdge); // boundary edge
}

TEST_CASE("length cross ratio: direction invariance and face-swap reciprocal") {
    MetricTriangulation mesh = butterfly({0, 0}, {2, 0.3}, {0.7, 1.5}, {1.1, -0.9});
    double v = length_cross_ratio(mesh, 0, 1);
    CHECK(length_cross_ratio(mesh, 1, 0) == doctest::Approx(v).epsilon(1e-14));

    // hand evaluation with the two faces swapped gives the reciprocal
    double swapped = (mesh.length(0, 2) * mesh.length(1, 3)) /
                     (mesh.length(2, 1) * mesh.length(3, 0));
    CHECK(swapped == doctest::Approx(1.0 / v).epsilon(1e-12));

    // degree-0 homogeneity: scaling all lengths changes nothing
    MetricTriangulation scaled = scale_lengths(mesh, {1.4, 1.4, 1.4, 1.4});
    CHECK(length_cross_ratio(scaled, 0, 1) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("cross-ratio equivalence check") {
    MetricTriangulation mesh = grid_mesh(8, 8, 1.0, 1.0, 0.25, 42);
    MeshPair same(mesh, mesh);
    CHECK(check_equivalence_cross_ratios(same).max_log_deviation == 0.0);
    CHECK(check_equivalence_cross_ratios(same).verdict() == Verdict::Equivalent);

    // a target generated by scale factors has equal cross ratios
    Rng rng(7);
    std::vector<double> u(mesh.n_vertices());
    for (double& x : u) x = uniform(rng, -0.05, 0.05);
    MeshPair generated(mesh, scale_lengths(mesh, u));
    CHECK(check_equivalence_cross_ratios(generated).max_log_deviation <= 1e-10);

    // a 1% length perturbation is always detected
    auto lengths = [&] {
        std::vector<std::tuple<int, int, double>> out;
        for (const auto& e : mesh.edges()) out.push_back({e.i, e.j, e.length});
        return out;
    }();
    for (auto& [i, j, l] : lengths) {
        if (mesh.edge(i, j).interior()) {
            l *= 1.01;
            break;
        }
    }
    MeshPair perturbed(mesh, MetricTriangulation::create(mesh.n_vertices(), mesh.faces(),
                                                         std::nullopt, lengths));
    CHECK(check_equivalence_cross_ratios(perturbed).max_log_deviation > 1e-3);
    CHECK(check_equivalence_cross_ratios(perturbed).verdict() == Verdict::Inequivalent);
}

TEST_CASE("scale factor solve: identity, planted factors, and negative control") {
    MetricTriangulation mesh = grid_mesh(9, 7, 1.5, 1.0, 0.2, 43);
    ScaleFactorResult same = solve_scale_factors(MeshPair(mesh, mesh));
    CHECK(same.residual <= 1e-12);
    CHECK_FALSE(same.bipartite_gauge);
    for (double x : same.factors.u) CHECK(std::abs(x) <= 1e-10);

    Rng rng(8);
    std::vector<double> planted(mesh.n_vertices());
    for (double& x : planted) x = uniform(rng, -0.05, 0.05);
    ScaleFactorResult rec = solve_scale_factors(MeshPair(mesh, scale_lengths(mesh, planted)));
    CHECK(rec.residual <= 1e-10);
    for (int v = 0; v < mesh.n_vertices(); ++v)
        CHECK(std::abs(rec.factors.u[v] - planted[v]) <= 1e-9);

    MetricTriangulation bad = perturb_one_vertex(mesh, 0.03, rng);
    ScaleFactorResult neg = solve_scale_factors(MeshPair(mesh, bad));
    CHECK(neg.residual > 1e-6);
    CHECK(check_equivalence_cross_ratios(MeshPair(mesh, bad)).max_log_deviation > 1e-5);
}

TEST_CASE("edge continuity across the exponent-t family") {
    MetricTriangulation mesh = grid_mesh(10, 10, 2.0, 2.0, 0.25, 44);
    Rng rng(9);
    MeshPair pair = random_moebius_pair(mesh, rng).pair;

    // PL interpolation is continuous no matter what
    MeshPair bad(pair.source, perturb_one_vertex(pair.target, 0.03, rng));
    CHECK(edge_continuity(bad, 0.0).max_discrepancy <= 1e-12);

    for (double t : {1.0, 2.0}) {
        CHECK(edge_continuity(pair, t).max_discrepancy <= 1e-8);
        CHECK(edge_continuity(bad, t).max_discrepancy > 1e-4);
    }

    MetricTriangulation metric_only = MetricTriangulation::create(
        mesh.n_vertices(), mesh.faces(), std::nullopt, [&] {
            std::vector<std::tuple<int, int, double>> out;
            for (const auto& e : mesh.edges()) out.push_back({e.i, e.j, e.length});
            return out;
        }());
    CHECK_THROWS_AS(edge_continuity(MeshPair(metric_only, metric_only), 2.0), MissingPositions);
}

TEST_CASE("moebius pair generation") {
    MetricTriangulation mesh = grid_mesh(7, 7, 1.0, 1.0, 0.2, 45);

    MeshPair same = generate_moebius_pair(mesh, {Complex(1), Complex(0), Complex(0), Complex(1)});
    for (int v = 0; v < mesh.n_vertices(); ++v)
        CHECK(std::abs(same.target.positions()[v] - mesh.positions()[v]) <= 1e-15);

    // a similarity gives constant scale factors log|a|
    Complex a{1.3, -0.6};
    MeshPair sim = generate_moebius_pair(mesh, {a, Complex(0.4, 2.0), Complex(0), Complex(1)});
    ScaleFactorResult sf = solve_scale_factors(sim);
    CHECK(sf.residual <= 1e-12);
    for (double u : sf.factors.u)
        CHECK(u == doctest::Approx(std::log(std::abs(a))).epsilon(1e-12));

    // an inversion with a far pole passes both checkers
    PlanePoint pole{5.0, 4.0};
    MeshPair inv = generate_moebius_pair(mesh, {Complex(0), Complex(1), Complex(1), -pole});
    CHECK(check_equivalence_cross_ratios(inv).max_log_deviation <= 1e-10);
    CHECK(solve_scale_factors(inv).residual <= 1e-10);

    // pole inside the safety margin
    CHECK_THROWS_AS(
        generate_moebius_pair(mesh, {Complex(0), Complex(1), Complex(1), Complex(-0.5, -0.6)}),
        PoleTooClose);
    // margin disabled: faces around the pole flip
    CHECK_THROWS_AS(generate_moebius_pair(
                        mesh, {Complex(0), Complex(1), Complex(1), Complex(-0.5, -0.6)}, 0.0),
                    OrientationFlip);
    // singular coefficients
    CHECK_THROWS_AS(generate_moebius_pair(mesh, {Complex(1), Complex(2), Complex(2), Complex(4)}),
                    Error);
}

TEST_CASE("equivalence checks are similarity invariant") {
    MetricTriangulation mesh = grid_mesh(7, 6, 1.2, 1.0, 0.2, 46);
    Rng rng(10);
    MeshPair pair = random_moebius_pair(mesh, rng).pair;
    double dev = check_equivalence_cross_ratios(pair).max_log_deviation;

    Complex a = std::polar(2.3, 0.7);
    std::vector<PlanePoint> moved;
    for (PlanePoint p : pair.target.positions()) moved.push_back(a * p + Complex(5, -2));
    MeshPair moved_pair(pair.source, pair.target.with_positions(moved));
    CHECK(std::abs(check_equivalence_cross_ratios(moved_pair).max_log_deviation - dev) <= 1e-12);
    CHECK(solve_scale_factors(moved_pair).residual <= 1e-10);
}

TEST_CASE("angle bisector foot and split ratio") {
    Triangle iso(PlanePoint{0, 0}, PlanePoint{2, 0}, PlanePoint{1, 1.7});
    auto [foot, ratio] = angle_bisector_edge_split(iso, 2); // apex of the isoceles
    CHECK(std::abs(foot - PlanePoint{1, 0}) <= 1e-14);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-14));

    Triangle right(PlanePoint{0, 0}, PlanePoint{4, 0}, PlanePoint{0, 3});
    auto [f, r] = angle_bisector_edge_split(right, 0);
    CHECK(r == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(f - PlanePoint{12.0 / 7.0, 12.0 / 7.0}) <= 1e-12);

    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        Triangle t = random_triangle(rng);
        for (int v = 0; v < 3; ++v) {
            auto [foot_v, ratio_v] = angle_bisector_edge_split(t, v);
            PlanePoint p = t.vertex(v + 1), q = t.vertex(v + 2);
            // the foot lies on the opposite side and on the bisector direction
            CHECK(std::abs(cross(q - p, foot_v - p)) <= 1e-12 * t.diameter() * t.diameter());
            PlanePoint u1 = (p - t.vertex(v)) / std::abs(p - t.vertex(v));
            PlanePoint u2 = (q - t.vertex(v)) / std::abs(q - t.vertex(v));
            CHECK(std::abs(cross(u1 + u2, foot_v - t.vertex(v))) <= 1e-12 * t.diameter());
            CHECK(std::abs(p - foot_v) / std::abs(foot_v - q) ==
                  doctest::Approx(ratio_v).epsilon(1e-12));
        }
    }
}

TEST_CASE("mesh json: roundtrip, derived lengths, and failure modes") {
    MetricTriangulation mesh = grid_mesh(5, 5, 1.0, 1.0, 0.2, 47);
    TempFile file("mesh.json");
    save_mesh(mesh, file.path);
    MetricTriangulation loaded = load_mesh(file.path);
    CHECK(loaded.n_vertices() == mesh.n_vertices());
    CHECK(loaded.faces() == mesh.faces());
    for (int v = 0; v < mesh.n_vertices(); ++v)
        CHECK(std::abs(loaded.positions()[v] - mesh.positions()[v]) <= 1e-15);
    for (const auto& e : mesh.edges())
        CHECK(loaded.length(e.i, e.j) == doctest::Approx(e.length).epsilon(1e-15));

    // lengths-only file loads without positions
    std::string metric_json = mesh_to_json(mesh);
    MetricTriangulation metric_only = parse_mesh(R"({"faces": [[0,1,2]],
        "lengths": [[0,1,1.0],[1,2,1.0],[0,2,1.0]]})");
    CHECK_FALSE(metric_only.has_positions());
    CHECK(metric_only.length(0, 1) == 1.0);
    CHECK_THROWS_AS(metric_only.positions(), MissingPositions);

    // disagreement between vertices and lengths
    CHECK_THROWS_AS(parse_mesh(R"({"vertices": [[0,0],[1,0],[0,1]], "faces": [[0,1,2]],
        "lengths": [[0,1,1.5],[1,2,1.41421356],[0,2,1.0]]})"),
                    MeshError);
    // neither vertices nor lengths
    CHECK_THROWS_AS(parse_mesh(R"({"faces": [[0,1,2]]})"), MeshError);
    // malformed json
    CHECK_THROWS_AS(parse_mesh("{"), MeshError);
    // inconsistent orientation: directed edge (0,1) in two faces
    CHECK_THROWS_AS(parse_mesh(R"({"vertices": [[0,0],[1,0],[0,1],[1,-1]],
        "faces": [[0,1,2],[0,1,3]]})"),
                    MeshError);
    // disconnected
    CHECK_THROWS_AS(parse_mesh(R"({"vertices": [[0,0],[1,0],[0,1],[5,5],[6,5],[5,6]],
        "faces": [[0,1,2],[3,4,5]]})"),
                    MeshError);
    // triangle inequality violation in given lengths
    CHECK_THROWS_AS(parse_mesh(R"({"faces": [[0,1,2]],
        "lengths": [[0,1,5.0],[1,2,1.0],[0,2,1.0]]})"),
                    MeshError);
}

TEST_CASE("mesh pair needs identical combinatorics") {
    MetricTriangulation a = grid_mesh(4, 4, 1.0, 1.0, 0.0, 48);
    MetricTriangulation b = grid_mesh(5, 4, 1.0, 1.0, 0.0, 48);
    CHECK_THROWS_AS(MeshPair(a, b), MeshError);
}
