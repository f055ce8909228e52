#include "projconf/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "projconf/render.hpp"
#include "projconf/sampling.hpp"
#include "projconf/triangle_maps.hpp"

namespace projconf {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// central-difference Wirtinger quotient; the independent check of mu
Complex finite_difference_mu(const ProjectiveMap& m, PlanePoint z, double h = 1e-6) {
    Complex fx = (m(z + Complex(h, 0)) - m(z - Complex(h, 0))) / (2.0 * h);
    Complex fy = (m(z + Complex(0, h)) - m(z - Complex(0, h))) / (2.0 * h);
    Complex fz = 0.5 * (fx - Complex(0, 1) * fy);
    Complex fzb = 0.5 * (fx + Complex(0, 1) * fy);
    return fzb / fz;
}

// sample point away from the |mu| = 1 line and from the huge-|mu| region,
// so absolute comparisons stay meaningful in doubles
PlanePoint sample_moderate_point(Rng& rng, const BeltramiField& field, const Line& line,
                                 double line_margin, double ecc_cap) {
    for (int i = 0; i < 10000; ++i) {
        PlanePoint z = random_point(rng, 3.0);
        if (std::abs(line.signed_distance(z)) < line_margin) continue;
        if (field.eccentricity(z) > ecc_cap) continue;
        return z;
    }
    throw Error("could not sample a moderate point");
}

double circle_point_deviation(const Conic& c) {
    const Eigen::Matrix3d& q = c.matrix();
    return std::max(std::abs(q(0, 0) - q(1, 1)), std::abs(2.0 * q(0, 1)));
}

SuiteResult verify_beltrami_fd(std::uint64_t seed, int n_maps) {
    auto t0 = Clock::now();
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < n_maps; ++i) {
        ProjectiveMap m = random_nonaffine_map(rng);
        BeltramiField field = beltrami_field(coefficients_from_matrix(m));
        Line line = preimage_of_infinity(m);
        for (int s = 0; s < 10; ++s) {
            PlanePoint z = sample_moderate_point(rng, field, line, 0.1, 10.0);
            worst = std::max(worst, std::abs(field.mu(z) - finite_difference_mu(m, z)));
        }
    }
    SuiteResult r{"beltrami_fd",
                  "analytic mu agrees with central-difference Wirtinger quotients",
                  worst <= 1e-6, worst, 1e-6, seconds_since(t0),
                  json{{"n_maps", n_maps}, {"points_per_map", 10}}.dump()};
    return r;
}

SuiteResult verify_det_identity(std::uint64_t seed, int n_maps) {
    auto t0 = Clock::now();
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < n_maps; ++i) {
        HalfCoefficients h = coefficients_from_matrix(random_nonaffine_map(rng));
        worst = std::max(worst, det_identity_residual(h));
    }
    return {"det_identity",
            "det(alpha beta; -conj alpha conj gamma) = conj(p) det A",
            worst <= 1e-9, worst, 1e-9, seconds_since(t0),
            json{{"n_maps", n_maps}}.dump()};
}

SuiteResult verify_contour_constancy(std::uint64_t seed, int n_maps) {
    auto t0 = Clock::now();
    Rng rng(seed);
    const double ks[] = {0.2, 0.5, 0.9, 2.0, 4.0};
    const int n_samples = 64;
    double worst_stddev = 0.0, worst_zero = 0.0, worst_line = 0.0;
    for (int i = 0; i < n_maps; ++i) {
        ProjectiveMap m = random_nonaffine_map(rng);
        BeltramiField field = beltrami_field(coefficients_from_matrix(m));
        HyperbolicPencil pencil = field.pencil();
        for (double k : ks) {
            auto member = contour_circle(pencil, k);
            const auto& circ = std::get<ProperCircle>(member);
            double mean = 0.0, m2 = 0.0;
            for (int s = 0; s < n_samples; ++s) {
                PlanePoint z =
                    circ.center + std::polar(circ.radius, 2.0 * M_PI * s / n_samples);
                double v = std::abs(field.mu(z));
                double delta = v - mean;
                mean += delta / (s + 1);
                m2 += delta * (v - mean);
            }
            worst_stddev = std::max(worst_stddev, std::sqrt(m2 / n_samples));
        }
        worst_zero = std::max(worst_zero, std::abs(field.mu(pencil.limit_zero)));
        Line line = pencil.radical_line();
        double sep = std::abs(pencil.limit_zero - pencil.limit_inf);
        PlanePoint base = line.normal * line.offset;
        PlanePoint dir = rot90(line.normal);
        for (int s = 0; s < n_samples; ++s) {
            PlanePoint z = base + (-2.0 + 4.0 * s / (n_samples - 1)) * sep * dir;
            worst_line = std::max(worst_line, std::abs(std::abs(field.mu(z)) - 1.0));
        }
    }
    bool passed = worst_stddev <= 1e-9 && worst_zero <= 1e-10 && worst_line <= 1e-9;
    return {"contour_constancy",
            "|mu| is constant along pencil contours, 0 at the limit point, 1 on the line",
            passed, worst_stddev, 1e-9, seconds_since(t0),
            json{{"n_maps", n_maps},
                 {"k_values", {0.2, 0.5, 0.9, 2.0, 4.0}},
                 {"samples_per_contour", n_samples},
                 {"worst_at_limit_zero", worst_zero},
                 {"budget_at_limit_zero", 1e-10},
                 {"worst_on_line", worst_line},
                 {"budget_on_line", 1e-9}}
                .dump()};
}

SuiteResult verify_circles_exclusivity(std::uint64_t seed, int n_maps) {
    auto t0 = Clock::now();
    Rng rng(seed);
    const double member_ks[] = {0.3, 0.7, 1.8, 3.5};
    double worst_member = 0.0;          // circle-point deviation of true members
    double worst_negative = 1e300;       // smallest deviation among non-members
    bool all_members_pass = true, all_negatives_fail = true;
    for (int i = 0; i < n_maps; ++i) {
        ProjectiveMap m = random_nonaffine_map(rng);
        HyperbolicPencil pencil = circles_mapped_to_circles(m);
        for (double k : member_ks) {
            Conic image = pushforward_conic(m, conic_from_circle(contour_circle(pencil, k)));
            worst_member = std::max(worst_member, circle_point_deviation(image));
            if (!is_circle(image, 1e-8)) all_members_pass = false;
        }

        // negative control: a circle pushed off the pencil axis
        double sep = std::abs(pencil.limit_zero - pencil.limit_inf);
        PlanePoint axis = (pencil.limit_inf - pencil.limit_zero) / sep;
        for (int attempt = 0; attempt < 100; ++attempt) {
            double k = uniform(rng, 0.4, 2.5);
            if (std::abs(k - 1.0) < 0.1) continue;
            auto member = std::get<ProperCircle>(contour_circle(pencil, k));
            ProperCircle candidate{
                member.center + rot90(axis) * (uniform(rng, 0.05, 0.3) * sep),
                member.radius * uniform(rng, 0.9, 1.1)};
            Conic cand = conic_from_circle(candidate);
            double dist = 1e300;
            for (int g = 0; g <= 256; ++g) {
                double kk = std::exp(std::log(0.01) + (std::log(100.0) - std::log(0.01)) * g / 256);
                if (std::abs(kk - 1.0) <= 1e-12) continue;
                dist = std::min(dist,
                                conic_distance(cand, conic_from_circle(contour_circle(pencil, kk))));
            }
            dist = std::min(dist, conic_distance(cand, conic_from_circle(pencil.radical_line())));
            if (dist < 1e-3) continue; // too close to a member; resample
            Conic image = pushforward_conic(m, cand);
            double dev = circle_point_deviation(image);
            worst_negative = std::min(worst_negative, dev);
            if (is_circle(image, 1e-6)) all_negatives_fail = false;
            break;
        }
    }
    bool passed = all_members_pass && all_negatives_fail && worst_member <= 1e-8;
    return {"circles_exclusivity",
            "exactly the pencil members push forward to circles",
            passed, worst_member, 1e-8, seconds_since(t0),
            json{{"n_maps", n_maps},
                 {"member_k_values", {0.3, 0.7, 1.8, 3.5}},
                 {"smallest_nonmember_deviation", worst_negative},
                 {"nonmember_fail_budget", 1e-6}}
                .dump()};
}

SuiteResult verify_inverse_symmetry(std::uint64_t seed, int n_samples) {
    auto t0 = Clock::now();
    Rng rng(seed);
    int n_maps = std::max(1, n_samples / 100);
    double worst = 0.0;
    for (int i = 0; i < n_maps; ++i) {
        ProjectiveMap m = random_nonaffine_map(rng);
        ProjectiveMap minv = m.inverse();
        BeltramiField field = beltrami_field(coefficients_from_matrix(m));
        BeltramiField field_inv = beltrami_field(coefficients_from_matrix(minv));
        Line line = preimage_of_infinity(m);
        for (int s = 0; s < 100; ++s) {
            PlanePoint z = sample_moderate_point(rng, field, line, 0.05, 10.0);
            double err = std::abs(field.eccentricity(z) - field_inv.eccentricity(m(z)));
            worst = std::max(worst, err);
        }
    }
    return {"inverse_symmetry",
            "|mu_f(z)| = |mu_{f^-1}(f(z))|",
            worst <= 1e-8, worst, 1e-8, seconds_since(t0),
            json{{"n_samples", n_maps * 100}}.dump()};
}

SuiteResult verify_cpp(std::uint64_t seed, int n_pairs) {
    auto t0 = Clock::now();
    Rng rng(seed);
    double worst_mismatch = 0.0, worst_excess = -1e300;
    for (int i = 0; i < n_pairs; ++i) {
        Triangle src = random_triangle(rng);
        Triangle dst = random_triangle(rng);
        CppReport rep = verify_cpp_vertex_eccentricity(src, dst, 50);
        worst_mismatch = std::max(worst_mismatch, rep.vertex_affine_mismatch);
        worst_excess = std::max(worst_excess, rep.grid_excess);
    }
    bool passed = worst_mismatch <= 1e-8 && worst_excess <= 1e-9;
    return {"cpp_theorem",
            "t = 2 vertex eccentricities equal |mu_h|; interior never exceeds them",
            passed, worst_mismatch, 1e-8, seconds_since(t0),
            json{{"n_pairs", n_pairs},
                 {"grid", "50 interior barycentric lattice"},
                 {"worst_grid_excess", worst_excess},
                 {"grid_excess_budget", 1e-9}}
                .dump()};
}

SuiteResult verify_max_at_vertex(std::uint64_t seed, int n_cases) {
    auto t0 = Clock::now();
    Rng rng(seed);
    double worst_excess = -1e300;
    for (int i = 0; i < n_cases; ++i) {
        ProjectiveMap m = random_nonaffine_map(rng);
        BeltramiField field = beltrami_field(coefficients_from_matrix(m));
        double sep = std::abs(field.z_zero() - field.z_inf());
        Triangle tri = random_triangle_in_disk(rng, field.z_zero(), 0.4 * sep);
        MaxEccentricity vertex_max = max_eccentricity_on_triangle(field, tri);

        const int n = 139; // ~10^4 lattice points, boundary included
        double grid_max = 0.0;
        for (int a = 0; a <= n; ++a) {
            for (int b = 0; a + b <= n; ++b) {
                double u = double(a) / n, v = double(b) / n;
                PlanePoint p = tri.a() + u * (tri.b() - tri.a()) + v * (tri.c() - tri.a());
                grid_max = std::max(grid_max, field.eccentricity(p));
            }
        }
        worst_excess = std::max(worst_excess, grid_max - vertex_max.value);
    }
    return {"max_at_vertex",
            "max of |mu| over an orientation-preserving triangle sits at a vertex",
            worst_excess <= 1e-9, worst_excess, 1e-9, seconds_since(t0),
            json{{"n_cases", n_cases}, {"grid_points", (139 + 1) * (139 + 2) / 2}}.dump()};
}

SuiteResult verify_app_optimality(std::uint64_t seed, int n_pairs, int n_samples) {
    auto t0 = Clock::now();
    Rng rng(seed);
    double worst_margin = 1e300, worst_offset = 0.0;
    long long skipped = 0;
    for (int i = 0; i < n_pairs; ++i) {
        Triangle src = random_triangle(rng);
        Triangle dst = random_triangle(rng);
        OptimalityReport rep = optimality_search(src, dst, n_samples, seed ^ (0x9e37u + i));
        worst_margin = std::min(worst_margin, rep.worst_margin);
        worst_offset = std::max(worst_offset, rep.line_search_offset);
        skipped += rep.n_skipped;
    }
    bool passed = worst_margin >= -1e-9 && worst_offset <= 1e-6;
    return {"app_optimality",
            "no competitor beats the angle-bisector map at any vertex; slice minimum at the "
            "incenter image",
            passed, worst_margin, -1e-9, seconds_since(t0),
            json{{"n_pairs", n_pairs},
                 {"samples_per_pair", n_samples},
                 {"skipped_samples", skipped},
                 {"worst_line_search_offset", worst_offset},
                 {"line_search_budget", 1e-6}}
                .dump()};
}

SuiteResult verify_sl2(std::uint64_t seed, int n_cases) {
    auto t0 = Clock::now();
    Rng rng(seed);
    auto random_direction_pair = [&](Complex& x, Complex& y) {
        double phi = uniform(rng, 0.0, 2.0 * M_PI);
        double psi = uniform(rng, 0.1, M_PI - 0.1);
        if (uniform(rng, 0.0, 1.0) < 0.5) psi = -psi;
        x = std::polar(uniform(rng, 0.3, 3.0), phi);
        y = std::polar(uniform(rng, 0.3, 3.0), phi + psi);
    };
    double worst = 0.0;
    for (int i = 0; i < n_cases; ++i) {
        Complex v, w, vt, wt;
        random_direction_pair(v, w);
        random_direction_pair(vt, wt);
        Sl2Report rep = sl2_bisector_minimality(v, w, vt, wt, 2000);
        worst = std::max({worst, rep.bisector_residual_plus, rep.bisector_residual_minus});
    }
    return {"sl2_lemma",
            "the least-dilatation SL2 map takes angle bisectors to angle bisectors",
            worst <= 1e-6, worst, 1e-6, seconds_since(t0),
            json{{"n_cases", n_cases}, {"scan_points", 2000}}.dump()};
}

SuiteResult verify_equivalence(std::uint64_t seed, int n_pairs) {
    auto t0 = Clock::now();
    double worst_dev = 0.0, worst_residual = 0.0, worst_recovery = 0.0, worst_cont2 = 0.0;
    double worst_neg_dev = 1e300, worst_neg_residual = 1e300, worst_neg_cont2 = 1e300;
    double worst_neg_cont0 = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
        Rng rng(seed ^ (0xabcd1234u + 977u * i));
        MetricTriangulation mesh = grid_mesh(16, 16, 2.0, 2.0, 0.25, rng());
        MoebiusPairSample sample = random_moebius_pair(mesh, rng);
        const MeshPair& pair = sample.pair;

        worst_dev = std::max(worst_dev, check_equivalence_cross_ratios(pair).max_log_deviation);

        ScaleFactorResult sf = solve_scale_factors(pair);
        worst_residual = std::max(worst_residual, sf.residual);
        auto [a, b, c, d] = sample.coeffs;
        Complex det = a * d - b * c;
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            double planted = std::log(std::abs(det) / std::norm(c * mesh.positions()[v] + d));
            worst_recovery = std::max(worst_recovery, std::abs(sf.factors.u[v] - planted));
        }

        worst_cont2 = std::max(worst_cont2, edge_continuity(pair, 2.0).max_discrepancy);

        // perturbed negative control
        MeshPair bad(pair.source, perturb_one_vertex(pair.target, 0.05, rng));
        worst_neg_dev = std::min(worst_neg_dev, check_equivalence_cross_ratios(bad).max_log_deviation);
        worst_neg_residual = std::min(worst_neg_residual, solve_scale_factors(bad).residual);
        worst_neg_cont2 = std::min(worst_neg_cont2, edge_continuity(bad, 2.0).max_discrepancy);
        worst_neg_cont0 = std::max(worst_neg_cont0, edge_continuity(bad, 0.0).max_discrepancy);
    }
    bool passed = worst_dev <= 1e-10 && worst_residual <= 1e-8 && worst_recovery <= 1e-9 &&
                  worst_cont2 <= 1e-8 && worst_neg_dev > 1e-3 && worst_neg_residual > 1e-6 &&
                  worst_neg_cont2 > 1e-4 && worst_neg_cont0 <= 1e-12;
    return {"equivalence_characterizations",
            "scale factors, cross ratios and t = 2 continuity agree on Moebius pairs and all "
            "reject perturbed pairs",
            passed, worst_dev, 1e-10, seconds_since(t0),
            json{{"n_pairs", n_pairs},
                 {"faces_per_mesh", 450},
                 {"worst_scale_residual", worst_residual},
                 {"scale_residual_budget", 1e-8},
                 {"worst_u_recovery", worst_recovery},
                 {"u_recovery_budget", 1e-9},
                 {"worst_t2_continuity", worst_cont2},
                 {"t2_continuity_budget", 1e-8},
                 {"smallest_negative_deviation", worst_neg_dev},
                 {"smallest_negative_residual", worst_neg_residual},
                 {"smallest_negative_t2_continuity", worst_neg_cont2},
                 {"worst_negative_t0_continuity", worst_neg_cont0}}
                .dump()};
}

SuiteResult verify_t_family(std::uint64_t seed, int n_pairs) {
    auto t0 = Clock::now();
    const double ts[] = {-1.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    double worst_eq = 0.0, worst_neg = 1e300;
    for (int i = 0; i < n_pairs; ++i) {
        Rng rng(seed ^ (0x51f0a3b7u + 1031u * i));
        MetricTriangulation mesh = grid_mesh(12, 12, 2.0, 2.0, 0.25, rng());
        MeshPair pair = random_moebius_pair(mesh, rng).pair;
        MeshPair bad(pair.source, perturb_one_vertex(pair.target, 0.05, rng));
        for (double t : ts) {
            worst_eq = std::max(worst_eq, edge_continuity(pair, t).max_discrepancy);
            worst_neg = std::min(worst_neg, edge_continuity(bad, t).max_discrepancy);
        }
    }
    bool passed = worst_eq <= 1e-8 && worst_neg > 1e-4;
    return {"t_family_continuity",
            "exponent-t maps fit across edges for equivalent pairs, t in {-1..3}, and break "
            "on inequivalent ones",
            passed, worst_eq, 1e-8, seconds_since(t0),
            json{{"n_pairs", n_pairs},
                 {"t_values", {-1.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}},
                 {"smallest_negative_discrepancy", worst_neg},
                 {"negative_budget", 1e-4}}
                .dump()};
}

} // namespace

SuiteResult verify_render_determinism(const MeshPair& pair) {
    auto t0 = Clock::now();
    bool identical = true;
    for (double t : {0.0, 1.0, 2.0}) {
        PiecewiseProjectiveMap ppm(pair, t);
        RasterJob job;
        job.width = job.height = 64;
        job.cell = 0.25;
        std::string reference;
        for (int threads : {1, 4, 1, 4}) {
            job.threads = threads;
            std::string bytes = ppm_bytes(render_pullback(ppm, job));
            if (reference.empty()) reference = bytes;
            else if (bytes != reference) identical = false;
        }
    }
    return {"render_determinism",
            "64 x 64 pullback renders at t in {0, 1, 2} are byte-identical across runs and "
            "thread counts",
            identical, identical ? 0.0 : 1.0, 0.0, seconds_since(t0),
            json{{"t_values", {0.0, 1.0, 2.0}}, {"thread_counts", {1, 4}}}.dump()};
}

std::vector<SuiteResult> run_verification(const std::string& suite, std::uint64_t seed,
                                          int scale) {
    auto n = [scale](int stated) { return scale > 0 ? scale : stated; };
    std::vector<SuiteResult> out;
    bool all = suite == "all";
    if (all || suite == "pencil") {
        out.push_back(verify_beltrami_fd(seed, n(1000)));
        out.push_back(verify_det_identity(seed, n(1000)));
        out.push_back(verify_contour_constancy(seed, n(100)));
        out.push_back(verify_inverse_symmetry(seed, n(10000)));
    }
    if (all || suite == "circles") out.push_back(verify_circles_exclusivity(seed, n(100)));
    if (all || suite == "cpp") {
        out.push_back(verify_cpp(seed, n(500)));
        out.push_back(verify_max_at_vertex(seed, n(200)));
    }
    if (all || suite == "app") out.push_back(verify_app_optimality(seed, n(100), 10000));
    if (all || suite == "sl2") out.push_back(verify_sl2(seed, n(500)));
    if (all || suite == "continuity") {
        out.push_back(verify_equivalence(seed, n(50)));
        out.push_back(verify_t_family(seed, n(8)));
    }
    if (out.empty()) throw Error("unknown verification suite: " + suite);
    return out;
}

std::string suite_results_to_json(const std::vector<SuiteResult>& results) {
    json arr = json::array();
    for (const auto& r : results) {
        arr.push_back({{"name", r.name},
                       {"statement", r.statement},
                       {"passed", r.passed},
                       {"worst", r.worst},
                       {"budget", r.budget},
                       {"seconds", r.seconds},
                       {"details", json::parse(r.details)}});
    }
    return arr.dump(2) + "\n";
}

} // namespace projconf
