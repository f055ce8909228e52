#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "projconf/mesh_io.hpp"
#include "projconf/render.hpp"
#include "projconf/sampling.hpp"
#include "projconf/verify.hpp"

namespace {

using namespace projconf;
using nlohmann::json;

std::vector<double> parse_number_list(const std::string& text) {
    std::string cleaned = text;
    for (char& ch : cleaned)
        if (ch == ',') ch = ' ';
    std::istringstream in(cleaned);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    std::string rest;
    if (in.clear(), in >> rest) throw Error("could not parse number list: " + text);
    return out;
}

PlanePoint parse_point(const std::string& text) {
    auto nums = parse_number_list(text);
    if (nums.size() != 2) throw Error("--point needs two coordinates x,y");
    return {nums[0], nums[1]};
}

std::array<Complex, 4> parse_moebius(const std::string& text) {
    auto nums = parse_number_list(text);
    if (nums.size() == 4) return {Complex(nums[0]), Complex(nums[1]), Complex(nums[2]), Complex(nums[3])};
    if (nums.size() == 8)
        return {Complex(nums[0], nums[1]), Complex(nums[2], nums[3]), Complex(nums[4], nums[5]),
                Complex(nums[6], nums[7])};
    throw Error("--moebius needs 4 reals a,b,c,d or 8 reals re,im interleaved");
}

int raster_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PROJCONF_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, unsigned(cap));
    }
    return int(hw);
}

json matrix_to_json(const ProjectiveMap& m) {
    json arr = json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) arr.push_back(m.matrix()(r, c));
    return arr;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

int run_analyze(const std::string& matrix_arg, const std::string& svg_path,
                std::vector<double> ks, bool as_json) {
    ProjectiveMap m = parse_matrix_argument(matrix_arg);
    HalfCoefficients h = coefficients_from_matrix(m);
    json out;
    out["matrix"] = matrix_to_json(m);
    out["coefficients"] = {{"a", complex_to_json(h.a)}, {"b", complex_to_json(h.b)},
                           {"c", complex_to_json(h.c)}, {"p", complex_to_json(h.p)},
                           {"q", h.q}};
    out["affine"] = h.is_affine();
    if (h.is_affine()) {
        Complex mu = beltrami_constant_affine(h);
        out["constant_mu"] = complex_to_json(mu);
        out["constant_eccentricity"] = std::abs(mu);
        if (!svg_path.empty())
            throw AffineMap("affine map has no contour pencil to plot");
    } else {
        BeltramiField field = beltrami_field(h);
        out["alpha"] = complex_to_json(field.alpha());
        out["beta"] = complex_to_json(field.beta());
        out["gamma"] = complex_to_json(field.gamma());
        out["limit_zero"] = complex_to_json(field.z_zero());
        out["limit_inf"] = complex_to_json(field.z_inf());
        Line line = preimage_of_infinity(m);
        out["infinity_preimage"] = {{"normal", complex_to_json(line.normal)},
                                    {"offset", line.offset}};
        if (!svg_path.empty()) {
            save_pencil_svg(m, ks, svg_path);
            out["svg"] = svg_path;
        }
    }
    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    auto cpx = [](const json& a) {
        std::ostringstream s;
        s << a[0].get<double>() << (a[1].get<double>() < 0 ? " - " : " + ")
          << std::abs(a[1].get<double>()) << "i";
        return s.str();
    };
    std::cout << "coefficients (up to scale)\n"
              << "  a = " << cpx(out["coefficients"]["a"]) << "\n"
              << "  b = " << cpx(out["coefficients"]["b"]) << "\n"
              << "  c = " << cpx(out["coefficients"]["c"]) << "\n"
              << "  p = " << cpx(out["coefficients"]["p"]) << "\n"
              << "  q = " << out["coefficients"]["q"].get<double>() << "\n";
    if (h.is_affine()) {
        std::cout << "affine map: constant mu = " << cpx(out["constant_mu"])
                  << ", |mu| = " << out["constant_eccentricity"].get<double>() << "\n";
    } else {
        std::cout << "mu(z) = (alpha z + beta)/(-alpha conj(z) + gamma)\n"
                  << "  alpha = " << cpx(out["alpha"]) << "\n"
                  << "  beta  = " << cpx(out["beta"]) << "\n"
                  << "  gamma = " << cpx(out["gamma"]) << "\n"
                  << "limit points: |mu| = 0 at " << cpx(out["limit_zero"]) << ", |mu| = inf at "
                  << cpx(out["limit_inf"]) << "\n"
                  << "|mu| = 1 on the line with normal " << cpx(out["infinity_preimage"]["normal"])
                  << ", offset " << out["infinity_preimage"]["offset"].get<double>() << "\n";
        if (out.contains("svg")) std::cout << "pencil plot written to " << svg_path << "\n";
    }
    return 0;
}

int run_check(const std::string& src_path, const std::string& dst_path, double tol) {
    MeshPair pair(load_mesh(src_path), load_mesh(dst_path));
    EquivalenceReport cr = check_equivalence_cross_ratios(pair);
    ScaleFactorResult sf = solve_scale_factors(pair);

    Verdict v_cross = cr.verdict(tol);
    Verdict v_scale = Verdict::Inconclusive;
    if (sf.residual <= tol) v_scale = Verdict::Equivalent;
    else if (sf.residual > std::max(tol, 1e-5)) v_scale = Verdict::Inequivalent;

    Verdict verdict = (v_cross == v_scale) ? v_cross : Verdict::Inconclusive;
    const char* names[] = {"equivalent", "inconclusive", "inequivalent"};
    std::cout << "cross-ratio deviation  " << cr.max_log_deviation << " (log scale, "
              << cr.n_interior_edges << " interior edges)\n"
              << "scale-factor residual  " << sf.residual << "\n"
              << "verdict                " << names[int(verdict)] << "\n";
    switch (verdict) {
        case Verdict::Equivalent: return 0;
        case Verdict::Inequivalent: return 2;
        default: return 3;
    }
}

int run_map(const std::string& src_path, const std::string& dst_path, double t,
            const std::string& point_text) {
    MeshPair pair(load_mesh(src_path), load_mesh(dst_path));
    PiecewiseProjectiveMap ppm(std::move(pair), t);
    PlanePoint image = ppm.evaluate(parse_point(point_text));
    std::cout.precision(17);
    std::cout << image.real() << " " << image.imag() << "\n";
    return 0;
}

int run_render(const std::string& src_path, const std::string& dst_path, double t,
               const std::string& out_path, int width, int height, double cell,
               const std::string& view_text, int supersample) {
    MeshPair pair(load_mesh(src_path), load_mesh(dst_path));
    PiecewiseProjectiveMap ppm(std::move(pair), t);
    RasterJob job;
    job.width = width;
    job.height = height;
    job.cell = cell;
    job.supersample = supersample;
    job.threads = raster_threads();
    if (!view_text.empty()) {
        auto nums = parse_number_list(view_text);
        if (nums.size() != 4) throw Error("--view needs x0,y0,x1,y1");
        job.view = ViewRect{nums[0], nums[1], nums[2], nums[3]};
    }
    write_ppm(render_pullback(ppm, job), out_path);
    return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, int n_samples) {
    std::vector<SuiteResult> results = run_verification(suite, seed, n_samples);
    std::cout << suite_results_to_json(results);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    return ok ? 0 : 1;
}

int run_generate(const std::string& src_path, const std::string& moebius_text,
                 const std::string& out_path) {
    MetricTriangulation mesh = load_mesh(src_path);
    MeshPair pair = generate_moebius_pair(mesh, parse_moebius(moebius_text));
    save_mesh(pair.target, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilatation of planar projective maps and piecewise projective interpolation"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand(
        "analyze", "coefficients, Beltrami data and contour pencil of a 3x3 matrix");
    std::string matrix_arg, svg_path;
    std::vector<double> ks{0.25, 0.5, 1.0, 2.0, 4.0};
    bool as_json = false;
    analyze->add_option("--matrix", matrix_arg, "9 reals (comma/space separated) or a file path")
        ->required();
    analyze->add_option("--svg", svg_path, "write a contour pencil plot to this SVG file");
    analyze->add_option("--k", ks, "contour parameters for the plot")->delimiter(',');
    analyze->add_flag("--json", as_json, "print machine-readable JSON");

    auto* check = app.add_subcommand("check", "decide discrete conformal equivalence");
    std::string src_path, dst_path;
    double tol = 1e-8;
    check->add_option("--src", src_path, "source mesh JSON")->required();
    check->add_option("--dst", dst_path, "target mesh JSON")->required();
    check->add_option("--tol", tol, "equivalence tolerance (log scale)");

    auto* mapcmd = app.add_subcommand("map", "evaluate the piecewise projective map at a point");
    double t_param = 2.0;
    std::string point_text;
    mapcmd->add_option("--src", src_path, "source mesh JSON")->required();
    mapcmd->add_option("--dst", dst_path, "target mesh JSON")->required();
    mapcmd->add_option("--t", t_param, "family parameter (0 PL, 1 APP, 2 CPP)")->required();
    mapcmd->add_option("--point", point_text, "source point x,y")->required();

    auto* render = app.add_subcommand("render", "checkerboard pullback raster (binary PPM)");
    std::string out_path, view_text;
    int width = 512, height = 512, supersample = 1;
    double cell = 0.5;
    render->add_option("--src", src_path, "source mesh JSON")->required();
    render->add_option("--dst", dst_path, "target mesh JSON")->required();
    render->add_option("--t", t_param, "family parameter")->required();
    render->add_option("--out", out_path, "output PPM path")->required();
    render->add_option("--width", width, "pixels");
    render->add_option("--height", height, "pixels");
    render->add_option("--cell", cell, "checker cell size in source units");
    render->add_option("--view", view_text, "view rectangle x0,y0,x1,y1 in target coordinates");
    render->add_option("--ss", supersample, "supersampling factor n (n x n subpixels)");

    auto* verify = app.add_subcommand("verify", "run the property verification suites");
    std::string suite = "all";
    std::uint64_t seed = 1;
    int n_samples = 0;
    verify->add_option("--suite", suite, "all|pencil|circles|cpp|app|sl2|continuity");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--n-samples", n_samples, "override the leading sample count");

    auto* generate = app.add_subcommand("generate", "Moebius image of a mesh (equivalent pair)");
    std::string moebius_text;
    generate->add_option("--src", src_path, "source mesh JSON")->required();
    generate->add_option("--moebius", moebius_text, "a,b,c,d (4 reals or 8 reals re,im)")
        ->required();
    generate->add_option("--out", out_path, "output mesh JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // 0 for --help, 1 for any usage error
    }

    try {
        if (analyze->parsed()) return run_analyze(matrix_arg, svg_path, ks, as_json);
        if (check->parsed()) return run_check(src_path, dst_path, tol);
        if (mapcmd->parsed()) return run_map(src_path, dst_path, t_param, point_text);
        if (render->parsed())
            return run_render(src_path, dst_path, t_param, out_path, width, height, cell,
                              view_text, supersample);
        if (verify->parsed()) return run_verify(suite, seed, n_samples);
        if (generate->parsed()) return run_generate(src_path, moebius_text, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
