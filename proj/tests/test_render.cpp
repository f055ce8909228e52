#include <doctest.h>

#include "projconf/render.hpp"
#include "projconf/sampling.hpp"
#include "projconf/triangle_maps.hpp"

using namespace projconf;

namespace {

MeshPair identity_pair(std::uint64_t seed) {
    MetricTriangulation mesh = grid_mesh(6, 6, 2.0, 2.0, 0.2, seed);
    return MeshPair(mesh, mesh);
}

MeshPair moebius_pair(std::uint64_t seed) {
    MetricTriangulation mesh = grid_mesh(6, 6, 2.0, 2.0, 0.2, seed);
    Rng rng(seed);
    return random_moebius_pair(mesh, rng).pair;
}

int count_substr(const std::string& text, const std::string& what) {
    int n = 0;
    for (size_t at = text.find(what); at != std::string::npos; at = text.find(what, at + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("locate: containment, tie-break, outside") {
    MetricTriangulation mesh = grid_mesh(4, 4, 3.0, 3.0, 0.0, 50);
    // face 0 is (v00, v10, v11) of the first cell
    const auto& f0 = mesh.faces()[0];
    PlanePoint centroid = (mesh.positions()[f0[0]] + mesh.positions()[f0[1]] +
                           mesh.positions()[f0[2]]) / 3.0;
    CHECK(locate(mesh, centroid) == 0);

    // faces 0 and 1 share the cell diagonal; ties go to the lower index
    PlanePoint diag_mid = 0.5 * (mesh.positions()[0] + mesh.positions()[5]);
    CHECK(locate(mesh, diag_mid) == 0);

    CHECK_FALSE(locate(mesh, PlanePoint{-5, -5}).has_value());
    CHECK_FALSE(locate(mesh, PlanePoint{3.2, 1.0}).has_value());
}

TEST_CASE("piecewise evaluation: vertices, PL midpoints, cross-face agreement") {
    MeshPair pair = moebius_pair(51);
    const auto& spos = pair.source.positions();
    const auto& tpos = pair.target.positions();

    for (double t : {0.0, 1.0, 2.0}) {
        PiecewiseProjectiveMap ppm(pair, t);
        for (int v = 0; v < pair.source.n_vertices(); ++v)
            CHECK(std::abs(ppm.evaluate(spos[v]) - tpos[v]) <= 1e-12 * (1.0 + std::abs(tpos[v])));
    }

    PiecewiseProjectiveMap pl(pair, 0.0);
    for (const auto& e : pair.source.edges()) {
        PlanePoint mid = 0.5 * (spos[e.i] + spos[e.j]);
        PlanePoint expect = 0.5 * (tpos[e.i] + tpos[e.j]);
        CHECK(std::abs(pl.evaluate(mid) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }

    PiecewiseProjectiveMap cpp(pair, 2.0);
    double scale = pair.target.diameter();
    for (const auto& e : pair.source.edges()) {
        if (!e.interior()) continue;
        PlanePoint mid = 0.5 * (spos[e.i] + spos[e.j]);
        PlanePoint left = cpp.evaluate_on_face(e.face_ij, mid);
        PlanePoint right = cpp.evaluate_on_face(e.face_ji, mid);
        CHECK(std::abs(left - right) <= 1e-8 * scale);
    }

    CHECK_THROWS_AS(cpp.evaluate(PlanePoint{50, 50}), OutsideMesh);
}

TEST_CASE("inverse evaluation undoes evaluation away from edges") {
    MeshPair pair = moebius_pair(52);
    PiecewiseProjectiveMap cpp(pair, 2.0);
    const auto& spos = pair.source.positions();
    double scale = pair.source.diameter();
    for (const auto& f : pair.source.faces()) {
        PlanePoint centroid = (spos[f[0]] + spos[f[1]] + spos[f[2]]) / 3.0;
        PlanePoint back = cpp.evaluate_inverse(cpp.evaluate(centroid));
        CHECK(std::abs(back - centroid) <= 1e-8 * scale);
    }
}

TEST_CASE("identity-pair render equals a directly generated checkerboard") {
    MeshPair pair = identity_pair(53);
    PiecewiseProjectiveMap ppm(pair, 0.0);
    RasterJob job;
    job.width = 48;
    job.height = 40;
    job.cell = 0.5;
    Image img = render_pullback(ppm, job);

    // reference raster: no homographies, just location and parity
    const auto& mesh = pair.target;
    ViewRect v{mesh.positions()[0].real(), mesh.positions()[0].imag(),
               mesh.positions()[0].real(), mesh.positions()[0].imag()};
    for (PlanePoint p : mesh.positions()) {
        v.x0 = std::min(v.x0, p.real());
        v.x1 = std::max(v.x1, p.real());
        v.y0 = std::min(v.y0, p.imag());
        v.y1 = std::max(v.y1, p.imag());
    }
    Image ref;
    ref.width = job.width;
    ref.height = job.height;
    ref.rgb.assign(size_t(job.width) * job.height * 3, 0);
    for (int j = 0; j < job.height; ++j) {
        for (int i = 0; i < job.width; ++i) {
            double x = v.x0 + (i + 0.5) / job.width * (v.x1 - v.x0);
            double y = v.y1 - (j + 0.5) / job.height * (v.y1 - v.y0);
            unsigned char rgb[3] = {0xFF, 0xFF, 0xFF};
            if (locate(mesh, {x, y})) {
                long long par = (long long)std::floor(x / job.cell) +
                                (long long)std::floor(y / job.cell);
                if (par & 1) {
                    rgb[0] = 0x3A; rgb[1] = 0x6E; rgb[2] = 0xA5;
                } else {
                    rgb[0] = rgb[1] = rgb[2] = 0xEE;
                }
            }
            size_t at = (size_t(j) * job.width + i) * 3;
            ref.rgb[at] = rgb[0];
            ref.rgb[at + 1] = rgb[1];
            ref.rgb[at + 2] = rgb[2];
        }
    }
    CHECK(img == ref);
}

TEST_CASE("t = 0 and t = 2 renders differ inside but agree at vertex pixels") {
    MeshPair pair = moebius_pair(54);
    RasterJob job;
    job.width = job.height = 128;
    job.cell = 0.3;
    Image pl = render_pullback(PiecewiseProjectiveMap(pair, 0.0), job);
    Image cpp = render_pullback(PiecewiseProjectiveMap(pair, 2.0), job);
    CHECK(pl.width == cpp.width);
    CHECK(pl.rgb != cpp.rgb);

    ViewRect v{pair.target.positions()[0].real(), pair.target.positions()[0].imag(),
               pair.target.positions()[0].real(), pair.target.positions()[0].imag()};
    for (PlanePoint p : pair.target.positions()) {
        v.x0 = std::min(v.x0, p.real());
        v.x1 = std::max(v.x1, p.real());
        v.y0 = std::min(v.y0, p.imag());
        v.y1 = std::max(v.y1, p.imag());
    }
    // vertices whose source point sits well inside a checker cell must render
    // the same under both interpolations
    int checked = 0;
    for (int w = 0; w < pair.source.n_vertices(); ++w) {
        PlanePoint src = pair.source.positions()[w];
        double fx = src.real() / job.cell - std::floor(src.real() / job.cell);
        double fy = src.imag() / job.cell - std::floor(src.imag() / job.cell);
        double margin = std::min({fx, 1.0 - fx, fy, 1.0 - fy});
        if (margin < 0.2) continue;
        PlanePoint tgt = pair.target.positions()[w];
        int i = int((tgt.real() - v.x0) / (v.x1 - v.x0) * job.width);
        int j = int((v.y1 - tgt.imag()) / (v.y1 - v.y0) * job.height);
        if (i < 1 || i >= job.width - 1 || j < 1 || j >= job.height - 1) continue;
        size_t at = (size_t(j) * job.width + i) * 3;
        CHECK(pl.rgb[at] == cpp.rgb[at]);
        CHECK(pl.rgb[at + 1] == cpp.rgb[at + 1]);
        CHECK(pl.rgb[at + 2] == cpp.rgb[at + 2]);
        ++checked;
    }
    CHECK(checked > 3);
}

TEST_CASE("supersampling changes pixels only near color boundaries") {
    MeshPair pair = moebius_pair(55);
    RasterJob job;
    job.width = job.height = 96;
    job.cell = 0.4;
    Image one = render_pullback(PiecewiseProjectiveMap(pair, 2.0), job);
    job.supersample = 4;
    Image four = render_pullback(PiecewiseProjectiveMap(pair, 2.0), job);

    auto color_at = [&](const Image& img, int i, int j) {
        size_t at = (size_t(j) * img.width + i) * 3;
        return std::array<unsigned char, 3>{img.rgb[at], img.rgb[at + 1], img.rgb[at + 2]};
    };
    auto near_boundary = [&](int i, int j) {
        auto center = color_at(one, i, j);
        for (int dj = -2; dj <= 2; ++dj) {
            for (int di = -2; di <= 2; ++di) {
                int ii = i + di, jj = j + dj;
                if (ii < 0 || jj < 0 || ii >= one.width || jj >= one.height) return true;
                if (color_at(one, ii, jj) != center) return true;
            }
        }
        return false;
    };
    for (int j = 0; j < one.height; ++j)
        for (int i = 0; i < one.width; ++i)
            if (color_at(one, i, j) != color_at(four, i, j)) CHECK(near_boundary(i, j));
}

TEST_CASE("render bytes are identical across thread counts and repeats") {
    MeshPair pair = moebius_pair(56);
    PiecewiseProjectiveMap ppm(pair, 1.0);
    RasterJob job;
    job.width = job.height = 48;
    job.cell = 0.4;
    job.supersample = 2;
    std::string reference;
    for (int threads : {1, 3, 7, 1}) {
        job.threads = threads;
        std::string bytes = ppm_bytes(render_pullback(ppm, job));
        if (reference.empty()) reference = bytes;
        CHECK(bytes == reference);
    }
    CHECK(reference.substr(0, 13) == "P6\n48 48\n255\n");
    CHECK(reference.size() == 13 + 48 * 48 * 3);
}

TEST_CASE("pencil svg: element counts and the k = 1 line") {
    Eigen::Matrix3d m;
    m << 1, 0, 0, 0, 1, 0, 2, 0, 1; // the z / (z + conj z + 1) example
    ProjectiveMap example(m);

    std::vector<double> ks{0.5, 1.0, 2.0};
    std::string svg = plot_pencil(example, ks);
    CHECK(count_substr(svg, "<circle class=\"contour\"") == 2);
    CHECK(count_substr(svg, "<line class=\"contour\"") == 1);
    CHECK(count_substr(svg, "class=\"limit\"") == 2);
    CHECK(count_substr(svg, "|&#956;| = 0") == 1);
    CHECK(count_substr(svg, "|&#956;| = &#8734;") == 1);

    std::vector<double> only_line{1.0};
    std::string svg_line = plot_pencil(example, only_line);
    CHECK(count_substr(svg_line, "<line class=\"contour\"") == 1);
    CHECK(count_substr(svg_line, "<circle class=\"contour\"") == 0);

    Eigen::Matrix3d aff;
    aff << 2, 0, 3, 0, 2, -1, 0, 0, 1;
    CHECK_THROWS_AS(plot_pencil(ProjectiveMap(aff), ks), AffineMap);
}

TEST_CASE("report json carries the contract fields") {
    Rng rng(57);
    Triangle src = random_triangle(rng);
    Triangle dst = random_triangle(rng);
    OptimalityReport rep = optimality_search(src, dst, 200, 7);
    std::string j = report_json(rep);
    for (const char* key : {"\"claim\"", "\"n_samples\"", "\"worst_margin\"", "\"witnesses\""})
        CHECK(j.find(key) != std::string::npos);
    CHECK(report_json(verify_cpp_vertex_eccentricity(src, dst)).find("\"claim\"") !=
          std::string::npos);
}
