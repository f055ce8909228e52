#include "projconf/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace projconf {

namespace {

struct Rgb {
    unsigned char r, g, b;
};

constexpr Rgb kBackground{0xFF, 0xFF, 0xFF};
constexpr Rgb kEven{0xEE, 0xEE, 0xEE};
constexpr Rgb kOdd{0x3A, 0x6E, 0xA5};

ViewRect default_view(const MetricTriangulation& mesh) {
    const auto& pos = mesh.positions();
    ViewRect v{pos[0].real(), pos[0].imag(), pos[0].real(), pos[0].imag()};
    for (PlanePoint p : pos) {
        v.x0 = std::min(v.x0, p.real());
        v.x1 = std::max(v.x1, p.real());
        v.y0 = std::min(v.y0, p.imag());
        v.y1 = std::max(v.y1, p.imag());
    }
    return v;
}

int checker_parity(PlanePoint src, double cell) {
    auto idx = [&](double x) { return (long long)std::floor(x / cell); };
    return int((idx(src.real()) + idx(src.imag())) & 1);
}

} // namespace

Image render_pullback(const PiecewiseProjectiveMap& ppm, const RasterJob& job) {
    if (job.width <= 0 || job.height <= 0) throw Error("raster dimensions must be positive");
    if (!(job.cell > 0.0)) throw Error("checker cell size must be positive");
    int ss = std::max(1, job.supersample);
    ViewRect view = job.view ? *job.view : default_view(ppm.pair().target);

    Image img;
    img.width = job.width;
    img.height = job.height;
    img.rgb.assign(size_t(job.width) * job.height * 3, 0);

    auto render_rows = [&](int row_begin, int row_end) {
        for (int j = row_begin; j < row_end; ++j) {
            for (int i = 0; i < job.width; ++i) {
                int votes[3] = {0, 0, 0}; // background, even, odd
                for (int sy = 0; sy < ss; ++sy) {
                    for (int sx = 0; sx < ss; ++sx) {
                        double px = i + (sx + 0.5) / ss;
                        double py = j + (sy + 0.5) / ss;
                        double x = view.x0 + px / job.width * (view.x1 - view.x0);
                        double y = view.y1 - py / job.height * (view.y1 - view.y0);
                        auto face = locate(ppm.pair().target, {x, y});
                        if (!face) {
                            ++votes[0];
                            continue;
                        }
                        PlanePoint src = ppm.face_map_inverse(*face)({x, y});
                        ++votes[1 + checker_parity(src, job.cell)];
                    }
                }
                // majority; ties resolved in the order background, even, odd
                int winner = 0;
                for (int v = 1; v < 3; ++v)
                    if (votes[v] > votes[winner]) winner = v;
                Rgb color = winner == 0 ? kBackground : (winner == 1 ? kEven : kOdd);
                size_t at = (size_t(j) * job.width + i) * 3;
                img.rgb[at] = color.r;
                img.rgb[at + 1] = color.g;
                img.rgb[at + 2] = color.b;
            }
        }
    };

    int n_threads = std::clamp(job.threads, 1, job.height);
    if (n_threads == 1) {
        render_rows(0, job.height);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            int lo = job.height * t / n_threads;
            int hi = job.height * (t + 1) / n_threads;
            workers.emplace_back(render_rows, lo, hi);
        }
        for (auto& w : workers) w.join();
    }
    return img;
}

std::string ppm_bytes(const Image& img) {
    std::ostringstream out;
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()), std::streamsize(img.rgb.size()));
    return out.str();
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    std::string bytes = ppm_bytes(img);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

std::string plot_pencil(const ProjectiveMap& m, std::span<const double> k_values) {
    BeltramiField field = beltrami_field(coefficients_from_matrix(m));
    HyperbolicPencil pencil = field.pencil();

    // world bounds: limit points plus every circle extent
    double x0 = std::min(pencil.limit_zero.real(), pencil.limit_inf.real());
    double x1 = std::max(pencil.limit_zero.real(), pencil.limit_inf.real());
    double y0 = std::min(pencil.limit_zero.imag(), pencil.limit_inf.imag());
    double y1 = std::max(pencil.limit_zero.imag(), pencil.limit_inf.imag());
    std::vector<GeneralizedCircle> members;
    members.reserve(k_values.size());
    for (double k : k_values) {
        members.push_back(contour_circle(pencil, k));
        if (const auto* circ = std::get_if<ProperCircle>(&members.back())) {
            x0 = std::min(x0, circ->center.real() - circ->radius);
            x1 = std::max(x1, circ->center.real() + circ->radius);
            y0 = std::min(y0, circ->center.imag() - circ->radius);
            y1 = std::max(y1, circ->center.imag() + circ->radius);
        }
    }
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    double pad = 0.15 * span;
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;

    const double width = 640.0;
    double scale = width / (x1 - x0);
    double height = (y1 - y0) * scale;
    auto sx = [&](double x) { return (x - x0) * scale; };
    auto sy = [&](double y) { return (y1 - y) * scale; };

    std::ostringstream svg;
    svg.precision(10);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";

    for (size_t n = 0; n < members.size(); ++n) {
        if (const auto* circ = std::get_if<ProperCircle>(&members[n])) {
            svg << "  <circle class=\"contour\" cx=\"" << sx(circ->center.real()) << "\" cy=\""
                << sy(circ->center.imag()) << "\" r=\"" << circ->radius * scale
                << "\" fill=\"none\" stroke=\"#3A6EA5\" stroke-width=\"1.5\"/>\n";
        } else {
            // clip the k = 1 line to the view box
            const Line& line = std::get<Line>(members[n]);
            PlanePoint base = line.normal * line.offset;
            PlanePoint dir = rot90(line.normal);
            double lo = -1e30, hi = 1e30;
            auto clip = [&](double f0, double f1) {
                // keep f0 + t f1 >= 0
                if (std::abs(f1) < 1e-300) return;
                double t = -f0 / f1;
                if (f1 > 0) lo = std::max(lo, t);
                else hi = std::min(hi, t);
            };
            clip(base.real() - x0, dir.real());
            clip(x1 - base.real(), -dir.real());
            clip(base.imag() - y0, dir.imag());
            clip(y1 - base.imag(), -dir.imag());
            PlanePoint p = base + lo * dir, q = base + hi * dir;
            svg << "  <line class=\"contour\" x1=\"" << sx(p.real()) << "\" y1=\""
                << sy(p.imag()) << "\" x2=\"" << sx(q.real()) << "\" y2=\"" << sy(q.imag())
                << "\" stroke=\"#C03030\" stroke-width=\"1.5\"/>\n";
        }
    }

    auto marker = [&](PlanePoint p, const char* label) {
        svg << "  <circle class=\"limit\" cx=\"" << sx(p.real()) << "\" cy=\"" << sy(p.imag())
            << "\" r=\"3\" fill=\"#222222\"/>\n"
            << "  <text x=\"" << sx(p.real()) + 6 << "\" y=\"" << sy(p.imag()) - 6
            << "\" font-size=\"13\" font-family=\"sans-serif\">" << label << "</text>\n";
    };
    marker(pencil.limit_zero, "|&#956;| = 0");
    marker(pencil.limit_inf, "|&#956;| = &#8734;");

    svg << "</svg>\n";
    return svg.str();
}

void save_pencil_svg(const ProjectiveMap& m, std::span<const double> k_values,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << plot_pencil(m, k_values);
}

} // namespace projconf
