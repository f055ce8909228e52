#include "projconf/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace projconf {

namespace {

double min_angle_of(PlanePoint a, PlanePoint b, PlanePoint c) {
    auto corner = [](PlanePoint v, PlanePoint p, PlanePoint q) {
        PlanePoint u1 = p - v, u2 = q - v;
        double cosv = dot(u1, u2) / (std::abs(u1) * std::abs(u2));
        return std::acos(std::clamp(cosv, -1.0, 1.0));
    };
    return std::min({corner(a, b, c), corner(b, c, a), corner(c, a, b)});
}

} // namespace

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

PlanePoint random_point(Rng& rng, double box) {
    return {uniform(rng, -box, box), uniform(rng, -box, box)};
}

ProjectiveMap random_nonaffine_map(Rng& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Eigen::Matrix3d m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = uniform(rng, -1.0, 1.0);
        try {
            ProjectiveMap map(m);
            if (std::hypot(map.matrix()(2, 0), map.matrix()(2, 1)) < 0.05) continue;
            HalfCoefficients h = coefficients_from_matrix(map);
            Complex alpha = h.b * h.p - h.a * std::conj(h.p);
            if (std::abs(alpha) < 1e-3) continue;
            BeltramiField field = beltrami_field(h);
            if (std::abs(field.z_zero()) > 20.0 || std::abs(field.z_inf()) > 20.0) continue;
            if (std::abs(field.z_zero() - field.z_inf()) < 0.05) continue;
            return map;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("random_nonaffine_map: generation failed");
}

Triangle random_triangle(Rng& rng, double box, double min_angle) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        PlanePoint a = random_point(rng, box);
        PlanePoint b = random_point(rng, box);
        PlanePoint c = random_point(rng, box);
        if (cross(b - a, c - a) < 0.0) std::swap(b, c);
        if (min_angle_of(a, b, c) < min_angle) continue;
        if (std::abs(b - a) < 0.05 * box) continue;
        try {
            return Triangle(a, b, c);
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("random_triangle: generation failed");
}

Triangle random_triangle_in_disk(Rng& rng, PlanePoint center, double radius, double min_angle) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        PlanePoint pts[3];
        for (auto& p : pts) {
            double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
            double phi = uniform(rng, 0.0, 2.0 * M_PI);
            p = center + std::polar(r, phi);
        }
        if (cross(pts[1] - pts[0], pts[2] - pts[0]) < 0.0) std::swap(pts[1], pts[2]);
        if (min_angle_of(pts[0], pts[1], pts[2]) < min_angle) continue;
        if (std::abs(pts[1] - pts[0]) < 0.05 * radius) continue;
        try {
            return Triangle(pts[0], pts[1], pts[2]);
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("random_triangle_in_disk: generation failed");
}

MetricTriangulation grid_mesh(int nx, int ny, double width, double height, double jitter,
                              std::uint64_t seed) {
    if (nx < 2 || ny < 2) throw Error("grid_mesh needs at least 2 x 2 vertices");
    double dx = width / (nx - 1), dy = height / (ny - 1);
    double amp = jitter * std::min(dx, dy);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Rng rng(seed + 0x9e3779b9u * attempt);
        std::vector<PlanePoint> pos(size_t(nx) * ny);
        for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                PlanePoint p{ix * dx, iy * dy};
                if (ix > 0 && ix < nx - 1 && iy > 0 && iy < ny - 1)
                    p += PlanePoint{uniform(rng, -amp, amp), uniform(rng, -amp, amp)};
                pos[size_t(iy) * nx + ix] = p;
            }
        }
        std::vector<std::array<int, 3>> faces;
        faces.reserve(size_t(nx - 1) * (ny - 1) * 2);
        for (int iy = 0; iy + 1 < ny; ++iy) {
            for (int ix = 0; ix + 1 < nx; ++ix) {
                int v00 = iy * nx + ix, v10 = v00 + 1;
                int v01 = v00 + nx, v11 = v01 + 1;
                faces.push_back({v00, v10, v11});
                faces.push_back({v00, v11, v01});
            }
        }
        try {
            return MetricTriangulation::create(nx * ny, std::move(faces), std::move(pos),
                                               std::nullopt);
        } catch (const MeshError&) {
            continue; // jitter flipped a face; retry with fresh offsets
        }
    }
    throw Error("grid_mesh: could not produce a valid jittered grid");
}

MoebiusPairSample random_moebius_pair(const MetricTriangulation& mesh, Rng& rng) {
    const auto& pos = mesh.positions();
    PlanePoint lo = pos[0], hi = pos[0];
    for (PlanePoint p : pos) {
        lo = {std::min(lo.real(), p.real()), std::min(lo.imag(), p.imag())};
        hi = {std::max(hi.real(), p.real()), std::max(hi.imag(), p.imag())};
    }
    PlanePoint mid = 0.5 * (lo + hi);
    double diam = mesh.diameter();

    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::array<Complex, 4> coeffs;
        if (uniform(rng, 0.0, 1.0) < 0.25) {
            // similarity a z + b
            coeffs = {std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 2.0 * M_PI)),
                      random_point(rng, diam), Complex(0.0), Complex(1.0)};
        } else {
            // pole placed explicitly outside the safety margin
            PlanePoint pole =
                mid + std::polar(diam * uniform(rng, 1.5, 4.0), uniform(rng, 0.0, 2.0 * M_PI));
            Complex a = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 2.0 * M_PI));
            Complex b = random_point(rng, diam);
            coeffs = {a, b, Complex(1.0), -pole};
        }
        try {
            return {coeffs, generate_moebius_pair(mesh, coeffs)};
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("random_moebius_pair: generation failed");
}

MetricTriangulation perturb_one_vertex(const MetricTriangulation& mesh, double rel_amount,
                                       Rng& rng) {
    // interior vertices: not an endpoint of any boundary edge
    std::vector<char> boundary(mesh.n_vertices(), 0);
    for (const auto& e : mesh.edges()) {
        if (!e.interior()) {
            boundary[e.i] = 1;
            boundary[e.j] = 1;
        }
    }
    std::vector<int> interior;
    for (int v = 0; v < mesh.n_vertices(); ++v)
        if (!boundary[v]) interior.push_back(v);
    if (interior.empty()) throw MeshError("mesh has no interior vertex to perturb");

    for (int attempt = 0; attempt < 1000; ++attempt) {
        int v = interior[std::uniform_int_distribution<size_t>(0, interior.size() - 1)(rng)];
        double shortest = std::numeric_limits<double>::infinity();
        for (const auto& e : mesh.edges())
            if (e.i == v || e.j == v) shortest = std::min(shortest, e.length);
        auto pos = mesh.positions();
        pos[v] += std::polar(rel_amount * shortest, uniform(rng, 0.0, 2.0 * M_PI));
        try {
            return mesh.with_positions(std::move(pos));
        } catch (const MeshError&) {
            continue; // flipped a face; try another vertex/direction
        }
    }
    throw Error("perturb_one_vertex: could not perturb without breaking the mesh");
}

} // namespace projconf
