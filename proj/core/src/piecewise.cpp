#include "projconf/piecewise.hpp"

#include <cmath>

namespace projconf {

std::optional<int> locate(const MetricTriangulation& mesh, PlanePoint p) {
    const auto& pos = mesh.positions();
    const auto& faces = mesh.faces();
    for (int f = 0; f < int(faces.size()); ++f) {
        PlanePoint a = pos[faces[f][0]], b = pos[faces[f][1]], c = pos[faces[f][2]];
        double scale2 = std::max({std::norm(b - a), std::norm(c - b), std::norm(a - c)});
        double eps = 1e-12 * scale2;
        if (cross(b - a, p - a) >= -eps && cross(c - b, p - b) >= -eps &&
            cross(a - c, p - c) >= -eps)
            return f;
    }
    return std::nullopt;
}

PiecewiseProjectiveMap::PiecewiseProjectiveMap(MeshPair pair, double t_param)
    : pair_(std::move(pair)), t_(t_param) {
    if (!pair_.source.has_positions() || !pair_.target.has_positions())
        throw MissingPositions("piecewise projective map needs positions on both meshes");
    const auto& spos = pair_.source.positions();
    const auto& tpos = pair_.target.positions();
    maps_.reserve(pair_.source.faces().size());
    inverses_.reserve(pair_.source.faces().size());
    for (const auto& f : pair_.source.faces()) {
        Triangle src(spos[f[0]], spos[f[1]], spos[f[2]]);
        Triangle dst(tpos[f[0]], tpos[f[1]], tpos[f[2]]);
        maps_.push_back(family_map(src, dst, t_).map);
        inverses_.push_back(maps_.back().inverse());
    }
}

PlanePoint PiecewiseProjectiveMap::evaluate(PlanePoint p) const {
    auto f = locate(pair_.source, p);
    if (!f) throw OutsideMesh("point is outside the source mesh");
    return maps_[*f](p);
}

PlanePoint PiecewiseProjectiveMap::evaluate_inverse(PlanePoint p) const {
    auto f = locate(pair_.target, p);
    if (!f) throw OutsideMesh("point is outside the target mesh");
    return inverses_[*f](p);
}

} // namespace projconf
