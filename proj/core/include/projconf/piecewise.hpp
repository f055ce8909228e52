#pragma once

#include <optional>
#include <vector>

#include "projconf/mesh.hpp"
#include "projconf/triangle_maps.hpp"

namespace projconf {

// Face whose closed region contains p, lowest index on shared-edge ties;
// nullopt outside the mesh.
std::optional<int> locate(const MetricTriangulation& mesh, PlanePoint p);

// Map between a positioned mesh pair whose restriction to each face is the
// exponent-t projective map. Single-valued on shared edges up to the pair's
// continuity discrepancy (reported by edge_continuity, not assumed here).
class PiecewiseProjectiveMap {
public:
    PiecewiseProjectiveMap(MeshPair pair, double t_param);

    const MeshPair& pair() const { return pair_; }
    double t() const { return t_; }

    PlanePoint evaluate(PlanePoint p) const;          // source -> target
    PlanePoint evaluate_inverse(PlanePoint p) const;  // target -> source

    const ProjectiveMap& face_map(int f) const { return maps_[f]; }
    const ProjectiveMap& face_map_inverse(int f) const { return inverses_[f]; }

    // evaluate by a forced face, bypassing point location
    PlanePoint evaluate_on_face(int f, PlanePoint p) const { return maps_[f](p); }

private:
    MeshPair pair_;
    double t_;
    std::vector<ProjectiveMap> maps_;
    std::vector<ProjectiveMap> inverses_;
};

} // namespace projconf
