#pragma once

#include <stdexcept>
#include <string>

namespace projconf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// projective layer
struct MapsToInfinity : Error { using Error::Error; };
struct DegenerateConfiguration : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct NotACircle : Error { using Error::Error; };
struct AffineMap : Error { using Error::Error; };

// dilatation layer
struct NotAffine : Error { using Error::Error; };
struct AlphaZero : Error { using Error::Error; };
struct OnPreimageOfInfinity : Error { using Error::Error; };
struct NotOrientationPreserving : Error { using Error::Error; };

// triangle map layer
struct DependentDirections : Error { using Error::Error; };

// mesh layer
struct MeshError : Error { using Error::Error; };
struct BoundaryEdge : Error { using Error::Error; };
struct MissingPositions : Error { using Error::Error; };
struct PoleTooClose : Error { using Error::Error; };
struct OrientationFlip : Error { using Error::Error; };
struct OutsideMesh : Error { using Error::Error; };

} // namespace projconf
