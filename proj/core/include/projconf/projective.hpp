#pragma once

#include <array>
#include <variant>

#include <Eigen/Dense>

#include "projconf/errors.hpp"
#include "projconf/geometry.hpp"

namespace projconf {

// Point of RP^2 with real homogeneous coordinates, up to nonzero scale.
struct HomogeneousPoint {
    Eigen::Vector3d v;

    static HomogeneousPoint from_plane(PlanePoint p) {
        return {Eigen::Vector3d(p.real(), p.imag(), 1.0)};
    }
    PlanePoint dehomogenize() const;
    bool same_point(const HomogeneousPoint& other, double tol = 1e-9) const;
};

// Invertible real 3x3 matrix acting on homogeneous coordinates, [x] -> [Ax].
// Stored at unit Frobenius norm with det > 0, so tolerances are scale-free
// and equal maps compare equal entrywise.
class ProjectiveMap {
public:
    explicit ProjectiveMap(const Eigen::Matrix3d& m);

    static ProjectiveMap identity() { return ProjectiveMap(Eigen::Matrix3d::Identity()); }

    const Eigen::Matrix3d& matrix() const { return m_; }
    double det() const { return det_; }

    // image of a plane point; throws MapsToInfinity when the image has no
    // affine representative
    PlanePoint operator()(PlanePoint pt) const;

    ProjectiveMap inverse() const;
    bool is_affine(double tol = 1e-12) const;

    friend ProjectiveMap operator*(const ProjectiveMap& a, const ProjectiveMap& b) {
        return ProjectiveMap(a.m_ * b.m_);
    }

private:
    Eigen::Matrix3d m_;
    double det_;
};

ProjectiveMap homography_from_correspondences(const std::array<PlanePoint, 4>& src,
                                              const std::array<PlanePoint, 4>& dst);

// Real symmetric 3x3 matrix up to scale; canonicalized to unit Frobenius
// norm with the first nonzero entry (row-major scan) positive.
class Conic {
public:
    explicit Conic(const Eigen::Matrix3d& q);

    const Eigen::Matrix3d& matrix() const { return q_; }

    // value of the quadratic form at (x, y, 1)
    double operator()(PlanePoint p) const;

private:
    Eigen::Matrix3d q_;
};

// Frobenius distance of the canonical representatives, sign-insensitive.
double conic_distance(const Conic& a, const Conic& b);

struct ProperCircle {
    PlanePoint center;
    double radius;
};

// { p : dot(normal, p) == offset }, with |normal| == 1.
struct Line {
    PlanePoint normal;
    double offset;

    double signed_distance(PlanePoint p) const { return dot(normal, p) - offset; }
};

using GeneralizedCircle = std::variant<ProperCircle, Line>;

Conic pushforward_conic(const ProjectiveMap& map, const Conic& c);

Conic conic_from_circle(const GeneralizedCircle& gc);
GeneralizedCircle circle_from_conic(const Conic& c, double tol = 1e-8);
bool is_circle(const Conic& c, double tol);

Line preimage_of_infinity(const ProjectiveMap& map);

} // namespace projconf
