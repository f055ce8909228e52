#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "projconf/dilatation.hpp"
#include "projconf/piecewise.hpp"

namespace projconf {

struct ViewRect {
    double x0, y0, x1, y1;
};

struct RasterJob {
    int width = 256;
    int height = 256;
    std::optional<ViewRect> view; // default: target mesh bounding box
    double cell = 0.5;            // checker cell size in source units
    int supersample = 1;          // n x n subpixel grid, majority vote
    int threads = 1;              // row-parallel; output independent of this
};

struct Image {
    int width = 0, height = 0;
    std::vector<unsigned char> rgb; // row-major, top row first

    bool operator==(const Image&) const = default;
};

// For each pixel of the target view: locate the target face, pull back with
// the face's inverse map, and color by the source checkerboard parity.
// Deterministic byte-for-byte for fixed inputs, whatever the thread count.
Image render_pullback(const PiecewiseProjectiveMap& ppm, const RasterJob& job);

std::string ppm_bytes(const Image& img); // binary PPM, P6 maxval 255
void write_ppm(const Image& img, const std::string& path);

// SVG plot of the |mu| contour pencil: one circle per k != 1, a line for
// k = 1, markers and labels at both limit points.
std::string plot_pencil(const ProjectiveMap& m, std::span<const double> k_values);
void save_pencil_svg(const ProjectiveMap& m, std::span<const double> k_values,
                     const std::string& path);

} // namespace projconf
