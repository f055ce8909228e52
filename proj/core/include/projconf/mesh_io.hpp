#pragma once

#include <string>

#include "projconf/mesh.hpp"
#include "projconf/projective.hpp"

namespace projconf {

// Mesh JSON schema:
//   { "vertices": [[x, y], ...],        optional
//     "faces":    [[i, j, k], ...],
//     "lengths":  [[i, j, l], ...] }    optional
// At least one of vertices/lengths must be present; when both are, they
// must agree to 1e-9 or loading fails.
MetricTriangulation load_mesh(const std::string& path);
MetricTriangulation parse_mesh(const std::string& json_text);
std::string mesh_to_json(const MetricTriangulation& mesh, bool include_lengths = true);
void save_mesh(const MetricTriangulation& mesh, const std::string& path,
               bool include_lengths = true);

// Matrix file: 9 whitespace-separated decimals, row-major.
ProjectiveMap load_matrix(const std::string& path);

// Parse either a file path or an inline list of 9 numbers (spaces/commas).
ProjectiveMap parse_matrix_argument(const std::string& arg);

} // namespace projconf
