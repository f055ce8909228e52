#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projconf/mesh.hpp"

namespace projconf {

// One verification suite outcome. `worst` is the headline statistic against
// `budget`; sub-checks with their own budgets live in `details` (JSON text).
struct SuiteResult {
    std::string name;
    std::string statement;
    bool passed = false;
    double worst = 0.0;
    double budget = 0.0;
    double seconds = 0.0;
    std::string details; // JSON object
};

// suite: all | pencil | circles | cpp | app | sl2 | continuity
// scale == 0 keeps the stated sample counts; otherwise it replaces the
// leading count (number of maps / pairs) of each suite.
std::vector<SuiteResult> run_verification(const std::string& suite, std::uint64_t seed,
                                          int scale = 0);

// Byte-identity of repeated 64 x 64 pullback renders at t in {0, 1, 2},
// across runs and thread counts; used with the shipped sample pair.
SuiteResult verify_render_determinism(const MeshPair& pair);

std::string suite_results_to_json(const std::vector<SuiteResult>& results);

} // namespace projconf
