// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion.
//
//   projconf-acceptance [--seed N] [--data DIR]
//
// Exits nonzero if any criterion fails.

#include <cstdio>
#include <cstring>
#include <map>
#include <string>

#include "projconf/mesh_io.hpp"
#include "projconf/verify.hpp"

using namespace projconf;

int main(int argc, char** argv) {
    std::uint64_t seed = 20250809;
    std::string data_dir = PROJCONF_DATA_DIR;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else if (std::strcmp(argv[i], "--data") == 0 && i + 1 < argc) data_dir = argv[++i];
        else {
            std::fprintf(stderr, "usage: %s [--seed N] [--data DIR]\n", argv[0]);
            return 1;
        }
    }

    static const std::map<std::string, int> criterion_of = {
        {"beltrami_fd", 1},
        {"det_identity", 2},
        {"contour_constancy", 3},
        {"circles_exclusivity", 4},
        {"inverse_symmetry", 5},
        {"cpp_theorem", 6},
        {"max_at_vertex", 7},
        {"app_optimality", 8},
        {"sl2_lemma", 9},
        {"equivalence_characterizations", 10},
        {"t_family_continuity", 11},
        {"render_determinism", 12},
    };

    std::vector<SuiteResult> results;
    try {
        results = run_verification("all", seed);
        MeshPair sample(load_mesh(data_dir + "/sample_src.json"),
                        load_mesh(data_dir + "/sample_dst.json"));
        results.push_back(verify_render_determinism(sample));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance setup failed: %s\n", e.what());
        return 1;
    }

    std::map<int, const SuiteResult*> by_number;
    for (const auto& r : results) by_number[criterion_of.at(r.name)] = &r;

    int failures = 0;
    for (const auto& [num, r] : by_number) {
        std::printf("criterion %2d [%s] %-30s worst %.3e (budget %.1e) %5.1fs  %s\n", num,
                    r->passed ? "PASS" : "FAIL", r->name.c_str(), r->worst, r->budget,
                    r->seconds, r->statement.c_str());
        if (!r->passed) ++failures;
    }
    std::printf("ACCEPTANCE: %zu/%zu criteria passed (seed %llu)\n", by_number.size() - failures,
                by_number.size(), static_cast<unsigned long long>(seed));
    return failures == 0 ? 0 : 2;
}
