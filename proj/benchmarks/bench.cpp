#include <benchmark/benchmark.h>

#include "projconf/render.hpp"
#include "projconf/sampling.hpp"
#include "projconf/triangle_maps.hpp"

using namespace projconf;

static void BM_HomographyFromCorrespondences(benchmark::State& state) {
    Rng rng(1);
    Triangle src = random_triangle(rng);
    Triangle dst = random_triangle(rng);
    std::array<PlanePoint, 4> s{src.a(), src.b(), src.c(), incenter(src)};
    std::array<PlanePoint, 4> d{dst.a(), dst.b(), dst.c(), incenter(dst)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(homography_from_correspondences(s, d));
    }
}
BENCHMARK(BM_HomographyFromCorrespondences);

static void BM_BeltramiEvaluation(benchmark::State& state) {
    Rng rng(2);
    ProjectiveMap m = random_nonaffine_map(rng);
    BeltramiField field = beltrami_field(coefficients_from_matrix(m));
    PlanePoint z{0.37, -0.21};
    for (auto _ : state) {
        benchmark::DoNotOptimize(field.mu(z));
        z += PlanePoint{1e-9, -1e-9};
    }
}
BENCHMARK(BM_BeltramiEvaluation);

static void BM_EccentricityOfMapAt(benchmark::State& state) {
    Rng rng(3);
    ProjectiveMap m = random_nonaffine_map(rng);
    PlanePoint z{0.37, -0.21};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eccentricity_of_map_at(m, z));
    }
}
BENCHMARK(BM_EccentricityOfMapAt);

static void BM_FamilyMap(benchmark::State& state) {
    Rng rng(4);
    Triangle src = random_triangle(rng);
    Triangle dst = random_triangle(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(family_map(src, dst, 2.0));
    }
}
BENCHMARK(BM_FamilyMap);

static void BM_EdgeContinuity(benchmark::State& state) {
    MetricTriangulation mesh = grid_mesh(12, 12, 2.0, 2.0, 0.25, 5);
    Rng rng(5);
    MeshPair pair = random_moebius_pair(mesh, rng).pair;
    for (auto _ : state) {
        benchmark::DoNotOptimize(edge_continuity(pair, 2.0));
    }
}
BENCHMARK(BM_EdgeContinuity);

static void BM_ScaleFactorSolve(benchmark::State& state) {
    MetricTriangulation mesh = grid_mesh(16, 16, 2.0, 2.0, 0.25, 6);
    Rng rng(6);
    MeshPair pair = random_moebius_pair(mesh, rng).pair;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_scale_factors(pair));
    }
}
BENCHMARK(BM_ScaleFactorSolve);

static void BM_RenderPullback(benchmark::State& state) {
    MetricTriangulation mesh = grid_mesh(8, 8, 2.0, 2.0, 0.2, 7);
    Rng rng(7);
    PiecewiseProjectiveMap ppm(random_moebius_pair(mesh, rng).pair, 2.0);
    RasterJob job;
    job.width = job.height = int(state.range(0));
    job.cell = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(render_pullback(ppm, job));
    }
    state.SetItemsProcessed(state.iterations() * job.width * job.height);
}
BENCHMARK(BM_RenderPullback)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
