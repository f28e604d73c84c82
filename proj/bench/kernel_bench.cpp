#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hyperdisk/batch.hpp"
#include "hyperdisk/geometry.hpp"
#include "hyperdisk/graph.hpp"
#include "hyperdisk/rng.hpp"

namespace {

using namespace hyperdisk;

std::vector<Point> random_points(int n, int dim, std::uint64_t seed) {
    Rng rng(seed);
    const DiskModel model(1.0, dim);
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec c(dim);
        double r = 0.95 * std::pow(rng.uniform(), 1.0 / dim);
        double len = 0.0;
        for (int k = 0; k < dim; ++k) {
            c[k] = rng.normal();
            len += c[k] * c[k];
        }
        len = std::sqrt(len);
        for (int k = 0; k < dim; ++k) c[k] *= r / len;
        pts.emplace_back(model, std::move(c));
    }
    return pts;
}

std::vector<Tangent> random_tangents(const std::vector<Point>& pts, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Tangent> vs;
    vs.reserve(pts.size());
    for (const Point& p : pts) {
        Vec c(p.dim());
        for (int k = 0; k < p.dim(); ++k) c[k] = 0.1 * rng.normal();
        vs.emplace_back(p, std::move(c));
    }
    return vs;
}

void BM_PairwiseDistances(benchmark::State& state) {
    const auto pts = random_points(static_cast<int>(state.range(0)), 2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(batch::pairwise_distances(pts));
}

void BM_PairwiseDistancesSerial(benchmark::State& state) {
    const auto pts = random_points(static_cast<int>(state.range(0)), 2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(batch::pairwise_distances_serial(pts));
}

void BM_HopMatrix(benchmark::State& state) {
    const Graph g = complete_binary_tree(static_cast<int>(state.range(0)), TreeMode::Undirected);
    const auto adj = symmetrized_adjacency(g);
    for (auto _ : state) benchmark::DoNotOptimize(batch::hop_matrix(adj));
}

void BM_HopMatrixSerial(benchmark::State& state) {
    const Graph g = complete_binary_tree(static_cast<int>(state.range(0)), TreeMode::Undirected);
    const auto adj = symmetrized_adjacency(g);
    for (auto _ : state) benchmark::DoNotOptimize(batch::hop_matrix_serial(adj));
}

std::pair<std::vector<double>, std::vector<double>> tau_inputs(int m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> a(m), b(m);
    for (int i = 0; i < m; ++i) {
        a[i] = static_cast<double>(rng.uniform_index(64));  // tie-heavy, like hop counts
        b[i] = rng.uniform();
    }
    return {std::move(a), std::move(b)};
}

void BM_TauCounts(benchmark::State& state) {
    const auto [a, b] = tau_inputs(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(batch::tau_counts(a, b));
}

void BM_TauCountsSerial(benchmark::State& state) {
    const auto [a, b] = tau_inputs(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) benchmark::DoNotOptimize(batch::tau_counts_serial(a, b));
}

void BM_ExpmapIdentityErrors(benchmark::State& state) {
    const auto pts = random_points(static_cast<int>(state.range(0)), 3, 13);
    const auto vs = random_tangents(pts, 17);
    for (auto _ : state) benchmark::DoNotOptimize(batch::expmap_identity_errors(pts, vs));
}

void BM_ExpmapIdentityErrorsSerial(benchmark::State& state) {
    const auto pts = random_points(static_cast<int>(state.range(0)), 3, 13);
    const auto vs = random_tangents(pts, 17);
    for (auto _ : state) benchmark::DoNotOptimize(batch::expmap_identity_errors_serial(pts, vs));
}

BENCHMARK(BM_PairwiseDistances)->Arg(64)->Arg(256);
BENCHMARK(BM_PairwiseDistancesSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_HopMatrix)->Arg(5)->Arg(8);
BENCHMARK(BM_HopMatrixSerial)->Arg(5)->Arg(8);
BENCHMARK(BM_TauCounts)->Arg(2016)->Arg(32640);
BENCHMARK(BM_TauCountsSerial)->Arg(2016)->Arg(32640);
BENCHMARK(BM_ExpmapIdentityErrors)->Arg(1024)->Arg(8192);
BENCHMARK(BM_ExpmapIdentityErrorsSerial)->Arg(1024)->Arg(8192);

}  // namespace

BENCHMARK_MAIN();
