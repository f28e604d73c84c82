#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyperdisk/batch.hpp"
#include "hyperdisk/graph.hpp"
#include "hyperdisk/rng.hpp"

using namespace hyperdisk;

namespace {

std::vector<Point> random_points(int n, int dim, std::uint64_t seed, double maxRadius) {
    Rng rng(seed);
    const DiskModel m(1.0, dim);
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec c(dim);
        double r = 0.0;
        do {
            for (double& x : c) x = rng.uniform(-maxRadius, maxRadius);
            r = norm(c);
        } while (r >= maxRadius);
        pts.emplace_back(m, c);
    }
    return pts;
}

}  // namespace

TEST_CASE("parallel distance matrix is bitwise equal to its serial twin") {
    const std::vector<Point> pts = random_points(41, 3, 17, 0.95);
    const std::vector<double> par = batch::pairwise_distances(pts);
    const std::vector<double> ser = batch::pairwise_distances_serial(pts);
    REQUIRE(par.size() == pts.size() * pts.size());
    CHECK(par == ser);  // bit-for-bit

    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        CHECK(par[i * n + i] == 0.0);
        for (size_t j = 0; j < n; ++j) CHECK(par[i * n + j] == par[j * n + i]);
    }
    CHECK(par[0 * n + 1] == doctest::Approx(distance(pts[0], pts[1])).epsilon(1e-15));
}

TEST_CASE("parallel hop matrix is bitwise equal to its serial twin") {
    const Graph g = complete_binary_tree(5, TreeMode::Undirected);
    const auto adj = symmetrized_adjacency(g);
    const auto par = batch::hop_matrix(adj);
    const auto ser = batch::hop_matrix_serial(adj);
    CHECK(par == ser);
    REQUIRE(par.size() == 63);
    CHECK(par[0][0] == 0);
    CHECK(par[0][1] == 1);
    CHECK(par[1][2] == 2);    // across the root
    CHECK(par[31][62] == 10); // deepest leaf to deepest leaf on the other side

    // Unreachable nodes are marked -1.
    const std::vector<std::vector<int>> twoIslands{{1}, {0}, {}};
    const auto hops = batch::hop_matrix(twoIslands);
    CHECK(hops == batch::hop_matrix_serial(twoIslands));
    CHECK(hops[0][2] == -1);
    CHECK(hops[2][0] == -1);
    CHECK(hops[2][2] == 0);
}

TEST_CASE("parallel pair-ordering counts equal the serial twin on tie-heavy data") {
    Rng rng(29);
    std::vector<double> a(500), b(500);
    for (size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<double>(rng.uniform_index(64));
        b[i] = static_cast<double>(rng.uniform_index(64));
    }
    const batch::TauCounts par = batch::tau_counts(a, b);
    const batch::TauCounts ser = batch::tau_counts_serial(a, b);
    CHECK(par.concordant == ser.concordant);
    CHECK(par.discordant == ser.discordant);
    CHECK(par.tiesA == ser.tiesA);
    CHECK(par.tiesB == ser.tiesB);
    const long long n0 = 500LL * 499LL / 2LL;
    CHECK(par.concordant + par.discordant <= n0);
    CHECK(par.concordant > 0);
    CHECK(par.tiesA > 0);  // 64 buckets over 500 entries force ties
}

TEST_CASE("pair-ordering counts match a hand count") {
    const std::vector<double> a{1, 1, 2, 3};
    const std::vector<double> b{2, 1, 1, 4};
    const batch::TauCounts c = batch::tau_counts(a, b);
    CHECK(c.concordant == 3);
    CHECK(c.discordant == 1);
    CHECK(c.tiesA == 1);
    CHECK(c.tiesB == 1);

    // A pair tied in both sequences lands in both tie tallies.
    const batch::TauCounts both = batch::tau_counts({1, 1}, {2, 2});
    CHECK(both.concordant == 0);
    CHECK(both.discordant == 0);
    CHECK(both.tiesA == 1);
    CHECK(both.tiesB == 1);
}

TEST_CASE("parallel exponential-map identity errors equal the serial twin") {
    Rng rng(31);
    const std::vector<Point> pts = random_points(200, 2, 37, 0.9);
    std::vector<Tangent> vs;
    vs.reserve(pts.size());
    for (const Point& p : pts) {
        Vec dir{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double len = rng.uniform(1e-3, 5.0);
        const double factor = len / (std::sqrt(conformal_factor(p)) * norm(dir));
        vs.emplace_back(p, scale(dir, factor));
    }
    const std::vector<double> par = batch::expmap_identity_errors(pts, vs);
    const std::vector<double> ser = batch::expmap_identity_errors_serial(pts, vs);
    REQUIRE(par.size() == pts.size());
    CHECK(par == ser);
    for (size_t i = 0; i < par.size(); ++i) {
        const double len = riemannian_norm(vs[i]);
        CHECK(par[i] <= 1e-8 * std::max(1.0, len));
    }
}
