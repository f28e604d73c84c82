#pragma once

#include <cstdint>
#include <vector>

#include "hyperdisk/geometry.hpp"

namespace hyperdisk::batch {

// Each kernel has an OpenMP-parallel entry point and a serial twin with
// identical output, bit for bit; the twins exist as oracles for the
// parallel versions and as baselines for the benchmark target.

// Full n x n hyperbolic distance matrix, row-major.
std::vector<double> pairwise_distances(const std::vector<Point>& pts);
std::vector<double> pairwise_distances_serial(const std::vector<Point>& pts);

// Breadth-first hop counts per row over sorted adjacency lists; -1 marks
// unreachable nodes.
std::vector<std::vector<int>> hop_matrix(const std::vector<std::vector<int>>& adj);
std::vector<std::vector<int>> hop_matrix_serial(const std::vector<std::vector<int>>& adj);

// Pair-ordering counts between two equally long value sequences.
struct TauCounts {
    long long concordant = 0;
    long long discordant = 0;
    long long tiesA = 0;  // pairs tied in a (ties in both count here too)
    long long tiesB = 0;
};

TauCounts tau_counts(const std::vector<double>& a, const std::vector<double>& b);
TauCounts tau_counts_serial(const std::vector<double>& a, const std::vector<double>& b);

// |d(p_i, Exp_{p_i}(v_i)) - |v_i|_riem| for each sample.
std::vector<double> expmap_identity_errors(const std::vector<Point>& ps, const std::vector<Tangent>& vs);
std::vector<double> expmap_identity_errors_serial(const std::vector<Point>& ps, const std::vector<Tangent>& vs);

}  // namespace hyperdisk::batch
