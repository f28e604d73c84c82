#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperdisk/graph.hpp"
#include "hyperdisk/optimizers.hpp"

namespace hyperdisk {

struct TrainConfig {
    int dim = 2;
    double lr = 0.05;
    UpdateRule rule = UpdateRule::Geodesic;
    int negatives = 0;         // 0 = rank the positive against all non-neighbors
    int steps = 30000;
    int batch = 1;             // positive edges per step
    double initRange = 0.001;  // coordinates start uniform in (-initRange, initRange)
    double clipEps = 1e-10;
    std::uint64_t seed = 0;
    int fullLossEvery = 1000;  // checkpoint cadence for the exact loss; 0 = never
};

struct EmbeddingState {
    DiskModel model;
    std::vector<Point> positions;  // indexed by node
    std::uint64_t rngSeed = 0;
};

EmbeddingState init_state(const Graph& g, const TrainConfig& cfg);

// Exact loss: sum over ordered edges (u, v) of the negative log-softmax
//   d(u, v) + log[ exp(-d(u, v)) + sum_{w in N'(u)} exp(-d(u, w)) ],
// with N'(u) the non-neighbors of u (u itself excluded). The positive edge
// ranks against u's non-neighbors; anchoring the denominator with its own
// exp(-d(u, v)) keeps every term nonnegative and makes the pull on a
// positive pair fade once it dominates the softmax, so minimization cannot
// collapse edges or inflate the embedding without bound.
double loss_full(const EmbeddingState& s, const Graph& g);

// One sampled loss term: a positive edge and the negative nodes ranked
// against it. Evaluators always add the positive's own exp(-d(u, v)) to the
// denominator alongside these.
struct SampledTerm {
    int u = 0;
    int v = 0;
    std::vector<int> negatives;
};

// Draws `batch` distinct edges; each term's negative set is all of N'(u)
// when `negatives` is 0, otherwise `negatives` distinct non-neighbors (all
// of them, with a stderr warning, when N'(u) is smaller).
std::vector<SampledTerm> sample_terms(const Graph& g, int batch, int negatives, Rng& rng);

double surrogate_value(const EmbeddingState& s, const std::vector<SampledTerm>& terms);

// Partial derivatives of the surrogate with respect to every touched
// position (the edge ends and all denominator nodes).
std::map<int, Vec> surrogate_gradient(const EmbeddingState& s, const std::vector<SampledTerm>& terms);

// Sparse gradient of the minibatch surrogate ranking each positive against
// every non-neighbor. Expectation over the edge draw equals the full-loss
// gradient scaled by batch/|E|.
std::map<int, Vec> loss_minibatch_grad(const EmbeddingState& s, const Graph& g, int batch, Rng& rng);

// Sparse gradient of the surrogate ranking each positive against a uniform
// sample of `negatives` non-neighbors (without replacement). Biased
// relative to the full loss by construction.
std::map<int, Vec> loss_negative_sampling_grad(const EmbeddingState& s, const Graph& g, int batch, int negatives,
                                               Rng& rng);

struct EmbedTrace {
    std::vector<double> surrogateLoss;             // sampled loss at the pre-step positions
    std::vector<std::pair<int, double>> fullLoss;  // (step, exact loss) checkpoints
    double meanLast100 = 0.0;                      // mean surrogate loss over the final 100 steps
    int clipEvents = 0;
    bool failed = false;
    std::string failureReason;
};

struct TrainResult {
    EmbeddingState state;
    EmbedTrace trace;
};

// Runs cfg.steps sampled updates. All gradients of a step are evaluated at
// the pre-step positions and applied simultaneously. A non-finite loss or a
// failed update stops the run with the partial state and a failure flag.
TrainResult train(const Graph& g, const TrainConfig& cfg);

// Tie-corrected rank correlation (tau-b) between two paired sequences.
// Throws when either sequence is entirely tied.
double kendall_tau(const std::vector<double>& a, const std::vector<double>& b);

// Upper-triangle (i < j) entries, row-major.
std::vector<double> upper_triangle(const std::vector<std::vector<int>>& m);
std::vector<double> upper_triangle_distances(const std::vector<Point>& pts);

struct EvalResult {
    double fullLoss = 0.0;
    double tau = 0.0;  // hop counts vs embedded distances
};

EvalResult evaluate(const EmbeddingState& s, const Graph& g);

}  // namespace hyperdisk
