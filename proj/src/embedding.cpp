#include "hyperdisk/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "hyperdisk/batch.hpp"

namespace hyperdisk {

namespace {

void check_state(const EmbeddingState& s, const Graph& g) {
    if (s.positions.size() != g.nodes.size()) throw std::invalid_argument("state and graph disagree on node count");
}

double log_sum_exp_neg(const std::vector<double>& dists) {
    double m = -dists[0];
    for (double d : dists) m = std::max(m, -d);
    double acc = 0.0;
    for (double d : dists) acc += std::exp(-d - m);
    return m + std::log(acc);
}

// Draws k distinct values from pool by partial shuffle.
std::vector<int> sample_without_replacement(std::vector<int> pool, size_t k, Rng& rng) {
    for (size_t i = 0; i < k; ++i) {
        const size_t j = i + rng.uniform_index(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace

EmbeddingState init_state(const Graph& g, const TrainConfig& cfg) {
    if (cfg.dim < 1) throw std::invalid_argument("embedding dimension must be at least 1");
    if (!(cfg.initRange > 0.0)) throw std::invalid_argument("init range must be positive");
    if (cfg.initRange * std::sqrt(static_cast<double>(cfg.dim)) >= 1.0 - 1e-6)
        throw std::invalid_argument("init range too wide for the disk");

    EmbeddingState s{DiskModel(1.0, cfg.dim), {}, cfg.seed};
    Rng rng(cfg.seed);
    s.positions.reserve(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        Vec c(cfg.dim);
        for (int k = 0; k < cfg.dim; ++k) c[k] = rng.uniform(-cfg.initRange, cfg.initRange);
        s.positions.emplace_back(s.model, std::move(c));
    }
    return s;
}

double loss_full(const EmbeddingState& s, const Graph& g) {
    check_state(s, g);
    double total = 0.0;
    long long terms = 0;
    for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u) {
        const std::vector<int> nbrs = out_neighbors(g, u);
        if (nbrs.empty()) continue;
        const std::vector<int> rest = non_neighbors(g, u);
        // Each edge term ranks the positive against u's non-neighbors: the
        // denominator is exp(-d(u, v)) plus the non-neighbor sum, so the
        // term is a negative log-softmax and never drops below zero.
        std::vector<double> dists;
        dists.reserve(rest.size() + 1);
        dists.push_back(0.0);  // placeholder for the positive
        for (int w : rest) dists.push_back(distance(s.positions[u], s.positions[w]));
        for (int v : nbrs) {
            const double dPos = distance(s.positions[u], s.positions[v]);
            dists[0] = dPos;
            total += dPos + log_sum_exp_neg(dists);
            ++terms;
        }
    }
    if (terms == 0) std::cerr << "warning: graph contributes no loss terms\n";
    return total;
}

std::vector<SampledTerm> sample_terms(const Graph& g, int batch, int negatives, Rng& rng) {
    if (batch < 1) throw std::invalid_argument("batch must be at least 1");
    if (negatives < 0) throw std::invalid_argument("negative count must be nonnegative");
    if (g.edges.empty()) throw std::invalid_argument("graph has no edges");

    std::vector<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    std::vector<int> order(edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    const size_t take = std::min<size_t>(batch, edges.size());
    order = sample_without_replacement(std::move(order), take, rng);

    std::vector<SampledTerm> terms;
    terms.reserve(take);
    static bool warnedShortComplement = false;
    for (size_t i = 0; i < take; ++i) {
        const auto& [u, v] = edges[order[i]];
        std::vector<int> rest = non_neighbors(g, u);
        SampledTerm term;
        term.u = u;
        term.v = v;
        if (negatives == 0) {
            term.negatives = std::move(rest);
        } else if (rest.empty()) {
            std::cerr << "warning: node " << g.nodes[u] << " has no non-neighbors to sample; term skipped\n";
            continue;
        } else if (static_cast<size_t>(negatives) >= rest.size()) {
            if (static_cast<size_t>(negatives) > rest.size() && !warnedShortComplement) {
                std::cerr << "warning: node " << g.nodes[u] << " has fewer non-neighbors than requested negatives; using all\n";
                warnedShortComplement = true;
            }
            term.negatives = std::move(rest);
        } else {
            term.negatives = sample_without_replacement(std::move(rest), static_cast<size_t>(negatives), rng);
        }
        terms.push_back(std::move(term));
    }
    return terms;
}

double surrogate_value(const EmbeddingState& s, const std::vector<SampledTerm>& terms) {
    double total = 0.0;
    for (const SampledTerm& t : terms) {
        std::vector<double> dists(t.negatives.size() + 1);
        dists[0] = distance(s.positions[t.u], s.positions[t.v]);
        for (size_t k = 0; k < t.negatives.size(); ++k)
            dists[k + 1] = distance(s.positions[t.u], s.positions[t.negatives[k]]);
        total += dists[0] + log_sum_exp_neg(dists);
    }
    return total;
}

std::map<int, Vec> surrogate_gradient(const EmbeddingState& s, const std::vector<SampledTerm>& terms) {
    std::map<int, Vec> grads;
    const int dim = s.model.dim;
    auto accumulate = [&](int node, const Vec& contribution, double weight) {
        auto it = grads.try_emplace(node, Vec(static_cast<size_t>(dim), 0.0)).first;
        axpy(it->second, weight, contribution);
    };

    for (const SampledTerm& t : terms) {
        // The numerator pulls the edge together at unit weight; the softmax
        // over the denominator (the positive first, then the negatives)
        // pushes back, so the positive's net pull fades once it dominates.
        accumulate(t.u, distance_grad(s.positions[t.u], s.positions[t.v]), 1.0);
        accumulate(t.v, distance_grad(s.positions[t.v], s.positions[t.u]), 1.0);

        std::vector<int> den;
        den.reserve(t.negatives.size() + 1);
        den.push_back(t.v);
        den.insert(den.end(), t.negatives.begin(), t.negatives.end());

        std::vector<double> dists(den.size());
        for (size_t k = 0; k < den.size(); ++k) dists[k] = distance(s.positions[t.u], s.positions[den[k]]);
        double m = -dists[0];
        for (double d : dists) m = std::max(m, -d);
        double z = 0.0;
        for (double d : dists) z += std::exp(-d - m);
        for (size_t k = 0; k < den.size(); ++k) {
            const int w = den[k];
            const double softmaxWeight = std::exp(-dists[k] - m) / z;
            accumulate(t.u, distance_grad(s.positions[t.u], s.positions[w]), -softmaxWeight);
            accumulate(w, distance_grad(s.positions[w], s.positions[t.u]), -softmaxWeight);
        }
    }
    return grads;
}

std::map<int, Vec> loss_minibatch_grad(const EmbeddingState& s, const Graph& g, int batch, Rng& rng) {
    check_state(s, g);
    return surrogate_gradient(s, sample_terms(g, batch, 0, rng));
}

std::map<int, Vec> loss_negative_sampling_grad(const EmbeddingState& s, const Graph& g, int batch, int negatives,
                                               Rng& rng) {
    check_state(s, g);
    if (negatives < 1) throw std::invalid_argument("need at least one negative per term");
    return surrogate_gradient(s, sample_terms(g, batch, negatives, rng));
}

TrainResult train(const Graph& g, const TrainConfig& cfg) {
    if (cfg.steps < 1) throw std::invalid_argument("need at least one training step");
    if (!(cfg.lr > 0.0) || !std::isfinite(cfg.lr)) throw std::invalid_argument("learning rate must be positive and finite");
    if (g.edges.empty()) throw std::invalid_argument("graph has no edges");

    TrainResult result{init_state(g, cfg), {}};
    EmbeddingState& s = result.state;
    EmbedTrace& trace = result.trace;
    trace.surrogateLoss.reserve(cfg.steps);
    Rng rng(derive_seed(cfg.seed, 1));

    for (int step = 0; step < cfg.steps; ++step) {
        try {
            const std::vector<SampledTerm> terms = sample_terms(g, cfg.batch, cfg.negatives, rng);
            if (terms.empty()) throw std::runtime_error("no usable loss terms were sampled");
            const double sampled = surrogate_value(s, terms);
            if (!std::isfinite(sampled)) throw std::runtime_error("sampled loss became non-finite");
            trace.surrogateLoss.push_back(sampled);

            const std::map<int, Vec> grads = surrogate_gradient(s, terms);
            std::vector<std::pair<int, Point>> staged;
            staged.reserve(grads.size());
            for (const auto& [node, partials] : grads) {
                StepOutcome out = apply_update(cfg.rule, s.positions[node], EuclGradient(s.positions[node], partials),
                                               cfg.lr, cfg.clipEps);
                if (out.clipped) ++trace.clipEvents;
                staged.emplace_back(node, std::move(out.point));
            }
            for (auto& [node, point] : staged) s.positions[node] = std::move(point);

            if (cfg.fullLossEvery > 0 && (step % cfg.fullLossEvery == 0 || step + 1 == cfg.steps)) {
                const double full = loss_full(s, g);
                if (!std::isfinite(full)) throw std::runtime_error("exact loss became non-finite");
                trace.fullLoss.emplace_back(step, full);
            }
        } catch (const std::exception& e) {
            trace.failed = true;
            trace.failureReason = e.what();
            break;
        }
    }

    const size_t tail = std::min<size_t>(100, trace.surrogateLoss.size());
    if (tail > 0) {
        double acc = 0.0;
        for (size_t i = trace.surrogateLoss.size() - tail; i < trace.surrogateLoss.size(); ++i) acc += trace.surrogateLoss[i];
        trace.meanLast100 = acc / static_cast<double>(tail);
    }
    return result;
}

double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sequence length mismatch");
    if (a.size() < 2) throw std::invalid_argument("need at least two entries");
    const batch::TauCounts c = batch::tau_counts(a, b);
    const long long n = static_cast<long long>(a.size());
    const long long n0 = n * (n - 1) / 2;
    if (c.tiesA == n0) throw std::invalid_argument("first sequence is entirely tied; tau undefined");
    if (c.tiesB == n0) throw std::invalid_argument("second sequence is entirely tied; tau undefined");
    const double denom = std::sqrt(static_cast<double>(n0 - c.tiesA)) * std::sqrt(static_cast<double>(n0 - c.tiesB));
    return static_cast<double>(c.concordant - c.discordant) / denom;
}

std::vector<double> upper_triangle(const std::vector<std::vector<int>>& m) {
    std::vector<double> out;
    const size_t n = m.size();
    out.reserve(n * (n - 1) / 2);
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("matrix is not square");
        for (size_t j = i + 1; j < n; ++j) out.push_back(static_cast<double>(m[i][j]));
    }
    return out;
}

std::vector<double> upper_triangle_distances(const std::vector<Point>& pts) {
    const size_t n = pts.size();
    const std::vector<double> full = batch::pairwise_distances(pts);
    std::vector<double> out;
    out.reserve(n * (n - 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) out.push_back(full[i * n + j]);
    return out;
}

EvalResult evaluate(const EmbeddingState& s, const Graph& g) {
    check_state(s, g);
    const std::vector<std::vector<int>> hops = graph_distance_matrix(g);
    EvalResult r;
    r.tau = kendall_tau(upper_triangle(hops), upper_triangle_distances(s.positions));
    r.fullLoss = loss_full(s, g);
    return r;
}

}  // namespace hyperdisk
