#include "hyperdisk/batch.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace hyperdisk::batch {

namespace {

void fill_distance_row(const std::vector<Point>& pts, int i, double* row) {
    const int n = static_cast<int>(pts.size());
    for (int j = 0; j < n; ++j) row[j] = i == j ? 0.0 : distance(pts[i], pts[j]);
}

std::vector<int> bfs_row(const std::vector<std::vector<int>>& adj, int s) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (dist[v] == -1) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

TauCounts pair_counts_for_row(const std::vector<double>& a, const std::vector<double>& b, size_t i) {
    TauCounts c;
    for (size_t j = i + 1; j < a.size(); ++j) {
        const double da = a[i] - a[j];
        const double db = b[i] - b[j];
        if (da == 0.0) ++c.tiesA;
        if (db == 0.0) ++c.tiesB;
        if (da == 0.0 || db == 0.0) continue;
        if ((da > 0.0) == (db > 0.0)) ++c.concordant;
        else ++c.discordant;
    }
    return c;
}

double identity_error(const Point& p, const Tangent& v) {
    return std::abs(distance(p, exp_map(p, v)) - riemannian_norm(v));
}

}  // namespace

std::vector<double> pairwise_distances(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) fill_distance_row(pts, i, m.data() + static_cast<size_t>(i) * n);
    return m;
}

std::vector<double> pairwise_distances_serial(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) fill_distance_row(pts, i, m.data() + static_cast<size_t>(i) * n);
    return m;
}

std::vector<std::vector<int>> hop_matrix(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<std::vector<int>> m(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) m[i] = bfs_row(adj, i);
    return m;
}

std::vector<std::vector<int>> hop_matrix_serial(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<std::vector<int>> m(n);
    for (int i = 0; i < n; ++i) m[i] = bfs_row(adj, i);
    return m;
}

TauCounts tau_counts(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sequence length mismatch");
    const long long n = static_cast<long long>(a.size());
    long long conc = 0, disc = 0, ta = 0, tb = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : conc, disc, ta, tb)
    for (long long i = 0; i < n; ++i) {
        const TauCounts c = pair_counts_for_row(a, b, static_cast<size_t>(i));
        conc += c.concordant;
        disc += c.discordant;
        ta += c.tiesA;
        tb += c.tiesB;
    }
    return {conc, disc, ta, tb};
}

TauCounts tau_counts_serial(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sequence length mismatch");
    TauCounts total;
    for (size_t i = 0; i < a.size(); ++i) {
        const TauCounts c = pair_counts_for_row(a, b, i);
        total.concordant += c.concordant;
        total.discordant += c.discordant;
        total.tiesA += c.tiesA;
        total.tiesB += c.tiesB;
    }
    return total;
}

std::vector<double> expmap_identity_errors(const std::vector<Point>& ps, const std::vector<Tangent>& vs) {
    if (ps.size() != vs.size()) throw std::invalid_argument("sample length mismatch");
    const long long n = static_cast<long long>(ps.size());
    std::vector<double> errs(ps.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 256)
    for (long long i = 0; i < n; ++i) errs[static_cast<size_t>(i)] = identity_error(ps[i], vs[i]);
    return errs;
}

std::vector<double> expmap_identity_errors_serial(const std::vector<Point>& ps, const std::vector<Tangent>& vs) {
    if (ps.size() != vs.size()) throw std::invalid_argument("sample length mismatch");
    std::vector<double> errs(ps.size(), 0.0);
    for (size_t i = 0; i < ps.size(); ++i) errs[i] = identity_error(ps[i], vs[i]);
    return errs;
}

}  // namespace hyperdisk::batch
