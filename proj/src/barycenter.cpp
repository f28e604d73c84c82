#include "hyperdisk/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperdisk {

namespace {

const DiskModel& require_anchor_model(const std::vector<Point>& anchors) {
    if (anchors.empty()) throw std::invalid_argument("barycenter problem needs at least one anchor");
    return anchors.front().model();
}

Point origin_of(const DiskModel& model) { return Point(model, Vec(model.dim, 0.0)); }

}  // namespace

BarycenterProblem::BarycenterProblem(std::vector<Point> anchorPoints)
    : model(require_anchor_model(anchorPoints)), anchors(std::move(anchorPoints)) {
    for (const Point& q : anchors)
        if (!same_model(q.model(), model)) throw std::invalid_argument("anchors live in different disk models");
}

BarycenterObjective::BarycenterObjective(BarycenterProblem problem) : problem_(std::move(problem)) {}

double BarycenterObjective::value(const Point& p) const {
    double acc = 0.0;
    for (const Point& q : problem_.anchors) {
        const double d = distance(p, q);
        acc += d * d;
    }
    return acc / static_cast<double>(problem_.anchors.size());
}

EuclGradient BarycenterObjective::eucl_gradient(const Point& p) const {
    Vec g(p.dim(), 0.0);
    for (const Point& q : problem_.anchors) axpy(g, 1.0, distance_sq_grad(p, q));
    return EuclGradient(p, scale(g, 1.0 / static_cast<double>(problem_.anchors.size())));
}

EuclGradient BarycenterObjective::stochastic_gradient(const Point& p, Rng& rng) const {
    const size_t i = rng.uniform_index(problem_.anchors.size());
    return EuclGradient(p, distance_sq_grad(p, problem_.anchors[i]));
}

BarycenterAnalysis analyze_barycenter(const BarycenterProblem& problem, const Point& p0) {
    if (!same_model(p0.model(), problem.model)) throw std::invalid_argument("start point model mismatch");
    const Point o = origin_of(problem.model);
    BarycenterAnalysis a;
    for (const Point& q : problem.anchors) a.k2 = std::max(a.k2, distance(o, q));
    a.D = std::max(distance(o, p0), a.k2);
    a.k1 = a.D;
    a.stepSize = 1.0 / (2.0 * a.D + 1.0);
    const double dCothD = a.D < 1e-12 ? 1.0 : a.D / std::tanh(a.D);
    a.epsRate = std::min(1.0 / dCothD, a.stepSize);
    a.smoothnessBound = a.k1 + a.k2 + 1.0;
    return a;
}

BarycenterRun solve_deterministic(const BarycenterProblem& problem, const Point& p0, int steps) {
    BarycenterRun run{analyze_barycenter(problem, p0), {}};
    const BarycenterObjective obj{BarycenterProblem(problem)};
    RunConfig cfg;
    cfg.rule = UpdateRule::Geodesic;
    cfg.learningRate = run.analysis.stepSize;
    cfg.steps = steps;
    run.trace = run_optimizer(obj, p0, cfg);
    return run;
}

namespace {

// Solves (A) s = b in place for small n; A row-major, partial pivoting.
Vec solve_linear(std::vector<double> A, Vec b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(A[static_cast<size_t>(row) * n + col]) > std::abs(A[static_cast<size_t>(pivot) * n + col])) pivot = row;
        if (A[static_cast<size_t>(pivot) * n + col] == 0.0) throw std::runtime_error("singular system");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(A[static_cast<size_t>(pivot) * n + j], A[static_cast<size_t>(col) * n + j]);
            std::swap(b[pivot], b[col]);
        }
        for (int row = col + 1; row < n; ++row) {
            const double m = A[static_cast<size_t>(row) * n + col] / A[static_cast<size_t>(col) * n + col];
            if (m == 0.0) continue;
            for (int j = col; j < n; ++j) A[static_cast<size_t>(row) * n + j] -= m * A[static_cast<size_t>(col) * n + j];
            b[row] -= m * b[col];
        }
    }
    Vec s(n, 0.0);
    for (int row = n - 1; row >= 0; --row) {
        double acc = b[row];
        for (int j = row + 1; j < n; ++j) acc -= A[static_cast<size_t>(row) * n + j] * s[j];
        s[row] = acc / A[static_cast<size_t>(row) * n + row];
    }
    return s;
}

bool inside_ball(const DiskModel& model, const Vec& c) {
    return all_finite(c) && norm(c) < model.radius * (1.0 - 1e-12);
}

}  // namespace

BarycenterOracle barycenter_oracle(const BarycenterProblem& problem) {
    const BarycenterObjective obj{BarycenterProblem(problem)};
    const DiskModel& model = problem.model;
    const int n = model.dim;
    const double r = model.radius;

    std::vector<Vec> starts;
    starts.push_back(Vec(n, 0.0));
    Vec centroid(n, 0.0);
    double maxAnchorNorm = 0.0;
    for (const Point& q : problem.anchors) {
        axpy(centroid, 1.0 / static_cast<double>(problem.anchors.size()), q.coords());
        starts.push_back(q.coords());
        maxAnchorNorm = std::max(maxAnchorNorm, norm(q.coords()));
    }
    if (inside_ball(model, centroid)) starts.push_back(centroid);
    if (n == 2 && maxAnchorNorm > 0.0) {
        for (int ir = 1; ir <= 12; ++ir) {
            for (int ia = 0; ia < 24; ++ia) {
                const double rad = maxAnchorNorm * ir / 12.0 * (1.0 - 1e-9);
                const double ang = 2.0 * 3.14159265358979323846 * ia / 24.0;
                starts.push_back({rad * std::cos(ang), rad * std::sin(ang)});
            }
        }
    }

    Vec best = starts.front();
    double bestF = obj.value(Point(model, best));
    for (const Vec& s : starts) {
        const double f = obj.value(Point(model, s));
        if (f < bestF) {
            bestF = f;
            best = s;
        }
    }

    // Projected gradient descent with backtracking.
    Vec p = best;
    double f = bestF;
    double alpha = 0.1;
    for (int it = 0; it < 2000; ++it) {
        const Vec g = obj.eucl_gradient(Point(model, p)).partials();
        const double gSq = norm_sq(g);
        if (gSq == 0.0) break;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            Vec q = p;
            axpy(q, -alpha, g);
            if (inside_ball(model, q)) {
                const double fq = obj.value(Point(model, q));
                if (fq <= f - 1e-4 * alpha * gSq) {
                    p = std::move(q);
                    f = fq;
                    alpha *= 1.5;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
            if (alpha < 1e-280) break;
        }
        if (!accepted) break;
        const double hSq = r * r - norm_sq(p);
        if (std::sqrt(gSq) * hSq / (2.0 * r) < 1e-11) break;  // Riemannian gradient norm
    }

    // Damped Newton refinement; Hessian by central differences of the gradient.
    const double h = 1e-6;
    double tau = 0.0;
    for (int it = 0; it < 60; ++it) {
        const Vec g = obj.eucl_gradient(Point(model, p)).partials();
        const double hSq = r * r - norm_sq(p);
        if (norm(g) * hSq / (2.0 * r) < 1e-13) break;

        std::vector<double> H(static_cast<size_t>(n) * n, 0.0);
        bool hessianOk = true;
        for (int j = 0; j < n && hessianOk; ++j) {
            Vec plus = p, minus = p;
            plus[j] += h;
            minus[j] -= h;
            if (!inside_ball(model, plus) || !inside_ball(model, minus)) {
                hessianOk = false;
                break;
            }
            const Vec gp = obj.eucl_gradient(Point(model, plus)).partials();
            const Vec gm = obj.eucl_gradient(Point(model, minus)).partials();
            for (int i = 0; i < n; ++i) H[static_cast<size_t>(i) * n + j] = (gp[i] - gm[i]) / (2.0 * h);
        }
        if (!hessianOk) break;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double m = 0.5 * (H[static_cast<size_t>(i) * n + j] + H[static_cast<size_t>(j) * n + i]);
                H[static_cast<size_t>(i) * n + j] = m;
                H[static_cast<size_t>(j) * n + i] = m;
            }

        bool accepted = false;
        for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
            std::vector<double> Hd = H;
            for (int i = 0; i < n; ++i) Hd[static_cast<size_t>(i) * n + i] += tau;
            Vec s;
            try {
                s = solve_linear(std::move(Hd), scale(g, -1.0));
            } catch (const std::runtime_error&) {
                tau = std::max(tau * 10.0, 1e-8);
                continue;
            }
            Vec q = p;
            axpy(q, 1.0, s);
            if (inside_ball(model, q)) {
                const double fq = obj.value(Point(model, q));
                if (fq <= f) {
                    p = std::move(q);
                    f = fq;
                    tau *= 0.25;
                    accepted = true;
                    break;
                }
            }
            tau = std::max(tau * 10.0, 1e-8);
        }
        if (!accepted) break;
    }

    BarycenterOracle out{Point(model, p), f, 0.0};
    const Vec g = obj.eucl_gradient(out.point).partials();
    out.gradRiemannianNorm = norm(g) * (r * r - norm_sq(p)) / (2.0 * r);
    return out;
}

double one_dim_optimum(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::domain_error("eps must lie in (0, 1)");
    return (1.0 - std::sqrt((2.0 - eps) * eps)) / (1.0 - eps);
}

BiasProbe bias_probe(double eps, double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be positive and finite");
    const DiskModel model(1.0, 2);
    const Point o = origin_of(model);
    const Point far(model, {1.0 - eps, 0.0});
    const double po = one_dim_optimum(eps);
    const Point popt(model, {po, 0.0});

    const EuclGradient gLeft(popt, scale(distance_sq_grad(popt, o), 0.5));
    const EuclGradient gRight(popt, scale(distance_sq_grad(popt, far), 0.5));

    BiasProbe probe;
    probe.geoLeft = distance(popt, geodesic_step(popt, gLeft, eta).point);
    probe.geoRight = distance(popt, geodesic_step(popt, gRight, eta).point);
    probe.natLeft = distance(popt, natural_step(popt, gLeft, eta).point);
    probe.natRight = distance(popt, natural_step(popt, gRight, eta).point);
    // The closed forms describe the raw vector-algebra update, which a large
    // outward step can carry beyond the disk, so the coordinates compared
    // against them are recorded before the feasibility clip.
    const double lambda = conformal_factor(popt);
    probe.natLeftCoord = po - eta * gLeft.partials()[0] / lambda;
    probe.natRightCoord = po - eta * gRight.partials()[0] / lambda;

    const double a = distance(o, popt);
    const double S = distance(o, far);
    const double half = (1.0 - po * po) / 2.0;
    probe.refLeftCoord = po - eta * half * a;
    probe.refRightCoord = po + eta * half * (S - a);
    return probe;
}

OffsetExperiment offset_experiment(const std::vector<double>& rates, int steps, std::uint64_t seed, double eps) {
    if (rates.empty()) throw std::invalid_argument("need at least one learning rate");
    for (double r : rates)
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("learning rates must be positive and finite");
    if (steps < 1) throw std::invalid_argument("need at least one step");

    const DiskModel model(1.0, 2);
    const Point o = origin_of(model);
    BarycenterProblem problem({o, Point(model, {1.0 - eps, 0.0})});
    const BarycenterObjective obj{std::move(problem)};

    OffsetExperiment exp;
    exp.eps = eps;
    exp.optCoord = one_dim_optimum(eps);
    const Point popt(model, {exp.optCoord, 0.0});
    const double sOpt = distance(o, popt);

    const UpdateRule rules[3] = {UpdateRule::Euclidean, UpdateRule::Natural, UpdateRule::Geodesic};
    const int total = static_cast<int>(rates.size()) * 3;
    exp.cells.resize(total);

#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < total; ++idx) {
        OffsetCell& cell = exp.cells[idx];
        cell.rule = rules[idx / rates.size()];
        cell.rate = rates[idx % rates.size()];
        RunConfig cfg;
        cfg.rule = cell.rule;
        cfg.learningRate = cell.rate;
        cfg.steps = steps;
        cfg.stochastic = true;
        cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(idx));
        try {
            cell.trace = run_optimizer(obj, o, cfg);
            const size_t count = cell.trace.iterates.size();
            const size_t tail = std::min<size_t>(200, count);
            double sumC = 0.0, sumAbsC = 0.0, sumH = 0.0, sumAbsH = 0.0;
            for (size_t t = 0; t < count; ++t) {
                const Point pt(model, cell.trace.iterates[t]);
                cell.minDistToOpt = std::min(cell.minDistToOpt, distance(pt, popt));
                if (t + tail >= count) {
                    const double offC = norm(pt.coords()) - exp.optCoord;
                    const double offH = distance(o, pt) - sOpt;
                    cell.coordOffsets.push_back(offC);
                    cell.hypOffsets.push_back(offH);
                    sumC += offC;
                    sumAbsC += std::abs(offC);
                    sumH += offH;
                    sumAbsH += std::abs(offH);
                }
            }
            const double m = static_cast<double>(cell.coordOffsets.size());
            cell.meanCoordOffset = sumC / m;
            cell.meanAbsCoordOffset = sumAbsC / m;
            cell.meanHypOffset = sumH / m;
            cell.meanAbsHypOffset = sumAbsH / m;
        } catch (const std::exception& e) {
            cell.trace.failed = true;
            cell.trace.failureReason = e.what();
        }
    }
    return exp;
}

}  // namespace hyperdisk
