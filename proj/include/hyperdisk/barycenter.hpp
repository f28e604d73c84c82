#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hyperdisk/objective.hpp"
#include "hyperdisk/optimizers.hpp"

namespace hyperdisk {

struct BarycenterProblem {
    explicit BarycenterProblem(std::vector<Point> anchorPoints);

    DiskModel model;
    std::vector<Point> anchors;
};

// f(p) = (1/n) sum_i d(p, q_i)^2. The stochastic oracle returns the gradient
// of d(p, q_I)^2 for a uniformly drawn anchor index I, whose expectation is
// the full gradient.
class BarycenterObjective final : public Objective {
  public:
    explicit BarycenterObjective(BarycenterProblem problem);

    double value(const Point& p) const override;
    EuclGradient eucl_gradient(const Point& p) const override;
    bool has_stochastic_gradient() const override { return true; }
    EuclGradient stochastic_gradient(const Point& p, Rng& rng) const override;

    const BarycenterProblem& problem() const { return problem_; }

  private:
    BarycenterProblem problem_;
};

// Constants controlling the deterministic solver and its convergence
// guarantee: iterates started at p0 stay in the ball {d(0, .) <= D} and the
// suboptimality contracts by (1 - epsRate) per step.
struct BarycenterAnalysis {
    double k1 = 0.0;              // radius of the compact set containing the iterates (= D)
    double k2 = 0.0;              // max hyperbolic distance of an anchor from the origin
    double D = 0.0;               // max(d(0, p0), k2)
    double stepSize = 0.0;        // 1 / (2D + 1)
    double epsRate = 0.0;         // min(1 / (D coth D), 1 / (2D + 1))
    double smoothnessBound = 0.0; // k1 + k2 + 1
};

BarycenterAnalysis analyze_barycenter(const BarycenterProblem& problem, const Point& p0);

struct BarycenterRun {
    BarycenterAnalysis analysis;
    Trace trace;
};

// Geodesic descent at the analysis step size with exact gradients.
BarycenterRun solve_deterministic(const BarycenterProblem& problem, const Point& p0, int steps = 200);

struct BarycenterOracle {
    Point point;
    double value = 0.0;
    double gradRiemannianNorm = 0.0;
};

// Independent minimizer used to certify the solver: multi-start projected
// gradient descent with backtracking, refined by damped Newton steps on the
// ambient coordinates. Never evaluates the exponential map.
BarycenterOracle barycenter_oracle(const BarycenterProblem& problem);

// Coordinate of the barycenter of {0, 1-eps} on the 1-D disk; satisfies the
// middle-point identity 2 d(0, p_opt) = d(0, 1-eps).
double one_dim_optimum(double eps);

// One update of each rule from the known optimum of the {0, 1-eps} problem,
// once against each anchor's half-squared-distance objective. The geodesic
// rule lands at equal distance on both sides; the natural rule does not,
// and its arrival coordinates have closed forms recorded here as ref*.
struct BiasProbe {
    double geoLeft = 0.0;        // d(p_opt, geodesic step against the origin anchor)
    double geoRight = 0.0;       // d(p_opt, geodesic step against the far anchor)
    double natLeft = 0.0;        // d(p_opt, natural step), after the feasibility clip
    double natRight = 0.0;
    double natLeftCoord = 0.0;   // raw vector-algebra arrival coordinates of the
    double natRightCoord = 0.0;  // natural steps, before any clip (can exceed 1)
    double refLeftCoord = 0.0;   // closed-form predictions for the same coordinates
    double refRightCoord = 0.0;
};

BiasProbe bias_probe(double eps, double eta);

// One stochastic run on the {(0,0), (1-eps, 0)} problem. Offsets are radial
// positions relative to the optimum over the last (up to) 200 iterates,
// positive meaning farther from the origin than the optimum; recorded both
// as coordinate differences and in hyperbolic distance.
struct OffsetCell {
    UpdateRule rule = UpdateRule::Geodesic;
    double rate = 0.0;
    Trace trace;
    std::vector<double> coordOffsets;
    std::vector<double> hypOffsets;
    double meanCoordOffset = 0.0;
    double meanAbsCoordOffset = 0.0;
    double meanHypOffset = 0.0;
    double meanAbsHypOffset = 0.0;
    double minDistToOpt = std::numeric_limits<double>::infinity();
};

struct OffsetExperiment {
    double eps = 0.0;
    double optCoord = 0.0;
    std::vector<OffsetCell> cells;  // 3 rules x |rates|, rule-major
};

OffsetExperiment offset_experiment(const std::vector<double>& rates, int steps, std::uint64_t seed,
                                   double eps = 1e-8);

}  // namespace hyperdisk
