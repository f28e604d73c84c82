#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperdisk/objective.hpp"

namespace hyperdisk {

enum class UpdateRule { Euclidean, Natural, Geodesic };

const char* update_rule_name(UpdateRule rule);
UpdateRule parse_update_rule(const std::string& name);

// One update step. `clipped` reports whether the raw step left the disk and
// was pulled back to the working boundary.
struct StepOutcome {
    Point point;
    bool clipped = false;
};

// q = p - lr * grad, pulled back into the disk if needed.
StepOutcome euclidean_step(const Point& p, const EuclGradient& g, double lr, double clipEps = 1e-10);

// q = p - lr * metric^{-1} grad, pulled back into the disk if needed.
StepOutcome natural_step(const Point& p, const EuclGradient& g, double lr, double clipEps = 1e-10);

// q = Exp_p(-lr * metric^{-1} grad), the exact geodesic update. Stays
// interior by construction; clipping is a last-resort guard.
StepOutcome geodesic_step(const Point& p, const EuclGradient& g, double lr, double clipEps = 1e-10);

StepOutcome apply_update(UpdateRule rule, const Point& p, const EuclGradient& g, double lr, double clipEps = 1e-10);

struct RunConfig {
    UpdateRule rule = UpdateRule::Geodesic;
    double learningRate = 0.1;
    int steps = 100;
    bool stochastic = false;     // draw gradients from the objective's sampler
    std::uint64_t seed = 0;      // sampler seed; runs are bit-reproducible
    double clipEps = 1e-10;
};

// Iterate history of one run. `iterates` always starts with the initial
// point; on failure the trace is truncated at the last valid iterate and
// `failureReason` says what broke.
struct Trace {
    std::vector<Vec> iterates;
    std::vector<double> lossValues;
    int clipEvents = 0;
    bool failed = false;
    std::string failureReason;
};

Trace run_optimizer(const Objective& f, const Point& start, const RunConfig& cfg);

}  // namespace hyperdisk
