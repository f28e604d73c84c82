#include "hyperdisk/optimizers.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperdisk {

const char* update_rule_name(UpdateRule rule) {
    switch (rule) {
        case UpdateRule::Euclidean: return "euclidean";
        case UpdateRule::Natural: return "natural";
        case UpdateRule::Geodesic: return "geodesic";
    }
    throw std::logic_error("unknown update rule");
}

UpdateRule parse_update_rule(const std::string& name) {
    if (name == "euclidean") return UpdateRule::Euclidean;
    if (name == "natural") return UpdateRule::Natural;
    if (name == "geodesic") return UpdateRule::Geodesic;
    throw std::invalid_argument("unknown update rule: " + name);
}

namespace {

StepOutcome ambient_step(const Point& p, const EuclGradient& g, double scaleFactor, double clipEps) {
    Vec q = p.coords();
    axpy(q, -scaleFactor, g.partials());
    if (!all_finite(q)) throw std::runtime_error("update produced a non-finite point");
    const double r = p.model().radius;
    if (norm(q) > r * (1.0 - clipEps)) return {project_into_ball(p.model(), q, clipEps), true};
    return {Point(p.model(), std::move(q)), false};
}

}  // namespace

StepOutcome euclidean_step(const Point& p, const EuclGradient& g, double lr, double clipEps) {
    return ambient_step(p, g, lr, clipEps);
}

StepOutcome natural_step(const Point& p, const EuclGradient& g, double lr, double clipEps) {
    return ambient_step(p, g, lr / conformal_factor(p), clipEps);
}

StepOutcome geodesic_step(const Point& p, const EuclGradient& g, double lr, double clipEps) {
    const Tangent v(p, scale(g.partials(), -lr / conformal_factor(p)));
    ExpMapResult res = exp_map_ex(p, v, clipEps);
    return {std::move(res.point), res.clipped};
}

StepOutcome apply_update(UpdateRule rule, const Point& p, const EuclGradient& g, double lr, double clipEps) {
    switch (rule) {
        case UpdateRule::Euclidean: return euclidean_step(p, g, lr, clipEps);
        case UpdateRule::Natural: return natural_step(p, g, lr, clipEps);
        case UpdateRule::Geodesic: return geodesic_step(p, g, lr, clipEps);
    }
    throw std::logic_error("unknown update rule");
}

Trace run_optimizer(const Objective& f, const Point& start, const RunConfig& cfg) {
    if (!(cfg.learningRate > 0.0) || !std::isfinite(cfg.learningRate)) throw std::invalid_argument("learning rate must be positive and finite");
    if (cfg.steps < 0) throw std::invalid_argument("step count must be nonnegative");
    if (cfg.stochastic && !f.has_stochastic_gradient()) throw std::invalid_argument("objective has no stochastic gradient");

    Rng rng(cfg.seed);
    Trace trace;
    trace.iterates.reserve(static_cast<size_t>(cfg.steps) + 1);
    trace.lossValues.reserve(static_cast<size_t>(cfg.steps) + 1);

    Point p = start;
    trace.iterates.push_back(p.coords());
    trace.lossValues.push_back(f.value(p));

    for (int it = 0; it < cfg.steps; ++it) {
        try {
            const EuclGradient g = cfg.stochastic ? f.stochastic_gradient(p, rng) : f.eucl_gradient(p);
            StepOutcome out = apply_update(cfg.rule, p, g, cfg.learningRate, cfg.clipEps);
            const double loss = f.value(out.point);
            if (!std::isfinite(loss)) throw std::runtime_error("loss became non-finite");
            if (out.clipped) ++trace.clipEvents;
            p = std::move(out.point);
            trace.iterates.push_back(p.coords());
            trace.lossValues.push_back(loss);
        } catch (const std::exception& e) {
            trace.failed = true;
            trace.failureReason = e.what();
            break;
        }
    }
    return trace;
}

}  // namespace hyperdisk
