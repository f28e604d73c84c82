#pragma once

#include <stdexcept>

#include "hyperdisk/geometry.hpp"
#include "hyperdisk/rng.hpp"

namespace hyperdisk {

// A scalar function on the disk, differentiable in ambient coordinates.
// Some objectives additionally expose an unbiased stochastic gradient.
struct Objective {
    virtual ~Objective() = default;

    virtual double value(const Point& p) const = 0;
    virtual EuclGradient eucl_gradient(const Point& p) const = 0;

    virtual bool has_stochastic_gradient() const { return false; }
    virtual EuclGradient stochastic_gradient(const Point& p, Rng& rng) const {
        (void)p;
        (void)rng;
        throw std::logic_error("objective has no stochastic gradient");
    }
};

}  // namespace hyperdisk
