#pragma once

#include <cstdint>

namespace hyperdisk {

// Outcome of one randomized stress suite. A sample counts as a failure when
// its error exceeds the suite's bound or any output is non-finite.
struct SelftestReport {
    long long samples = 0;
    long long failures = 0;
    double maxError = 0.0;           // largest per-sample scaled error seen
    double maxCircleResidual = 0.0;  // oracle suite only: worst circle-membership residual
    bool nonFinite = false;          // any NaN/Inf output
};

// Checks d(p, Exp_p(v)) == |v| on random points and tangents across
// dimensions 1..5, radii up to 1 - 1e-8 (uniform in the ball), and metric
// lengths log-uniform in [1e-12, 10]; every eighth draw is exactly radial,
// alternating outward/inward. Bound: 1e-9 * max(1, |v|) plus eight times the
// representation noise floor of the endpoints, which dominates what the
// identity can certify when the arrival hugs the boundary.
SelftestReport distance_identity_suite(long long samples, std::uint64_t seed);

// Compares the closed-form map against the circle-intersection construction
// on well-conditioned draws (dimensions 2..5, radius in [0.05, 0.9], angle
// to the radial direction in (1e-2, pi - 1e-2), length in [1e-6, 5]).
// Bounds: 1e-8 between the two arrival points; 1e-9 for the arrival's
// residual on both defining circles.
SelftestReport oracle_equivalence_suite(long long samples, std::uint64_t seed);

// Distance identity restricted to nearly-radial tangents (sine of the angle
// log-uniform in [1e-12, 1e-5]), the regime the circle construction refuses.
// Same bound as the distance-identity suite.
SelftestReport near_colinear_suite(long long samples, std::uint64_t seed);

}  // namespace hyperdisk
