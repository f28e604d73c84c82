#pragma once

#include <optional>

#include "hyperdisk/geometry.hpp"

namespace hyperdisk {

// Slow, independently derived construction of the same geodesic step that
// exp_map computes in closed form. It builds the explicit circles in disk
// coordinates and intersects them, so it is useful as a cross-check but it
// is only trustworthy away from degenerate configurations. Operations
// refuse inputs outside their well-conditioned domain instead of guessing.

struct GeodesicCircle {
    Vec center;
    double radiusSq = 0.0;
    bool degenerate = false;  // the geodesic is a diameter; center/radius are meaningless
};

struct EquidistanceCircle {
    Vec center;
    double radiusSq = 0.0;
};

// Thrown when a reference construction is asked for a configuration where
// its own rounding error would exceed the tolerance it is used to certify.
struct OracleDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Euclidean vertex N of the ideal triangle construction: the point outside
// the disk whose chords through the boundary touch points of the geodesic
// through p with direction `dir` are orthogonal to that geodesic's circle.
// Returns nothing when p and dir are too close to parallel (or p is too
// close to the origin), where the geodesic degenerates to a diameter.
std::optional<Vec> north_vertex(const Point& p, const Vec& dir);

// Euclidean curvature of the circle that realizes the geodesic through p
// with tangent direction `dir`. Zero for diameters (p parallel to dir or
// at the origin).
double geodesic_curvature(const Point& p, const Vec& dir);

// Circle realizing the geodesic through p tangent to v. Marked degenerate
// when the curvature falls below 1e-10.
GeodesicCircle geodesic_circle(const Point& p, const Tangent& v);

// Circle of points at geodesic distance d from p.
EquidistanceCircle equidistance_circle(const Point& p, double d);

// Geodesic step recomputed by intersecting the geodesic circle with the
// equidistance circle of the step length. Valid only when the angle between
// p and the step direction exceeds 1e-4 rad and the step length exceeds
// 1e-8; anything else raises OracleDomainError.
Point reference_exp_map(const Point& p, const Tangent& v);

}  // namespace hyperdisk
