#pragma once

#include <stdexcept>

#include "hyperdisk/vec.hpp"

namespace hyperdisk {

// Poincare disk of radius `radius` in `dim` dimensions. Points are the
// open ball |p| < radius; the metric at p is conformal,
// H_p = (2*radius / (radius^2 - |p|^2))^2 * I.
struct DiskModel {
    double radius = 1.0;
    int dim = 2;

    DiskModel(double r, int d) : radius(r), dim(d) {
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("disk radius must be positive and finite");
        if (d < 1) throw std::invalid_argument("disk dimension must be at least 1");
    }
};

inline bool same_model(const DiskModel& a, const DiskModel& b) {
    return a.radius == b.radius && a.dim == b.dim;
}

// A point strictly inside the disk.
class Point {
public:
    Point(const DiskModel& model, Vec coords);

    const DiskModel& model() const { return model_; }
    const Vec& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()); }

private:
    DiskModel model_;
    Vec coords_;
};

// Tangent vector attached to a base point, stored in disk coordinates.
class Tangent {
public:
    Tangent(const Point& base, Vec components);

    const Point& base() const { return base_; }
    const Vec& components() const { return components_; }

private:
    Point base_;
    Vec components_;
};

// Euclidean gradient (covector of coordinate partial derivatives) at a point.
class EuclGradient {
public:
    EuclGradient(const Point& base, Vec partials);

    const Point& base() const { return base_; }
    const Vec& partials() const { return partials_; }

private:
    Point base_;
    Vec partials_;
};

// Intermediate quantities of the stable exponential-map evaluation,
// exposed for diagnostics and tests.
struct ExpMapIntermediates {
    double c = 0.0;                // cosh(arrivalDistance) - 1
    double F = 0.0;                // dot(g, p) for the internal covector g
    double T = 0.0;                // sqrt(c) / |g|, evaluated in closed form
    double hSq = 0.0;              // radius^2 - |p|^2
    double zSq = 0.0;              // auxiliary positive combination
    double xi = 0.0;               // root of the intersection quadratic
    double arrivalDistance = 0.0;  // geodesic length of the step
};

struct ExpMapResult {
    Point point;
    ExpMapIntermediates intermediates;
    bool clipped = false;  // arrival rounded onto or past the boundary and was pulled back
};

// sinh(x)/x, switching to a truncated series below |x| = 1e-4 so the
// removable singularity at zero never divides by a tiny number.
double sinhc(double x);

// Scalar conformal factor lambda(p) with H_p = lambda(p) * I.
double conformal_factor(const Point& p);

// Geodesic distance. Evaluated as log1p(x + sqrt(x*(x+2))) with
// x = 2 r^2 |p-q|^2 / ((r^2-|p|^2)(r^2-|q|^2)), which stays accurate for
// nearly coincident points.
double distance(const Point& p, const Point& q);

// Metric length sqrt(lambda(p)) * |v|.
double riemannian_norm(const Tangent& v);

// Ambient-coordinate gradient of p -> d(p, q)^2. Smooth everywhere; the
// coincident-point limit is exactly zero and the factor 2d/dx is evaluated
// by series when the points nearly coincide.
Vec distance_sq_grad(const Point& p, const Point& q);

// Ambient-coordinate gradient of p -> d(p, q). Not differentiable at p = q;
// returns the zero subgradient there.
Vec distance_grad(const Point& p, const Point& q);

// Riemannian gradient H^{-1} g of a Euclidean gradient g.
Tangent egrad_to_rgrad(const EuclGradient& g);

// Rescales coords onto the sphere of radius r*(1-eps) when they lie beyond
// it; everything at or inside that radius passes through unchanged.
Point project_into_ball(const DiskModel& model, const Vec& coords, double eps = 1e-10);

// Distance noise that coordinate rounding alone can produce between two
// stored points: h^2 = r^2 - |p|^2 absorbs an absolute rounding error of
// about dim * eps * r^2, and the distance responds to the relative h^2
// error of each endpoint with a factor bounded by 2. A measured distance
// mismatch below this scale carries no information beyond where the points
// sit; checks against exact identities should widen their tolerance by a
// small multiple of it.
double representation_noise_floor(const Point& p, const Point& q);

// Exponential map Exp_p(v), evaluated through a boundary-stable closed form
// that never leaves disk coordinates. The arrival distance equals the
// metric length of v: the result is checked against that identity and the
// step is walked in halves along its geodesic whenever a single closed-form
// evaluation would land on the wrong side of the realizing circle's apex
// (long inward steps from near the boundary). A zero tangent returns p
// exactly. If rounding pushes the arrival onto or past the boundary the
// result is pulled back inside and flagged; non-finite intermediates raise
// an error. `intermediates` always reports the single closed-form
// evaluation of the full step, even when the returned point came from a
// subdivided walk.
ExpMapResult exp_map_ex(const Point& p, const Tangent& v, double clipEps = 1e-10);

Point exp_map(const Point& p, const Tangent& v, double clipEps = 1e-10);

}  // namespace hyperdisk
