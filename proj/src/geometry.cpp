#include "hyperdisk/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperdisk {

namespace {

void check_dim(const DiskModel& model, const Vec& coords, const char* what) {
    if (static_cast<int>(coords.size()) != model.dim) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch with model");
    }
}

void check_same_model(const Point& p, const Point& q) {
    if (!same_model(p.model(), q.model())) {
        throw std::invalid_argument("points belong to different disk models");
    }
}

}  // namespace

Point::Point(const DiskModel& model, Vec coords) : model_(model), coords_(std::move(coords)) {
    check_dim(model_, coords_, "point");
    if (!all_finite(coords_)) throw std::invalid_argument("point has non-finite coordinates");
    if (!(norm_sq(coords_) < model_.radius * model_.radius)) {
        throw std::domain_error("point lies on or outside the disk boundary");
    }
}

Tangent::Tangent(const Point& base, Vec components) : base_(base), components_(std::move(components)) {
    check_dim(base_.model(), components_, "tangent");
    if (!all_finite(components_)) throw std::invalid_argument("tangent has non-finite components");
}

EuclGradient::EuclGradient(const Point& base, Vec partials) : base_(base), partials_(std::move(partials)) {
    check_dim(base_.model(), partials_, "gradient");
    if (!all_finite(partials_)) throw std::invalid_argument("gradient has non-finite partials");
}

double sinhc(double x) {
    const double ax = std::fabs(x);
    if (ax <= 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

double conformal_factor(const Point& p) {
    const double r = p.model().radius;
    const double hSq = r * r - norm_sq(p.coords());
    const double s = 2.0 * r / hSq;
    return s * s;
}

double distance(const Point& p, const Point& q) {
    check_same_model(p, q);
    const double r = p.model().radius;
    const double rSq = r * r;
    const double hp = rSq - norm_sq(p.coords());
    const double hq = rSq - norm_sq(q.coords());
    const double sep = norm_sq(sub(p.coords(), q.coords()));
    const double x = 2.0 * rSq * sep / (hp * hq);
    // acosh(1 + x) without the cancellation acosh suffers near 1.
    return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double riemannian_norm(const Tangent& v) {
    return std::sqrt(conformal_factor(v.base())) * norm(v.components());
}

namespace {

// x = 2 r^2 |p-q|^2 / (hp*hq) and its ambient gradient in p.
struct DistanceArg {
    double x;
    Vec dx;
};

DistanceArg distance_arg_grad(const Point& p, const Point& q) {
    check_same_model(p, q);
    const double r = p.model().radius;
    const double rSq = r * r;
    const double hp = rSq - norm_sq(p.coords());
    const double hq = rSq - norm_sq(q.coords());
    const Vec diff = sub(p.coords(), q.coords());
    const double x = 2.0 * rSq * norm_sq(diff) / (hp * hq);
    Vec dx = scale(diff, 4.0 * rSq / (hp * hq));
    axpy(dx, 2.0 * x / hp, p.coords());
    return {x, std::move(dx)};
}

}  // namespace

Vec distance_sq_grad(const Point& p, const Point& q) {
    DistanceArg a = distance_arg_grad(p, q);
    // d(d^2)/dx = 2 acosh(1+x) / sqrt(x*(x+2)); series below x = 1e-8.
    double factor;
    if (a.x < 1e-8) {
        factor = 2.0 - 2.0 * a.x / 3.0 + 4.0 * a.x * a.x / 15.0;
    } else {
        factor = 2.0 * std::log1p(a.x + std::sqrt(a.x * (a.x + 2.0))) / std::sqrt(a.x * (a.x + 2.0));
    }
    return scale(a.dx, factor);
}

Vec distance_grad(const Point& p, const Point& q) {
    DistanceArg a = distance_arg_grad(p, q);
    if (a.x == 0.0) return Vec(p.dim(), 0.0);
    return scale(a.dx, 1.0 / std::sqrt(a.x * (a.x + 2.0)));
}

Tangent egrad_to_rgrad(const EuclGradient& g) {
    return Tangent(g.base(), scale(g.partials(), 1.0 / conformal_factor(g.base())));
}

Point project_into_ball(const DiskModel& model, const Vec& coords, double eps) {
    check_dim(model, coords, "projection input");
    if (!all_finite(coords)) throw std::invalid_argument("projection input has non-finite coordinates");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("projection eps must lie in (0, 1)");
    const double target = model.radius * (1.0 - eps);
    const double n = norm(coords);
    if (n <= target) return Point(model, coords);
    return Point(model, scale(coords, target / n));
}

namespace {

// One evaluation of the closed-form assembly. The formula is exact while the
// arrival stays on the near side of the realizing circle's apex (which holds
// for every outward step and for all short steps); past the apex it returns
// the mirror image of the true arrival, which the caller detects through the
// arrival-distance identity and repairs by walking the step in halves.
ExpMapResult exp_map_leg(const Point& p, const Vec& vc, double clipEps) {
    const DiskModel& model = p.model();
    const double r = model.radius;
    const double rSq = r * r;
    const Vec& pc = p.coords();

    ExpMapIntermediates mid;
    const double DSq = norm_sq(pc);
    mid.hSq = rSq - DSq;

    const double vNorm = norm(vc);
    if (vNorm == 0.0) {
        return ExpMapResult{p, mid, false};
    }

    const double lambda = conformal_factor(p);
    const double d = std::sqrt(lambda) * vNorm;
    if (!(d < 500.0)) throw std::domain_error("tangent is too long for a disk-coordinate step");
    mid.arrivalDistance = d;

    // Internal covector: the step below computes Exp_p for the descent
    // direction of g, so g = -H_p v walks along +v.
    const Vec g = scale(vc, -lambda);

    const double shHalf = std::sinh(0.5 * d);
    const double chHalf = std::cosh(0.5 * d);
    const double c = 2.0 * shHalf * shHalf;         // cosh(d) - 1 without cancellation
    const double coshP1 = 2.0 * chHalf * chHalf;    // cosh(d) + 1
    mid.c = c;

    const double F = dot(g, pc);
    mid.F = F;

    const double T = mid.hSq * sinhc(d) / (2.0 * r * std::sqrt(coshP1));
    mid.T = T;

    const double FT = F * T;
    const double FTSq = FT * FT;
    const double zSq = 2.0 * rSq + c * (rSq + DSq) - 2.0 * FTSq;
    mid.zSq = zSq;

    const double inner = zSq - c * DSq + 2.0 * FTSq;  // equals r^2 (cosh d + 1)
    if (!(inner > 0.0)) throw std::runtime_error("exp map inner radicand collapsed");
    const double sqrtInner = std::sqrt(inner);

    const double nume = -FT * (zSq - 2.0 * c * DSq + 2.0 * FTSq) - zSq * sqrtInner;
    const double deno = 4.0 * DSq * c * FTSq - 4.0 * FTSq * FTSq + zSq * zSq;
    const double xi = nume / deno;
    mid.xi = xi;

    double sRad = 1.0 - 4.0 * DSq * c * xi * xi + 4.0 * FTSq * xi * xi;
    if (sRad < 0.0) {
        // The radicand is a perfect square up to rounding; clamp dust, reject real negatives.
        if (sRad < -1e-12) throw std::runtime_error("exp map outer radicand went negative");
        sRad = 0.0;
    }
    const double onePlusS = 1.0 + std::sqrt(sRad);

    const double coefG = mid.hSq * T * xi - 2.0 * mid.hSq * F * T * T * xi * xi / onePlusS;
    const double coefP = 2.0 * mid.hSq * c * xi * xi / onePlusS;

    Vec q = pc;
    axpy(q, coefG, g);
    axpy(q, coefP, pc);

    const bool mids_finite = std::isfinite(mid.c) && std::isfinite(mid.F) && std::isfinite(mid.T) &&
                             std::isfinite(mid.zSq) && std::isfinite(mid.xi);
    if (!mids_finite || !all_finite(q)) throw std::runtime_error("exp map produced non-finite values");

    const double target = r * (1.0 - clipEps);
    const double qNorm = norm(q);
    if (qNorm > target) {
        return ExpMapResult{Point(model, scale(q, target / qNorm)), mid, true};
    }
    return ExpMapResult{Point(model, std::move(q)), mid, false};
}

// Relative mismatch allowed between the requested step length and the
// measured arrival distance before the step is subdivided.
constexpr double kArrivalIdentityTol = 1e-10;

// Deepest subdivision level. Genuine apex crossings resolve within a few
// halvings because each halving shrinks the arc a leg sweeps along the
// realizing circle; the cap only stops pathological dithering when an
// arrival sits so close to the boundary that the distance check itself is
// dominated by representation noise.
constexpr int kMaxSplitDepth = 12;

ExpMapResult exp_map_descend(const Point& p, const Vec& vc, double clipEps, int depth) {
    ExpMapResult leg = exp_map_leg(p, vc, clipEps);
    const double d = leg.intermediates.arrivalDistance;
    if (leg.clipped || d == 0.0 || depth >= kMaxSplitDepth) {
        return leg;
    }

    const double arrival = distance(p, leg.point);
    const double tolerance =
        kArrivalIdentityTol * std::max(1.0, d) + 4.0 * representation_noise_floor(p, leg.point);
    if (std::fabs(arrival - d) <= tolerance) {
        return leg;
    }

    // The arrival failed the length identity, so the closed form landed on
    // the wrong side of the realizing circle's apex. Walk the first half of
    // the step, then continue along the same geodesic for the remainder: the
    // direction away from p at the midpoint is the distance gradient there.
    ExpMapResult first = exp_map_descend(p, scale(vc, 0.5), clipEps, depth + 1);
    if (first.clipped) {
        return ExpMapResult{first.point, leg.intermediates, true};
    }
    const Point& m = first.point;

    Vec t = scale(distance_grad(m, p), 1.0 / conformal_factor(m));
    const double tLen = std::sqrt(conformal_factor(m)) * norm(t);
    if (!(tLen > 0.0) || !all_finite(t)) {
        throw std::runtime_error("exp map continuation direction degenerated");
    }
    t = scale(t, 0.5 * d / tLen);

    ExpMapResult second = exp_map_descend(m, t, clipEps, depth + 1);
    return ExpMapResult{second.point, leg.intermediates, second.clipped};
}

}  // namespace

double representation_noise_floor(const Point& p, const Point& q) {
    const double r = p.model().radius;
    const double rSq = r * r;
    const double dimEps = static_cast<double>(p.dim()) * std::numeric_limits<double>::epsilon();
    const double hp = rSq - norm_sq(p.coords());
    const double hq = rSq - norm_sq(q.coords());
    return 2.0 * dimEps * rSq * (1.0 / hp + 1.0 / hq);
}

ExpMapResult exp_map_ex(const Point& p, const Tangent& v, double clipEps) {
    if (&v.base() != &p && (v.base().coords() != p.coords() || !same_model(v.base().model(), p.model()))) {
        throw std::invalid_argument("tangent is not based at the given point");
    }
    return exp_map_descend(p, v.components(), clipEps, 0);
}

Point exp_map(const Point& p, const Tangent& v, double clipEps) {
    return exp_map_ex(p, v, clipEps).point;
}

}  // namespace hyperdisk
