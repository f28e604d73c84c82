#include "hyperdisk/reference_geometry.hpp"

#include <cmath>
#include <limits>

namespace hyperdisk {

namespace {

// sin^2 of the angle between p and dir; 0 when either is degenerate.
double angle_sin_sq(const Vec& p, const Vec& dirUnit) {
    const double DSq = norm_sq(p);
    if (DSq == 0.0) return 0.0;
    const double proj = dot(p, dirUnit);
    const double s = 1.0 - proj * proj / DSq;
    return s > 0.0 ? s : 0.0;
}

}  // namespace

std::optional<Vec> north_vertex(const Point& p, const Vec& dir) {
    const double r = p.model().radius;
    const double dn = norm(dir);
    if (dn == 0.0) return std::nullopt;
    const Vec k = scale(dir, r / dn);

    const Vec& pc = p.coords();
    const double DSq = norm_sq(pc);
    const double mSq = dot(k, pc);
    const double rSq = r * r;

    if (angle_sin_sq(pc, scale(k, 1.0 / r)) < 1e-24) return std::nullopt;

    // N = alpha*k + beta*p with (p-k).(N+k) = 0 and (p+k).(N-k) = 0.
    const double a11 = mSq - rSq, a12 = DSq - mSq, b1 = -(mSq - rSq);
    const double a21 = mSq + rSq, a22 = DSq + mSq, b2 = mSq + rSq;
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0) return std::nullopt;
    const double alpha = (b1 * a22 - a12 * b2) / det;
    const double beta = (a11 * b2 - b1 * a21) / det;

    Vec n = scale(k, alpha);
    axpy(n, beta, pc);
    return n;
}

double geodesic_curvature(const Point& p, const Vec& dir) {
    const double dn = norm(dir);
    if (dn == 0.0) return 0.0;
    const Vec u = scale(dir, 1.0 / dn);
    const Vec& pc = p.coords();
    const double r = p.model().radius;
    const double DSq = norm_sq(pc);
    const double proj = dot(u, pc);
    double radicand = DSq - proj * proj;
    if (radicand < 0.0) radicand = 0.0;
    const double hSq = r * r - DSq;
    return 2.0 * std::sqrt(radicand) / hSq;
}

GeodesicCircle geodesic_circle(const Point& p, const Tangent& v) {
    GeodesicCircle out;
    out.center = Vec(p.dim(), 0.0);
    const double kappa = geodesic_curvature(p, v.components());
    if (kappa < 1e-10) {
        out.degenerate = true;
        return out;
    }
    const auto n = north_vertex(p, v.components());
    if (!n) {
        out.degenerate = true;
        return out;
    }
    out.center = scale(add(p.coords(), *n), 0.5);
    out.radiusSq = norm_sq(sub(*n, p.coords())) / 4.0;
    return out;
}

EquidistanceCircle equidistance_circle(const Point& p, double d) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("equidistance radius must be finite and nonnegative");
    const double r = p.model().radius;
    const double rSq = r * r;
    const double hSq = rSq - norm_sq(p.coords());
    const double sh = std::sinh(0.5 * d);
    const double c = 2.0 * sh * sh;
    const double denom = 2.0 * rSq + c * hSq;
    EquidistanceCircle out;
    out.center = scale(p.coords(), 2.0 * rSq / denom);
    out.radiusSq = c * (c + 2.0) * rSq * hSq * hSq / (denom * denom);
    return out;
}

Point reference_exp_map(const Point& p, const Tangent& v) {
    const DiskModel& model = p.model();
    const double r = model.radius;
    const double rSq = r * r;
    const Vec& pc = p.coords();

    const double vn = norm(v.components());
    const double lambda = conformal_factor(p);
    const double d = std::sqrt(lambda) * vn;
    if (!(d > 1e-8)) throw OracleDomainError("reference step is too short to resolve");

    // Walks along +v, so the internal direction vector points along -v.
    const Vec ex = scale(v.components(), -1.0 / vn);
    const double sinSq = angle_sin_sq(pc, ex);
    if (sinSq < 1e-8) throw OracleDomainError("reference step is too close to radial");

    const double DSq = norm_sq(pc);
    const double mSq = r * dot(ex, pc);
    const double hSq = rSq - DSq;
    const double spanSq = DSq - mSq * mSq / rSq;  // squared length of p's part orthogonal to ex
    if (!(spanSq > 0.0)) throw OracleDomainError("reference basis collapsed");

    Vec eyRaw = pc;
    axpy(eyRaw, -mSq / r, ex);
    const Vec ey = scale(eyRaw, 1.0 / norm(eyRaw));

    const double rhoSq = rSq * hSq * hSq / (4.0 * (DSq * rSq - mSq * mSq));
    const double rho = std::sqrt(rhoSq);

    const double sh = std::sinh(0.5 * d);
    const double c = 2.0 * sh * sh;
    const double denom = 2.0 * rSq + c * hSq;
    const double factor = c * hSq / denom;
    const double kx = -factor * (mSq / r);
    const double ky = -factor * std::sqrt(spanSq);
    const double reSq = c * (c + 2.0) * rSq * hSq * hSq / (denom * denom);

    const double psiSq = rho * (rho - ky);
    const double pSq = reSq - (kx * kx + ky * ky);

    double radicand = 4.0 * kx * kx * psiSq * psiSq + 4.0 * psiSq * psiSq * psiSq * pSq / rhoSq -
                      psiSq * psiSq * pSq * pSq / rhoSq;
    if (radicand < 0.0) {
        if (radicand < -1e-12 * psiSq * psiSq) throw OracleDomainError("reference circles fail to intersect");
        radicand = 0.0;
    }
    const double sqrtRad = std::sqrt(radicand);
    const double qa = 2.0 * (kx * kx + psiSq * psiSq / rhoSq);  // > 0: psiSq > rhoSq > 0
    const double qb = kx * (2.0 * psiSq - pSq);

    // Each root of the eliminant quadratic gives the x-coordinate of a
    // candidate arrival; both hemispheres y = rho -/+ sqrt(rho^2 - x^2) lie
    // on the realizing circle, and membership in the distance-d circle
    // selects the hemisphere the candidate actually sits on. That yields the
    // two genuine intersections - the forward and backward arrivals along
    // the geodesic - and the chord direction against v picks the forward one.
    const Vec& vc = v.components();
    Vec best;
    double bestResidual = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const double sx : {-1.0, 1.0}) {
        const double x = (qb + sx * sqrtRad) / qa;
        double ySq = rhoSq - x * x;
        if (ySq < 0.0) {
            if (ySq < -1e-10 * rhoSq) continue;  // root drifted off the circle entirely
            ySq = 0.0;
        }
        const double yOff = std::sqrt(ySq);
        double y = rho;
        double membership = std::numeric_limits<double>::infinity();
        for (const double sy : {-1.0, 1.0}) {
            const double yCand = rho + sy * yOff;
            const double resid = std::fabs((x - kx) * (x - kx) + (yCand - ky) * (yCand - ky) - reSq);
            if (resid < membership) {
                membership = resid;
                y = yCand;
            }
        }
        Vec q = pc;
        axpy(q, x, ex);
        axpy(q, y, ey);
        if (dot(sub(q, pc), vc) > 0.0 && membership < bestResidual) {
            bestResidual = membership;
            best = std::move(q);
            found = true;
        }
    }
    if (!found) throw OracleDomainError("reference found no forward arrival");
    if (!all_finite(best) || !(norm_sq(best) < rSq)) throw OracleDomainError("reference arrival left the disk");
    return Point(model, std::move(best));
}

}  // namespace hyperdisk
