#include "hyperdisk/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperdisk/geometry.hpp"
#include "hyperdisk/reference_geometry.hpp"
#include "hyperdisk/rng.hpp"

namespace hyperdisk {

namespace {

Vec random_unit(Rng& rng, int dim) {
    while (true) {
        Vec u(dim);
        for (int k = 0; k < dim; ++k) u[k] = rng.normal();
        const double n = norm(u);
        if (n > 1e-8) return scale(u, 1.0 / n);
    }
}

// Unit vector orthogonal to `axis` (itself unit length). Needs dim >= 2.
Vec random_orthogonal_unit(Rng& rng, const Vec& axis) {
    while (true) {
        Vec w = random_unit(rng, static_cast<int>(axis.size()));
        axpy(w, -dot(w, axis), axis);
        const double n = norm(w);
        if (n > 1e-4) return scale(w, 1.0 / n);
    }
}

// Tangent whose metric length is `length`.
Tangent tangent_of_length(const Point& p, const Vec& direction, double length) {
    return Tangent(p, scale(direction, length / std::sqrt(conformal_factor(p))));
}

void note_error(SelftestReport& report, double scaledError, double bound) {
    if (!std::isfinite(scaledError)) {
        report.nonFinite = true;
        ++report.failures;
        return;
    }
    report.maxError = std::max(report.maxError, scaledError);
    if (scaledError > bound) ++report.failures;
}

// Checks |d(p, Exp_p(v)) - |v|_p| against `base` plus a small multiple of
// the coordinate-representation noise floor, which dominates the measurable
// identity when the arrival sits very close to the boundary.
void check_identity(SelftestReport& report, const Point& p, const Tangent& v, double base) {
    const Point q = exp_map(p, v);
    if (!all_finite(q.coords())) {
        report.nonFinite = true;
        ++report.failures;
        return;
    }
    const double target = riemannian_norm(v);
    const double scale = std::max(1.0, target);
    const double err = std::abs(distance(p, q) - target) / scale;
    note_error(report, err, base + 8.0 * representation_noise_floor(p, q) / scale);
}

}  // namespace

SelftestReport distance_identity_suite(long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    Rng rng(seed);
    SelftestReport report;
    report.samples = samples;
    for (long long i = 0; i < samples; ++i) {
        const int dim = 1 + static_cast<int>(i % 5);
        const DiskModel model(1.0, dim);
        const double radius =
            (1.0 - 1e-8) * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
        const Point p(model, scale(random_unit(rng, dim), radius));
        const double length = std::pow(10.0, rng.uniform(-12.0, 1.0));

        Vec direction;
        if (i % 8 == 7) {
            // Exactly radial, alternating outward and inward.
            const double sign = ((i / 8) % 2 == 0) ? 1.0 : -1.0;
            direction = radius > 1e-12 ? scale(p.coords(), sign / norm(p.coords()))
                                       : random_unit(rng, dim);
        } else {
            direction = random_unit(rng, dim);
        }
        check_identity(report, p, tangent_of_length(p, direction, length), 1e-9);
    }
    return report;
}

SelftestReport oracle_equivalence_suite(long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    Rng rng(seed);
    SelftestReport report;
    report.samples = samples;
    for (long long i = 0; i < samples; ++i) {
        const int dim = 2 + static_cast<int>(i % 4);
        const DiskModel model(1.0, dim);
        const double radius = rng.uniform(0.05, 0.9);
        const Point p(model, scale(random_unit(rng, dim), radius));

        const Vec axis = scale(p.coords(), 1.0 / norm(p.coords()));
        const Vec ortho = random_orthogonal_unit(rng, axis);
        const double angle = rng.uniform(1e-2, 3.141592653589793 - 1e-2);
        Vec direction = scale(axis, std::cos(angle));
        axpy(direction, std::sin(angle), ortho);

        const double length = std::pow(10.0, rng.uniform(-6.0, std::log10(5.0)));
        const Tangent v = tangent_of_length(p, direction, length);

        const Point q = exp_map(p, v);
        if (!all_finite(q.coords())) {
            report.nonFinite = true;
            ++report.failures;
            continue;
        }
        double sampleError = 0.0;
        try {
            const Point ref = reference_exp_map(p, v);
            sampleError = norm(sub(q.coords(), ref.coords()));
        } catch (const OracleDomainError&) {
            // Draws here are well inside the construction's stated domain;
            // a refusal means the two implementations disagree about it.
            ++report.failures;
            continue;
        }
        if (!std::isfinite(sampleError)) {
            report.nonFinite = true;
            ++report.failures;
            continue;
        }
        report.maxError = std::max(report.maxError, sampleError);
        bool bad = sampleError > 1e-8;

        const GeodesicCircle gc = geodesic_circle(p, v);
        const EquidistanceCircle ec = equidistance_circle(p, riemannian_norm(v));
        double residual = 0.0;
        if (!gc.degenerate)
            residual = std::abs(norm(sub(q.coords(), gc.center)) - std::sqrt(gc.radiusSq));
        residual = std::max(residual,
                            std::abs(norm(sub(q.coords(), ec.center)) - std::sqrt(ec.radiusSq)));
        if (!std::isfinite(residual)) {
            report.nonFinite = true;
            ++report.failures;
            continue;
        }
        report.maxCircleResidual = std::max(report.maxCircleResidual, residual);
        bad = bad || residual > 1e-9;
        if (bad) ++report.failures;
    }
    return report;
}

SelftestReport near_colinear_suite(long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    Rng rng(seed);
    SelftestReport report;
    report.samples = samples;
    for (long long i = 0; i < samples; ++i) {
        const int dim = 2 + static_cast<int>(i % 4);
        const DiskModel model(1.0, dim);
        const double radius = rng.uniform(0.1, 0.95);
        const Point p(model, scale(random_unit(rng, dim), radius));

        const Vec axis = scale(p.coords(), 1.0 / norm(p.coords()));
        const Vec ortho = random_orthogonal_unit(rng, axis);
        const double sinAngle = std::pow(10.0, rng.uniform(-12.0, -5.0));
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        Vec direction = scale(axis, sign * std::sqrt(1.0 - sinAngle * sinAngle));
        axpy(direction, sinAngle, ortho);

        const double length = std::pow(10.0, rng.uniform(-8.0, std::log10(5.0)));
        check_identity(report, p, tangent_of_length(p, direction, length), 1e-9);
    }
    return report;
}

}  // namespace hyperdisk
