#include "hyperdisk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperdisk {

namespace {

void check_unit_disk(const Point& p) {
    if (p.model().radius != 1.0) throw std::invalid_argument("diagnostics require the unit disk");
}

double value_at(const Objective& f, const Point& base, const Vec& offset) {
    Vec c = base.coords();
    for (int i = 0; i < base.dim(); ++i) c[i] += offset[i];
    return f.value(Point(base.model(), std::move(c)));
}

}  // namespace

double christoffel(const Point& p, int i, int j, int k) {
    check_unit_disk(p);
    const int n = p.dim();
    if (k < 0 || i < 0 || j < 0 || k >= n || i >= n || j >= n) throw std::out_of_range("christoffel index");
    const Vec& c = p.coords();
    const double hSq = 1.0 - norm_sq(c);
    double num = 0.0;
    if (i == k) num += 2.0 * c[j];
    if (j == k) num += 2.0 * c[i];
    if (i == j) num -= 2.0 * c[k];
    return num / hSq;
}

std::vector<double> symmetric_eigenvalues(const std::vector<double>& matrix, int dim) {
    if (dim < 1 || dim > 16) throw std::invalid_argument("eigensolver supports dims 1..16");
    if (matrix.size() != static_cast<size_t>(dim) * dim) throw std::invalid_argument("matrix size mismatch");
    std::vector<double> a = matrix;
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * dim + j]; };

    double scale = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) scale = std::max(scale, std::abs(at(i, j)));
    if (scale == 0.0) return std::vector<double>(dim, 0.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) off += at(i, j) * at(i, j);
        if (std::sqrt(off) < 1e-14 * scale) break;

        for (int pIdx = 0; pIdx < dim; ++pIdx) {
            for (int q = pIdx + 1; q < dim; ++q) {
                if (std::abs(at(pIdx, q)) < 1e-300) continue;
                const double theta = (at(q, q) - at(pIdx, pIdx)) / (2.0 * at(pIdx, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cth = 1.0 / std::sqrt(t * t + 1.0);
                const double sth = t * cth;
                for (int kIdx = 0; kIdx < dim; ++kIdx) {
                    const double akp = at(kIdx, pIdx), akq = at(kIdx, q);
                    at(kIdx, pIdx) = cth * akp - sth * akq;
                    at(kIdx, q) = sth * akp + cth * akq;
                }
                for (int kIdx = 0; kIdx < dim; ++kIdx) {
                    const double apk = at(pIdx, kIdx), aqk = at(q, kIdx);
                    at(pIdx, kIdx) = cth * apk - sth * aqk;
                    at(q, kIdx) = sth * apk + cth * aqk;
                }
            }
        }
    }

    std::vector<double> eigs(dim);
    for (int i = 0; i < dim; ++i) eigs[i] = at(i, i);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

HessianReport riemannian_hessian(const Objective& f, const Point& p, double h) {
    check_unit_disk(p);
    if (!(h >= 1e-6 && h <= 1e-3)) throw std::invalid_argument("difference width must lie in [1e-6, 1e-3]");
    const int n = p.dim();
    if (n > 16) throw std::invalid_argument("hessian report supports dims 1..16");
    if (norm(p.coords()) + h * std::sqrt(2.0) >= 1.0) throw std::invalid_argument("point too close to the boundary for the difference width");

    const double f0 = f.value(p);
    const EuclGradient grad = f.eucl_gradient(p);

    std::vector<double> hess(static_cast<size_t>(n) * n, 0.0);
    Vec offset(n, 0.0);
    for (int i = 0; i < n; ++i) {
        offset[i] = h;
        const double fp = value_at(f, p, offset);
        offset[i] = -h;
        const double fm = value_at(f, p, offset);
        offset[i] = 0.0;
        hess[static_cast<size_t>(i) * n + i] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (int si = -1; si <= 1; si += 2) {
                for (int sj = -1; sj <= 1; sj += 2) {
                    offset[i] = si * h;
                    offset[j] = sj * h;
                    acc += si * sj * value_at(f, p, offset);
                }
            }
            offset[i] = 0.0;
            offset[j] = 0.0;
            const double v = acc / (4.0 * h * h);
            hess[static_cast<size_t>(i) * n + j] = v;
            hess[static_cast<size_t>(j) * n + i] = v;
        }
    }

    const double lambda = conformal_factor(p);
    HessianReport report;
    report.dim = n;
    report.matrix.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double conn = 0.0;
            for (int k = 0; k < n; ++k) conn += christoffel(p, i, j, k) * grad.partials()[k];
            report.matrix[static_cast<size_t>(i) * n + j] = (hess[static_cast<size_t>(i) * n + j] - conn) / (2.0 * lambda);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (report.matrix[static_cast<size_t>(i) * n + j] + report.matrix[static_cast<size_t>(j) * n + i]);
            report.matrix[static_cast<size_t>(i) * n + j] = m;
            report.matrix[static_cast<size_t>(j) * n + i] = m;
        }
    }
    report.eigenvalues = symmetric_eigenvalues(report.matrix, n);
    return report;
}

SqDistHessianEigs sqdist_hessian_eigs(const Point& p) {
    check_unit_disk(p);
    const double rho = norm(p.coords());
    if (rho == 0.0) throw std::domain_error("radial split undefined at the origin");
    const double hSq = 1.0 - rho * rho;
    const double d = std::log1p(2.0 * rho / (1.0 - rho));
    SqDistHessianEigs out;
    out.radial = 8.0 * (1.0 + d * rho) / (hSq * hSq);
    out.tangential = 4.0 * d / (rho * hSq);
    return out;
}

double convexity_smoothness_probe(const Objective& f, const Point& p, const Tangent& v) {
    const double len = riemannian_norm(v);
    if (len == 0.0) throw std::invalid_argument("probe direction must be nonzero");
    const Point q = exp_map(p, v);
    const double linear = dot(v.components(), f.eucl_gradient(p).partials());
    return std::abs(f.value(q) - f.value(p) - linear) / (len * len);
}

}  // namespace hyperdisk
