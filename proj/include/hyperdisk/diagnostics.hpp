#pragma once

#include <vector>

#include "hyperdisk/objective.hpp"

namespace hyperdisk {

// Second-order report for an objective at a point. `matrix` (row-major,
// symmetric) is the quadratic form Q in the geodesic expansion
//
//   f(Exp_p(v)) = f(p) + <v, grad f> + Q(v, v) * |v|^2 + O(|v|^3),
//
// where v has unit Riemannian length, so the eigenvalues bound the
// second-order growth rate of f along geodesics through p.
struct HessianReport {
    int dim = 0;
    std::vector<double> matrix;       // dim * dim, row-major
    std::vector<double> eigenvalues;  // ascending
};

// Eigenvalues of the ambient-coordinate Hessian of p -> d(0, p)^2 at radius
// |p| in the unit disk: one radial direction and dim-1 tangential ones.
struct SqDistHessianEigs {
    double radial = 0.0;
    double tangential = 0.0;
};

// Christoffel symbol Gamma^k_ij of the unit disk at p; symmetric in (i, j).
double christoffel(const Point& p, int i, int j, int k);

// Eigenvalues of a symmetric matrix (row-major, dim <= 16) by cyclic Jacobi
// rotations, returned ascending.
std::vector<double> symmetric_eigenvalues(const std::vector<double>& matrix, int dim);

// Estimates the report above with central finite differences of width h for
// the second derivatives and the objective's own gradient for the
// connection term. Unit-radius models only.
HessianReport riemannian_hessian(const Objective& f, const Point& p, double h = 1e-5);

// Closed-form eigenvalues of the ambient Hessian of d(0, .)^2 at p != 0 in
// the unit disk. Throws std::domain_error at the origin, where the split
// into radial and tangential directions is undefined.
SqDistHessianEigs sqdist_hessian_eigs(const Point& p);

// Measured second-order growth rate |f(Exp_p(v)) - f(p) - <v, grad>| / |v|^2
// with |v| the Riemannian length. For small v this lands between the extreme
// eigenvalues of the report matrix when f is locally convex.
double convexity_smoothness_probe(const Objective& f, const Point& p, const Tangent& v);

}  // namespace hyperdisk
