#pragma once

#include <Eigen/Core>
#include <vector>

namespace stitcher {

// Dense univariate polynomial, ascending coefficients: p(t) = c[0] + c[1] t + ...
using Poly = Eigen::VectorXd;

double poly_eval(const Poly& p, double t);

/// Evaluate the n-th derivative of p at t.
double poly_eval_derivative(const Poly& p, double t, int order);

Poly poly_derivative(const Poly& p);

/// Antiderivative with zero constant term.
Poly poly_antiderivative(const Poly& p);

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);

/// Exact integral of p(t)^2 over [0, T].
double poly_square_integral(const Poly& p, double T);

/// Real roots via companion-matrix eigenvalues (QR iteration), ascending.
/// Leading coefficients below a relative tolerance are trimmed first.
std::vector<double> poly_real_roots(const Poly& p);

/// Stationary points of p restricted to [lo, hi] plus the interval endpoints,
/// used for certified min/max bounds of trajectory polynomials.
double poly_max_abs_on_interval(const Poly& p, double lo, double hi);

}  // namespace stitcher
