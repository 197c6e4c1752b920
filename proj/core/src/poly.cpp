#include "stitcher/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace stitcher {

double poly_eval(const Poly& p, double t) {
  double acc = 0.0;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    acc = acc * t + p[i];
  }
  return acc;
}

double poly_eval_derivative(const Poly& p, double t, int order) {
  if (order <= 0) return poly_eval(p, t);
  if (order >= p.size()) return 0.0;
  // Horner over the differentiated coefficients.
  double acc = 0.0;
  for (int i = static_cast<int>(p.size()) - 1; i >= order; --i) {
    double c = p[i];
    for (int k = 0; k < order; ++k) c *= static_cast<double>(i - k);
    acc = acc * t + c;
  }
  return acc;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly::Zero(1);
  Poly d(p.size() - 1);
  for (int i = 1; i < p.size(); ++i) d[i - 1] = p[i] * i;
  return d;
}

Poly poly_antiderivative(const Poly& p) {
  Poly a(p.size() + 1);
  a[0] = 0.0;
  for (int i = 0; i < p.size(); ++i) a[i + 1] = p[i] / (i + 1);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r = Poly::Zero(a.size() + b.size() - 1);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = Poly::Zero(std::max(a.size(), b.size()));
  r.head(a.size()) += a;
  r.head(b.size()) += b;
  return r;
}

Poly poly_scale(const Poly& a, double s) { return a * s; }

double poly_square_integral(const Poly& p, double T) {
  Poly sq = poly_mul(p, p);
  Poly anti = poly_antiderivative(sq);
  return poly_eval(anti, T);
}

std::vector<double> poly_real_roots(const Poly& p) {
  // Trim negligible leading coefficients.
  double scale = p.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return {};
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && std::abs(p[deg]) < 1e-13 * scale) --deg;
  if (deg == 0) return {};
  if (deg == 1) return {-p[0] / p[1]};
  if (deg == 2) {
    double a = p[2], b = p[1], c = p[0];
    double disc = b * b - 4 * a * c;
    if (disc < 0) return {};
    double sq = std::sqrt(disc);
    // Numerically stable quadratic roots.
    double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    std::vector<double> roots;
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c / q);
    else roots.push_back(0.0);
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[i] / p[deg];
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  std::vector<double> roots;
  for (int i = 0; i < deg; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real()))) {
      roots.push_back(z.real());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double poly_max_abs_on_interval(const Poly& p, double lo, double hi) {
  double best = std::max(std::abs(poly_eval(p, lo)), std::abs(poly_eval(p, hi)));
  for (double r : poly_real_roots(poly_derivative(p))) {
    if (r > lo && r < hi) best = std::max(best, std::abs(poly_eval(p, r)));
  }
  return best;
}

}  // namespace stitcher
