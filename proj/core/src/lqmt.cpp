#include "stitcher/lqmt.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace stitcher {

namespace {

constexpr double kDegenerateTol = 1e-9;

double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

/// The boundary-value solve is done in scaled time tau = t/T where the p x p
/// system matrix is constant per (p, k_fixed): k_fixed terminal derivative
/// rows of the scaled polynomial plus p - k_fixed transversality rows
/// u^(j)(1) = 0. Its factorization is cached; conditioning is T-independent.
const Eigen::FullPivLU<Eigen::MatrixXd>& unit_system(int p, int k_fixed) {
  static std::map<std::pair<int, int>, Eigen::FullPivLU<Eigen::MatrixXd>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(p, k_fixed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
  int row = 0;
  for (int m = 0; m < k_fixed; ++m, ++row) {
    for (int j = 0; j < p; ++j) A(row, j) = falling_factorial(p + j, m);
  }
  for (int j = 0; row < p; ++j, ++row) {
    for (int jj = j; jj < p; ++jj) {
      A(row, jj) = falling_factorial(p + jj, p) * falling_factorial(jj, j);
    }
  }
  return cache.emplace(key, Eigen::FullPivLU<Eigen::MatrixXd>(A)).first->second;
}

Poly solve_axis_poly(const std::vector<double>& init, const std::vector<double>& term,
                     double T, int p) {
  Poly coeffs = Poly::Zero(2 * p);
  double fact = 1.0;
  for (int q = 0; q < p; ++q) {
    if (q > 0) fact *= q;
    coeffs[q] = init[q] / fact;
  }
  const int k_fixed = static_cast<int>(term.size());

  // Scaled rhs: sigma^(m)(1) = T^m * term[m] minus the initial Taylor part,
  // whose scaled coefficient is T^q * init[q] / q!.
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
  std::array<double, 16> Tpow;
  Tpow[0] = 1.0;
  for (int q = 1; q < 2 * p; ++q) Tpow[q] = Tpow[q - 1] * T;
  for (int m = 0; m < k_fixed; ++m) {
    double init_part = 0.0;
    double f = 1.0;
    for (int q = m; q < p; ++q) {
      if (q > m) f *= (q - m);
      init_part += init[q] * Tpow[q] / f;
    }
    rhs(m) = Tpow[m] * term[m] - init_part;
  }
  Eigen::VectorXd beta = unit_system(p, k_fixed).solve(rhs);
  for (int j = 0; j < p; ++j) coeffs[p + j] = beta[j] / (Tpow[p + j - 1] * T);
  return coeffs;
}

/// Effort quadratic form for the unit-time, zero-initial-state problem:
/// G(i,j) = integral over [0,1] of u_i*u_j where u_i solves the problem with
/// terminal derivative vector e_i. Depends only on (p, k_fixed).
const Eigen::MatrixXd& effort_gram(int p, int k_fixed) {
  static std::map<std::pair<int, int>, Eigen::MatrixXd> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(p, k_fixed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<double> init(p, 0.0);
  std::vector<Poly> u_basis(k_fixed);
  for (int i = 0; i < k_fixed; ++i) {
    std::vector<double> term(k_fixed, 0.0);
    term[i] = 1.0;
    Poly s = solve_axis_poly(init, term, 1.0, p);
    Poly u = s;
    for (int d = 0; d < p; ++d) u = poly_derivative(u);
    u_basis[i] = u;
  }
  Eigen::MatrixXd G(k_fixed, k_fixed);
  for (int i = 0; i < k_fixed; ++i) {
    for (int j = 0; j < k_fixed; ++j) {
      Poly prod = poly_mul(u_basis[i], u_basis[j]);
      G(i, j) = poly_eval(poly_antiderivative(prod), 1.0);
    }
  }
  return cache.emplace(key, std::move(G)).first->second;
}

bool all_axes_degenerate(const std::vector<Vec3>& init, const std::vector<Vec3>& term) {
  for (int k = 0; k < 3; ++k) {
    if (std::abs(term[0][k] - init[0][k]) > kDegenerateTol) return false;
    for (std::size_t m = 1; m < init.size(); ++m) {
      if (std::abs(init[m][k]) > kDegenerateTol) return false;
    }
    for (std::size_t m = 1; m < term.size(); ++m) {
      if (std::abs(term[m][k]) > kDegenerateTol) return false;
    }
  }
  return true;
}

PolySegment degenerate_segment(const std::vector<Vec3>& init, int p) {
  PolySegment seg;
  seg.order_p = p;
  seg.duration = 0.0;
  double fact = 1.0;
  for (int a = 0; a < 3; ++a) seg.axis_coeffs[a] = Poly::Zero(2 * p);
  for (int q = 0; q < p; ++q) {
    if (q > 0) fact *= q;
    for (int a = 0; a < 3; ++a) seg.axis_coeffs[a][q] = init[q][a] / fact;
  }
  seg.initial_derivs = init;
  seg.final_position = init[0];
  seg.final_velocity = init[1];
  seg.final_derivs = init;
  return seg;
}

void fill_boundary(PolySegment& seg, const std::vector<Vec3>& init) {
  seg.initial_derivs = init;
  seg.final_derivs.assign(seg.order_p, Vec3::Zero());
  for (int m = 0; m < seg.order_p; ++m) {
    for (int a = 0; a < 3; ++a) {
      seg.final_derivs[m][a] = poly_eval_derivative(seg.axis_coeffs[a], seg.duration, m);
    }
  }
  seg.final_position = seg.final_derivs[0];
  seg.final_velocity = seg.final_derivs[1];
}

LqmtResult solve_with_terminal(const std::vector<Vec3>& init,
                               const std::vector<Vec3>& term, double rho, int p) {
  if (p < 2) throw std::invalid_argument("lqmt: p must be >= 2");
  if (!(rho > 1.0)) throw std::invalid_argument("lqmt: rho must be > 1");
  if (static_cast<int>(init.size()) != p)
    throw std::invalid_argument("lqmt: initial state must have p derivatives");

  LqmtResult out;
  if (all_axes_degenerate(init, term)) {
    out.segment = degenerate_segment(init, p);
    out.cost = {rho, 0.0, 0.0, 0.0};
    return out;
  }

  LqmtCostFunction jfun = lqmt_cost_function(init, term, rho, p);
  const Poly& N = jfun.numerator;

  // Stationarity of J(T) = rho*T + N(T)/T^(2p-1):
  // rho*T^(2p) + T*N'(T) - (2p-1)*N(T) = 0.
  const int twop = 2 * p;
  Poly S = Poly::Zero(twop + 1);
  S[twop] = rho;
  for (int k = 0; k < N.size(); ++k) {
    S[k] += (static_cast<double>(k) - (twop - 1)) * N[k];
  }

  double best_T = -1.0;
  double best_J = std::numeric_limits<double>::infinity();
  for (double r : poly_real_roots(S)) {
    if (r <= 1e-12) continue;
    double J = jfun.cost(r);
    if (std::isfinite(J) && J < best_J) {
      best_J = J;
      best_T = r;
    }
  }
  if (best_T <= 0.0) {
    // Bracketing fallback over log-spaced durations, then golden-section.
    double lo = 1e-5, hi = 1e4;
    double arg = -1.0, val = std::numeric_limits<double>::infinity();
    constexpr int kScan = 400;
    for (int i = 0; i <= kScan; ++i) {
      double T = lo * std::pow(hi / lo, static_cast<double>(i) / kScan);
      double J = jfun.cost(T);
      if (std::isfinite(J) && J < val) {
        val = J;
        arg = T;
      }
    }
    if (arg < 0.0) throw DegenerateLqmt("lqmt: no positive stationary point");
    double a = arg / std::pow(hi / lo, 1.0 / kScan);
    double b = arg * std::pow(hi / lo, 1.0 / kScan);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
      double x1 = b - gr * (b - a);
      double x2 = a + gr * (b - a);
      if (jfun.cost(x1) < jfun.cost(x2)) b = x2;
      else a = x1;
      if (b - a < 1e-12 * (1.0 + b)) break;
    }
    best_T = 0.5 * (a + b);
    best_J = jfun.cost(best_T);
    if (!std::isfinite(best_J)) throw DegenerateLqmt("lqmt: cost not finite");
  }

  out.segment = lqmt_fixed_time(init, term, best_T, p);
  double effort = segment_effort(out.segment);
  out.cost = {rho, best_T, effort, rho * best_T + effort};
  return out;
}

}  // namespace

Vec3 PolySegment::eval(double t, int order) const { return eval_segment(*this, t, order); }

Vec3 eval_segment(const PolySegment& seg, double t, int order) {
  constexpr double kSlack = 1e-9;
  if (t < -kSlack || t > seg.duration + kSlack) {
    throw std::out_of_range("eval_segment: t outside [0, duration]");
  }
  t = std::clamp(t, 0.0, seg.duration);
  Vec3 out;
  for (int a = 0; a < 3; ++a) out[a] = poly_eval_derivative(seg.axis_coeffs[a], t, order);
  return out;
}

double segment_effort(const PolySegment& seg) {
  if (seg.duration <= 0.0) return 0.0;
  double total = 0.0;
  for (int a = 0; a < 3; ++a) {
    Poly u = seg.axis_coeffs[a];
    for (int d = 0; d < seg.order_p; ++d) u = poly_derivative(u);
    total += poly_square_integral(u, seg.duration);
  }
  return total;
}

PolySegment lqmt_fixed_time(const std::vector<Vec3>& initial_derivs,
                            const std::vector<Vec3>& terminal_derivs, double T,
                            int p) {
  if (static_cast<int>(initial_derivs.size()) != p)
    throw std::invalid_argument("lqmt_fixed_time: initial state must have p derivatives");
  const int k_fixed = static_cast<int>(terminal_derivs.size());
  if (k_fixed < 2 || k_fixed > p)
    throw std::invalid_argument("lqmt_fixed_time: need 2..p fixed terminal derivatives");
  if (T <= 0.0) return degenerate_segment(initial_derivs, p);

  PolySegment seg;
  seg.order_p = p;
  seg.duration = T;
  for (int a = 0; a < 3; ++a) {
    std::vector<double> init(p), term(k_fixed);
    for (int q = 0; q < p; ++q) init[q] = initial_derivs[q][a];
    for (int m = 0; m < k_fixed; ++m) term[m] = terminal_derivs[m][a];
    seg.axis_coeffs[a] = solve_axis_poly(init, term, T, p);
  }
  fill_boundary(seg, initial_derivs);
  return seg;
}

double LqmtCostFunction::effort(double T) const {
  if (T <= 0.0) return std::numeric_limits<double>::infinity();
  return poly_eval(numerator, T) / std::pow(T, 2 * order_p - 1);
}

LqmtCostFunction lqmt_cost_function(const std::vector<Vec3>& initial_derivs,
                                    const std::vector<Vec3>& terminal_derivs,
                                    double rho, int p) {
  const int k_fixed = static_cast<int>(terminal_derivs.size());
  const Eigen::MatrixXd& G = effort_gram(p, k_fixed);

  LqmtCostFunction out;
  out.rho = rho;
  out.order_p = p;
  out.numerator = Poly::Zero(2 * p - 1);

  // Per axis: Y_m(T) = T^m * (y_m - Z^(m)(T)) with Z the initial-state Taylor
  // polynomial; effort(T) = T^(1-2p) * Y^T G Y by time re-scaling.
  for (int a = 0; a < 3; ++a) {
    std::vector<Poly> Y(k_fixed);
    for (int m = 0; m < k_fixed; ++m) {
      Poly base = Poly::Zero(p - m);
      base[0] = terminal_derivs[m][a] - initial_derivs[m][a];
      double fact = 1.0;
      for (int j = 1; j < p - m; ++j) {
        fact *= j;
        base[j] = -initial_derivs[m + j][a] / fact;
      }
      Poly shifted = Poly::Zero(p);
      for (int j = 0; j < base.size(); ++j) shifted[j + m] = base[j];
      Y[m] = shifted;
    }
    for (int i = 0; i < k_fixed; ++i) {
      for (int j = 0; j < k_fixed; ++j) {
        if (G(i, j) == 0.0) continue;
        Poly prod = poly_mul(Y[i], Y[j]);
        for (int k = 0; k < prod.size() && k < out.numerator.size(); ++k) {
          out.numerator[k] += G(i, j) * prod[k];
        }
      }
    }
  }
  return out;
}

LqmtResult lqmt_solve(const std::vector<Vec3>& initial_derivs, const Vec3& rf,
                      const Vec3& vf, double rho, int p) {
  return solve_with_terminal(initial_derivs, {rf, vf}, rho, p);
}

LqmtResult lqmt_solve_pinned(const std::vector<Vec3>& initial_derivs,
                             const std::vector<Vec3>& final_derivs, double rho,
                             int p) {
  if (static_cast<int>(final_derivs.size()) != p)
    throw std::invalid_argument("lqmt_solve_pinned: terminal state must have p derivatives");
  return solve_with_terminal(initial_derivs, final_derivs, rho, p);
}

}  // namespace stitcher
