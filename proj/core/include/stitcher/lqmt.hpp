#pragma once

#include "stitcher/poly.hpp"
#include "stitcher/types.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace stitcher {

/// One motion primitive: per-axis position polynomials over local time
/// t in [0, duration]. For a p-th order integrator the position polynomial
/// has degree <= 2p-1. duration == 0 encodes the degenerate segment whose
/// coefficients are the Taylor expansion of the initial state.
struct PolySegment {
  int order_p = 3;
  double duration = 0.0;
  std::array<Poly, 3> axis_coeffs;

  std::vector<Vec3> initial_derivs;  // orders 0..p-1 at t = 0
  Vec3 final_position = Vec3::Zero();
  Vec3 final_velocity = Vec3::Zero();
  std::vector<Vec3> final_derivs;    // realized orders 0..p-1 at t = duration

  Vec3 eval(double t, int order) const;
};

/// Exact polynomial derivative evaluation; throws std::out_of_range when t is
/// outside [0, duration]. Orders above the polynomial degree return zero.
Vec3 eval_segment(const PolySegment& seg, double t, int order);

/// Analytic integral of the squared control u = r^(p) over the segment,
/// summed across the three axes.
double segment_effort(const PolySegment& seg);

struct LqmtCost {
  double rho = 0.0;
  double T = 0.0;
  double effort = 0.0;  // integral of u^2
  double J = 0.0;       // rho*T + effort
};

struct LqmtResult {
  PolySegment segment;
  LqmtCost cost;
};

struct DegenerateLqmt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linear quadratic minimum-time primitive for a p-th order integrator:
/// minimize rho*T + integral(u^2) with the full initial state fixed, terminal
/// position and velocity fixed, and all higher terminal derivatives free.
/// The optimal final time is the minimizer of the closed-form J(T), found as
/// a positive real root of a polynomial via companion-matrix eigenvalues with
/// a bracketing fallback.
LqmtResult lqmt_solve(const std::vector<Vec3>& initial_derivs, const Vec3& rf,
                      const Vec3& vf, double rho, int p);

/// Variant with the entire terminal state pinned (orders 0..p-1). Used when a
/// primitive must land exactly on a previously fixed arrival state.
LqmtResult lqmt_solve_pinned(const std::vector<Vec3>& initial_derivs,
                             const std::vector<Vec3>& final_derivs, double rho,
                             int p);

/// Fixed-duration boundary-value solve. terminal_derivs holds the fixed
/// terminal derivatives (orders 0..k-1, 2 <= k <= p); the remaining terminal
/// freedom is closed by the minimum-effort transversality conditions.
PolySegment lqmt_fixed_time(const std::vector<Vec3>& initial_derivs,
                            const std::vector<Vec3>& terminal_derivs, double T,
                            int p);

/// Closed-form cost of the fixed-duration problem as a function of T:
/// J(T) = rho*T + N(T)/T^(2p-1) with N a polynomial. Exposed for the final
/// time selection and for dense-grid certification.
struct LqmtCostFunction {
  double rho = 0.0;
  int order_p = 3;
  Poly numerator;  // N(T), degree <= 2p-2

  double effort(double T) const;
  double cost(double T) const { return rho * T + effort(T); }
};

LqmtCostFunction lqmt_cost_function(const std::vector<Vec3>& initial_derivs,
                                    const std::vector<Vec3>& terminal_derivs,
                                    double rho, int p);

}  // namespace stitcher
