#include "stitcher/lqmt.hpp"
#include "stitcher/min_time.hpp"
#include "stitcher/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace stitcher;

namespace {
std::vector<Vec3> random_state(std::mt19937_64& rng, double span, int p = 3) {
  std::uniform_real_distribution<double> U(-span, span);
  std::vector<Vec3> s;
  for (int i = 0; i < p; ++i) s.emplace_back(U(rng), U(rng), U(rng));
  return s;
}

double quadrature_effort(const PolySegment& seg, int n_steps = 20001) {
  // Simpson over u = r^(p); independent of the analytic coefficient integral.
  double T = seg.duration;
  if (T <= 0.0) return 0.0;
  auto usq = [&](double t) { return seg.eval(t, seg.order_p).squaredNorm(); };
  double h = T / (n_steps - 1);
  double acc = usq(0.0) + usq(T);
  for (int i = 1; i + 1 < n_steps; ++i) acc += usq(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}
}  // namespace

TEST_CASE("identical rest boundary collapses to the degenerate segment") {
  std::vector<Vec3> init{Vec3(1, 2, 3), Vec3::Zero(), Vec3::Zero()};
  auto res = lqmt_solve(init, Vec3(1, 2, 3), Vec3::Zero(), 1000.0, 3);
  CHECK(res.cost.T == 0.0);
  CHECK(res.cost.J == 0.0);
  CHECK(res.segment.eval(0.0, 0) == Vec3(1, 2, 3));
}

TEST_CASE("boundary fidelity and free-terminal transversality") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    auto init = random_state(rng, 6.0);
    std::uniform_real_distribution<double> U(-6, 6);
    Vec3 rf(U(rng), U(rng), U(rng)), vf(U(rng), U(rng), U(rng));
    auto res = lqmt_solve(init, rf, vf, 1000.0, 3);
    const auto& seg = res.segment;
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(seg.eval(0.0, 0)[a] - init[0][a]) <= 1e-6);
      CHECK(std::abs(seg.eval(0.0, 1)[a] - init[1][a]) <= 1e-6);
      CHECK(std::abs(seg.eval(0.0, 2)[a] - init[2][a]) <= 1e-6);
      CHECK(std::abs(seg.eval(res.cost.T, 0)[a] - rf[a]) <= 1e-6);
      CHECK(std::abs(seg.eval(res.cost.T, 1)[a] - vf[a]) <= 1e-6);
    }
    // Free terminal acceleration: the control (jerk for p = 3) vanishes at T.
    CHECK(seg.eval(res.cost.T, 3).norm() <= 1e-5 * (1.0 + seg.eval(0.0, 3).norm()));
  }
}

TEST_CASE("final time matches the dense grid oracle") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    auto init = random_state(rng, 5.0);
    std::uniform_real_distribution<double> U(-5, 5);
    Vec3 rf(U(rng), U(rng), U(rng)), vf(U(rng), U(rng), U(rng));
    auto res = lqmt_solve(init, rf, vf, 1000.0, 3);
    double grid = oracle::lqmt_grid_min_cost(init, rf, vf, 1000.0, 3, 1e-4,
                                             res.cost.J / 1000.0 + 1e-4);
    CHECK(res.cost.J <= grid + 1e-6 * (1.0 + std::abs(grid)));
  }
}

TEST_CASE("rest-to-rest grid check, p = 3") {
  std::vector<Vec3> init{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  auto res = lqmt_solve(init, Vec3(1, 0, 0), Vec3::Zero(), 1000.0, 3);
  double grid = oracle::lqmt_grid_min_cost(init, Vec3(1, 0, 0), Vec3::Zero(), 1000.0, 3, 1e-4,
                                           res.cost.J / 1000.0 + 1e-4);
  CHECK(std::abs(res.cost.J - grid) <= 1e-3);
  CHECK(res.cost.T == doctest::Approx(1.0815).epsilon(1e-3));
}

TEST_CASE("doubling rho never increases the optimal duration") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    auto init = random_state(rng, 5.0);
    std::uniform_real_distribution<double> U(-5, 5);
    Vec3 rf(U(rng), U(rng), U(rng)), vf(U(rng), U(rng), U(rng));
    double rho = 10.0 + std::abs(U(rng)) * 100.0;
    double t1 = lqmt_solve(init, rf, vf, rho, 3).cost.T;
    double t2 = lqmt_solve(init, rf, vf, 2.0 * rho, 3).cost.T;
    CHECK(t2 <= t1 + 1e-9);
  }
}

TEST_CASE("analytic effort equals numeric quadrature") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 25; ++i) {
    auto init = random_state(rng, 4.0);
    std::uniform_real_distribution<double> U(-4, 4);
    Vec3 rf(U(rng), U(rng), U(rng)), vf(U(rng), U(rng), U(rng));
    auto res = lqmt_solve(init, rf, vf, 1000.0, 3);
    double direct = segment_effort(res.segment);
    double quad = quadrature_effort(res.segment);
    CHECK(std::abs(direct - quad) <= 1e-6 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("cost is at least rho times the minimum double-integrator time") {
  // The acceleration bound handed to the double integrator must dominate the
  // primitive's realized acceleration for the bound to apply.
  std::mt19937_64 rng(37);
  for (int i = 0; i < 150; ++i) {
    auto init = random_state(rng, 5.0);
    std::uniform_real_distribution<double> U(-5, 5);
    Vec3 rf(U(rng), U(rng), U(rng)), vf(U(rng), U(rng), U(rng));
    auto res = lqmt_solve(init, rf, vf, 1000.0, 3);
    if (res.cost.T <= 0.0) continue;
    double a_peak = 0.0;
    for (int a = 0; a < 3; ++a) {
      Poly accel = poly_derivative(poly_derivative(res.segment.axis_coeffs[a]));
      a_peak = std::max(a_peak, poly_max_abs_on_interval(accel, 0.0, res.cost.T));
    }
    auto sync = min_time_3d(init[0], init[1], rf, vf, a_peak * (1.0 + 1e-9));
    CHECK(res.cost.J >= 1000.0 * sync.axis_min_times[0] - 1e-9);
    CHECK(res.cost.J >= 1000.0 * sync.axis_min_times[1] - 1e-9);
    CHECK(res.cost.J >= 1000.0 * sync.axis_min_times[2] - 1e-9);
    // p = 3 is strictly above the bang-bang bound.
    double t_d = *std::max_element(sync.axis_min_times.begin(), sync.axis_min_times.end());
    CHECK(res.cost.J > 1000.0 * t_d);
  }
}

TEST_CASE("eval_segment rejects out-of-range times and zeroes high orders") {
  std::vector<Vec3> init{Vec3::Zero(), Vec3(1, 0, 0), Vec3::Zero()};
  auto res = lqmt_solve(init, Vec3(2, 0, 0), Vec3::Zero(), 1000.0, 3);
  CHECK(res.segment.eval(0.0, 0) == Vec3::Zero());
  CHECK(res.segment.eval(0.0, 6).norm() == 0.0);  // above polynomial degree
  CHECK_THROWS_AS(res.segment.eval(res.cost.T + 1.0, 0), std::out_of_range);
  CHECK_THROWS_AS(res.segment.eval(-1.0, 0), std::out_of_range);
}

TEST_CASE("derivative evaluation matches central finite differences") {
  std::mt19937_64 rng(41);
  auto init = random_state(rng, 3.0);
  auto res = lqmt_solve(init, Vec3(4, -2, 1), Vec3(1, 1, 0), 1000.0, 3);
  double T = res.cost.T;
  for (double frac : {0.2, 0.5, 0.8}) {
    double t = frac * T, h = 1e-6 * T;
    Vec3 fd = (res.segment.eval(t + h, 0) - res.segment.eval(t - h, 0)) / (2 * h);
    Vec3 an = res.segment.eval(t, 1);
    CHECK((fd - an).norm() <= 1e-5 * (1.0 + an.norm()));
  }
}

TEST_CASE("pinned terminal state is reproduced exactly") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    auto init = random_state(rng, 4.0);
    auto fin = random_state(rng, 4.0);
    auto res = lqmt_solve_pinned(init, fin, 1000.0, 3);
    for (int m = 0; m < 3; ++m) {
      CHECK((res.segment.eval(res.cost.T, m) - fin[m]).norm() <= 1e-6);
    }
    // Pinning can only cost more than the free-terminal problem.
    auto free_res = lqmt_solve(init, fin[0], fin[1], 1000.0, 3);
    CHECK(res.cost.J >= free_res.cost.J - 1e-6 * (1.0 + free_res.cost.J));
  }
}
