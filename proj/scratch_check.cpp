#include "stitcher/min_time.hpp"
#include "stitcher/lqmt.hpp"
#include <cstdio>
#include <random>

using namespace stitcher;

int main() {
  // min_time_1d frozen examples
  auto bb = min_time_1d(0, 0, 1, 0, 1.0);
  std::printf("rest-to-rest T=%.9f (expect 2)\n", bb.T);
  auto bb2 = min_time_1d(0, 1, 0.5, 0, 1.0);
  std::printf("pure-decel T=%.9f (expect 1)\n", bb2.T);

  // sync: per-axis times 2,1,0.5
  Vec3 r0(0, 0, 0), v0(0, 0, 0), rf(1.0, 0.25, 0.0625), vf(0, 0, 0);
  auto sync = min_time_3d(r0, v0, rf, vf, 1.0);
  std::printf("T*=%.9f (expect 2); axis times %.4f %.4f %.4f\n", sync.duration,
              sync.axis_min_times[0], sync.axis_min_times[1], sync.axis_min_times[2]);
  for (int k = 0; k < 3; ++k) {
    std::printf("axis %d end: s=%.9f v=%.9f ubound=%.4f\n", k,
                sync.axes[k].position(sync.duration), sync.axes[k].velocity(sync.duration),
                sync.axes[k].accel_bound());
  }

  // random sync re-integration
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-5, 5);
  double worst = 0;
  for (int i = 0; i < 2000; ++i) {
    Vec3 a(U(rng), U(rng), U(rng)), b(U(rng), U(rng), U(rng));
    Vec3 va(U(rng), U(rng), U(rng)), vb(U(rng), U(rng), U(rng));
    double um = 0.5 + std::abs(U(rng));
    auto s = min_time_3d(a, va, b, vb, um);
    for (int k = 0; k < 3; ++k) {
      worst = std::max(worst, std::abs(s.axes[k].position(s.duration) - b[k]));
      worst = std::max(worst, std::abs(s.axes[k].velocity(s.duration) - vb[k]));
      if (s.axes[k].accel_bound() > um * (1 + 1e-9)) {
        std::printf("ACCEL BOUND VIOLATION axis %d: %.6f > %.6f i=%d\n", k,
                    s.axes[k].accel_bound(), um, i);
        return 1;
      }
    }
  }
  std::printf("sync worst boundary residual over 2000: %.3e\n", worst);

  // lqmt rest-to-rest p=3
  std::vector<Vec3> init{Vec3(0, 0, 0), Vec3::Zero(), Vec3::Zero()};
  auto lq = lqmt_solve(init, Vec3(1, 0, 0), Vec3::Zero(), 1000.0, 3);
  std::printf("lqmt T*=%.6f J=%.6f effort=%.6f\n", lq.cost.T, lq.cost.J, lq.cost.effort);
  std::printf("lqmt end pos=%.9f vel=%.9f acc(T)=%.9f jerk(T)=%.9f\n",
              lq.segment.eval(lq.cost.T, 0)[0], lq.segment.eval(lq.cost.T, 1)[0],
              lq.segment.eval(lq.cost.T, 2)[0], lq.segment.eval(lq.cost.T, 3)[0]);

  // dense-T scan vs closed form
  auto jf = lqmt_cost_function(init, {Vec3(1, 0, 0), Vec3::Zero()}, 1000.0, 3);
  double bestT = 0, bestJ = 1e300;
  for (double T = 1e-4; T <= lq.cost.J / 1000.0 + 0.2; T += 1e-4) {
    auto seg = lqmt_fixed_time(init, {Vec3(1, 0, 0), Vec3::Zero()}, T, 3);
    double J = 1000.0 * T + segment_effort(seg);
    if (J < bestJ) { bestJ = J; bestT = T; }
  }
  std::printf("grid best T=%.6f J=%.6f | closed-form at grid T: J=%.6f\n", bestT, bestJ,
              jf.cost(bestT));

  // consistency: effort via numerator vs direct at a few T
  std::mt19937 rng2(11);
  double worst_rel = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Vec3> ini{Vec3(U(rng2), U(rng2), U(rng2)), Vec3(U(rng2), U(rng2), U(rng2)),
                          Vec3(U(rng2), U(rng2), U(rng2))};
    Vec3 rf2(U(rng2), U(rng2), U(rng2)), vf2(U(rng2), U(rng2), U(rng2));
    double T = 0.1 + std::abs(U(rng2));
    auto jfi = lqmt_cost_function(ini, {rf2, vf2}, 1000.0, 3);
    auto seg = lqmt_fixed_time(ini, {rf2, vf2}, T, 3);
    double direct = segment_effort(seg);
    double closed = jfi.effort(T);
    double rel = std::abs(direct - closed) / (1.0 + std::abs(direct));
    worst_rel = std::max(worst_rel, rel);
    // boundary fidelity
    if ((seg.eval(T, 0) - rf2).norm() > 1e-6 || (seg.eval(T, 1) - vf2).norm() > 1e-6) {
      std::printf("BOUNDARY FAIL i=%d\n", i);
      return 1;
    }
  }
  std::printf("effort closed-vs-direct worst rel: %.3e\n", worst_rel);

  // lqmt_solve over random instances: stationarity vs grid around T*
  double worst_gap = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec3> ini{Vec3(U(rng2), U(rng2), U(rng2)), Vec3(U(rng2), U(rng2), U(rng2)),
                          Vec3(U(rng2), U(rng2), U(rng2))};
    Vec3 rf2(U(rng2), U(rng2), U(rng2)), vf2(U(rng2), U(rng2), U(rng2));
    auto res = lqmt_solve(ini, rf2, vf2, 1000.0, 3);
    auto jfi = lqmt_cost_function(ini, {rf2, vf2}, 1000.0, 3);
    double Tmax = res.cost.J / 1000.0;
    for (double T = 1e-3; T <= Tmax; T += 1e-3) {
      double J = jfi.cost(T);
      if (J < res.cost.J - 1e-6 * (1 + std::abs(J))) {
        worst_gap = std::max(worst_gap, res.cost.J - J);
      }
    }
  }
  std::printf("lqmt_solve suboptimality worst gap vs grid: %.3e\n", worst_gap);
  return 0;
}
