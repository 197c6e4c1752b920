#include "stitcher/min_time.hpp"
#include "stitcher/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace stitcher;

TEST_CASE("coincident states take zero time") {
  auto bb = min_time_1d(0, 0, 0, 0, 2.0);
  CHECK(bb.T == 0.0);
}

TEST_CASE("symmetric rest-to-rest: T = 2 sqrt(d/u), switch at midpoint") {
  auto bb = min_time_1d(0, 0, 1, 0, 1.0);
  CHECK(bb.T == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(bb.profile.arcs.size() == 2);
  CHECK(bb.profile.arcs[0].duration == doctest::Approx(1.0));
  CHECK(bb.profile.arcs[0].accel == doctest::Approx(1.0));
  CHECK(bb.profile.arcs[1].accel == doctest::Approx(-1.0));
}

TEST_CASE("pure deceleration is a single arc") {
  auto bb = min_time_1d(0, 1, 0.5, 0, 1.0);
  CHECK(bb.T == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(bb.profile.arcs.size() == 1);
  CHECK(bb.profile.arcs[0].accel == doctest::Approx(-1.0));
}

TEST_CASE("grid oracle agreement over random instances") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(-10, 10);
  std::uniform_real_distribution<double> Uu(0.5, 16.0);
  for (int i = 0; i < 100; ++i) {
    double s0 = U(rng), v0 = U(rng), sf = U(rng), vf = U(rng), um = Uu(rng);
    auto bb = min_time_1d(s0, v0, sf, vf, um);
    double ref = oracle::grid_min_time(s0, v0, sf, vf, um, 1e-4);
    CHECK(std::abs(bb.T - ref) <= 1e-4);
  }
}

TEST_CASE("monotone in u_max") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-10, 10);
  for (int i = 0; i < 300; ++i) {
    double s0 = U(rng), v0 = U(rng), sf = U(rng), vf = U(rng);
    double u1 = 0.5 + std::abs(U(rng));
    double u2 = u1 * 1.7;
    CHECK(min_time_1d(s0, v0, sf, vf, u2).T <= min_time_1d(s0, v0, sf, vf, u1).T + 1e-12);
  }
}

TEST_CASE("synchronized horizon is the limiting axis time") {
  Vec3 r0(0, 0, 0), v0(0, 0, 0), rf(1.0, 0.25, 0.0625), vf(0, 0, 0);
  auto sync = min_time_3d(r0, v0, rf, vf, 1.0);
  CHECK(sync.duration == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sync.axis_min_times[0] == doctest::Approx(2.0));
  CHECK(sync.axis_min_times[1] == doctest::Approx(1.0));
  CHECK(sync.axis_min_times[2] == doctest::Approx(0.5));
}

TEST_CASE("still axis holds still") {
  Vec3 r0(0, 2, 0), v0(1, 0, 0), rf(3, 2, 0), vf(0.5, 0, 0);
  auto sync = min_time_3d(r0, v0, rf, vf, 2.0);
  CHECK(sync.axes[1].accel_bound() == doctest::Approx(0.0));
  CHECK(sync.axes[1].position(sync.duration) == doctest::Approx(2.0));
}

TEST_CASE("re-integration lands on the boundary state") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int i = 0; i < 500; ++i) {
    Vec3 a(U(rng), U(rng), U(rng)), b(U(rng), U(rng), U(rng));
    Vec3 va(U(rng), U(rng), U(rng)), vb(U(rng), U(rng), U(rng));
    double um = 0.5 + std::abs(U(rng));
    auto s = min_time_3d(a, va, b, vb, um);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(s.axes[k].position(s.duration) - b[k]) <= 1e-6);
      CHECK(std::abs(s.axes[k].velocity(s.duration) - vb[k]) <= 1e-6);
      CHECK(s.axes[k].accel_bound() <= um * (1 + 1e-9));
      CHECK(std::abs(s.axes[k].duration() - s.duration) <= 1e-9);
    }
  }
}
