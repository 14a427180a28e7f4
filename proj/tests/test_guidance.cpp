#include "l0guide/guidance.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace l0guide;
using doctest::Approx;

namespace {

const auto kVariable = make_variable_profile(50.0, 150.0, 30.0);
const auto kConstant = make_constant_profile(50.0);
const auto kLimits = GuidanceLimits<double>::make(50.0, 100.0);

}  // namespace

TEST_CASE("variable look-ahead profile") {
  CHECK(lookahead(kVariable, 0.0) == 50.0);
  const double ref = static_cast<double>(oracle::variable_lookahead(50.0L, 150.0L, 30.0L, 30.0L));
  CHECK(lookahead(kVariable, 30.0) == Approx(ref).epsilon(1e-14));
  CHECK(lookahead(kVariable, 30.0) == Approx(113.2121).epsilon(1e-6));
  CHECK(std::abs(lookahead(kVariable, 1000.0) - 150.0) < 1e-10);
  CHECK(lookahead(kConstant, 123.0) == 50.0);

  double prev = lookahead(kVariable, 0.0);
  for (int i = 1; i <= 2000; ++i) {
    const double d = 0.25 * i;
    const double l = lookahead(kVariable, d);
    CHECK(l - prev >= -1e-12);
    CHECK(l == lookahead(kVariable, -d));
    CHECK(l >= 50.0);
    CHECK(l <= 150.0);
    prev = l;
  }
}

TEST_CASE("look-ahead slope matches a finite difference away from the kink") {
  for (double d : {-80.0, -5.0, 0.5, 12.0, 60.0}) {
    const double fd = oracle::derivative([](double x) { return lookahead(kVariable, x); }, d, 1e-5);
    CHECK(lookahead_slope(kVariable, d) == Approx(fd).epsilon(1e-7));
  }
  CHECK(lookahead_slope(kVariable, 0.0) == 0.0);
  CHECK(lookahead_slope(kConstant, 10.0) == 0.0);
}

TEST_CASE("profile and limit validation") {
  CHECK_THROWS_AS(make_constant_profile(0.0), GuidanceError);
  CHECK_THROWS_AS(make_variable_profile(50.0, 40.0, 30.0), GuidanceError);
  CHECK_THROWS_AS(make_variable_profile(50.0, 150.0, 0.0), GuidanceError);
  CHECK_NOTHROW(make_variable_profile(50.0, 50.0, 30.0));
  CHECK_THROWS_AS(GuidanceLimits<double>::make(0.0, 100.0), GuidanceError);
  CHECK_THROWS_AS(GuidanceLimits<double>::make(10.0, -1.0), GuidanceError);
  CHECK_THROWS_AS(GuidanceLimits<double>::make(10.0, 1.0, -1.0), GuidanceError);
}

TEST_CASE("tangent advance and projection error") {
  CHECK(tangent_advance(100.0, 0.0, 0.02, kLimits) == Approx(100.0));
  CHECK(tangent_advance(100.0, 50.0, 0.005, kLimits) == Approx(100.0 * std::sqrt(1.25)));
  const auto capped = GuidanceLimits<double>::make(50.0, 100.0, 10.0);
  CHECK(tangent_advance(100.0, 0.0, 0.01, capped) == Approx(std::sqrt(2000.0)));
  CHECK(tangent_advance(100.0, 0.0, 0.0, capped) == Approx(100.0));
  CHECK_THROWS_AS(tangent_advance(100.0, -250.0, 0.005, kLimits), GuidanceError);

  CHECK(projection_error_bound(123.0, 0.0) == 0.0);
  CHECK(projection_error_bound(std::sqrt(2000.0), 0.01) == Approx(10.0));
  CHECK(projection_error_bound(100.0, 0.005) == Approx(25.0));
}

TEST_CASE("los length") {
  CHECK(los_length(50.0, 0.0, 0.0) == 50.0);
  CHECK(los_length(100.0, 50.0, 0.0) == Approx(std::sqrt(12500.0)));
  CHECK(los_length(100.0, 50.0, 0.005) == Approx(std::sqrt(15000.0)));
  try {
    los_length(100.0, -250.0, 0.005);
    FAIL("expected infeasible geometry");
  } catch (const GuidanceError& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleGeometry);
  }
}

TEST_CASE("heading error covers the full circle") {
  CHECK(heading_error<double>(Vector2d(1, 0), Vector2d(3, 0)) == 0.0);
  CHECK(heading_error<double>(Vector2d(1, 0), Vector2d(0, 1)) == Approx(kPi<double> / 2));
  CHECK(heading_error<double>(Vector2d(1, 0), Vector2d(0, -1)) == Approx(-kPi<double> / 2));
  const double behind = heading_error<double>(Vector2d(1, 0), Vector2d(-1, 1e-3));
  CHECK(behind == Approx(std::atan2(1e-3, -1.0)));
  CHECK(behind == Approx(3.1406).epsilon(1e-4));
  CHECK(heading_error<double>(Vector2d(1, 0), Vector2d(-1, 0)) == Approx(kPi<double>));
  CHECK_THROWS_AS(heading_error<double>(Vector2d(0, 0), Vector2d(1, 0)), GuidanceError);
  CHECK_THROWS_AS(heading_error<double>(Vector2d(1, 0), Vector2d(1e-13, 0)), GuidanceError);
}

TEST_CASE("saturation boundary and regions") {
  CHECK(saturation_boundary(250.0, kLimits) == Approx(kPi<double> / 2));
  CHECK(saturation_boundary(50.0, kLimits) == Approx(0.252680).epsilon(1e-6));
  CHECK(saturation_boundary(150.0, kLimits) == Approx(0.848062).epsilon(1e-6));

  const double eb = 0.2527;
  CHECK(classify_region(TrackingGeometry<double>{0.0, 0.0, 0.0}, eb) == Region::S1);
  CHECK(classify_region(TrackingGeometry<double>{0.0, 0.0, 0.5}, eb) == Region::S2);
  CHECK(classify_region(TrackingGeometry<double>{0.0, 0.0, -0.5}, eb) == Region::S3);
  CHECK(classify_region(eb, eb) == Region::S1);
  CHECK(classify_region(-eb, eb) == Region::S1);
}

TEST_CASE("lateral acceleration command") {
  const auto zero = lateral_accel(TrackingGeometry<double>{0.0, 0.0, 0.0}, kConstant, kLimits);
  CHECK(zero.lateral_accel == 0.0);
  CHECK(zero.region == Region::S1);
  CHECK_FALSE(zero.saturated);

  const auto c100 = make_constant_profile(100.0);
  const auto cmd = lateral_accel(TrackingGeometry<double>{50.0, 0.0, 0.1}, c100, kLimits);
  CHECK(cmd.los_length == Approx(111.8034).epsilon(1e-6));
  CHECK(cmd.saturation_boundary == Approx(std::asin(0.559017)).epsilon(1e-6));
  CHECK(cmd.region == Region::S1);
  CHECK(cmd.lateral_accel == Approx(2 * 2500 * std::sin(0.1) / std::sqrt(12500.0)));
  CHECK(cmd.lateral_accel == Approx(4.4648).epsilon(1e-4));
  CHECK(cmd.curvature_command == Approx(cmd.lateral_accel / 2500.0));

  // Saturated with L1 < 2R: the boundary command equals V^2 / R_min exactly.
  const auto s2 = lateral_accel(TrackingGeometry<double>{50.0, 0.0, 2.0}, c100, kLimits);
  CHECK(s2.region == Region::S2);
  CHECK(s2.saturated);
  CHECK(s2.lateral_accel == Approx(25.0));
  const auto s3 = lateral_accel(TrackingGeometry<double>{50.0, 0.0, -2.0}, c100, kLimits);
  CHECK(s3.region == Region::S3);
  CHECK(s3.lateral_accel == Approx(-25.0));
}

TEST_CASE("command never exceeds the turn-rate limit") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ud(-300, 300), ue(-kPi<double>, kPi<double>), uk(-0.003, 0.003),
      ur(5, 400);
  for (int i = 0; i < 5000; ++i) {
    const auto limits = GuidanceLimits<double>::make(30.0, ur(rng));
    const TrackingGeometry<double> g{ud(rng), uk(rng), ue(rng)};
    if (!(1.0 + g.cross_track * g.curvature > 0.0)) continue;
    const auto cmd = lateral_accel(g, kVariable, limits);
    CHECK(std::abs(cmd.lateral_accel) <= limits.max_lateral_accel() + 1e-12);
    CHECK(std::abs(cmd.curvature_command) <= 1.0 / limits.min_turn_radius + 1e-15);
    CHECK((cmd.region == Region::S1) == !cmd.saturated);
  }
}

TEST_CASE("feasibility set") {
  const auto c100 = make_constant_profile(100.0);
  CHECK(feasibility_check(500.0, 0.0, c100).feasible);
  const auto ok = feasibility_check(50.0, 0.005, c100);
  CHECK(ok.feasible);
  CHECK(ok.margin == Approx(1.25));
  CHECK(ok.los_length == Approx(122.4745).epsilon(1e-6));
  CHECK(ok.chord_limit == Approx(350.0));
  const auto bad = feasibility_check(-250.0, 0.005, c100);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.margin == Approx(-0.25));
  // L1 < 2R holds but L1 <= 2R - d does not.
  const auto tight = feasibility_check(100.0, 0.01, make_constant_profile(60.0));
  CHECK(tight.within_diameter);
  CHECK_FALSE(tight.within_chord);
  CHECK_FALSE(tight.feasible);
}

TEST_CASE("curvature sensitivity") {
  CHECK(curvature_sensitivity(0.0, 0.01, kConstant) == 0.0);
  const double sigma = curvature_sensitivity(10.0, 0.01, kConstant);
  CHECK(sigma == Approx(-0.04386).epsilon(1e-4));
  CHECK(std::abs(sigma - (-0.05)) < 0.01);

  // sigma is the curvature elasticity of 2 V^2 sin(eta) / L1 at fixed eta.
  const double d = 10.0, k = 0.01;
  auto a = [&](double kk) { return 2.0 * 2500.0 * std::sin(0.2) / los_length(50.0, d, kk); };
  const double elasticity = k / a(k) * oracle::derivative(a, k, 1e-7);
  CHECK(sigma == Approx(elasticity).epsilon(1e-6));
}

TEST_CASE("far-field curvature sensitivity stays below one half") {
  // Large look-ahead, where sigma tends to -d kappa / (2 (1 + d kappa)).
  const auto far = make_constant_profile(1e6);
  for (double d = -400; d <= 400; d += 10)
    for (double k = -0.005; k <= 0.005; k += 0.0005) {
      if (!(1.0 + d * k > 0.5)) continue;  // |sigma| < 1/2 needs d kappa > -1/2
      CHECK(std::abs(curvature_sensitivity(d, k, far)) < 0.5);
    }
}

TEST_CASE("curvature derivative of the command is negative and matches finite differences") {
  for (double d : {-60.0, -5.0, 3.0, 20.0, 90.0}) {
    for (double k : {-0.004, 0.0, 0.004}) {
      auto a = [&](double kk) { return near_path_lateral_accel(d, kk, kVariable, kLimits); };
      const double analytic = near_path_curvature_derivative(d, k, kVariable, kLimits);
      CHECK(analytic < 0.0);
      CHECK(oracle::derivative(a, k, 1e-7) == Approx(analytic).epsilon(1e-6));

      const double eta = 0.3;
      auto a_eta = [&](double kk) {
        return 2.0 * 2500.0 * std::sin(eta) / los_length(lookahead(kVariable, d), d, kk);
      };
      CHECK(oracle::derivative(a_eta, k, 1e-7) ==
            Approx(accel_curvature_derivative(d, k, eta, kVariable, kLimits)).epsilon(1e-6));
    }
  }
}

TEST_CASE("near-path linearisation") {
  const double lmin = 50.0;
  for (double d = -0.01 * lmin; d <= 0.01 * lmin; d += 0.05) {
    for (double k : {-0.005, 0.0, 0.005}) {
      const double l1 = los_length(lookahead(kVariable, d), d, k);
      const double eta = std::asin(d / l1);
      const double l0 = lookahead(kVariable, d);
      const double s = tangent_advance(l0, d, k, kLimits);
      const double exact = command_from_los(l0, s, std::hypot(d, s), eta, kLimits).lateral_accel;
      const double approx = near_path_lateral_accel(d, k, kVariable, kLimits);
      if (d == 0.0) continue;
      CHECK(exact == Approx(approx).epsilon(0.01));
    }
  }
}
