#include "l0guide/envelope.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace l0guide;
using doctest::Approx;

namespace {

const auto kConst = make_constant_profile(50.0);
const auto kVar = make_variable_profile(50.0, 150.0, 30.0);
const auto kLimits = GuidanceLimits<double>::make(50.0, 100.0);

GridSpec small_grid(double kappa = 0.0) {
  GridSpec g;
  g.n_d = 121;
  g.n_eta = 97;
  g.curvature = kappa;
  return g;
}

// Straight count of |eta| < asin(min(1, L1 / 2R)) over the node lattice.
double brute_fraction(double lmin, double lmax, double dc, const GridSpec& g, double radius) {
  long inside = 0;
  for (int i = 0; i < g.n_d; ++i) {
    const double d = g.d_min + (g.d_max - g.d_min) * i / (g.n_d - 1);
    const double l0 = static_cast<double>(oracle::variable_lookahead(lmin, lmax, dc, d));
    const double l1 = std::sqrt(d * d + l0 * l0 * (1.0 + d * g.curvature));
    const double bound = std::asin(std::min(1.0, l1 / (2.0 * radius)));
    for (int j = 0; j < g.n_eta; ++j) {
      const double eta = g.eta_min + (g.eta_max - g.eta_min) * j / (g.n_eta - 1);
      if (std::abs(eta) < bound) ++inside;
    }
  }
  return static_cast<double>(inside) / (static_cast<double>(g.n_d) * g.n_eta);
}

}  // namespace

TEST_CASE("unsaturated fraction agrees with a direct count") {
  for (double kappa : {0.0, 0.004}) {
    const GridSpec g = small_grid(kappa);
    CHECK(unsaturated_fraction(kConst, g, kLimits) == Approx(brute_fraction(50, 50, 30, g, 100)));
    CHECK(unsaturated_fraction(kVar, g, kLimits) == Approx(brute_fraction(50, 150, 30, g, 100)));
  }
}

TEST_CASE("tiny turn radius saturates the boundary at pi/2") {
  const auto limits = GuidanceLimits<double>::make(50.0, 1e-6);
  GridSpec g = small_grid();
  g.n_eta = 1001;
  CHECK(unsaturated_fraction(kConst, g, limits) == Approx(0.5).epsilon(2e-3));
}

TEST_CASE("gains and degenerate profiles") {
  const GridSpec g = small_grid();
  const auto same = envelope_gain(g, kLimits, kConst, kConst);
  CHECK(same.absolute == 0.0);
  CHECK(same.relative == 0.0);
  const auto flat = envelope_gain(g, kLimits, kConst, make_variable_profile(50.0, 50.0, 30.0));
  CHECK(flat.absolute == 0.0);
  CHECK(flat.relative == 0.0);

  const auto gain = envelope_gain(0.25, 0.4);
  CHECK(gain.absolute == Approx(15.0));
  CHECK(gain.relative == Approx(60.0));
  try {
    envelope_gain(0.0, 0.3);
    FAIL("expected a degenerate baseline");
  } catch (const GuidanceError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateBaseline);
  }
}

TEST_CASE("envelope report invariants") {
  const GridSpec g = small_grid();
  const EnvelopeReport r = compute_envelope(g, kLimits, kConst, kVar);
  CHECK(r.fraction_var >= r.fraction_const);
  CHECK(r.gain.absolute == Approx((r.fraction_var - r.fraction_const) * 100.0));
  CHECK(r.gain.relative == Approx((r.fraction_var / r.fraction_const - 1.0) * 100.0));

  for (int i = 0; i < g.n_d; ++i) {
    CHECK(r.boundary_var[i] >= r.boundary_const[i]);
    if (i > 0) {
      CHECK(r.boundary_const[i] >= r.boundary_const[i - 1]);
      CHECK(r.boundary_var[i] >= r.boundary_var[i - 1]);
    }
    for (int j = 0; j < g.n_eta; ++j) {
      if (r.regions_const.at(i, j) == Region::S1) CHECK(r.regions_var.at(i, j) == Region::S1);
      // eta nodes are symmetric, so j and n_eta-1-j mirror each other.
      const Region mirrored = r.regions_const.at(i, g.n_eta - 1 - j);
      const Region here = r.regions_const.at(i, j);
      if (here == Region::S1) CHECK(mirrored == Region::S1);
      if (here == Region::S2) CHECK(mirrored == Region::S3);
      if (here == Region::S3) CHECK(mirrored == Region::S2);
    }
  }
}

TEST_CASE("grid refinement changes the fractions by less than 0.3 points") {
  GridSpec coarse;  // 1000 x 1000
  GridSpec fine = coarse;
  fine.n_d = 2000;
  fine.n_eta = 2000;
  for (const auto* p : {&kConst, &kVar}) {
    const double a = unsaturated_fraction(*p, coarse, kLimits);
    const double b = unsaturated_fraction(*p, fine, kLimits);
    CHECK(std::abs(a - b) * 100.0 < 0.3);
  }
}

TEST_CASE("infeasible grids and bad specs are rejected") {
  GridSpec g = small_grid(0.01);
  g.d_min = -150.0;
  try {
    unsaturated_fraction(kConst, g, kLimits);
    FAIL("expected infeasible geometry");
  } catch (const GuidanceError& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleGeometry);
  }
  GridSpec bad = small_grid();
  bad.n_d = 1;
  CHECK_THROWS_AS(bad.validate(), GuidanceError);
  bad = small_grid();
  bad.d_max = bad.d_min;
  CHECK_THROWS_AS(bad.validate(), GuidanceError);
}

TEST_CASE("ratio sweep shape") {
  SweepBase base{small_grid(), kLimits, 50.0, 30.0};
  const std::vector<double> ratios{1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  const auto series = ratio_sweep(ratios, base);
  REQUIRE(series.size() == ratios.size());
  CHECK(series.front().gain.absolute == 0.0);
  CHECK(series.front().gain.relative == 0.0);
  for (std::size_t k = 1; k < series.size(); ++k) {
    CHECK(series[k].gain.absolute >= series[k - 1].gain.absolute);
    CHECK(series[k].gain.relative >= series[k - 1].gain.relative);
  }
  CHECK_THROWS_AS(ratio_sweep({0.5}, base), GuidanceError);
}

TEST_CASE("boundary gap") {
  const auto zero = boundary_gap(0.0, 0.0, kConst, kVar, kLimits);
  CHECK(zero.delta_los == 0.0);
  CHECK(zero.delta_eta_exact == 0.0);

  const auto g = boundary_gap(30.0, 0.0, kConst, kVar, kLimits);
  const double l0v = static_cast<double>(oracle::variable_lookahead(50.0L, 150.0L, 30.0L, 30.0L));
  const double l1v = std::hypot(30.0, l0v), l1c = std::hypot(30.0, 50.0);
  CHECK(l1v == Approx(117.12).epsilon(1e-4));
  CHECK(l1c == Approx(58.31).epsilon(1e-4));
  CHECK(g.delta_los_direct == Approx(l1v - l1c));
  CHECK(g.delta_los == Approx(58.81).epsilon(1e-4));
  CHECK(std::abs(g.delta_los - g.delta_los_direct) <= 1e-10 * std::abs(g.delta_los_direct));
  CHECK(g.delta_eta_exact == Approx(std::asin(l1v / 200) - std::asin(l1c / 200)));
  CHECK(g.delta_eta_exact >= 0.0);

  // At d = 1000 the variable L1 exceeds 2 R_min; the gap tends to the far-field value.
  CHECK(std::asin(0.75) - std::asin(0.25) == Approx(0.59538).epsilon(1e-5));
  try {
    boundary_gap(1000.0, 0.0, kConst, kVar, kLimits);
    FAIL("expected an undefined bound");
  } catch (const GuidanceError& e) {
    CHECK(e.kind() == ErrorKind::BoundUndefined);
  }
}

TEST_CASE("far-field time gain") {
  CHECK(far_field_time_gain(kLimits, kConst, make_variable_profile(50.0, 50.0, 30.0)) == 0.0);
  const double expected = 2.0 * (std::asin(0.75) - std::asin(0.25));
  CHECK(expected == Approx(1.1908).epsilon(1e-4));
  CHECK(far_field_time_gain(kLimits, kConst, kVar) == Approx(expected));
  const auto faster = GuidanceLimits<double>::make(100.0, 100.0);
  CHECK(far_field_time_gain(faster, kConst, kVar) == Approx(expected / 2));
  CHECK_THROWS_AS(far_field_time_gain(GuidanceLimits<double>::make(50.0, 70.0), kConst, kVar), GuidanceError);
}

TEST_CASE("polar export") {
  GridSpec g;
  g.d_min = 0.0;
  g.d_max = 100.0;
  g.n_d = 3;
  g.eta_min = -kPi<double>;
  g.eta_max = kPi<double>;
  g.n_eta = 5;  // -pi, -pi/2, 0, pi/2, pi
  const auto pts = polar_map_export(g, kLimits, kConst);
  REQUIRE(pts.size() == 15);
  for (int j = 0; j < 5; ++j) {
    CHECK(pts[j].x == 0.0);
    CHECK(pts[j].y == 0.0);
  }
  const auto& right = pts[2 * 5 + 2];  // d = 100, eta = 0
  CHECK(right.x == Approx(100.0));
  CHECK(right.region == Region::S1);
  const auto& up = pts[2 * 5 + 3];  // d = 100, eta = pi/2
  CHECK(std::abs(up.x) < 1e-9);
  CHECK(up.y == Approx(100.0));
  CHECK(up.region == Region::S2);
  CHECK(std::asin(std::hypot(100.0, 50.0) / 200.0) == Approx(0.5933).epsilon(1e-4));

  GridSpec negative = g;
  negative.d_min = -10.0;
  CHECK_THROWS_AS(polar_map_export(negative, kLimits, kConst), GuidanceError);
}
