#pragma once

// Look-ahead profiles, line-of-sight geometry, saturation boundary and the
// lateral acceleration command. Templated on the scalar so tests can run
// the same code in long double.

#include "l0guide/errors.hpp"
#include "l0guide/types.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <variant>

namespace l0guide {

// ---------------------------------------------------------------------------
// Look-ahead profiles
// ---------------------------------------------------------------------------

template <typename Scalar>
struct ConstantLookahead {
  Scalar length;
};

/// L0(d) = L_min + (L_max - L_min) * (1 - exp(-|d| / d_c)).
template <typename Scalar>
struct VariableLookahead {
  Scalar min_length;
  Scalar max_length;
  Scalar decay_distance;
};

template <typename Scalar>
using LookaheadProfile = std::variant<ConstantLookahead<Scalar>, VariableLookahead<Scalar>>;

template <typename Scalar>
LookaheadProfile<Scalar> make_constant_profile(Scalar length) {
  if (!(length > Scalar(0)) || !std::isfinite(static_cast<double>(length)))
    throw GuidanceError(ErrorKind::InvalidArgument, "constant look-ahead must be positive");
  return ConstantLookahead<Scalar>{length};
}

// L_max == L_min is accepted: it is the degenerate end of a ratio sweep.
template <typename Scalar>
LookaheadProfile<Scalar> make_variable_profile(Scalar min_length, Scalar max_length,
                                               Scalar decay_distance) {
  if (!(min_length > Scalar(0)))
    throw GuidanceError(ErrorKind::InvalidArgument, "min_length must be positive");
  if (!(max_length >= min_length) || !std::isfinite(static_cast<double>(max_length)))
    throw GuidanceError(ErrorKind::InvalidArgument, "max_length must be >= min_length");
  if (!(decay_distance > Scalar(0)))
    throw GuidanceError(ErrorKind::InvalidArgument, "decay_distance must be positive");
  return VariableLookahead<Scalar>{min_length, max_length, decay_distance};
}

template <typename Scalar>
Scalar lookahead(const LookaheadProfile<Scalar>& profile, Scalar d) {
  using std::abs;
  using std::expm1;
  if (const auto* c = std::get_if<ConstantLookahead<Scalar>>(&profile)) return c->length;
  const auto& v = std::get<VariableLookahead<Scalar>>(profile);
  return v.min_length - (v.max_length - v.min_length) * expm1(-abs(d) / v.decay_distance);
}

/// dL0/dd; taken as 0 at d = 0 where the variable profile has a kink.
template <typename Scalar>
Scalar lookahead_slope(const LookaheadProfile<Scalar>& profile, Scalar d) {
  using std::abs;
  using std::exp;
  if (std::holds_alternative<ConstantLookahead<Scalar>>(profile) || d == Scalar(0)) return Scalar(0);
  const auto& v = std::get<VariableLookahead<Scalar>>(profile);
  const Scalar magnitude = (v.max_length - v.min_length) / v.decay_distance * exp(-abs(d) / v.decay_distance);
  return d > Scalar(0) ? magnitude : -magnitude;
}

/// Look-ahead at d = 0 (L_min for the variable profile).
template <typename Scalar>
Scalar min_lookahead(const LookaheadProfile<Scalar>& profile) {
  return lookahead(profile, Scalar(0));
}

// ---------------------------------------------------------------------------
// Limits, geometry, command
// ---------------------------------------------------------------------------

template <typename Scalar>
struct GuidanceLimits {
  Scalar speed;
  Scalar min_turn_radius;
  std::optional<Scalar> projection_tolerance;  ///< eps_proj; disabled when empty

  static GuidanceLimits make(Scalar speed, Scalar min_turn_radius,
                             std::optional<Scalar> projection_tolerance = std::nullopt) {
    if (!(speed > Scalar(0)) || !std::isfinite(static_cast<double>(speed)))
      throw GuidanceError(ErrorKind::InvalidArgument, "speed must be positive");
    if (!(min_turn_radius > Scalar(0)) || !std::isfinite(static_cast<double>(min_turn_radius)))
      throw GuidanceError(ErrorKind::InvalidArgument, "min_turn_radius must be positive");
    if (projection_tolerance && !(*projection_tolerance >= Scalar(0)))
      throw GuidanceError(ErrorKind::InvalidArgument, "projection_tolerance must be >= 0");
    return GuidanceLimits{speed, min_turn_radius, projection_tolerance};
  }

  Scalar max_lateral_accel() const { return speed * speed / min_turn_radius; }
};

template <typename Scalar>
struct TrackingGeometry {
  Scalar cross_track;
  Scalar curvature;
  Scalar heading_error;
};

enum class Region { S1, S2, S3 };

inline const char* to_string(Region region) {
  switch (region) {
    case Region::S1: return "S1";
    case Region::S2: return "S2";
    case Region::S3: return "S3";
  }
  return "S1";
}

template <typename Scalar>
struct GuidanceCommand {
  Scalar lookahead;            ///< L0 evaluated at d
  Scalar tangent_advance;      ///< s
  Scalar los_length;           ///< L1
  Scalar saturation_boundary;  ///< eta_bar
  Region region;
  Scalar lateral_accel;        ///< a_d
  Scalar curvature_command;    ///< a_d / V^2
  bool saturated;
};

namespace detail {
template <typename Scalar>
void require_feasible(Scalar d, Scalar kappa) {
  if (!(Scalar(1) + d * kappa > Scalar(0)))
    throw GuidanceError(ErrorKind::InfeasibleGeometry, "1 + d*kappa must be positive");
}
}  // namespace detail

/// s = L0 sqrt(1 + d kappa), optionally capped by sqrt(2 eps_proj / |kappa|).
template <typename Scalar>
Scalar tangent_advance(Scalar lookahead_length, Scalar d, Scalar kappa, const GuidanceLimits<Scalar>& limits) {
  using std::abs;
  using std::min;
  using std::sqrt;
  detail::require_feasible(d, kappa);
  Scalar s = lookahead_length * sqrt(Scalar(1) + d * kappa);
  if (limits.projection_tolerance && kappa != Scalar(0))
    s = min(s, sqrt(Scalar(2) * *limits.projection_tolerance / abs(kappa)));
  return s;
}

/// Leading-order bound on |T - T'|.
template <typename Scalar>
Scalar projection_error_bound(Scalar s, Scalar kappa) {
  using std::abs;
  return abs(kappa) * s * s / Scalar(2);
}

template <typename Scalar>
Scalar los_length(Scalar lookahead_length, Scalar d, Scalar kappa) {
  using std::sqrt;
  detail::require_feasible(d, kappa);
  return sqrt(d * d + lookahead_length * lookahead_length * (Scalar(1) + d * kappa));
}

/// Signed angle from the velocity to the line of sight, in (-pi, pi].
template <typename Scalar>
Scalar heading_error(const Vector2<Scalar>& velocity, const Vector2<Scalar>& los) {
  using std::atan2;
  if (velocity.norm() < Scalar(1e-12) || los.norm() < Scalar(1e-12))
    throw GuidanceError(ErrorKind::ZeroVector, "heading error needs nonzero velocity and LOS");
  return wrap_angle(atan2(cross2(velocity, los), velocity.dot(los)));
}

/// eta_bar = asin(min(1, L1 / (2 R_min))).
template <typename Scalar>
Scalar saturation_boundary(Scalar los, const GuidanceLimits<Scalar>& limits) {
  using std::asin;
  using std::min;
  return asin(min(Scalar(1), los / (Scalar(2) * limits.min_turn_radius)));
}

/// S1 is closed: |eta| == eta_bar is unsaturated.
template <typename Scalar>
Region classify_region(Scalar heading_error, Scalar eta_bar) {
  if (heading_error > eta_bar) return Region::S2;
  if (heading_error < -eta_bar) return Region::S3;
  return Region::S1;
}

template <typename Scalar>
Region classify_region(const TrackingGeometry<Scalar>& geom, Scalar eta_bar) {
  return classify_region(geom.heading_error, eta_bar);
}

/// Builds the command once the line of sight is known. Saturated regions get
/// the boundary magnitude with the sign of eta, so S2 and S3 turn opposite ways.
template <typename Scalar>
GuidanceCommand<Scalar> command_from_los(Scalar lookahead_length, Scalar advance, Scalar los,
                                         Scalar heading_err, const GuidanceLimits<Scalar>& limits) {
  using std::max;
  using std::min;
  using std::sin;
  const Scalar v2 = limits.speed * limits.speed;
  const Scalar eta_bar = saturation_boundary(los, limits);
  const Region region = classify_region(heading_err, eta_bar);
  Scalar accel;
  if (region == Region::S1) {
    accel = Scalar(2) * v2 * sin(heading_err) / los;
  } else {
    const Scalar sign = heading_err > Scalar(0) ? Scalar(1) : Scalar(-1);
    accel = Scalar(2) * v2 * sin(eta_bar) / los * sign;
  }
  const Scalar cap = limits.max_lateral_accel();
  accel = max(-cap, min(cap, accel));
  return GuidanceCommand<Scalar>{lookahead_length, advance, los, eta_bar, region,
                                 accel, accel / v2, region != Region::S1};
}

/// Full guidance evaluation from the Frenet error state.
template <typename Scalar>
GuidanceCommand<Scalar> lateral_accel(const TrackingGeometry<Scalar>& geom,
                                      const LookaheadProfile<Scalar>& profile,
                                      const GuidanceLimits<Scalar>& limits) {
  using std::hypot;
  const Scalar l0 = lookahead(profile, geom.cross_track);
  const Scalar s = tangent_advance(l0, geom.cross_track, geom.curvature, limits);
  return command_from_los(l0, s, hypot(geom.cross_track, s), geom.heading_error, limits);
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

template <typename Scalar>
struct FeasibilityReport {
  bool feasible;
  Scalar margin;            ///< 1 + d kappa
  Scalar los_length;        ///< L1 (NaN when margin <= 0)
  Scalar chord_limit;       ///< 2R - d, +inf on straight paths
  bool within_chord;        ///< L1 <= 2R - d
  bool within_diameter;     ///< L1 < 2R, the weaker side condition on L1
};

/// Membership in the feasibility set: 1 + d kappa > 0 and L1 <= 2R - d.
template <typename Scalar>
FeasibilityReport<Scalar> feasibility_check(Scalar d, Scalar kappa, const LookaheadProfile<Scalar>& profile) {
  using std::abs;
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  FeasibilityReport<Scalar> report{};
  report.margin = Scalar(1) + d * kappa;
  report.chord_limit = kappa == Scalar(0) ? inf : Scalar(2) / abs(kappa) - d;
  if (!(report.margin > Scalar(0))) {
    report.los_length = std::numeric_limits<Scalar>::quiet_NaN();
    return report;
  }
  report.los_length = los_length(lookahead(profile, d), d, kappa);
  report.within_chord = kappa == Scalar(0) || report.los_length <= report.chord_limit;
  report.within_diameter = kappa == Scalar(0) || report.los_length < Scalar(2) / abs(kappa);
  report.feasible = report.within_chord;
  return report;
}

/// sigma = (kappa / a_d) d a_d / d kappa at fixed eta.
template <typename Scalar>
Scalar curvature_sensitivity(Scalar d, Scalar kappa, const LookaheadProfile<Scalar>& profile) {
  detail::require_feasible(d, kappa);
  const Scalar l0 = lookahead(profile, d);
  const Scalar l0sq = l0 * l0;
  return -kappa * l0sq * d / (Scalar(2) * (d * d + l0sq * (Scalar(1) + d * kappa)));
}

/// Exact d a_d / d kappa of the unsaturated command at fixed eta.
template <typename Scalar>
Scalar accel_curvature_derivative(Scalar d, Scalar kappa, Scalar heading_err,
                                  const LookaheadProfile<Scalar>& profile,
                                  const GuidanceLimits<Scalar>& limits) {
  using std::sin;
  const Scalar l0 = lookahead(profile, d);
  const Scalar l1 = los_length(l0, d, kappa);
  return -limits.speed * limits.speed * sin(heading_err) * l0 * l0 * d / (l1 * l1 * l1);
}

/// Small-angle command 2 V^2 d / L1^2.
template <typename Scalar>
Scalar near_path_lateral_accel(Scalar d, Scalar kappa, const LookaheadProfile<Scalar>& profile,
                               const GuidanceLimits<Scalar>& limits) {
  const Scalar l1 = los_length(lookahead(profile, d), d, kappa);
  return Scalar(2) * limits.speed * limits.speed * d / (l1 * l1);
}

/// Curvature derivative of the small-angle command; negative for d != 0.
template <typename Scalar>
Scalar near_path_curvature_derivative(Scalar d, Scalar kappa, const LookaheadProfile<Scalar>& profile,
                                      const GuidanceLimits<Scalar>& limits) {
  const Scalar l0 = lookahead(profile, d);
  const Scalar l1sq = d * d + l0 * l0 * (Scalar(1) + d * kappa);
  detail::require_feasible(d, kappa);
  return -Scalar(2) * limits.speed * limits.speed * d * d * l0 * l0 / (l1sq * l1sq);
}

}  // namespace l0guide
