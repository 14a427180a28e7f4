#include "l0guide/envelope.hpp"

#include <cmath>

namespace l0guide {

namespace {

double far_lookahead(const LookaheadProfile<double>& profile) {
  if (const auto* v = std::get_if<VariableLookahead<double>>(&profile)) return v->max_length;
  return std::get<ConstantLookahead<double>>(profile).length;
}

}  // namespace

void GridSpec::validate() const {
  if (!(d_min < d_max)) throw GuidanceError(ErrorKind::InvalidArgument, "grid requires d_min < d_max");
  if (!(eta_min < eta_max)) throw GuidanceError(ErrorKind::InvalidArgument, "grid requires eta_min < eta_max");
  if (n_d < 2 || n_eta < 2) throw GuidanceError(ErrorKind::InvalidArgument, "grid needs at least 2 nodes per axis");
  // 1 + d kappa is affine in d, so the end nodes decide feasibility.
  if (!(1.0 + d_min * curvature > 0.0) || !(1.0 + d_max * curvature > 0.0))
    throw GuidanceError(ErrorKind::InfeasibleGeometry, "grid contains nodes with 1 + d*kappa <= 0");
}

Eigen::VectorXd saturation_boundary_curve(const LookaheadProfile<double>& profile, const GridSpec& grid,
                                          const GuidanceLimits<double>& limits) {
  grid.validate();
  const Eigen::VectorXd d = grid.d_nodes();
  return d.unaryExpr([&](double di) {
    return saturation_boundary(los_length(lookahead(profile, di), di, grid.curvature), limits);
  });
}

double unsaturated_fraction(const LookaheadProfile<double>& profile, const GridSpec& grid,
                            const GuidanceLimits<double>& limits) {
  const Eigen::VectorXd boundary = saturation_boundary_curve(profile, grid, limits);
  const Eigen::ArrayXd abs_eta = grid.eta_nodes().array().abs();
  Eigen::Index inside = 0;
  for (Eigen::Index i = 0; i < boundary.size(); ++i) inside += (abs_eta < boundary[i]).count();
  return static_cast<double>(inside) / (static_cast<double>(grid.n_d) * grid.n_eta);
}

EnvelopeGain envelope_gain(double fraction_const, double fraction_var) {
  if (!(fraction_const > 0.0))
    throw GuidanceError(ErrorKind::DegenerateBaseline, "constant-law unsaturated fraction is zero");
  return EnvelopeGain{(fraction_var - fraction_const) * 100.0, (fraction_var / fraction_const - 1.0) * 100.0};
}

EnvelopeGain envelope_gain(const GridSpec& grid, const GuidanceLimits<double>& limits,
                           const LookaheadProfile<double>& const_profile,
                           const LookaheadProfile<double>& var_profile) {
  return envelope_gain(unsaturated_fraction(const_profile, grid, limits),
                       unsaturated_fraction(var_profile, grid, limits));
}

RegionGrid region_map(const LookaheadProfile<double>& profile, const GridSpec& grid,
                      const GuidanceLimits<double>& limits) {
  const Eigen::VectorXd boundary = saturation_boundary_curve(profile, grid, limits);
  const Eigen::VectorXd eta = grid.eta_nodes();
  RegionGrid map{grid.n_d, grid.n_eta, {}};
  map.cells.reserve(static_cast<std::size_t>(grid.n_d) * grid.n_eta);
  for (Eigen::Index i = 0; i < boundary.size(); ++i)
    for (Eigen::Index j = 0; j < eta.size(); ++j) map.cells.push_back(classify_region(eta[j], boundary[i]));
  return map;
}

EnvelopeReport compute_envelope(const GridSpec& grid, const GuidanceLimits<double>& limits,
                                const LookaheadProfile<double>& const_profile,
                                const LookaheadProfile<double>& var_profile, bool with_regions) {
  EnvelopeReport report;
  report.d = grid.d_nodes();
  report.eta = grid.eta_nodes();
  report.boundary_const = saturation_boundary_curve(const_profile, grid, limits);
  report.boundary_var = saturation_boundary_curve(var_profile, grid, limits);
  report.fraction_const = unsaturated_fraction(const_profile, grid, limits);
  report.fraction_var = unsaturated_fraction(var_profile, grid, limits);
  report.gain = envelope_gain(report.fraction_const, report.fraction_var);
  if (with_regions) {
    report.regions_const = region_map(const_profile, grid, limits);
    report.regions_var = region_map(var_profile, grid, limits);
  }
  return report;
}

std::vector<SweepPoint> ratio_sweep(const std::vector<double>& ratios, const SweepBase& base) {
  const auto const_profile = make_constant_profile(base.min_length);
  const double fraction_const = unsaturated_fraction(const_profile, base.grid, base.limits);
  std::vector<SweepPoint> series;
  series.reserve(ratios.size());
  for (const double ratio : ratios) {
    if (!(ratio >= 1.0)) throw GuidanceError(ErrorKind::InvalidArgument, "sweep ratios must be >= 1");
    const auto var_profile =
        make_variable_profile(base.min_length, ratio * base.min_length, base.decay_distance);
    const double fraction_var = unsaturated_fraction(var_profile, base.grid, base.limits);
    series.push_back(SweepPoint{ratio, fraction_const, fraction_var, envelope_gain(fraction_const, fraction_var)});
  }
  return series;
}

LosGap los_gap(double d, double kappa, const LookaheadProfile<double>& const_profile,
               const LookaheadProfile<double>& var_profile) {
  const double l0c = lookahead(const_profile, d);
  const double l0v = lookahead(var_profile, d);
  const double l1c = los_length(l0c, d, kappa);
  const double l1v = los_length(l0v, d, kappa);
  return LosGap{l1c, l1v, (l0v - l0c) * (l0v + l0c) * (1.0 + d * kappa) / (l1v + l1c), l1v - l1c};
}

BoundaryGap boundary_gap(double d, double kappa, const LookaheadProfile<double>& const_profile,
                         const LookaheadProfile<double>& var_profile, const GuidanceLimits<double>& limits) {
  const LosGap los = los_gap(d, kappa, const_profile, var_profile);
  const double l1c = los.los_const, l1v = los.los_var;
  const double diameter = 2.0 * limits.min_turn_radius;
  if (!(l1v < diameter))
    throw GuidanceError(ErrorKind::BoundUndefined, "L1 of the variable law reaches 2 R_min");

  BoundaryGap gap{};
  gap.delta_los = los.factorised;
  gap.delta_los_direct = los.direct;
  const double ratio = l1v / diameter;
  gap.delta_eta_bound = gap.delta_los / (diameter * std::sqrt(1.0 - ratio * ratio));
  gap.delta_eta_exact = saturation_boundary(l1v, limits) - saturation_boundary(l1c, limits);
  return gap;
}

double far_field_time_gain(const GuidanceLimits<double>& limits, const LookaheadProfile<double>& const_profile,
                           const LookaheadProfile<double>& var_profile) {
  const double diameter = 2.0 * limits.min_turn_radius;
  const double near = far_lookahead(const_profile);
  const double far = far_lookahead(var_profile);
  if (!(far < diameter) || !(near < diameter))
    throw GuidanceError(ErrorKind::BoundUndefined, "far-field look-ahead reaches 2 R_min");
  const double delta_eta = std::asin(far / diameter) - std::asin(near / diameter);
  return limits.min_turn_radius / limits.speed * delta_eta;
}

std::vector<PolarPoint> polar_map_export(const GridSpec& grid, const GuidanceLimits<double>& limits,
                                         const LookaheadProfile<double>& profile) {
  if (grid.d_min < 0.0) throw GuidanceError(ErrorKind::InvalidArgument, "polar export needs d >= 0");
  const RegionGrid regions = region_map(profile, grid, limits);
  const Eigen::VectorXd d = grid.d_nodes();
  const Eigen::VectorXd eta = grid.eta_nodes();
  std::vector<PolarPoint> points;
  points.reserve(regions.cells.size());
  for (int i = 0; i < grid.n_d; ++i)
    for (int j = 0; j < grid.n_eta; ++j)
      points.push_back(PolarPoint{d[i] * std::cos(eta[j]), d[i] * std::sin(eta[j]), regions.at(i, j)});
  return points;
}

}  // namespace l0guide
