#pragma once

// Saturated/unsaturated maps of the (d, eta) plane, area fractions and gains.

#include "l0guide/guidance.hpp"

#include <Eigen/Dense>

#include <vector>

namespace l0guide {

/// Uniform endpoint-inclusive grid over (d, eta) at a fixed path curvature.
struct GridSpec {
  double d_min = 0.0;
  double d_max = 200.0;
  double eta_min = -kPi<double>;
  double eta_max = kPi<double>;
  int n_d = 1000;
  int n_eta = 1000;
  double curvature = 0.0;

  void validate() const;
  Eigen::VectorXd d_nodes() const { return Eigen::VectorXd::LinSpaced(n_d, d_min, d_max); }
  Eigen::VectorXd eta_nodes() const { return Eigen::VectorXd::LinSpaced(n_eta, eta_min, eta_max); }
};

struct EnvelopeGain {
  double absolute;  ///< percentage points
  double relative;  ///< percent
};

/// Row-major region tags, rows indexed by d.
struct RegionGrid {
  int n_d = 0;
  int n_eta = 0;
  std::vector<Region> cells;

  Region at(int i, int j) const { return cells[static_cast<std::size_t>(i) * n_eta + j]; }
};

struct EnvelopeReport {
  double fraction_const = 0.0;
  double fraction_var = 0.0;
  EnvelopeGain gain{};
  Eigen::VectorXd d;               ///< grid d nodes
  Eigen::VectorXd eta;             ///< grid eta nodes
  Eigen::VectorXd boundary_const;  ///< eta_bar^c(d)
  Eigen::VectorXd boundary_var;    ///< eta_bar^v(d)
  RegionGrid regions_const;
  RegionGrid regions_var;
};

struct PolarPoint {
  double x;
  double y;
  Region region;
};

struct LosGap {
  double los_const;
  double los_var;
  double factorised;  ///< (L0v^2 - L0c^2)(1 + d kappa) / (L1v + L1c)
  double direct;      ///< L1v - L1c
};

struct BoundaryGap {
  double delta_los;          ///< factorised (L0v^2 - Lmin^2)(1 + d kappa) / (L1v + L1c)
  double delta_los_direct;   ///< L1v - L1c
  double delta_eta_bound;    ///< Delta L1 / (2 R_min sqrt(1 - (L1v / 2 R_min)^2))
  double delta_eta_exact;    ///< eta_bar^v - eta_bar^c
};

struct SweepBase {
  GridSpec grid;
  GuidanceLimits<double> limits;
  double min_length;
  double decay_distance;
};

struct SweepPoint {
  double ratio;
  double fraction_const;
  double fraction_var;
  EnvelopeGain gain;
};

/// eta_bar(d) at every grid d node.
Eigen::VectorXd saturation_boundary_curve(const LookaheadProfile<double>& profile, const GridSpec& grid,
                                          const GuidanceLimits<double>& limits);

/// Share of grid nodes with |eta| < eta_bar(d) (strict inequality).
double unsaturated_fraction(const LookaheadProfile<double>& profile, const GridSpec& grid,
                            const GuidanceLimits<double>& limits);

EnvelopeGain envelope_gain(double fraction_const, double fraction_var);

EnvelopeGain envelope_gain(const GridSpec& grid, const GuidanceLimits<double>& limits,
                           const LookaheadProfile<double>& const_profile,
                           const LookaheadProfile<double>& var_profile);

RegionGrid region_map(const LookaheadProfile<double>& profile, const GridSpec& grid,
                      const GuidanceLimits<double>& limits);

/// Region maps, boundaries, fractions and gains in one pass.
EnvelopeReport compute_envelope(const GridSpec& grid, const GuidanceLimits<double>& limits,
                                const LookaheadProfile<double>& const_profile,
                                const LookaheadProfile<double>& var_profile, bool with_regions = true);

/// Gains for L_max = ratio * L_min, L_min and d_c fixed.
std::vector<SweepPoint> ratio_sweep(const std::vector<double>& ratios, const SweepBase& base);

LosGap los_gap(double d, double kappa, const LookaheadProfile<double>& const_profile,
               const LookaheadProfile<double>& var_profile);

BoundaryGap boundary_gap(double d, double kappa, const LookaheadProfile<double>& const_profile,
                         const LookaheadProfile<double>& var_profile, const GuidanceLimits<double>& limits);

/// |Delta T_far| = (R_min / V) (asin(L_max / 2R_min) - asin(L_min / 2R_min)).
double far_field_time_gain(const GuidanceLimits<double>& limits, const LookaheadProfile<double>& const_profile,
                           const LookaheadProfile<double>& var_profile);

/// One (d cos eta, d sin eta, region) record per node; requires d >= 0.
std::vector<PolarPoint> polar_map_export(const GridSpec& grid, const GuidanceLimits<double>& limits,
                                         const LookaheadProfile<double>& profile);

}  // namespace l0guide
