#pragma once

// Planar constant-speed kinematics closed with the guidance law, and
// stability diagnostics along the trajectory.

#include "l0guide/guidance.hpp"
#include "l0guide/path_geometry.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace l0guide {

struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  ///< psi, rad in (-pi, pi]

  Vector2d position() const { return {x, y}; }
};

enum class Integrator { RK4, Euler };

inline const char* to_string(Integrator integrator) {
  return integrator == Integrator::RK4 ? "rk4" : "euler";
}

struct SimConfig {
  double dt = 0.01;
  double final_time = 60.0;
  Integrator integrator = Integrator::RK4;
  std::optional<double> settle_band;  ///< epsilon; default max(1 m, 2% of |d(0)|)

  void validate() const;
  std::size_t step_count() const;
};

double resolve_settle_band(const SimConfig& config, double initial_cross_track);

struct TrajectorySample {
  double t;
  double x;
  double y;
  double psi;
  double d;
  double eta;
  double kappa;
  double lookahead;
  double los_length;
  double eta_bar;
  Region region;
  double lateral_accel;
  double lyapunov;   ///< NaN where the potential is undefined
  bool infeasible;   ///< 1 + d kappa <= 0; target placed at the closest point
};

struct TrajectoryRecord {
  double dt = 0.0;
  double speed = 0.0;
  bool initially_feasible = true;
  std::size_t infeasible_steps = 0;
  std::vector<TrajectorySample> samples;
};

/// One zero-order-hold integration step of x' = V cos psi, y' = V sin psi,
/// psi' = a_d / V.
VehicleState step(const VehicleState& state, double lateral_accel, const GuidanceLimits<double>& limits,
                  double dt, Integrator integrator = Integrator::RK4);

TrajectoryRecord run_simulation(const PathModel<double>& path, const LookaheadProfile<double>& profile,
                                const GuidanceLimits<double>& limits, const VehicleState& init,
                                const SimConfig& config);

/// g(d) = d + (1 + d kappa) L0 L0' + kappa L0^2 / 2, i.e. half of d(L1^2)/dd.
double los_growth_rate(double d, double kappa, const LookaheadProfile<double>& profile);

/// Phi(d) = integral_0^d g / L1^2, adaptive Simpson to 1e-9 absolute.
double lyapunov_potential(double d, double kappa, const LookaheadProfile<double>& profile);

struct LyapunovValue {
  double value;  ///< V^2 sin^2(eta) / 2 + V^2 Phi(d)
  double potential;
  double growth_rate;
};

LyapunovValue lyapunov_value(double d, double eta, double kappa, const LookaheadProfile<double>& profile,
                             const GuidanceLimits<double>& limits);

struct StabilityReport {
  double lyapunov_initial = 0.0;
  double max_lyapunov_increase = 0.0;   ///< largest V[k+1] - V[k] with both samples in S1
  double exit_time_measured = 0.0;
  double exit_time_bound = 0.0;
  bool exited_saturation = true;
  double min_saturated_rate = 0.0;      ///< min per-step |d eta / dt| in the initial saturated phase
  double mean_saturated_rate = 0.0;
  double rate_floor = 0.0;              ///< V / (2 R_min)
  double saturated_effort = 0.0;        ///< integral of a_d^2 over the saturated phase
  double saturated_effort_bound = 0.0;  ///< (V^2 / R_min)^2 T_far
  std::size_t s1_reentries = 0;
  std::size_t longest_reentry = 0;      ///< samples
  double decomposition_residual = 0.0;  ///< max |d' + V sin(eta - eta1)| / V with sin(eta1) = d / L1
  double terminal_cross_track = 0.0;
  double terminal_heading_error = 0.0;
};

StabilityReport stability_diagnostics(const TrajectoryRecord& trajectory, const GuidanceLimits<double>& limits);

}  // namespace l0guide
