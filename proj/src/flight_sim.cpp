#include "l0guide/flight_sim.hpp"

#include "l0guide/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace l0guide {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct StateRate {
  double dx;
  double dy;
  double dpsi;
};

StateRate kinematics(double heading, double speed, double lateral_accel) {
  return {speed * std::cos(heading), speed * std::sin(heading), lateral_accel / speed};
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(F& f, double a, double fa, double b, double fb, double m, double fm, double whole,
                        double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), tol, 40);
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw GuidanceError(ErrorKind::InvalidArgument, "dt must be positive");
  if (!(final_time > 0.0) || !std::isfinite(final_time))
    throw GuidanceError(ErrorKind::InvalidArgument, "final_time must be positive");
  if (dt > final_time) throw GuidanceError(ErrorKind::InvalidArgument, "dt must not exceed final_time");
  if (final_time / dt > 1e7) throw GuidanceError(ErrorKind::InvalidArgument, "final_time / dt exceeds 1e7 steps");
  if (settle_band && !(*settle_band > 0.0))
    throw GuidanceError(ErrorKind::InvalidArgument, "settle_band must be positive");
}

std::size_t SimConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(final_time / dt));
}

double resolve_settle_band(const SimConfig& config, double initial_cross_track) {
  if (config.settle_band) return *config.settle_band;
  return std::max(1.0, 0.02 * std::abs(initial_cross_track));
}

VehicleState step(const VehicleState& state, double lateral_accel, const GuidanceLimits<double>& limits,
                  double dt, Integrator integrator) {
  if (!(dt > 0.0)) throw GuidanceError(ErrorKind::InvalidArgument, "dt must be positive");
  if (std::abs(lateral_accel) > limits.max_lateral_accel() * (1.0 + 1e-12))
    throw GuidanceError(ErrorKind::InvalidArgument, "lateral acceleration exceeds V^2 / R_min");

  const double v = limits.speed;
  VehicleState next = state;
  if (integrator == Integrator::Euler) {
    const StateRate k = kinematics(state.heading, v, lateral_accel);
    next.x += dt * k.dx;
    next.y += dt * k.dy;
    next.heading += dt * k.dpsi;
  } else {
    const StateRate k1 = kinematics(state.heading, v, lateral_accel);
    const StateRate k2 = kinematics(state.heading + 0.5 * dt * k1.dpsi, v, lateral_accel);
    const StateRate k3 = kinematics(state.heading + 0.5 * dt * k2.dpsi, v, lateral_accel);
    const StateRate k4 = kinematics(state.heading + dt * k3.dpsi, v, lateral_accel);
    next.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    next.y += dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
    next.heading += dt / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);
  }
  next.heading = wrap_angle(next.heading);
  return next;
}

double los_growth_rate(double d, double kappa, const LookaheadProfile<double>& profile) {
  const double l0 = lookahead(profile, d);
  return d + (1.0 + d * kappa) * l0 * lookahead_slope(profile, d) + 0.5 * kappa * l0 * l0;
}

double lyapunov_potential(double d, double kappa, const LookaheadProfile<double>& profile) {
  // 1 + xi kappa is affine, so checking both ends covers the interval.
  if (!(1.0 + d * kappa > 0.0))
    throw GuidanceError(ErrorKind::InfeasibleGeometry, "1 + d*kappa <= 0 on the integration interval");
  auto integrand = [&](double xi) {
    const double l0 = lookahead(profile, xi);
    return los_growth_rate(xi, kappa, profile) / (xi * xi + l0 * l0 * (1.0 + xi * kappa));
  };
  return integrate(integrand, 0.0, d, 1e-9);
}

LyapunovValue lyapunov_value(double d, double eta, double kappa, const LookaheadProfile<double>& profile,
                             const GuidanceLimits<double>& limits) {
  const double phi = lyapunov_potential(d, kappa, profile);
  const double v2 = limits.speed * limits.speed;
  const double s = std::sin(eta);
  return LyapunovValue{0.5 * v2 * s * s + v2 * phi, phi, los_growth_rate(d, kappa, profile)};
}

TrajectoryRecord run_simulation(const PathModel<double>& path, const LookaheadProfile<double>& profile,
                                const GuidanceLimits<double>& limits, const VehicleState& init,
                                const SimConfig& config) {
  config.validate();
  if (!std::isfinite(init.x) || !std::isfinite(init.y) || !std::isfinite(init.heading))
    throw GuidanceError(ErrorKind::InvalidArgument, "initial state must be finite");

  TrajectoryRecord record;
  record.dt = config.dt;
  record.speed = limits.speed;
  const std::size_t steps = config.step_count();
  record.samples.reserve(steps + 1);

  VehicleState state = init;
  state.heading = wrap_angle(state.heading);
  double divergence_limit = 0.0;

  for (std::size_t k = 0; k <= steps; ++k) {
    const Vector2d position = state.position();
    const PathProjection<double> proj = project_onto_path(path, position);
    const double d = proj.cross_track;
    const double kappa = proj.curvature;

    if (k == 0) {
      record.initially_feasible = feasibility_check(d, kappa, profile).feasible;
      // A start on the path has no scale of its own; a full turning circle
      // is the largest excursion a recovering vehicle needs.
      divergence_limit = 100.0 * std::max(std::abs(d), 2.0 * limits.min_turn_radius);
    } else if (std::abs(d) > divergence_limit) {
      throw GuidanceError(ErrorKind::RunawayDivergence, "cross-track error exceeded 100x its initial scale");
    }

    const double l0 = lookahead(profile, d);
    const bool infeasible = !(1.0 + d * kappa > 0.0);
    const double advance = infeasible ? 0.0 : tangent_advance(l0, d, kappa, limits);
    const Vector2d los = tangent_point_at_offset(proj, advance) - position;
    const double heading_err = heading_error<double>(unit_from_angle(state.heading), los);
    const GuidanceCommand<double> cmd = command_from_los(l0, advance, los.norm(), heading_err, limits);

    double lyapunov = kNaN;
    if (!infeasible) lyapunov = lyapunov_value(d, heading_err, kappa, profile, limits).value;
    if (infeasible) ++record.infeasible_steps;

    record.samples.push_back(TrajectorySample{static_cast<double>(k) * config.dt, state.x, state.y, state.heading,
                                              d, heading_err, kappa, l0, cmd.los_length, cmd.saturation_boundary,
                                              cmd.region, cmd.lateral_accel, lyapunov, infeasible});
    if (k < steps) state = step(state, cmd.lateral_accel, limits, config.dt, config.integrator);
  }
  return record;
}

StabilityReport stability_diagnostics(const TrajectoryRecord& trajectory, const GuidanceLimits<double>& limits) {
  StabilityReport report;
  const auto& s = trajectory.samples;
  if (s.empty()) return report;
  const double dt = trajectory.dt;
  const double v = limits.speed;

  report.lyapunov_initial = s.front().lyapunov;
  report.rate_floor = v / (2.0 * limits.min_turn_radius);
  report.terminal_cross_track = std::abs(s.back().d);
  report.terminal_heading_error = std::abs(s.back().eta);

  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (s[k].region == Region::S1 && s[k + 1].region == Region::S1 && std::isfinite(s[k].lyapunov) &&
        std::isfinite(s[k + 1].lyapunov))
      report.max_lyapunov_increase = std::max(report.max_lyapunov_increase, s[k + 1].lyapunov - s[k].lyapunov);
  }

  const SaturationExit exit = saturation_exit(trajectory, limits);
  report.exit_time_measured = exit.measured;
  report.exit_time_bound = exit.bound;
  report.exited_saturation = exit.exited;

  std::size_t first_s1 = 0;
  while (first_s1 < s.size() && s[first_s1].region != Region::S1) ++first_s1;

  if (first_s1 >= 2) {
    double min_rate = std::numeric_limits<double>::infinity();
    double travelled = 0.0;
    for (std::size_t k = 0; k + 1 < first_s1; ++k) {
      const double rate = std::abs(wrap_angle(s[k + 1].eta - s[k].eta)) / dt;
      min_rate = std::min(min_rate, rate);
      travelled += rate * dt;
    }
    report.min_saturated_rate = min_rate;
    report.mean_saturated_rate = travelled / (static_cast<double>(first_s1 - 1) * dt);
  }

  const std::size_t phase_end = std::min(first_s1, s.size() - 1);
  for (std::size_t k = 0; k < phase_end; ++k)
    report.saturated_effort +=
        0.5 * dt * (s[k].lateral_accel * s[k].lateral_accel + s[k + 1].lateral_accel * s[k + 1].lateral_accel);
  const double accel_cap = limits.max_lateral_accel();
  report.saturated_effort_bound = accel_cap * accel_cap * static_cast<double>(phase_end) * dt;

  std::size_t run = 0;
  for (std::size_t k = first_s1 + 1; k < s.size(); ++k) {
    if (s[k].region != Region::S1) {
      if (run == 0) ++report.s1_reentries;
      ++run;
      report.longest_reentry = std::max(report.longest_reentry, run);
    } else {
      run = 0;
    }
  }

  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    if (s[k].infeasible || !(s[k].los_length > 0.0)) continue;
    const double d_rate = (s[k + 1].d - s[k - 1].d) / (2.0 * dt);
    const double eta1 = std::asin(std::clamp(s[k].d / s[k].los_length, -1.0, 1.0));
    report.decomposition_residual =
        std::max(report.decomposition_residual, std::abs(d_rate + v * std::sin(s[k].eta - eta1)) / v);
  }
  return report;
}

}  // namespace l0guide
