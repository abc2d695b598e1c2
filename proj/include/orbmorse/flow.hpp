#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "orbmorse/critical.hpp"
#include "orbmorse/model.hpp"

namespace orbmorse {

enum class FlowFieldKind {
  NegGradient,
  PosGradient,
  // grad f / |grad f|^2: f increases at unit rate along the flow. Only valid
  // away from critical points; guarded by NearCriticalSingularity.
  UnitSpeedGradient,
};

// Near a sink the step controller parks the step size at the stability
// boundary and the state orbits the fixed point at the tolerance noise
// floor, so the defaults sit well below newton_tol for the convergence
// declaration to be reachable.
struct StepControl {
  double rtol = 1e-12;
  double atol = 1e-12;
  double max_step = 0.1;
  // When set, trajectory samples land exactly on multiples of sample_dt.
  std::optional<double> sample_dt;
};

struct Trajectory {
  enum class Terminal { Converged, MaxTimeReached, LeftDomain };

  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;  // wrapped into the chart
  std::vector<double> f_values;
  Terminal terminal = Terminal::MaxTimeReached;
  // Index into the certified set when terminal == Converged.
  int converged_to = -1;
};

// Adaptive 4th/5th-order integration of the chosen field from x0. With a
// certified critical set, a run terminates Converged as soon as the gradient
// norm drops under newton_tol within 10*orbit_tol of a certified point.
// Trajectories leaving |x|_inf > 10 on non-lattice charts stop as LeftDomain.
Trajectory integrate(const QuotientModel& model, const Eigen::VectorXd& x0, FlowFieldKind field,
                     double t_max, const StepControl& control = {},
                     const std::vector<CriticalPointData>* certified = nullptr);

// Max deviation of the finite-difference derivative of f along the trajectory
// from 1; meaningful for UnitSpeedGradient runs.
double verify_unit_speed(const Trajectory& traj);

// Integrates from g*x0 and from x0, then compares phi_t(g*x0) with
// g*phi_t(x0) at matched sample times; returns the max chart distance.
double verify_equivariance(const QuotientModel& model, const Eigen::VectorXd& x0, int g,
                           FlowFieldKind field, double t_max, const StepControl& control = {});

struct BasinCensus {
  std::map<int, int> hits;  // certified point index -> trajectories ending there
  int non_converged = 0;
  int total = 0;
};

// Negative-gradient runs from uniform random seeds, tallied by terminal
// critical point.
BasinCensus basin_census(const QuotientModel& model,
                         const std::vector<CriticalPointData>& certified, int seed_count,
                         unsigned long long rng_seed, double t_max = 50.0);

}  // namespace orbmorse
