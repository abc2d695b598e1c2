#include "orbmorse/flow.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orbmorse/errors.hpp"
#include "orbmorse/parallel.hpp"

namespace orbmorse {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct FieldEval {
  Eigen::VectorXd velocity;
  double grad_norm;
};

FieldEval eval_field(const QuotientModel& model, FlowFieldKind field, const Eigen::VectorXd& x) {
  Eigen::VectorXd g = model.function().gradient(x);
  double norm2 = g.squaredNorm();
  switch (field) {
    case FlowFieldKind::NegGradient:
      return {-g, std::sqrt(norm2)};
    case FlowFieldKind::PosGradient:
      return {g, std::sqrt(norm2)};
    case FlowFieldKind::UnitSpeedGradient:
      if (norm2 < 1e-4)
        throw NearCriticalSingularity("gradient too small for the unit-speed field, |grad|^2 = " +
                                      std::to_string(norm2));
      return {g / norm2, std::sqrt(norm2)};
  }
  throw DomainError("unknown flow field");
}

int nearest_certified(const QuotientModel& model, const std::vector<CriticalPointData>& certified,
                      const Eigen::VectorXd& x, double radius) {
  for (std::size_t i = 0; i < certified.size(); ++i)
    if (certified[i].location &&
        model.distance(x, *certified[i].location) < radius)
      return static_cast<int>(i);
  return -1;
}

}  // namespace

Trajectory integrate(const QuotientModel& model, const Eigen::VectorXd& x0, FlowFieldKind field,
                     double t_max, const StepControl& control,
                     const std::vector<CriticalPointData>* certified) {
  if (x0.size() != model.dim()) throw FileFormatError("start point dimension mismatch");
  const double newton_tol = model.tolerances().newton_tol;
  const double converge_radius = 10.0 * model.tolerances().orbit_tol;

  Trajectory traj;
  Eigen::VectorXd y = x0;
  double t = 0.0;
  double h = std::min(control.max_step, 1e-2);
  double next_sample = control.sample_dt ? *control.sample_dt : 0.0;

  auto record = [&](double time, const Eigen::VectorXd& state) {
    traj.times.push_back(time);
    traj.states.push_back(model.wrap(state));
    traj.f_values.push_back(model.function().eval(state));
  };
  record(t, y);

  while (t < t_max) {
    FieldEval f1 = eval_field(model, field, y);

    if (certified && f1.grad_norm < newton_tol) {
      int hit = nearest_certified(model, *certified, y, converge_radius);
      if (hit >= 0) {
        traj.terminal = Trajectory::Terminal::Converged;
        traj.converged_to = hit;
        if (traj.times.back() != t) record(t, y);
        return traj;
      }
    }
    if (!model.lattice() && y.cwiseAbs().maxCoeff() > 10.0) {
      traj.terminal = Trajectory::Terminal::LeftDomain;
      if (traj.times.back() != t) record(t, y);
      return traj;
    }

    double h_try = std::min(h, t_max - t);
    if (control.sample_dt && next_sample - t > 1e-14) h_try = std::min(h_try, next_sample - t);
    if (h_try < 1e-14 * std::max(1.0, std::abs(t)))
      throw StepFailure("step size underflow at t = " + std::to_string(t));

    const Eigen::VectorXd& k1 = f1.velocity;
    Eigen::VectorXd k2 = eval_field(model, field, y + h_try * (a21 * k1)).velocity;
    Eigen::VectorXd k3 = eval_field(model, field, y + h_try * (a31 * k1 + a32 * k2)).velocity;
    Eigen::VectorXd k4 =
        eval_field(model, field, y + h_try * (a41 * k1 + a42 * k2 + a43 * k3)).velocity;
    Eigen::VectorXd k5 =
        eval_field(model, field, y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).velocity;
    Eigen::VectorXd k6 =
        eval_field(model, field,
                   y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5))
            .velocity;
    Eigen::VectorXd y5 = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Eigen::VectorXd k7 = eval_field(model, field, y5).velocity;
    Eigen::VectorXd err =
        h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double scale2 = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      double w = control.atol + control.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      double q = err[i] / w;
      scale2 += q * q;
    }
    double err_norm = std::sqrt(scale2 / y.size());

    if (err_norm <= 1.0) {
      t += h_try;
      y = std::move(y5);
      if (!control.sample_dt) {
        record(t, y);
      } else if (std::abs(t - next_sample) < 1e-12) {
        record(t, y);
        next_sample += *control.sample_dt;
      }
    }
    double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
    h = std::min(h_try * std::clamp(factor, 0.2, 5.0), control.max_step);
  }

  traj.terminal = Trajectory::Terminal::MaxTimeReached;
  if (traj.times.back() != t) record(t, y);
  return traj;
}

double verify_unit_speed(const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < traj.times.size(); ++k) {
    double dt = traj.times[k + 1] - traj.times[k - 1];
    if (dt <= 0.0) continue;
    double deriv = (traj.f_values[k + 1] - traj.f_values[k - 1]) / dt;
    worst = std::max(worst, std::abs(deriv - 1.0));
  }
  return worst;
}

double verify_equivariance(const QuotientModel& model, const Eigen::VectorXd& x0, int g,
                           FlowFieldKind field, double t_max, const StepControl& control) {
  StepControl sampled = control;
  if (!sampled.sample_dt) sampled.sample_dt = t_max / 256.0;
  const AffineIsometry& iso = model.group().element(g);

  Trajectory moved = integrate(model, iso.apply(x0), field, t_max, sampled);
  Trajectory base = integrate(model, x0, field, t_max, sampled);

  double worst = 0.0;
  std::size_t common = std::min(moved.states.size(), base.states.size());
  for (std::size_t k = 0; k < common; ++k)
    worst = std::max(worst, model.distance(moved.states[k], iso.apply(base.states[k])));
  return worst;
}

BasinCensus basin_census(const QuotientModel& model,
                         const std::vector<CriticalPointData>& certified, int seed_count,
                         unsigned long long rng_seed, double t_max) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Eigen::VectorXd> seeds;
  seeds.reserve(seed_count);
  for (int s = 0; s < seed_count; ++s) {
    Eigen::VectorXd x(model.dim());
    for (int i = 0; i < model.dim(); ++i) {
      double u = unif(rng);
      x[i] = model.lattice() ? u : -3.0 + 6.0 * u;
    }
    seeds.push_back(std::move(x));
  }

  std::vector<int> landed(seeds.size(), -1);
  parallel_for(static_cast<int>(seeds.size()), [&](int i) {
    Trajectory traj =
        integrate(model, seeds[i], FlowFieldKind::NegGradient, t_max, {}, &certified);
    if (traj.terminal == Trajectory::Terminal::Converged) landed[i] = traj.converged_to;
  });

  BasinCensus census;
  census.total = seed_count;
  for (int hit : landed) {
    if (hit < 0)
      ++census.non_converged;
    else
      ++census.hits[hit];
  }
  return census;
}

}  // namespace orbmorse
