#include "flow.hpp"

#include <algorithm>
#include <cmath>

#include "kernel.hpp"
#include "weaksolve.hpp"

namespace elastica {

namespace {

// Accepted steps must not raise the energy beyond this absolute slack.
constexpr double kEnergyIncreaseTol = 1e-10;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 5179.0 / 57600.0, e3 = 7571.0 / 16695.0, e4 = 393.0 / 640.0,
                 e5 = -92097.0 / 339200.0, e6 = 187.0 / 2100.0, e7 = 1.0 / 40.0;

double scaled_error(const Mat& diff, const Mat& y_old, const Mat& y_new, double abs_tol,
                    double rel_tol) {
  double acc = 0.0;
  for (int j = 0; j < diff.rows(); ++j)
    for (int c = 0; c < diff.cols(); ++c) {
      double scale = abs_tol + rel_tol * std::max(std::abs(y_old(j, c)), std::abs(y_new(j, c)));
      double r = diff(j, c) / scale;
      acc += r * r;
    }
  return std::sqrt(acc / (diff.rows() * diff.cols()));
}

struct AttemptResult {
  bool ok = false;           // stages stayed immersed
  ClosedCurve curve;         // 5th-order solution
  FlowEval eval_new;         // descent evaluation at the new curve
  double error_estimate = 0.0;
};

AttemptResult rk45_attempt(const ClosedCurve& curve, const Mat& k1, const EnergyParams& params,
                           GradientBackend backend, double dt, double abs_tol, double rel_tol) {
  AttemptResult r;
  const Mat& y = curve.points;
  try {
    Mat k2 = evaluate_descent(ClosedCurve(curve.dim, y + dt * (a21 * k1)), params, backend).descent;
    Mat k3 = evaluate_descent(ClosedCurve(curve.dim, y + dt * (a31 * k1 + a32 * k2)), params,
                              backend).descent;
    Mat k4 = evaluate_descent(ClosedCurve(curve.dim, y + dt * (a41 * k1 + a42 * k2 + a43 * k3)),
                              params, backend).descent;
    Mat k5 = evaluate_descent(
                 ClosedCurve(curve.dim, y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)),
                 params, backend).descent;
    Mat k6 = evaluate_descent(ClosedCurve(curve.dim, y + dt * (a61 * k1 + a62 * k2 + a63 * k3 +
                                                               a64 * k4 + a65 * k5)),
                              params, backend).descent;
    Mat y5 = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    r.curve = ClosedCurve(curve.dim, y5);
    r.eval_new = evaluate_descent(r.curve, params, backend);  // FSAL stage
    const Mat& k7 = r.eval_new.descent;
    Mat y4 = y + dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    r.error_estimate = scaled_error(y5 - y4, y, y5, abs_tol, rel_tol);
    r.ok = true;
  } catch (const NonImmersedError&) {
    r.ok = false;
  }
  return r;
}

AttemptResult rk4_attempt(const ClosedCurve& curve, const Mat& k1, const EnergyParams& params,
                          GradientBackend backend, double dt) {
  AttemptResult r;
  const Mat& y = curve.points;
  try {
    Mat k2 = evaluate_descent(ClosedCurve(curve.dim, y + 0.5 * dt * k1), params, backend).descent;
    Mat k3 = evaluate_descent(ClosedCurve(curve.dim, y + 0.5 * dt * k2), params, backend).descent;
    Mat k4 = evaluate_descent(ClosedCurve(curve.dim, y + dt * k3), params, backend).descent;
    Mat y1 = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r.curve = ClosedCurve(curve.dim, y1);
    r.eval_new = evaluate_descent(r.curve, params, backend);
    r.ok = true;
  } catch (const NonImmersedError&) {
    r.ok = false;
  }
  return r;
}

}  // namespace

void FlowConfig::validate() const {
  if (lambda == 0.0) throw InvalidArgumentError("lambda must be nonzero");
  if (dt <= 0.0 || rel_tol <= 0.0 || abs_tol <= 0.0 || stop_grad_tol <= 0.0 || t_max <= 0.0)
    throw InvalidArgumentError("flow tolerances and limits must be positive");
  if (!(dt_min < dt_max) || dt_min <= 0.0)
    throw InvalidArgumentError("flow requires 0 < dt_min < dt_max");
  if (snapshot_stride < 1) throw InvalidArgumentError("snapshot stride must be >= 1");
}

FlowEval evaluate_descent(const ClosedCurve& curve, const EnergyParams& params,
                          GradientBackend backend) {
  CurveGeometry geom = geometry(curve);
  VectorField grad = (backend == GradientBackend::Kernel)
                         ? h2_gradient_kernel(curve, geom, params)
                         : h2_gradient_weak(curve, geom, params);
  FlowEval ev;
  ev.energy = energy(geom, params);
  ev.grad_norm = h2ds_norm(geom, grad);
  ev.descent = -grad.values;
  return ev;
}

StepResult step(const ClosedCurve& curve, const FlowConfig& config, double dt) {
  config.validate();
  if (dt < 0.0) throw InvalidArgumentError("dt must be nonnegative");
  if (dt == 0.0) return StepResult{curve, std::nullopt};
  EnergyParams params(config.lambda);
  Mat k1 = evaluate_descent(curve, params, config.backend).descent;
  if (config.integrator == Integrator::AdaptiveRk45) {
    AttemptResult r = rk45_attempt(curve, k1, params, config.backend, dt, config.abs_tol,
                                   config.rel_tol);
    if (!r.ok) throw NonImmersedError("integration stage left the immersion domain");
    return StepResult{std::move(r.curve), r.error_estimate};
  }
  AttemptResult r = rk4_attempt(curve, k1, params, config.backend, dt);
  if (!r.ok) throw NonImmersedError("integration stage left the immersion domain");
  return StepResult{std::move(r.curve), std::nullopt};
}

Trajectory run_flow(const ClosedCurve& initial, const FlowConfig& config) {
  config.validate();
  EnergyParams params(config.lambda);
  Trajectory traj;

  ClosedCurve curve = initial;
  FlowEval eval = evaluate_descent(curve, params, config.backend);
  double t = 0.0, cum = 0.0;
  long accepted = 0;
  traj.records.push_back({t, eval.energy, eval.grad_norm, 0.0, cum});

  if (eval.grad_norm <= config.stop_grad_tol) {
    traj.terminal = Terminal::Converged;
    traj.final_curve = curve;
    return traj;
  }

  double dt = std::clamp(config.dt, config.dt_min, config.dt_max);
  const bool adaptive = config.integrator == Integrator::AdaptiveRk45;

  while (true) {
    double remaining = config.t_max - t;
    if (remaining <= 1e-14 * config.t_max) {
      traj.terminal = Terminal::TimeLimit;
      break;
    }
    double dt_eff = std::min(dt, remaining);

    AttemptResult r = adaptive ? rk45_attempt(curve, eval.descent, params, config.backend, dt_eff,
                                              config.abs_tol, config.rel_tol)
                               : rk4_attempt(curve, eval.descent, params, config.backend, dt_eff);

    bool accept = r.ok;
    if (accept && adaptive && r.error_estimate > 1.0) accept = false;
    if (accept && r.eval_new.energy - eval.energy > kEnergyIncreaseTol) accept = false;

    if (!accept) {
      if (!adaptive) {
        traj.terminal = Terminal::StepFailure;
        traj.failure_reason = r.ok ? "energy increase or error growth at fixed step"
                                   : "immersion lost at fixed step";
        break;
      }
      double shrink = (r.ok && r.error_estimate > 1.0)
                          ? std::max(0.1, 0.9 * std::pow(r.error_estimate, -0.2))
                          : 0.5;
      double dt_new = dt_eff * shrink;
      if (dt_new < config.dt_min) {
        traj.terminal = Terminal::StepFailure;
        traj.failure_reason = "step size underflow";
        break;
      }
      dt = dt_new;
      continue;
    }

    if (accepted % config.snapshot_stride == 0) traj.snapshots.emplace_back(t, curve);
    ++accepted;
    cum += dt_eff * eval.grad_norm;
    t += dt_eff;
    curve = std::move(r.curve);
    eval = std::move(r.eval_new);
    traj.records.push_back({t, eval.energy, eval.grad_norm, dt_eff, cum});

    if (eval.grad_norm <= config.stop_grad_tol) {
      traj.terminal = Terminal::Converged;
      break;
    }

    if (adaptive) {
      double grow = (r.error_estimate > 0.0)
                        ? std::clamp(0.9 * std::pow(r.error_estimate, -0.2), 0.2, 5.0)
                        : 5.0;
      dt = std::clamp(dt_eff * grow, config.dt_min, config.dt_max);
    }
  }

  traj.final_curve = curve;
  return traj;
}

Trajectory run_l2_flow(const ClosedCurve& initial, const EnergyParams& params, double dt,
                       double t_max, int snapshot_stride) {
  if (dt <= 0.0 || t_max <= 0.0) throw InvalidArgumentError("l2 flow needs dt > 0 and t_max > 0");
  Trajectory traj;
  ClosedCurve curve = initial;

  auto eval_l2 = [&](const ClosedCurve& c) {
    CurveGeometry geom = geometry(c);
    VectorField g = l2_gradient(geom, params);
    double e = energy(geom, params);
    Vec dots = (g.values.array() * g.values.array()).rowwise().sum();
    double norm = std::sqrt(integrate_ds(geom, dots));
    return std::tuple<Mat, double, double>(-g.values, e, norm);
  };

  double t = 0.0, cum = 0.0;
  long accepted = 0;
  Mat descent;
  double e0, g0;
  std::tie(descent, e0, g0) = eval_l2(curve);
  traj.records.push_back({t, e0, g0, 0.0, cum});

  double e_prev = e0, g_prev = g0;
  while (t + 1e-14 * t_max < t_max) {
    double dt_eff = std::min(dt, t_max - t);
    Mat next_pts = curve.points + dt_eff * descent;
    if (!next_pts.allFinite()) {
      traj.terminal = Terminal::StepFailure;
      traj.failure_reason = "non-finite state (blow-up) at dt=" + std::to_string(dt);
      traj.final_curve = curve;
      return traj;
    }
    ClosedCurve next(curve.dim, std::move(next_pts));
    Mat d_new;
    double e_new, g_new;
    try {
      std::tie(d_new, e_new, g_new) = eval_l2(next);
    } catch (const NonImmersedError&) {
      traj.terminal = Terminal::StepFailure;
      traj.failure_reason = "immersion lost at dt=" + std::to_string(dt);
      traj.final_curve = curve;
      return traj;
    }
    if (!std::isfinite(e_new) || e_new - e_prev > kEnergyIncreaseTol) {
      traj.terminal = Terminal::StepFailure;
      traj.failure_reason = "energy increase (blow-up) at dt=" + std::to_string(dt);
      traj.final_curve = curve;
      return traj;
    }
    if (accepted % snapshot_stride == 0) traj.snapshots.emplace_back(t, curve);
    ++accepted;
    cum += dt_eff * g_prev;
    t += dt_eff;
    curve = std::move(next);
    descent = std::move(d_new);
    e_prev = e_new;
    g_prev = g_new;
    traj.records.push_back({t, e_new, g_new, dt_eff, cum});
  }
  traj.terminal = Terminal::TimeLimit;
  traj.final_curve = curve;
  return traj;
}

StabilityRow stability_probe(const ClosedCurve& curve, const EnergyParams& params, bool h2_flow,
                             GradientBackend backend, double dt, long max_steps) {
  StabilityRow row;
  row.method = h2_flow ? "h2" : "l2";
  row.samples = curve.samples();
  row.dt = dt;

  if (!h2_flow) {
    Trajectory traj = run_l2_flow(curve, params, dt, dt * max_steps);
    row.survived_steps = static_cast<long>(traj.records.size()) - 1;
    row.final_energy = traj.records.back().energy;
    row.survived = traj.terminal != Terminal::StepFailure;
    return row;
  }

  ClosedCurve state = curve;
  FlowEval eval = evaluate_descent(state, params, backend);
  double e_prev = eval.energy;
  long steps = 0;
  while (steps < max_steps) {
    AttemptResult r = rk4_attempt(state, eval.descent, params, backend, dt);
    if (!r.ok || !std::isfinite(r.eval_new.energy) ||
        r.eval_new.energy - e_prev > kEnergyIncreaseTol)
      break;
    state = std::move(r.curve);
    eval = std::move(r.eval_new);
    e_prev = eval.energy;
    ++steps;
  }
  row.survived_steps = steps;
  row.final_energy = e_prev;
  row.survived = steps == max_steps;
  return row;
}

std::vector<StabilityRow> stability_scan(const ClosedCurve& curve, const EnergyParams& params,
                                         GradientBackend backend,
                                         const std::vector<double>& h2_dts,
                                         const std::vector<double>& l2_dts, long max_steps) {
  std::vector<StabilityRow> rows;
  for (double dt : h2_dts) rows.push_back(stability_probe(curve, params, true, backend, dt, max_steps));
  for (double dt : l2_dts) rows.push_back(stability_probe(curve, params, false, backend, dt, max_steps));
  return rows;
}

}  // namespace elastica
