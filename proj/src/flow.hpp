#ifndef ELASTICA_FLOW_HPP
#define ELASTICA_FLOW_HPP

#include <optional>
#include <vector>

#include "curve.hpp"
#include "energy.hpp"

// Time integration of gamma_t = -grad E with the H^2(ds) gradient, plus
// the explicit L^2(ds) flow used as the stiffness baseline. No
// reparametrisation is applied during the flow.

namespace elastica {

enum class GradientBackend { Kernel, Weak };
enum class Integrator { FixedRk4, AdaptiveRk45 };
enum class Terminal { Converged, TimeLimit, StepFailure };

struct FlowConfig {
  double lambda = 1.0;
  GradientBackend backend = GradientBackend::Weak;
  Integrator integrator = Integrator::AdaptiveRk45;
  double dt = 1e-2;        // fixed step, or initial step for the adaptive run
  double rel_tol = 1e-8;   // adaptive error control
  double abs_tol = 1e-10;
  double dt_min = 1e-12;
  double dt_max = 1.0;
  double stop_grad_tol = 1e-6;  // H^2(ds) norm of the gradient
  double t_max = 1e4;
  int snapshot_stride = 25;

  void validate() const;
};

struct FlowRecord {
  double t = 0.0;
  double energy = 0.0;
  double grad_norm = 0.0;  // H^2(ds) norm (L^2(ds) for the explicit flow)
  double dt = 0.0;         // step that produced this record
  double cum_length = 0.0; // discrete trajectory length sum dt * ||grad||
};

struct Trajectory {
  std::vector<FlowRecord> records;
  std::vector<std::pair<double, ClosedCurve>> snapshots;
  Terminal terminal = Terminal::TimeLimit;
  ClosedCurve final_curve;
  std::string failure_reason;
};

// Evaluate the configured gradient; returns the descent field F = -grad E
// together with the energy and gradient norm at the curve.
struct FlowEval {
  Mat descent;
  double energy = 0.0;
  double grad_norm = 0.0;
};
FlowEval evaluate_descent(const ClosedCurve& curve, const EnergyParams& params,
                          GradientBackend backend);

// One explicit step of the configured scheme; the error estimate is empty
// for the fixed-step integrator. Throws NonImmersedError if any stage
// leaves the immersion domain.
struct StepResult {
  ClosedCurve curve;
  std::optional<double> error_estimate;  // scaled; <= 1 accepts
};
StepResult step(const ClosedCurve& curve, const FlowConfig& config, double dt);

Trajectory run_flow(const ClosedCurve& curve, const FlowConfig& config);

// Explicit Euler integration of gamma_t = -nabla E (the 4th-order L^2(ds)
// gradient). Conditionally stable, dt = O((L/N)^4); blow-up is reported as
// StepFailure, which is expected data for large dt.
Trajectory run_l2_flow(const ClosedCurve& curve, const EnergyParams& params, double dt,
                       double t_max, int snapshot_stride = 1 << 30);

// Fixed-step survival probe used by the stability benchmark.
struct StabilityRow {
  std::string method;  // "h2" or "l2"
  int samples = 0;
  double dt = 0.0;
  long survived_steps = 0;
  double final_energy = 0.0;
  bool survived = false;
};
StabilityRow stability_probe(const ClosedCurve& curve, const EnergyParams& params,
                             bool h2_flow, GradientBackend backend, double dt, long max_steps);
std::vector<StabilityRow> stability_scan(const ClosedCurve& curve, const EnergyParams& params,
                                         GradientBackend backend,
                                         const std::vector<double>& h2_dts,
                                         const std::vector<double>& l2_dts, long max_steps);

// Trajectory stream format (one structured-text record per line, curve
// snapshots embedded as curve documents).
std::string trajectory_to_string(const Trajectory& traj);
Trajectory trajectory_from_string(const std::string& text);
void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

}  // namespace elastica

#endif
