#include "elastica/elastica.h"

#include <cstring>
#include <string>

#include "curve.hpp"
#include "diagnostics.hpp"
#include "energy.hpp"
#include "flow.hpp"
#include "kernel.hpp"
#include "reparam.hpp"
#include "weaksolve.hpp"

// C boundary: opaque handles wrap the core value types; exceptions are
// translated to status codes with a thread-local message.

struct ela_curve {
  elastica::ClosedCurve value;
};
struct ela_trajectory {
  elastica::Trajectory value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
ela_status guarded(Fn&& fn) {
  try {
    fn();
    return ELA_OK;
  } catch (const elastica::NonImmersedError& e) {
    set_error(e.what());
    return ELA_ERR_NON_IMMERSED;
  } catch (const elastica::SingularGramianError& e) {
    set_error(e.what());
    return ELA_ERR_SINGULAR;
  } catch (const elastica::FactorizationError& e) {
    set_error(e.what());
    return ELA_ERR_SINGULAR;
  } catch (const elastica::InsufficientTailError& e) {
    set_error(e.what());
    return ELA_ERR_INSUFFICIENT_TAIL;
  } catch (const elastica::ParseError& e) {
    set_error(e.what());
    return ELA_ERR_PARSE;
  } catch (const elastica::IoError& e) {
    set_error(e.what());
    return ELA_ERR_IO;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return ELA_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ELA_ERR_INTERNAL;
  }
}

ela_status require(bool cond, const char* msg) {
  if (cond) return ELA_OK;
  set_error(msg);
  return ELA_ERR_INVALID_ARGUMENT;
}

elastica::GradientBackend to_backend(ela_backend_kind k) {
  return k == ELA_BACKEND_KERNEL ? elastica::GradientBackend::Kernel
                                 : elastica::GradientBackend::Weak;
}

}  // namespace

extern "C" {

const char* ela_version(void) { return "0.1.0"; }

const char* ela_last_error(void) { return g_last_error.c_str(); }

ela_status ela_curve_make_circle(double radius, int folds, int n, int dim, ela_curve** out) {
  if (ela_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new ela_curve{elastica::make_circle(radius, folds, n, dim)}; });
}

ela_status ela_curve_make_ellipse(double a, double b, int n, int dim, ela_curve** out) {
  if (ela_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new ela_curve{elastica::make_ellipse(a, b, n, dim)}; });
}

ela_status ela_curve_make_figure_eight(double scale, int n, int dim, ela_curve** out) {
  if (ela_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new ela_curve{elastica::make_figure_eight(scale, n, dim)}; });
}

ela_status ela_curve_make_fourier(uint64_t seed, double decay, int n, int dim, ela_curve** out) {
  if (ela_status s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new ela_curve{elastica::make_fourier_random(seed, decay, n, dim)}; });
}

ela_status ela_curve_load(const char* path, ela_curve** out) {
  if (ela_status s = require(out != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { *out = new ela_curve{elastica::load_curve(path)}; });
}

ela_status ela_curve_save(const ela_curve* curve, const char* path) {
  if (ela_status s = require(curve != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { elastica::save_curve(curve->value, path); });
}

int ela_curve_dim(const ela_curve* curve) { return curve ? curve->value.dim : 0; }

int ela_curve_samples(const ela_curve* curve) { return curve ? curve->value.samples() : 0; }

ela_status ela_curve_points(const ela_curve* curve, double* buffer) {
  if (ela_status s = require(curve != nullptr && buffer != nullptr, "null argument")) return s;
  const auto& pts = curve->value.points;
  for (int j = 0; j < pts.rows(); ++j)
    for (int c = 0; c < pts.cols(); ++c) *buffer++ = pts(j, c);
  return ELA_OK;
}

ela_status ela_curve_centroid(const ela_curve* curve, double* buffer) {
  if (ela_status s = require(curve != nullptr && buffer != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::CurveGeometry geom = elastica::geometry(curve->value);
    for (int c = 0; c < curve->value.dim; ++c)
      buffer[c] =
          elastica::integrate_ds(geom, elastica::Vec(curve->value.points.col(c))) / geom.length;
  });
}

ela_status ela_curve_project_arclength(const ela_curve* curve, ela_curve** out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::CurveGeometry geom = elastica::geometry(curve->value);
    *out = new ela_curve{elastica::project_arclength(curve->value, geom)};
  });
}

ela_status ela_curve_speed(const ela_curve* curve, double* buffer) {
  if (ela_status s = require(curve != nullptr && buffer != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::CurveGeometry geom = elastica::geometry(curve->value);
    for (int j = 0; j < geom.speed.size(); ++j) buffer[j] = geom.speed[j];
  });
}

void ela_curve_free(ela_curve* curve) { delete curve; }

ela_status ela_energy(const ela_curve* curve, double lambda, double* out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::CurveGeometry geom = elastica::geometry(curve->value);
    *out = elastica::energy(geom, elastica::EnergyParams(lambda));
  });
}

ela_status ela_curve_length(const ela_curve* curve, double* out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] { *out = elastica::geometry(curve->value).length; });
}

ela_status ela_grad_norm(const ela_curve* curve, double lambda, ela_backend_kind backend,
                         double* out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::FlowEval ev =
        elastica::evaluate_descent(curve->value, elastica::EnergyParams(lambda), to_backend(backend));
    *out = ev.grad_norm;
  });
}

ela_status ela_el_residual_norm(const ela_curve* curve, double lambda, double* out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::CurveGeometry geom = elastica::geometry(curve->value);
    *out = elastica::el_residual(geom, elastica::EnergyParams(lambda)).norm;
  });
}

void ela_flow_options_init(ela_flow_options* opts) {
  if (!opts) return;
  elastica::FlowConfig d;
  opts->lambda = d.lambda;
  opts->backend = ELA_BACKEND_WEAK;
  opts->integrator = ELA_INTEGRATOR_RK45;
  opts->dt = d.dt;
  opts->rel_tol = d.rel_tol;
  opts->abs_tol = d.abs_tol;
  opts->dt_min = d.dt_min;
  opts->dt_max = d.dt_max;
  opts->grad_tol = d.stop_grad_tol;
  opts->t_max = d.t_max;
  opts->snapshot_stride = d.snapshot_stride;
}

ela_status ela_flow_run(const ela_curve* curve, const ela_flow_options* opts,
                        ela_trajectory** out) {
  if (ela_status s = require(curve != nullptr && opts != nullptr && out != nullptr,
                             "null argument"))
    return s;
  return guarded([&] {
    elastica::FlowConfig cfg;
    cfg.lambda = opts->lambda;
    cfg.backend = to_backend(opts->backend);
    cfg.integrator = opts->integrator == ELA_INTEGRATOR_RK4 ? elastica::Integrator::FixedRk4
                                                            : elastica::Integrator::AdaptiveRk45;
    cfg.dt = opts->dt;
    cfg.rel_tol = opts->rel_tol;
    cfg.abs_tol = opts->abs_tol;
    cfg.dt_min = opts->dt_min;
    cfg.dt_max = opts->dt_max;
    cfg.stop_grad_tol = opts->grad_tol;
    cfg.t_max = opts->t_max;
    cfg.snapshot_stride = opts->snapshot_stride;
    *out = new ela_trajectory{elastica::run_flow(curve->value, cfg)};
  });
}

ela_status ela_l2_flow_run(const ela_curve* curve, double lambda, double dt, double t_max,
                           ela_trajectory** out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    *out = new ela_trajectory{
        elastica::run_l2_flow(curve->value, elastica::EnergyParams(lambda), dt, t_max)};
  });
}

long ela_trajectory_record_count(const ela_trajectory* traj) {
  return traj ? static_cast<long>(traj->value.records.size()) : 0;
}

ela_status ela_trajectory_record(const ela_trajectory* traj, long index, ela_flow_record* out) {
  if (ela_status s = require(traj != nullptr && out != nullptr, "null argument")) return s;
  if (ela_status s = require(index >= 0 && index < ela_trajectory_record_count(traj),
                             "record index out of range"))
    return s;
  const elastica::FlowRecord& r = traj->value.records[static_cast<size_t>(index)];
  out->t = r.t;
  out->energy = r.energy;
  out->grad_norm = r.grad_norm;
  out->dt = r.dt;
  out->cum_length = r.cum_length;
  return ELA_OK;
}

long ela_trajectory_snapshot_count(const ela_trajectory* traj) {
  return traj ? static_cast<long>(traj->value.snapshots.size()) : 0;
}

ela_status ela_trajectory_snapshot(const ela_trajectory* traj, long index, double* t,
                                   ela_curve** curve) {
  if (ela_status s = require(traj != nullptr && t != nullptr && curve != nullptr, "null argument"))
    return s;
  if (ela_status s = require(index >= 0 && index < ela_trajectory_snapshot_count(traj),
                             "snapshot index out of range"))
    return s;
  const auto& snap = traj->value.snapshots[static_cast<size_t>(index)];
  *t = snap.first;
  *curve = new ela_curve{snap.second};
  return ELA_OK;
}

ela_terminal_kind ela_trajectory_terminal(const ela_trajectory* traj) {
  if (!traj) return ELA_TERMINAL_STEP_FAILURE;
  switch (traj->value.terminal) {
    case elastica::Terminal::Converged: return ELA_TERMINAL_CONVERGED;
    case elastica::Terminal::TimeLimit: return ELA_TERMINAL_TIME_LIMIT;
    case elastica::Terminal::StepFailure: return ELA_TERMINAL_STEP_FAILURE;
  }
  return ELA_TERMINAL_STEP_FAILURE;
}

ela_status ela_trajectory_final_curve(const ela_trajectory* traj, ela_curve** out) {
  if (ela_status s = require(traj != nullptr && out != nullptr, "null argument")) return s;
  *out = new ela_curve{traj->value.final_curve};
  return ELA_OK;
}

ela_status ela_trajectory_save(const ela_trajectory* traj, const char* path) {
  if (ela_status s = require(traj != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { elastica::save_trajectory(traj->value, path); });
}

ela_status ela_trajectory_load(const char* path, ela_trajectory** out) {
  if (ela_status s = require(path != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new ela_trajectory{elastica::load_trajectory(path)}; });
}

void ela_trajectory_free(ela_trajectory* traj) { delete traj; }

ela_status ela_stability_probe(const ela_curve* curve, double lambda, int h2_flow,
                               ela_backend_kind backend, double dt, long max_steps,
                               ela_stability_row* out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::StabilityRow row =
        elastica::stability_probe(curve->value, elastica::EnergyParams(lambda), h2_flow != 0,
                                  to_backend(backend), dt, max_steps);
    out->dt = row.dt;
    out->survived_steps = row.survived_steps;
    out->final_energy = row.final_energy;
    out->survived = row.survived ? 1 : 0;
  });
}

ela_status ela_fit_lojasiewicz(const ela_trajectory* traj, ela_loja_fit* out) {
  if (ela_status s = require(traj != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::LojasiewiczFit fit = elastica::fit_lojasiewicz(traj->value);
    out->theta = fit.theta;
    out->z = fit.z;
    out->residual = fit.residual;
    out->e_inf = fit.e_inf;
    out->t_start = fit.t_start;
    out->t_end = fit.t_end;
    out->points = fit.points;
    out->reliable = fit.reliable ? 1 : 0;
  });
}

ela_status ela_classify_limit(const ela_curve* curve, double lambda, ela_limit_report* out) {
  if (ela_status s = require(curve != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    elastica::LimitReport rep =
        elastica::classify_limit(curve->value, elastica::EnergyParams(lambda));
    switch (rep.classification) {
      case elastica::LimitClass::Circle: out->classification = ELA_LIMIT_CIRCLE; break;
      case elastica::LimitClass::FigureEight: out->classification = ELA_LIMIT_FIGURE_EIGHT; break;
      case elastica::LimitClass::Unclassified: out->classification = ELA_LIMIT_UNCLASSIFIED; break;
    }
    out->radius = rep.radius;
    out->multiplicity = rep.multiplicity;
    out->rotation_index = rep.rotation_index;
    out->rotation_valid = rep.rotation_valid ? 1 : 0;
    out->curvature_mean = rep.curvature_mean;
    out->curvature_std = rep.curvature_std;
    out->stationarity_norm = rep.stationarity_norm;
  });
}

ela_status ela_invariance_audit(const ela_curve* curve, double lambda, uint64_t diffeo_seed,
                                const double* translation, ela_backend_kind backend,
                                ela_invariance_report* out) {
  if (ela_status s =
          require(curve != nullptr && translation != nullptr && out != nullptr, "null argument"))
    return s;
  return guarded([&] {
    elastica::Vec tr(curve->value.dim);
    for (int c = 0; c < curve->value.dim; ++c) tr[c] = translation[c];
    elastica::InvarianceReport rep = elastica::invariance_audit(
        curve->value, elastica::EnergyParams(lambda), diffeo_seed, tr, to_backend(backend));
    out->translation_energy_rel = rep.translation_energy_rel;
    out->translation_grad_rel = rep.translation_grad_rel;
    out->diffeo_energy_rel = rep.diffeo_energy_rel;
    out->diffeo_grad_rel = rep.diffeo_grad_rel;
  });
}

}  // extern "C"
