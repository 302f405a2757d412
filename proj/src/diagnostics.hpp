#ifndef ELASTICA_DIAGNOSTICS_HPP
#define ELASTICA_DIAGNOSTICS_HPP

#include <cstdint>

#include "energy.hpp"
#include "flow.hpp"

// Convergence analytics: Lojasiewicz exponent fitting on recorded
// trajectories, classification of flow limits, and invariance audits
// under reparametrisation and translation.

namespace elastica {

struct InsufficientTailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LojasiewiczFit {
  double theta = 0.0;    // fitted exponent, expected in (0,1)
  double z = 0.0;        // fitted prefactor
  double residual = 0.0; // rms residual of the log-log fit
  double e_inf = 0.0;    // limiting energy estimate (final record)
  double t_start = 0.0;
  double t_end = 0.0;
  int points = 0;
  bool reliable = false; // residual below the reporting threshold
};

// Least-squares fit of log ||grad|| = log Z + theta log(E - E_inf) over the
// tail window E - E_inf in [1e-10, 1e-3] * E(0). Requires >= 20 records in
// the window; this estimates the exponent empirically, nothing more.
LojasiewiczFit fit_lojasiewicz(const Trajectory& traj);

enum class LimitClass { Circle, FigureEight, Unclassified };

struct LimitReport {
  LimitClass classification = LimitClass::Unclassified;
  Vec center;                 // circle fit
  double radius = 0.0;        // mean distance to center
  int multiplicity = 0;       // cover count for circles
  int rotation_index = 0;     // planar winding of T (n = 2 only)
  bool rotation_valid = false;
  double curvature_mean = 0.0;  // ds-weighted stats of k
  double curvature_std = 0.0;
  double stationarity_norm = 0.0;  // Euler-Lagrange residual norm
};

LimitReport classify_limit(const ClosedCurve& curve, const EnergyParams& params);

struct InvarianceReport {
  double translation_energy_rel = 0.0;
  double translation_grad_rel = 0.0;
  double diffeo_energy_rel = 0.0;
  double diffeo_grad_rel = 0.0;
};

// Compares E and ||grad||_{H^2(ds)} before/after a seeded band-limited
// diffeomorphism of S^1 and a fixed translation.
InvarianceReport invariance_audit(const ClosedCurve& curve, const EnergyParams& params,
                                  std::uint64_t diffeo_seed, const Vec& translation,
                                  GradientBackend backend = GradientBackend::Weak);

// Orientation-preserving band-limited diffeomorphism of S^1 drawn from the
// seed; rejected and resampled while non-monotone.
Vec make_diffeo(std::uint64_t seed, int n);

// Resample the curve through the reparametrisation u -> phi_vals (N values).
ClosedCurve reparametrise(const ClosedCurve& curve, const Vec& phi_vals);

}  // namespace elastica

#endif
