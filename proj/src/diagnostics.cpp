#include "diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kernel.hpp"
#include "weaksolve.hpp"

namespace elastica {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Circle gate: relative curvature spread plus a stationarity certificate.
constexpr double kCircleCurvatureSpread = 1e-2;
constexpr double kStationarityThreshold = 1e-2;
constexpr double kFitResidualThreshold = 0.1;
}  // namespace

LojasiewiczFit fit_lojasiewicz(const Trajectory& traj) {
  if (traj.terminal != Terminal::Converged)
    throw InsufficientTailError("trajectory did not converge; no tail to fit");
  const auto& rec = traj.records;
  const double e_inf = rec.back().energy;
  // Window scale: the initial energy gap, i.e. the decay range of the run.
  const double gap0 = rec.front().energy - e_inf;
  if (gap0 <= 0.0) throw InsufficientTailError("no energy decay to fit");

  // The limiting energy is the final record, so the last decade of
  // E - E_inf is contaminated and excluded from the window.
  double gap_min = gap0;
  for (const FlowRecord& r : rec) {
    double gap = r.energy - e_inf;
    if (gap > 0.0) gap_min = std::min(gap_min, gap);
  }
  const double lo = std::max(1e-10 * gap0, 10.0 * gap_min);
  const double hi = 1e-3 * gap0;

  std::vector<double> lx, ly, ts;
  for (const FlowRecord& r : rec) {
    double gap = r.energy - e_inf;
    if (gap >= lo && gap <= hi && r.grad_norm > 0.0) {
      lx.push_back(std::log(gap));
      ly.push_back(std::log(r.grad_norm));
      ts.push_back(r.t);
    }
  }
  if (lx.size() < 20)
    throw InsufficientTailError("fewer than 20 records in the fit window");

  const int m = static_cast<int>(lx.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  LojasiewiczFit fit;
  fit.theta = sxy / sxx;
  double intercept = my - fit.theta * mx;
  fit.z = std::exp(intercept);
  double ss = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = ly[i] - (intercept + fit.theta * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  fit.e_inf = e_inf;
  fit.t_start = ts.front();
  fit.t_end = ts.back();
  fit.points = m;
  fit.reliable = fit.residual < kFitResidualThreshold;
  return fit;
}

LimitReport classify_limit(const ClosedCurve& curve, const EnergyParams& params) {
  CurveGeometry geom = geometry(curve);
  LimitReport rep;

  Vec k = geom.ksq.cwiseSqrt();
  double mean_k = integrate_ds(geom, k) / geom.length;
  Vec dev = (k.array() - mean_k).square();
  double std_k = std::sqrt(integrate_ds(geom, dev) / geom.length);
  rep.curvature_mean = mean_k;
  rep.curvature_std = std_k;
  rep.stationarity_norm = el_residual(geom, params).norm;

  // ds-weighted centroid and mean radius.
  rep.center = Vec::Zero(curve.dim);
  for (int c = 0; c < curve.dim; ++c)
    rep.center[c] = integrate_ds(geom, Vec(curve.points.col(c))) / geom.length;
  Vec dist(curve.samples());
  for (int j = 0; j < curve.samples(); ++j)
    dist[j] = (curve.points.row(j).transpose() - rep.center).norm();
  rep.radius = integrate_ds(geom, dist) / geom.length;

  if (curve.dim == 2) {
    // Winding number of T: (1/2pi) int (T x T') du.
    Mat tp = differentiate(geom.tangent, 1);
    double w = 0.0;
    for (int j = 0; j < curve.samples(); ++j)
      w += geom.tangent(j, 0) * tp(j, 1) - geom.tangent(j, 1) * tp(j, 0);
    w /= curve.samples() * kTwoPi;
    rep.rotation_index = static_cast<int>(std::lround(w));
    rep.rotation_valid = std::abs(w - rep.rotation_index) < 0.05;
  }

  bool circle_like = mean_k > 0.0 && std_k / mean_k < kCircleCurvatureSpread &&
                     rep.stationarity_norm < kStationarityThreshold;
  if (circle_like) {
    rep.classification = LimitClass::Circle;
    rep.multiplicity = std::max(1, static_cast<int>(std::lround(mean_k * geom.length / kTwoPi)));
  } else if (curve.dim == 2 && rep.rotation_valid && rep.rotation_index == 0) {
    rep.classification = LimitClass::FigureEight;
  } else {
    rep.classification = LimitClass::Unclassified;
  }
  return rep;
}

Vec make_diffeo(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 50; ++attempt) {
    // Band-limited periodic displacement; scaled until phi' > 0.
    constexpr int kModes = 4;
    double a[kModes], b[kModes];
    double norm = 0.0;
    for (int k = 0; k < kModes; ++k) {
      a[k] = gauss(rng);
      b[k] = gauss(rng);
      norm += kTwoPi * (k + 1) * (std::abs(a[k]) + std::abs(b[k]));
    }
    double scale = 0.5 / norm;  // |psi'| <= 0.5
    Vec vals(n);
    bool monotone = true;
    double prev = -1.0;
    for (int j = 0; j <= n; ++j) {
      double u = static_cast<double>(j % n) / n + (j == n ? 1.0 : 0.0);
      double v = u;
      for (int k = 0; k < kModes; ++k)
        v += scale * (a[k] * std::sin(kTwoPi * (k + 1) * u) +
                      b[k] * (std::cos(kTwoPi * (k + 1) * u) - 1.0));
      if (j < n) vals[j] = v;
      if (v <= prev) {
        monotone = false;
        break;
      }
      prev = v;
    }
    if (monotone) return vals;
  }
  throw InvalidArgumentError("failed to draw a monotone diffeomorphism");
}

ClosedCurve reparametrise(const ClosedCurve& curve, const Vec& phi_vals) {
  if (phi_vals.size() != curve.samples())
    throw DimensionError("diffeomorphism sample count does not match the curve");
  TrigCurve interp(curve.points);
  Mat pts(curve.samples(), curve.dim);
  for (int j = 0; j < curve.samples(); ++j) pts.row(j) = interp.value(phi_vals[j]);
  return ClosedCurve(curve.dim, std::move(pts));
}

InvarianceReport invariance_audit(const ClosedCurve& curve, const EnergyParams& params,
                                  std::uint64_t diffeo_seed, const Vec& translation,
                                  GradientBackend backend) {
  if (translation.size() != curve.dim)
    throw DimensionError("translation vector does not match the curve dimension");

  auto measure = [&](const ClosedCurve& c) {
    CurveGeometry geom = geometry(c);
    VectorField g = (backend == GradientBackend::Kernel) ? h2_gradient_kernel(c, geom, params)
                                                         : h2_gradient_weak(c, geom, params);
    return std::pair<double, double>(energy(geom, params), h2ds_norm(geom, g));
  };

  auto [e0, g0] = measure(curve);

  ClosedCurve shifted(curve.dim, curve.points.rowwise() + translation.transpose());
  auto [e_t, g_t] = measure(shifted);

  ClosedCurve warped = reparametrise(curve, make_diffeo(diffeo_seed, curve.samples()));
  auto [e_d, g_d] = measure(warped);

  InvarianceReport rep;
  rep.translation_energy_rel = std::abs(e_t - e0) / std::abs(e0);
  rep.translation_grad_rel = std::abs(g_t - g0) / std::max(g0, 1e-300);
  rep.diffeo_energy_rel = std::abs(e_d - e0) / std::abs(e0);
  rep.diffeo_grad_rel = std::abs(g_d - g0) / std::max(g0, 1e-300);
  return rep;
}

}  // namespace elastica
