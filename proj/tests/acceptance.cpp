// Acceptance suite: one pass/fail line per criterion, pinned tolerances.
// Exit code is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "energy.hpp"
#include "fixtures.hpp"
#include "flow.hpp"
#include "kernel.hpp"
#include "reparam.hpp"
#include "weaksolve.hpp"

using namespace elastica;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int g_failed = 0;

void line(int criterion, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] %2d. %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!ok) ++g_failed;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

VectorField gradient(const ClosedCurve& c, const CurveGeometry& g, const EnergyParams& p,
                     GradientBackend backend) {
  return backend == GradientBackend::Kernel ? h2_gradient_kernel(c, g, p)
                                            : h2_gradient_weak(c, g, p);
}

// ---- 1, 8, 12 share the reference flow run ------------------------------

Trajectory reference_run() {
  FlowConfig cfg;
  cfg.lambda = 1.0;
  cfg.backend = GradientBackend::Weak;
  cfg.integrator = Integrator::AdaptiveRk45;
  cfg.stop_grad_tol = 1e-6;
  cfg.t_max = 1e4;
  cfg.snapshot_stride = 10;
  return run_flow(make_ellipse(1.3, 0.7, 128, 2), cfg);
}

void criterion_1(const Trajectory& traj) {
  bool converged = traj.terminal == Terminal::Converged;
  LimitReport rep = classify_limit(traj.final_curve, EnergyParams(1.0));
  bool circle = rep.classification == LimitClass::Circle;
  double radius_err = std::abs(rep.radius - 1.0);
  double spread = rep.curvature_std / rep.curvature_mean;
  line(1, converged && circle && radius_err <= 1e-3 && spread <= 1e-3,
       "limiting radius: ellipse flow converges to the unit circle",
       "radius err " + fmt(radius_err) + ", curvature spread " + fmt(spread));
}

void criterion_2() {
  bool ok = true;
  double worst_grad = 0.0, worst_res = 0.0;
  for (double lambda : {0.5, 1.0, 2.0}) {
    EnergyParams p(lambda);
    ClosedCurve c = make_circle(1.0 / std::abs(lambda), 1, 256, 2);
    CurveGeometry g = geometry(c);
    for (GradientBackend b : {GradientBackend::Kernel, GradientBackend::Weak}) {
      double gn = h2ds_norm(g, gradient(c, g, p, b));
      worst_grad = std::max(worst_grad, gn);
      ok = ok && gn <= 1e-6;
    }
    double rn = el_residual(g, p).norm;
    worst_res = std::max(worst_res, rn);
    ok = ok && rn <= 1e-6;
  }
  line(2, ok, "stationarity certificates at radius 1/|lambda|",
       "worst grad " + fmt(worst_grad) + ", worst residual " + fmt(worst_res));
}

void criterion_3() {
  EnergyParams p(1.3);
  bool ok = true;
  double worst = 0.0;
  for (const auto& fx : fixtures::family(256)) {
    CurveGeometry g = geometry(fx.curve);
    VectorField gw = h2_gradient_weak(fx.curve, g, p);
    VectorField gk = h2_gradient_kernel(fx.curve, g, p);
    VectorField diff{gw.values - gk.values};
    double rel = h2ds_norm(g, diff) / std::max(h2ds_norm(g, gw), 1e-12);
    worst = std::max(worst, rel);
    ok = ok && rel <= 1e-5;
  }
  auto diff_at = [&](int n) {
    ClosedCurve c = make_ellipse(1.3, 0.7, n, 2);
    CurveGeometry g = geometry(c);
    VectorField gw = h2_gradient_weak(c, g, p);
    VectorField gk = h2_gradient_kernel(c, g, p);
    VectorField diff{gw.values - gk.values};
    return h2ds_norm(g, diff) / h2ds_norm(g, gw);
  };
  double order = std::log2(diff_at(64) / diff_at(128));
  ok = ok && order >= 3.0;
  line(3, ok, "backend equivalence over the fixture family",
       "worst rel diff " + fmt(worst) + ", empirical order " + fmt(order));
}

void criterion_4() {
  EnergyParams p(1.3);
  bool ok = true;
  double worst = 0.0;
  for (const auto& fx : fixtures::family(256)) {
    CurveGeometry g = geometry(fx.curve);
    for (GradientBackend b : {GradientBackend::Kernel, GradientBackend::Weak}) {
      VectorField grad = gradient(fx.curve, g, p, b);
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        VectorField v = fixtures::random_field(seed, 256, 2, 16);
        double defect = std::abs(h2ds_inner(g, grad, v) - first_variation(g, p, v));
        double rel = defect / h2_param_norm(v);
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-6;
      }
    }
  }
  line(4, ok, "Riesz identity <grad, v> = dE(v) for random variations",
       "worst defect/||v|| " + fmt(worst));
}

void criterion_5() {
  EnergyParams p(1.3);
  bool ok = true;
  double worst = 0.0;
  for (const auto& fx : fixtures::family(256)) {
    CurveGeometry g = geometry(fx.curve);
    Mat nabla = l2_gradient(g, p).values;
    double den = std::sqrt(integrate_ds(g, Vec(nabla.array().square().rowwise().sum())));
    for (GradientBackend b : {GradientBackend::Kernel, GradientBackend::Weak}) {
      VectorField grad = gradient(fx.curve, g, p, b);
      Mat g1 = arc_derivative(g, grad.values);
      Mat g2 = arc_derivative(g, g1);
      Mat g3 = arc_derivative(g, g2);
      Mat g4 = arc_derivative(g, g3);
      Mat strong = g4 - g2 + grad.values;
      double num =
          std::sqrt(integrate_ds(g, Vec((strong - nabla).array().square().rowwise().sum())));
      double rel = num / den;
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-4;
    }
  }
  line(5, ok, "strong-form operator residual matches the l2 gradient",
       "worst rel residual " + fmt(worst));
}

void criterion_6() {
  bool ok = true;
  std::string detail;

  GreensKernel k = make_kernel(kTwoPi);
  bool sym = true, per = true;
  for (double s : {0.3, 2.1, 5.0})
    for (double t : {0.9, 3.7, 6.1}) sym = sym && green(k, s, t) == green(k, t, s);
  for (double t : {0.4, 2.8, 5.9}) per = per && std::abs(green(k, 0.0, t) - green(k, k.length, t)) <= 1e-10;
  ok = ok && sym && per;

  double worst_row = 0.0;
  for (double L : {1.0, kTwoPi, 12.0}) {
    GreensKernel kk = make_kernel(L);
    for (double s : {0.0, 0.31 * L, 0.77 * L}) {
      double acc = 0.0;
      for (int j = 0; j < 512; ++j) acc += green(kk, s, L * j / 512) * (L / 512);
      worst_row = std::max(worst_row, std::abs(acc - 1.0));
    }
  }
  ok = ok && worst_row <= 1e-8;

  double worst_mult = 0.0;
  const int n = 512;
  for (int mode = 1; mode <= n / 8; mode *= 2) {
    double w = mode;  // L = 2 pi, so omega = mode
    double mult = 1.0 / (w * w * w * w + w * w + 1.0);
    for (int i = 0; i < n; i += 53) {
      double s = kTwoPi * i / n;
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        double t = kTwoPi * j / n;
        acc += green(k, s, t) * std::cos(mode * t) * (kTwoPi / n);
      }
      worst_mult = std::max(worst_mult, std::abs(acc - mult * std::cos(mode * s)));
    }
  }
  ok = ok && worst_mult <= 1e-7;

  double worst_jump = 0.0;
  for (double L : {1.0, kTwoPi, 50.0})
    worst_jump = std::max(worst_jump, std::abs(jump_check(make_kernel(L)) - 1.0));
  ok = ok && worst_jump <= 1e-10;

  line(6, ok, "Green's kernel suite: symmetry, periodicity, row sum, multiplier, jump",
       "row " + fmt(worst_row) + ", mult " + fmt(worst_mult) + ", jump " + fmt(worst_jump));
}

void criterion_7() {
  ClosedCurve c = make_ellipse(1.3, 0.7, 96, 2);
  EnergyParams p(1.0);
  CurveGeometry g = geometry(c);
  VectorField v = fixtures::random_field(3, 96, 2, 8);
  VectorField w = fixtures::random_field(53, 96, 2, 8);
  auto displaced = [&](const VectorField& dir, double eps) {
    return ClosedCurve(2, c.points + eps * dir.values);
  };

  double dE = first_variation(g, p, v);
  auto dE_defect = [&](double e) {
    CurveGeometry gp = geometry(displaced(v, e));
    CurveGeometry gm = geometry(displaced(v, -e));
    return std::abs((energy(gp, p) - energy(gm, p)) / (2.0 * e) - dE);
  };
  double r_dE = dE_defect(2e-4) / dE_defect(1e-4);

  double dJ = j_variation(c, g, p, v);
  auto j_at = [&](const ClosedCurve& cc) {
    CurveGeometry gg = geometry(cc);
    return j_functional(cc, gg, p);
  };
  auto dJ_defect = [&](double e) {
    return std::abs((j_at(displaced(v, e)) - j_at(displaced(v, -e))) / (2.0 * e) - dJ);
  };
  double r_dJ = dJ_defect(2e-4) / dJ_defect(1e-4);

  double d2 = second_variation(g, p, v, w);
  double d2_sym = std::abs(d2 - second_variation(g, p, w, v));
  auto d2_fd = [&](double e) {
    return (first_variation(geometry(displaced(w, e)), p, v) -
            first_variation(geometry(displaced(w, -e)), p, v)) /
           (2.0 * e);
  };
  double d2_match = std::abs(d2_fd(1e-5) - d2) / std::max(1.0, std::abs(d2));

  bool ok = r_dE > 3.4 && r_dE < 4.6 && r_dJ > 3.4 && r_dJ < 4.6 &&
            d2_sym <= 1e-10 * std::max(1.0, std::abs(d2)) && d2_match <= 1e-4;
  line(7, ok, "variation calculus: dE, dJ, d2E against central differences",
       "ratios " + fmt(r_dE) + "/" + fmt(r_dJ) + ", d2E sym " + fmt(d2_sym));
}

void criterion_8(const Trajectory& traj) {
  const auto& r = traj.records;
  bool mono = true, dissip = true;
  double worst_de = -1e300;
  for (size_t i = 1; i < r.size(); ++i) {
    worst_de = std::max(worst_de, r[i].energy - r[i - 1].energy);
    if (r[i].energy - r[i - 1].energy > 1e-10) mono = false;
  }
  // Per-step dissipation at the trapezoid order, bound estimated from the
  // recorded second differences of ||grad||^2.
  for (size_t i = 2; i + 1 < r.size(); ++i) {
    double dt = r[i].dt;
    double g2a = r[i - 1].grad_norm * r[i - 1].grad_norm;
    double g2b = r[i].grad_norm * r[i].grad_norm;
    double lhs = std::abs(r[i].energy - r[i - 1].energy + 0.5 * dt * (g2a + g2b));
    double t0 = r[i - 2].t, t1 = r[i - 1].t, t2 = r[i].t;
    double y0 = r[i - 2].grad_norm * r[i - 2].grad_norm;
    double dd = 2.0 * (y0 / ((t0 - t1) * (t0 - t2)) + g2a / ((t1 - t0) * (t1 - t2)) +
                       g2b / ((t2 - t0) * (t2 - t1)));
    double bound = 50.0 * std::abs(dd) * dt * dt * dt / 12.0 + 1e-10 * (1.0 + r[0].energy);
    if (lhs > bound) dissip = false;
  }
  double total = 0.0;
  for (size_t i = 1; i < r.size(); ++i) {
    double g2a = r[i - 1].grad_norm * r[i - 1].grad_norm;
    double g2b = r[i].grad_norm * r[i].grad_norm;
    total += 0.5 * r[i].dt * (g2a + g2b);
  }
  bool budget = total <= r.front().energy;
  line(8, mono && dissip && budget, "energy monotonicity and dissipation budget",
       "max dE " + fmt(worst_de) + ", int ||g||^2 dt = " + fmt(total) + " <= E0 " +
           fmt(r.front().energy));
}

void criterion_9() {
  EnergyParams p(1.0);
  Vec tr(2);
  tr << 5.0, -3.0;
  InvarianceReport rep256 =
      invariance_audit(make_ellipse(1.3, 0.7, 256, 2), p, 11, tr, GradientBackend::Weak);
  InvarianceReport rep128 =
      invariance_audit(make_ellipse(1.3, 0.7, 128, 2), p, 11, tr, GradientBackend::Weak);
  bool improving = rep256.diffeo_grad_rel < rep128.diffeo_grad_rel ||
                   rep256.diffeo_grad_rel < 1e-10;  // already at the roundoff floor
  bool ok = rep256.translation_energy_rel <= 1e-10 && rep256.translation_grad_rel <= 1e-10 &&
            rep256.diffeo_grad_rel <= 1e-4 && improving;
  line(9, ok, "translation and reparametrisation invariance",
       "translation " + fmt(rep256.translation_grad_rel) + ", diffeo " +
           fmt(rep256.diffeo_grad_rel) + " (N=128: " + fmt(rep128.diffeo_grad_rel) + ")");
}

void criterion_10() {
  bool ok = true;
  double worst_phi = 0.0, worst_idem = 0.0;
  for (const auto& fx : fixtures::family(256)) {
    CurveGeometry g = geometry(fx.curve);
    ClosedCurve p1 = project_arclength(fx.curve, g);
    CurveGeometry g1 = geometry(p1);
    double phi_rel = phi(g1).cwiseAbs().maxCoeff() / g1.length;
    worst_phi = std::max(worst_phi, phi_rel);
    ok = ok && phi_rel <= 1e-8;
    ClosedCurve p2 = project_arclength(p1, g1);
    double idem = (p2.points - p1.points).cwiseAbs().maxCoeff();
    worst_idem = std::max(worst_idem, idem);
    ok = ok && idem <= 1e-8;
  }

  // Right inverse and tangent projection on the projected ellipse.
  ClosedCurve e0 = make_ellipse(1.3, 0.7, 256, 2);
  ClosedCurve alpha = project_arclength(e0, geometry(e0));
  CurveGeometry ga = geometry(alpha);
  FrameBundle fb = build_frame(alpha, ga);
  Gramian gm = gramian(ga, fb);
  double worst_rinv = 0.0, worst_proj = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Vec w = fixtures::random_control(seed, 256);
    VectorField r = right_inverse(ga, fb, gm, w);
    double defect =
        (dphi(ga, r) - w).cwiseAbs().maxCoeff() / std::max(1.0, w.cwiseAbs().maxCoeff());
    worst_rinv = std::max(worst_rinv, defect);
    ok = ok && defect <= 1e-6;

    VectorField v = fixtures::random_field(seed, 256, 2, 8);
    VectorField pv = tangent_project(ga, fb, gm, v);
    double pd = dphi(ga, pv).cwiseAbs().maxCoeff() / h2ds_norm(ga, v);
    worst_proj = std::max(worst_proj, pd);
    ok = ok && pd <= 1e-8;
  }

  // Gramian positivity over 50 random closed immersions.
  double worst_mu = 1e300;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    ClosedCurve c = make_fourier_random(seed, 0.9, 64, 2);
    CurveGeometry g = geometry(c);
    Gramian gmm = gramian(g, build_frame(c, g));
    worst_mu = std::min(worst_mu, gmm.mu);
    ok = ok && gmm.mu > 0.0;
  }
  line(10, ok, "reparametrisation machinery: P, right inverse, projection, Gramian",
       "phi " + fmt(worst_phi) + ", idem " + fmt(worst_idem) + ", dphi(r w)-w " +
           fmt(worst_rinv) + ", dphi(pr V) " + fmt(worst_proj) + ", min mu " + fmt(worst_mu));
}

void criterion_11() {
  EnergyParams p(1.0);
  const long budget = 400;

  auto l2_max_stable = [&](int n) {
    ClosedCurve c = make_ellipse(1.3, 0.7, n, 2);
    double best = 0.0;
    for (double dt = 1e-9; dt <= 1e-3; dt *= 1.5)
      if (stability_probe(c, p, false, GradientBackend::Kernel, dt, budget).survived) best = dt;
    return best;
  };
  auto h2_max_stable = [&](int n) {
    ClosedCurve c = make_ellipse(1.3, 0.7, n, 2);
    double best = 0.0;
    for (double dt : {0.01, 0.0316, 0.1, 0.316, 1.0})
      if (stability_probe(c, p, true, GradientBackend::Kernel, dt, budget).survived) best = dt;
    return best;
  };

  double l2_128 = l2_max_stable(128);
  double l2_64 = l2_max_stable(64);
  double h2_128 = h2_max_stable(128);
  double ratio = h2_128 / l2_128;
  double shrink = l2_64 / l2_128;
  bool ok = ratio >= 1e3 && shrink >= 8.0 && shrink <= 32.0;
  line(11, ok, "stiffness benchmark: H2 vs explicit L2 step-size ceiling",
       "h2 " + fmt(h2_128) + ", l2(128) " + fmt(l2_128) + ", ratio " + fmt(ratio) +
           ", l2 shrink x" + fmt(shrink));
}

void criterion_12(const Trajectory& traj) {
  // Estimator correctness on synthetic power-law data.
  bool ok = true;
  double worst_theta = 0.0;
  for (double theta : {0.5, 0.75}) {
    Trajectory synth;
    synth.terminal = Terminal::Converged;
    for (int i = 0; i < 400; ++i) {
      double gap = std::pow(10.0, -13.0 * i / 399.0);
      FlowRecord r;
      r.t = i;
      r.energy = 4.0 * std::numbers::pi + gap;
      r.grad_norm = 2.0 * std::pow(gap, theta);
      r.dt = 1.0;
      synth.records.push_back(r);
    }
    synth.final_curve = make_circle(1.0, 1, 16, 2);
    LojasiewiczFit fit = fit_lojasiewicz(synth);
    worst_theta = std::max(worst_theta, std::abs(fit.theta - theta));
    ok = ok && std::abs(fit.theta - theta) <= 1e-3;
  }

  // Fit on the reference ellipse run.
  LojasiewiczFit fit = fit_lojasiewicz(traj);
  ok = ok && fit.theta > 0.0 && fit.theta < 1.0 && fit.residual < 0.1;

  // Trajectory length: finite and stabilizing as the tolerance tightens.
  auto prefix_len = [&](double tol) {
    for (const FlowRecord& r : traj.records)
      if (r.grad_norm <= tol && r.t > 0.0) return r.cum_length;
    return traj.records.back().cum_length;
  };
  double l4 = prefix_len(1e-4), l5 = prefix_len(1e-5), l6 = prefix_len(1e-6);
  double inc1 = l5 - l4, inc2 = l6 - l5;
  ok = ok && std::isfinite(l6) && inc2 < inc1 && inc2 >= 0.0;

  line(12, ok, "Lojasiewicz diagnostics and finite trajectory length",
       "synthetic err " + fmt(worst_theta) + ", fitted theta " + fmt(fit.theta) + ", residual " +
           fmt(fit.residual) + ", length incs " + fmt(inc1) + " -> " + fmt(inc2));
}

}  // namespace

int main() {
  std::printf("elastica acceptance suite\n");
  Trajectory reference = reference_run();
  criterion_1(reference);
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8(reference);
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12(reference);
  std::printf("%d/12 criteria passed\n", 12 - g_failed);
  return g_failed;
}
