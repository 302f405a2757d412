#include "reparam.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace elastica {

namespace {
constexpr double kPi = std::numbers::pi;

Vec row_dots(const Mat& a, const Mat& b) {
  return (a.array() * b.array()).rowwise().sum();
}
}  // namespace

Vec phi(const CurveGeometry& geom) {
  return geom.speed.array() - geom.length;
}

Vec dphi(const CurveGeometry& geom, const VectorField& v) {
  Mat vp = differentiate(v.values, 1);
  Vec pointwise = row_dots(vp, geom.tangent);
  return pointwise.array() - pointwise.mean();
}

ClosedCurve project_arclength(const ClosedCurve& curve, const CurveGeometry& geom) {
  const int n = curve.samples();
  const double L = geom.length;
  TrigSeries speed_series(geom.speed);
  TrigCurve interp(curve.points);

  // Invert the spectral arc length s(u) at the equispaced targets j L / N.
  // The cumulative node values bracket each target; Newton from the
  // bracket midpoint converges in a few iterations since s' = speed > 0.
  Mat resampled(n, curve.dim);
  resampled.row(0) = curve.points.row(0);
  for (int j = 1; j < n; ++j) {
    double target = L * j / n;
    int hi = 1;
    while (hi < n && geom.arclen[hi] < target) ++hi;
    double lo_u = static_cast<double>(hi - 1) / n;
    double hi_u = static_cast<double>(hi) / n;
    double u = 0.5 * (lo_u + hi_u);
    for (int it = 0; it < 60; ++it) {
      double f = speed_series.antiderivative(u) - target;
      if (f > 0.0)
        hi_u = u;
      else
        lo_u = u;
      if (std::abs(f) < 1e-14 * L) break;
      double du = f / speed_series.value(u);
      double next = u - du;
      u = (next > lo_u && next < hi_u) ? next : 0.5 * (lo_u + hi_u);
    }
    resampled.row(j) = interp.value(u);
  }
  return ClosedCurve(curve.dim, std::move(resampled));
}

FrameBundle build_frame(const ClosedCurve& curve, const CurveGeometry& geom) {
  const int n = curve.samples();
  const int dim = curve.dim;

  // Seed: complete T(0) to an orthonormal basis by Gram-Schmidt over the
  // coordinate axes ordered by |<e_k, T(0)>| ascending, ties by index.
  Vec t0 = geom.tangent.row(0);
  std::vector<int> axes(dim);
  for (int k = 0; k < dim; ++k) axes[k] = k;
  std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) {
    return std::abs(t0[a]) < std::abs(t0[b]);
  });

  Mat basis(dim, dim);  // rows: T(0), nu_i(0)
  basis.row(0) = t0;
  int rows = 1;
  for (int k = 0; k < dim && rows < dim; ++k) {
    Vec cand = Vec::Zero(dim);
    cand[axes[k]] = 1.0;
    for (int r = 0; r < rows; ++r) cand -= basis.row(r).dot(cand) * basis.row(r).transpose();
    double norm = cand.norm();
    if (norm < 1e-8) continue;
    basis.row(rows++) = cand / norm;
  }
  if (rows != dim) throw FrameDriftError("failed to complete orthonormal seed basis");

  // Transport nu_i by RK4 with gamma', gamma'' at stage points from the
  // band-limited interpolant. The frame rotates at rate up to
  // rho = max |gamma''| / |gamma'|; substeps keep the classical-RK4 global
  // error (~ rho^5 h^4 / 180) safely under the drift tolerance.
  TrigCurve interp(curve.points);
  double rho = 1e-3;
  for (int j = 0; j < n; ++j)
    rho = std::max(rho, geom.d2.row(j).norm() / geom.speed[j]);
  double h_target = std::pow(1.8e-8 / std::pow(rho, 5), 0.25);
  int sub = std::clamp(static_cast<int>(std::ceil(1.0 / (n * h_target))), 2, 256);
  const double h = 1.0 / (n * sub);

  std::vector<Vec> d1s(n * sub + 1), d2s(n * sub + 1), d1m(n * sub), d2m(n * sub);
  for (int q = 0; q <= n * sub; ++q) {
    double u = q * h;
    if (q % sub == 0 && q < n * sub) {
      d1s[q] = geom.d1.row(q / sub);
      d2s[q] = geom.d2.row(q / sub);
    } else {
      d1s[q] = interp.derivative(u, 1);
      d2s[q] = interp.derivative(u, 2);
    }
  }
  for (int q = 0; q < n * sub; ++q) {
    double u = (q + 0.5) * h;
    d1m[q] = interp.derivative(u, 1);
    d2m[q] = interp.derivative(u, 2);
  }

  auto rhs = [](const Vec& nu, const Vec& g1, const Vec& g2) -> Vec {
    double s2 = g1.squaredNorm();
    return -(nu.dot(g2) / s2) * g1;
  };

  FrameBundle fb;
  fb.initial_basis = basis;
  fb.normals.assign(dim - 1, Mat(n, dim));
  for (int i = 0; i < dim - 1; ++i) {
    Vec nu = basis.row(i + 1);
    for (int q = 0; q < n * sub; ++q) {
      if (q % sub == 0) fb.normals[i].row(q / sub) = nu;
      Vec k1 = rhs(nu, d1s[q], d2s[q]);
      Vec k2 = rhs(nu + 0.5 * h * k1, d1m[q], d2m[q]);
      Vec k3 = rhs(nu + 0.5 * h * k2, d1m[q], d2m[q]);
      Vec k4 = rhs(nu + h * k3, d1s[q + 1], d2s[q + 1]);
      nu += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }

  // Orthonormality drift beyond tolerance is an error, not a silent fix.
  const double tol = 1e-6;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < dim - 1; ++i) {
      Vec ni = fb.normals[i].row(j);
      if (std::abs(ni.norm() - 1.0) > tol || std::abs(ni.dot(geom.tangent.row(j))) > tol)
        throw FrameDriftError("frame transport drifted beyond tolerance");
      for (int k = i + 1; k < dim - 1; ++k)
        if (std::abs(ni.dot(fb.normals[k].row(j))) > tol)
          throw FrameDriftError("frame transport drifted beyond tolerance");
    }
  }
  return fb;
}

Gramian gramian(const CurveGeometry& geom, const FrameBundle& frame) {
  const int n = static_cast<int>(geom.speed.size());
  const int dim = static_cast<int>(geom.tangent.cols());
  Gramian g;
  g.bump.resize(n);
  for (int j = 0; j < n; ++j) {
    double b = std::sin(kPi * j / n);
    g.bump[j] = b * b;
  }
  g.w = Mat::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    double b2 = g.bump[j] * g.bump[j];
    for (const Mat& nu : frame.normals) {
      Vec v = nu.row(j);
      g.w += (b2 / n) * (v * v.transpose());
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(g.w);
  g.mu = eig.eigenvalues().minCoeff();
  if (g.mu < 1e-12) throw SingularGramianError("controllability Gramian is singular");
  g.winv_norm = 1.0 / g.mu;
  return g;
}

VectorField right_inverse(const CurveGeometry& geom, const FrameBundle& frame,
                          const Gramian& gram, const Vec& w) {
  const int n = static_cast<int>(geom.speed.size());
  const int dim = static_cast<int>(geom.tangent.cols());
  if (w.size() != n) throw DimensionError("control input does not match the sample grid");
  if (std::abs(w.mean()) > 1e-10 * std::max(1.0, w.cwiseAbs().maxCoeff()))
    throw NonZeroMeanError("right inverse requires a zero-mean input");

  // y' = w T, y(0) = 0, via the spectral antiderivative per coordinate.
  Mat yprime = geom.tangent.array().colwise() * w.array();
  Mat y(n, dim);
  for (int c = 0; c < dim; ++c) y.col(c) = antiderivative_at_nodes(Vec(yprime.col(c)));
  Vec y1 = yprime.colwise().mean();  // y(1): full-period integral

  Eigen::LLT<Mat> llt(gram.w);
  if (llt.info() != Eigen::Success)
    throw SingularGramianError("controllability Gramian is singular");
  Vec target = llt.solve(y1);  // W^{-1} y(1)

  // x' = B xi with xi = B^T W^{-1} y(1), i.e. x' = beta^2 (sum nu nu^T) W^{-1} y(1).
  Mat xprime(n, dim);
  for (int j = 0; j < n; ++j) {
    double b2 = gram.bump[j] * gram.bump[j];
    Vec acc = Vec::Zero(dim);
    for (const Mat& nu : frame.normals) {
      Vec v = nu.row(j);
      acc += v.dot(target) * v;
    }
    xprime.row(j) = b2 * acc;
  }
  Mat x(n, dim);
  for (int c = 0; c < dim; ++c) x.col(c) = antiderivative_at_nodes(Vec(xprime.col(c)));

  return VectorField{y - x};
}

VectorField tangent_project(const CurveGeometry& geom, const FrameBundle& frame,
                            const Gramian& gram, const VectorField& v) {
  VectorField r = right_inverse(geom, frame, gram, dphi(geom, v));
  return VectorField{v.values - r.values};
}

VectorField tangent_project(const ClosedCurve& curve, const CurveGeometry& geom,
                            const VectorField& v) {
  double sup = phi(geom).cwiseAbs().maxCoeff();
  if (sup > 1e-6 * geom.length)
    throw InvalidArgumentError("tangent projection requires an arc-length-proportional curve");
  FrameBundle frame = build_frame(curve, geom);
  Gramian gram = gramian(geom, frame);
  return tangent_project(geom, frame, gram, v);
}

}  // namespace elastica
