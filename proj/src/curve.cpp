#include "curve.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace elastica {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_attached(const CurveGeometry& geom, const VectorField& v) {
  if (v.samples() != geom.speed.size() || v.dim() != geom.tangent.cols())
    throw DimensionError("vector field does not match curve sample grid");
}
}  // namespace

ClosedCurve::ClosedCurve(int dim_, Mat pts) : dim(dim_), points(std::move(pts)) {
  if (dim < 2) throw InvalidArgumentError("ambient dimension must be >= 2");
  if (points.cols() != dim) throw DimensionError("point array does not match dim");
  const int n = static_cast<int>(points.rows());
  if (n < kMinSamples || n % 2 != 0)
    throw InvalidArgumentError("sample count must be even and >= 16");
}

CurveGeometry geometry(const ClosedCurve& curve) {
  CurveGeometry g;
  g.d1 = differentiate(curve.points, 1);
  g.speed = g.d1.rowwise().norm();
  if (g.speed.minCoeff() <= kImmersionFloor)
    throw NonImmersedError("curve is not immersed: min |gamma'| <= 1e-9");
  g.d2 = differentiate(curve.points, 2);
  g.d2_dot_d1 = (g.d2.array() * g.d1.array()).rowwise().sum();

  g.tangent = g.d1.array().colwise() / g.speed.array();
  // gamma_ss = gamma''/|g'|^2 - <gamma'',gamma'> gamma'/|g'|^4
  Vec s2 = g.speed.array().square();
  Vec s4 = s2.array().square();
  g.kappa = (g.d2.array().colwise() / s2.array()) -
            (g.d1.array().colwise() * (g.d2_dot_d1.array() / s4.array()));
  g.ksq = g.kappa.rowwise().squaredNorm();
  g.arclen = antiderivative_at_nodes(g.speed);
  g.length = g.speed.mean();
  return g;
}

double integrate_ds(const CurveGeometry& geom, const Vec& scalar_samples) {
  if (scalar_samples.size() != geom.speed.size())
    throw DimensionError("integrand length does not match curve sample grid");
  return (scalar_samples.array() * geom.speed.array()).mean();
}

Mat arc_derivative(const CurveGeometry& geom, const Mat& field) {
  Mat d = differentiate(field, 1);
  return d.array().colwise() / geom.speed.array();
}

Mat arc_second_derivative(const CurveGeometry& geom, const Mat& field) {
  Mat d1f = differentiate(field, 1);
  Mat d2f = differentiate(field, 2);
  Vec s2 = geom.speed.array().square();
  Vec s4 = s2.array().square();
  return (d2f.array().colwise() / s2.array()) -
         (d1f.array().colwise() * (geom.d2_dot_d1.array() / s4.array()));
}

double h2ds_inner(const CurveGeometry& geom, const VectorField& v, const VectorField& w) {
  check_attached(geom, v);
  check_attached(geom, w);
  Vec dots = (v.values.array() * w.values.array()).rowwise().sum();
  Mat vs = arc_derivative(geom, v.values);
  Mat ws = arc_derivative(geom, w.values);
  dots += ((vs.array() * ws.array()).rowwise().sum()).matrix();
  Mat vss = arc_second_derivative(geom, v.values);
  Mat wss = arc_second_derivative(geom, w.values);
  dots += ((vss.array() * wss.array()).rowwise().sum()).matrix();
  return integrate_ds(geom, dots);
}

double h2ds_norm(const CurveGeometry& geom, const VectorField& v) {
  return std::sqrt(h2ds_inner(geom, v, v));
}

double h2_param_norm(const VectorField& v) {
  Mat d1 = differentiate(v.values, 1);
  Mat d2 = differentiate(v.values, 2);
  double acc = v.values.array().square().rowwise().sum().mean() +
               d1.array().square().rowwise().sum().mean() +
               d2.array().square().rowwise().sum().mean();
  return std::sqrt(acc);
}

namespace {

Mat planar_embed(const Vec& x, const Vec& y, int dim) {
  Mat pts = Mat::Zero(x.size(), dim);
  pts.col(0) = x;
  pts.col(1) = y;
  return pts;
}

void check_shape_args(int n, int dim) {
  if (dim < 2) throw InvalidArgumentError("ambient dimension must be >= 2");
  if (n < kMinSamples || n % 2 != 0)
    throw InvalidArgumentError("sample count must be even and >= 16");
}

}  // namespace

ClosedCurve make_circle(double radius, int folds, int n, int dim) {
  check_shape_args(n, dim);
  if (radius <= 0.0 || folds < 1) throw InvalidArgumentError("circle needs radius > 0, folds >= 1");
  Vec x(n), y(n);
  for (int j = 0; j < n; ++j) {
    double ph = kTwoPi * folds * j / n;
    x[j] = radius * std::cos(ph);
    y[j] = radius * std::sin(ph);
  }
  return ClosedCurve(dim, planar_embed(x, y, dim));
}

ClosedCurve make_ellipse(double a, double b, int n, int dim) {
  check_shape_args(n, dim);
  if (a <= 0.0 || b <= 0.0) throw InvalidArgumentError("ellipse needs positive semi-axes");
  Vec x(n), y(n);
  for (int j = 0; j < n; ++j) {
    double ph = kTwoPi * j / n;
    x[j] = a * std::cos(ph);
    y[j] = b * std::sin(ph);
  }
  return ClosedCurve(dim, planar_embed(x, y, dim));
}

ClosedCurve make_figure_eight(double scale, int n, int dim) {
  check_shape_args(n, dim);
  if (scale <= 0.0) throw InvalidArgumentError("figure eight needs scale > 0");
  // Lemniscate of Gerono; rotation index 0.
  Vec x(n), y(n);
  for (int j = 0; j < n; ++j) {
    double ph = kTwoPi * j / n;
    x[j] = scale * std::sin(ph);
    y[j] = scale * std::sin(ph) * std::cos(ph);
  }
  return ClosedCurve(dim, planar_embed(x, y, dim));
}

ClosedCurve make_fourier_random(std::uint64_t seed, double decay, int n, int dim) {
  check_shape_args(n, dim);
  if (decay <= 0.0) throw InvalidArgumentError("fourier_random needs decay > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int kmax = std::min(6, n / 4);

  double amplitude = 0.3;
  for (int attempt = 0; attempt < 20; ++attempt) {
    Mat pts = Mat::Zero(n, dim);
    for (int j = 0; j < n; ++j) {
      double ph = kTwoPi * j / n;
      pts(j, 0) = std::cos(ph);
      pts(j, 1) = std::sin(ph);
    }
    for (int k = 1; k <= kmax; ++k) {
      double sigma = amplitude * std::exp(-decay * (k - 1)) / k;
      for (int c = 0; c < dim; ++c) {
        double ak = sigma * gauss(rng);
        double bk = sigma * gauss(rng);
        for (int j = 0; j < n; ++j) {
          double ph = kTwoPi * k * j / n;
          pts(j, c) += ak * std::cos(ph) + bk * std::sin(ph);
        }
      }
    }
    ClosedCurve candidate(dim, pts);
    Mat d1 = differentiate(candidate.points, 1);
    double minspeed = d1.rowwise().norm().minCoeff();
    double mean = d1.rowwise().norm().mean();
    if (minspeed > 0.3 * mean) return candidate;
    amplitude *= 0.7;
  }
  throw InvalidArgumentError("failed to draw an immersed random curve after retries");
}

}  // namespace elastica
