#ifndef ELASTICA_CURVE_HPP
#define ELASTICA_CURVE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "fourier.hpp"

// Discrete closed immersed curves in R^n and their periodic differential
// geometry. A curve is N uniform samples of a map S^1 -> R^n at u_j = j/N;
// all derivatives are trigonometric, all integrals periodic trapezoid
// (equal weights 1/N).

namespace elastica {

struct NonImmersedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimum speed below which a curve is rejected as non-immersed.
inline constexpr double kImmersionFloor = 1e-9;
// Discretization floor: Nyquist headroom for fourth derivatives.
inline constexpr int kMinSamples = 16;

struct ClosedCurve {
  int dim = 0;  // ambient dimension n >= 2
  Mat points;   // N x dim, row j = gamma(u_j)

  ClosedCurve() = default;
  ClosedCurve(int dim_, Mat pts);

  int samples() const { return static_cast<int>(points.rows()); }
};

// A variation field along a curve: one vector per sample node.
struct VectorField {
  Mat values;  // N x dim

  int samples() const { return static_cast<int>(values.rows()); }
  int dim() const { return static_cast<int>(values.cols()); }
};

// Cached derived geometry of a curve. Pure function of the curve; callers
// own the caching.
struct CurveGeometry {
  Vec speed;    // |gamma'(u_j)|
  Mat tangent;  // unit tangent T = gamma_s
  Mat kappa;    // curvature vector gamma_ss
  Vec ksq;      // |kappa|^2
  Vec arclen;   // s(u_j), s(0) = 0, strictly increasing
  double length = 0.0;

  // Extra cached spectra reused by the energy and gradient modules.
  Mat d1;         // gamma'
  Mat d2;         // gamma''
  Vec d2_dot_d1;  // <gamma'', gamma'>
};

CurveGeometry geometry(const ClosedCurve& curve);

// Periodic trapezoid of scalar * |gamma'| du over one period.
double integrate_ds(const CurveGeometry& geom, const Vec& scalar_samples);

// First and second arc-length derivatives of a field along the curve.
// The second derivative uses the same chain rule as the curvature vector:
// v_ss = v''/|g'|^2 - <g'',g'> v'/|g'|^4.
Mat arc_derivative(const CurveGeometry& geom, const Mat& field);
Mat arc_second_derivative(const CurveGeometry& geom, const Mat& field);

// H^2(ds) inner product: int <v,w> + <v_s,w_s> + <v_ss,w_ss> ds.
double h2ds_inner(const CurveGeometry& geom, const VectorField& v, const VectorField& w);
double h2ds_norm(const CurveGeometry& geom, const VectorField& v);

// Parametric H^2 norm (du measure): sqrt(int |v|^2 + |v'|^2 + |v''|^2 du).
double h2_param_norm(const VectorField& v);

// Fixture generators.
ClosedCurve make_circle(double radius, int folds, int n, int dim);
ClosedCurve make_ellipse(double a, double b, int n, int dim);
ClosedCurve make_figure_eight(double scale, int n, int dim);
ClosedCurve make_fourier_random(std::uint64_t seed, double decay, int n, int dim);

// Curve document format (structured text, full round-trip precision).
std::string curve_to_string(const ClosedCurve& curve);
ClosedCurve curve_from_string(const std::string& text);
void save_curve(const ClosedCurve& curve, const std::string& path);
ClosedCurve load_curve(const std::string& path);

}  // namespace elastica

#endif
