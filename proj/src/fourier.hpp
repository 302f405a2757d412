#ifndef ELASTICA_FOURIER_HPP
#define ELASTICA_FOURIER_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Trigonometric (discrete Fourier) machinery for periodic samples on the
// uniform grid u_j = j/N, period 1. N must be even. Differentiation is
// exact for band-limited data; the Nyquist mode of odd-order derivatives
// is zeroed.

namespace elastica {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Forward real DFT, coefficients k = 0..N/2 (FFTW r2c convention, unnormalized).
std::vector<std::complex<double>> rfft(const Vec& samples);
Vec irfft(const std::vector<std::complex<double>>& coeffs, int n);

// Spectral derivative of given order (1..4) of one periodic sample sequence.
Vec differentiate(const Vec& samples, int order);

// Column-wise spectral derivative of an N x d sample block.
Mat differentiate(const Mat& samples, int order);

// Antiderivative F with F(0) = 0 evaluated at the grid nodes. The mean of
// the samples contributes the linear-in-u part, so the input need not have
// zero mean.
Vec antiderivative_at_nodes(const Vec& samples);

// Band-limited interpolant of periodic samples; evaluable anywhere,
// together with spectral derivatives of any order 0..4.
class TrigSeries {
 public:
  explicit TrigSeries(const Vec& samples);

  double value(double u) const { return eval(u, 0); }
  double derivative(double u, int order) const { return eval(u, order); }
  // Antiderivative with value 0 at u = 0 (includes the linear mean term).
  double antiderivative(double u) const;

  int size() const { return n_; }

 private:
  friend class TrigCurve;
  double eval(double u, int order) const;
  int n_;
  std::vector<std::complex<double>> coef_;  // k = 0..N/2
};

// Interpolant of a vector-valued field (N x d samples).
class TrigCurve {
 public:
  explicit TrigCurve(const Mat& samples);
  Eigen::VectorXd value(double u) const { return eval(u, 0); }
  Eigen::VectorXd derivative(double u, int order) const { return eval(u, order); }
  int dim() const { return static_cast<int>(series_.size()); }

 private:
  Eigen::VectorXd eval(double u, int order) const;
  std::vector<TrigSeries> series_;
};

}  // namespace elastica

#endif
