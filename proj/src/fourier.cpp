#include "fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace elastica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is. Plans are created FFTW_UNALIGNED so they can be executed
// on arbitrary buffers.
PlanPair plans_for(int n) {
  static std::mutex mtx;
  static std::unordered_map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> real(n);
  std::vector<fftw_complex> cplx(n / 2 + 1);
  PlanPair p;
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_r2c_1d(n, real.data(), cplx.data(), flags);
  p.bwd = fftw_plan_dft_c2r_1d(n, cplx.data(), real.data(), flags);
  cache.emplace(n, p);
  return p;
}

void check_even(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("sample count must be even and >= 2");
}

// (2*pi*i*k)^order applied to one coefficient; Nyquist handled by caller.
std::complex<double> deriv_multiplier(int k, int order) {
  std::complex<double> iw(0.0, kTwoPi * k);
  std::complex<double> m(1.0, 0.0);
  for (int i = 0; i < order; ++i) m *= iw;
  return m;
}

}  // namespace

std::vector<std::complex<double>> rfft(const Vec& samples) {
  const int n = static_cast<int>(samples.size());
  check_even(n);
  PlanPair p = plans_for(n);
  std::vector<double> in(samples.data(), samples.data() + n);
  std::vector<fftw_complex> out(n / 2 + 1);
  fftw_execute_dft_r2c(p.fwd, in.data(), out.data());
  std::vector<std::complex<double>> coeffs(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) coeffs[k] = {out[k][0], out[k][1]};
  return coeffs;
}

Vec irfft(const std::vector<std::complex<double>>& coeffs, int n) {
  check_even(n);
  if (static_cast<int>(coeffs.size()) != n / 2 + 1)
    throw std::invalid_argument("coefficient count does not match n");
  PlanPair p = plans_for(n);
  std::vector<fftw_complex> in(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) {
    in[k][0] = coeffs[k].real();
    in[k][1] = coeffs[k].imag();
  }
  std::vector<double> out(n);
  fftw_execute_dft_c2r(p.bwd, in.data(), out.data());
  Vec result(n);
  for (int j = 0; j < n; ++j) result[j] = out[j] / n;
  return result;
}

Vec differentiate(const Vec& samples, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be in 1..4");
  const int n = static_cast<int>(samples.size());
  check_even(n);
  auto coeffs = rfft(samples);
  for (int k = 0; k < n / 2; ++k) coeffs[k] *= deriv_multiplier(k, order);
  // Nyquist mode: zero for odd orders, real multiplier for even orders.
  if (order % 2 == 1) {
    coeffs[n / 2] = 0.0;
  } else {
    double w = std::numbers::pi * n;  // 2*pi*(N/2)
    double m = std::pow(w, order) * ((order / 2) % 2 == 0 ? 1.0 : -1.0);
    coeffs[n / 2] *= m;
  }
  return irfft(coeffs, n);
}

Mat differentiate(const Mat& samples, int order) {
  Mat out(samples.rows(), samples.cols());
  for (int c = 0; c < samples.cols(); ++c) out.col(c) = differentiate(Vec(samples.col(c)), order);
  return out;
}

Vec antiderivative_at_nodes(const Vec& samples) {
  const int n = static_cast<int>(samples.size());
  check_even(n);
  auto coeffs = rfft(samples);
  const double mean = coeffs[0].real() / n;
  // Periodic part: coefficients divided by 2*pi*i*k. The Nyquist mode
  // integrates to a sin(pi*N*u) term which vanishes at every node.
  std::vector<std::complex<double>> anti(coeffs.size(), 0.0);
  for (int k = 1; k < n / 2; ++k) anti[k] = coeffs[k] / std::complex<double>(0.0, kTwoPi * k);
  Vec periodic = irfft(anti, n);
  Vec out(n);
  for (int j = 0; j < n; ++j) out[j] = mean * (static_cast<double>(j) / n) + periodic[j] - periodic[0];
  return out;
}

TrigSeries::TrigSeries(const Vec& samples) : n_(static_cast<int>(samples.size())) {
  check_even(n_);
  coef_ = rfft(samples);
}

double TrigSeries::eval(double u, int order) const {
  if (order < 0 || order > 4) throw std::invalid_argument("derivative order must be in 0..4");
  const int half = n_ / 2;
  double acc = (order == 0) ? coef_[0].real() : 0.0;
  for (int k = 1; k < half; ++k) {
    std::complex<double> c = coef_[k] * deriv_multiplier(k, order);
    double ph = kTwoPi * k * u;
    acc += 2.0 * (c.real() * std::cos(ph) - c.imag() * std::sin(ph));
  }
  // Nyquist: represented as cos(pi*N*u); odd-order derivatives of this
  // mode are dropped, matching the grid differentiation convention.
  double w = std::numbers::pi * n_;
  double cN = coef_[half].real();
  if (order % 2 == 0) {
    double m = std::pow(w, order) * ((order / 2) % 2 == 0 ? 1.0 : -1.0);
    acc += cN * m * std::cos(w * u);
  }
  return acc / n_;
}

double TrigSeries::antiderivative(double u) const {
  const int half = n_ / 2;
  const double mean = coef_[0].real() / n_;
  double acc = 0.0;
  for (int k = 1; k < half; ++k) {
    std::complex<double> c = coef_[k] / std::complex<double>(0.0, kTwoPi * k);
    double ph = kTwoPi * k * u;
    // value at u minus value at 0
    acc += 2.0 * (c.real() * (std::cos(ph) - 1.0) - c.imag() * std::sin(ph));
  }
  double w = std::numbers::pi * n_;
  acc += coef_[half].real() * std::sin(w * u) / w;
  return mean * u + acc / n_;
}

TrigCurve::TrigCurve(const Mat& samples) {
  series_.reserve(samples.cols());
  for (int c = 0; c < samples.cols(); ++c) series_.emplace_back(Vec(samples.col(c)));
}

Eigen::VectorXd TrigCurve::eval(double u, int order) const {
  Eigen::VectorXd out(series_.size());
  for (size_t c = 0; c < series_.size(); ++c) out[static_cast<int>(c)] = series_[c].eval(u, order);
  return out;
}

}  // namespace elastica
