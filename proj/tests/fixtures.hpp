#ifndef ELASTICA_TESTS_FIXTURES_HPP
#define ELASTICA_TESTS_FIXTURES_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"

// Shared test fixtures: the standing curve family plus band-limited random
// fields and curves used across the suites.

namespace fixtures {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Named {
  std::string name;
  elastica::ClosedCurve curve;
};

// Circles (3 radii), ellipses (3 aspect ratios), figure-eight, 5 random
// Fourier curves.
inline std::vector<Named> family(int n) {
  std::vector<Named> fam;
  fam.push_back({"circle_r0.5", elastica::make_circle(0.5, 1, n, 2)});
  fam.push_back({"circle_r1", elastica::make_circle(1.0, 1, n, 2)});
  fam.push_back({"circle_r2", elastica::make_circle(2.0, 1, n, 2)});
  fam.push_back({"ellipse_1.3_0.7", elastica::make_ellipse(1.3, 0.7, n, 2)});
  fam.push_back({"ellipse_1.2_0.8", elastica::make_ellipse(1.2, 0.8, n, 2)});
  fam.push_back({"ellipse_1.5_0.6", elastica::make_ellipse(1.5, 0.6, n, 2)});
  fam.push_back({"figure_eight", elastica::make_figure_eight(1.0, n, 2)});
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    fam.push_back({"fourier_seed" + std::to_string(seed),
                   elastica::make_fourier_random(seed, 0.9, n, 2)});
  return fam;
}

// Band-limited random field with modes <= kmax, Gaussian coefficients.
inline elastica::VectorField random_field(std::uint64_t seed, int n, int dim, int kmax = 0) {
  if (kmax <= 0) kmax = std::max(2, n / 8);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  elastica::Mat vals = elastica::Mat::Zero(n, dim);
  for (int c = 0; c < dim; ++c) {
    double a0 = gauss(rng);
    for (int j = 0; j < n; ++j) vals(j, c) = a0;
    for (int k = 1; k <= kmax; ++k) {
      double ak = gauss(rng) / (1.0 + k);
      double bk = gauss(rng) / (1.0 + k);
      for (int j = 0; j < n; ++j) {
        double ph = kTwoPi * k * j / n;
        vals(j, c) += ak * std::cos(ph) + bk * std::sin(ph);
      }
    }
  }
  return elastica::VectorField{vals};
}

// Zero-mean band-limited scalar control input.
inline elastica::Vec random_control(std::uint64_t seed, int n, int kmax = 4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  elastica::Vec w = elastica::Vec::Zero(n);
  for (int k = 1; k <= kmax; ++k) {
    double ak = gauss(rng) / k;
    double bk = gauss(rng) / k;
    for (int j = 0; j < n; ++j) {
      double ph = kTwoPi * k * j / n;
      w[j] += ak * std::cos(ph) + bk * std::sin(ph);
    }
  }
  return w;
}

}  // namespace fixtures

#endif
