#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "curve.hpp"
#include "fixtures.hpp"

using namespace elastica;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("unit circle geometry matches the analytic values") {
  ClosedCurve c = make_circle(1.0, 1, 64, 2);
  CurveGeometry g = geometry(c);
  CHECK((g.speed.array() - kTwoPi).abs().maxCoeff() < 1e-12);
  CHECK(g.length == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK((g.ksq.array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("circle of radius r has k^2 = 1/r^2 and L = 2 pi r") {
  for (double r : {0.5, 2.0, 3.7}) {
    ClosedCurve c = make_circle(r, 1, 64, 2);
    CurveGeometry g = geometry(c);
    CHECK(g.length == doctest::Approx(kTwoPi * r).epsilon(1e-12));
    CHECK((g.ksq.array() - 1.0 / (r * r)).abs().maxCoeff() < 1e-10 / (r * r));
  }
}

TEST_CASE("geometry is translation invariant") {
  ClosedCurve c = make_ellipse(1.3, 0.7, 64, 2);
  Mat shifted = c.points;
  shifted.col(0).array() += 4.0;
  shifted.col(1).array() -= 2.5;
  ClosedCurve c2(2, shifted);
  CurveGeometry g1 = geometry(c), g2 = geometry(c2);
  CHECK((g1.speed - g2.speed).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g1.kappa - g2.kappa).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(g1.length == doctest::Approx(g2.length).epsilon(1e-13));
}

TEST_CASE("geometry invariants: unit tangent, tangent-curvature orthogonality, arclen") {
  for (const auto& fx : fixtures::family(64)) {
    CAPTURE(fx.name);
    CurveGeometry g = geometry(fx.curve);
    CHECK((g.tangent.rowwise().norm().array() - 1.0).abs().maxCoeff() < 1e-12);
    double ksup = g.ksq.cwiseSqrt().maxCoeff();
    Vec tk = (g.tangent.array() * g.kappa.array()).rowwise().sum();
    CHECK(tk.cwiseAbs().maxCoeff() < 1e-8 * std::max(ksup, 1.0));
    CHECK(g.arclen[0] == 0.0);
    for (int j = 1; j < fx.curve.samples(); ++j) CHECK(g.arclen[j] > g.arclen[j - 1]);
    CHECK(g.length > 0.0);
    CHECK(g.arclen[fx.curve.samples() - 1] < g.length);
  }
}

TEST_CASE("non-immersed input is rejected") {
  // A degenerate "curve" collapsing to a point traversal.
  Mat pts = Mat::Zero(32, 2);
  pts.col(0).setConstant(1.0);
  CHECK_THROWS_AS(geometry(ClosedCurve(2, pts)), NonImmersedError);
}

TEST_CASE("integrate_ds: constants give length, k^2 gives total squared curvature") {
  ClosedCurve c = make_circle(1.0, 1, 64, 2);
  CurveGeometry g = geometry(c);
  CHECK(integrate_ds(g, Vec::Ones(64)) == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(integrate_ds(g, g.ksq) == doctest::Approx(kTwoPi).epsilon(1e-10));
  for (double r : {0.5, 2.0}) {
    ClosedCurve cr = make_circle(r, 1, 64, 2);
    CurveGeometry gr = geometry(cr);
    CHECK(integrate_ds(gr, gr.ksq) == doctest::Approx(kTwoPi / r).epsilon(1e-10));
  }
}

TEST_CASE("integrate_ds is invariant under cyclic index rotation") {
  ClosedCurve c = make_ellipse(1.3, 0.7, 64, 2);
  Vec scalar = fixtures::random_control(7, 64).array() + 2.0;
  CurveGeometry g = geometry(c);
  double base = integrate_ds(g, scalar);
  for (int shift : {1, 17}) {
    Mat rolled(64, 2);
    Vec srolled(64);
    for (int j = 0; j < 64; ++j) {
      rolled.row(j) = c.points.row((j + shift) % 64);
      srolled[j] = scalar[(j + shift) % 64];
    }
    CurveGeometry gr = geometry(ClosedCurve(2, rolled));
    CHECK(integrate_ds(gr, srolled) == doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("h2ds inner product: constants, symmetry, bilinearity, positivity") {
  ClosedCurve c = make_ellipse(1.3, 0.7, 64, 2);
  CurveGeometry g = geometry(c);

  Mat cv = Mat::Zero(64, 2);
  cv.col(0).setConstant(1.5);
  cv.col(1).setConstant(-0.5);
  VectorField constant{cv};
  double c2 = 1.5 * 1.5 + 0.5 * 0.5;
  CHECK(h2ds_inner(g, constant, constant) == doctest::Approx(c2 * g.length).epsilon(1e-12));

  VectorField v = fixtures::random_field(1, 64, 2);
  VectorField w = fixtures::random_field(2, 64, 2);
  CHECK(h2ds_inner(g, v, w) == doctest::Approx(h2ds_inner(g, w, v)).epsilon(1e-14));

  VectorField vw{2.0 * v.values + 3.0 * w.values};
  VectorField z = fixtures::random_field(3, 64, 2);
  CHECK(h2ds_inner(g, vw, z) ==
        doctest::Approx(2.0 * h2ds_inner(g, v, z) + 3.0 * h2ds_inner(g, w, z)).epsilon(1e-12));

  CHECK(h2ds_inner(g, v, v) > 0.0);
}

TEST_CASE("h2ds inner product on an arc-length-proportional curve splits by derivatives") {
  // On |gamma'| = L: <v,v> = L ||v||^2 + (1/L)||v'||^2 + (1/L^3)||v''||^2.
  const int n = 64;
  ClosedCurve c = make_circle(1.3, 1, n, 2);
  CurveGeometry g = geometry(c);
  const double L = g.length;
  VectorField v = fixtures::random_field(11, n, 2, 6);
  Mat d1 = differentiate(v.values, 1);
  Mat d2 = differentiate(v.values, 2);
  double l2 = v.values.array().square().rowwise().sum().mean();
  double l2d = d1.array().square().rowwise().sum().mean();
  double l2dd = d2.array().square().rowwise().sum().mean();
  double expected = L * l2 + l2d / L + l2dd / (L * L * L);
  CHECK(h2ds_inner(g, v, v) == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("spectral self-convergence of curvature on the ellipse") {
  auto kappa_at = [](int n) {
    ClosedCurve c = make_ellipse(1.3, 0.7, n, 2);
    return geometry(c).kappa;
  };
  Mat k16 = kappa_at(16), k32 = kappa_at(32), k64 = kappa_at(64);
  double d16 = 0.0, d32 = 0.0;
  for (int j = 0; j < 16; ++j)
    d16 = std::max(d16, (k16.row(j) - k32.row(2 * j)).cwiseAbs().maxCoeff());
  for (int j = 0; j < 32; ++j)
    d32 = std::max(d32, (k32.row(j) - k64.row(2 * j)).cwiseAbs().maxCoeff());
  // Faster than any fixed power of 1/N until roundoff: each doubling must
  // beat (1/2)^6 or land on the roundoff floor.
  CHECK(d16 > 0.0);
  CHECK((d32 < d16 / 64.0 || d32 < 1e-11));
  CHECK(d32 < 1e-7);
}

TEST_CASE("make_curve: fixture shapes") {
  ClosedCurve circle = make_circle(1.0, 1, 64, 2);
  CHECK((geometry(circle).speed.array() - kTwoPi).abs().maxCoeff() < 1e-12);

  ClosedCurve doubled = make_circle(1.0, 2, 64, 2);
  CHECK(geometry(doubled).length == doctest::Approx(2.0 * kTwoPi).epsilon(1e-12));

  // Gerono figure eight: rotation index 0 via the tangent winding integral.
  ClosedCurve eight = make_figure_eight(1.0, 128, 2);
  CurveGeometry g = geometry(eight);
  Mat tp = differentiate(g.tangent, 1);
  double winding = 0.0;
  for (int j = 0; j < 128; ++j)
    winding += g.tangent(j, 0) * tp(j, 1) - g.tangent(j, 1) * tp(j, 0);
  winding /= 128 * kTwoPi;
  CHECK(std::abs(winding) < 1e-8);

  // Seeded Fourier curves are reproducible and immersed.
  ClosedCurve f1 = make_fourier_random(7, 0.9, 64, 2);
  ClosedCurve f2 = make_fourier_random(7, 0.9, 64, 2);
  CHECK((f1.points - f2.points).cwiseAbs().maxCoeff() == 0.0);
  CHECK(geometry(f1).speed.minCoeff() > 0.0);
}

TEST_CASE("curve constructor validates the sample grid") {
  CHECK_THROWS_AS(make_circle(1.0, 1, 15, 2), InvalidArgumentError);
  CHECK_THROWS_AS(make_circle(1.0, 1, 8, 2), InvalidArgumentError);
  CHECK_THROWS_AS(make_circle(1.0, 1, 64, 1), InvalidArgumentError);
  CHECK_THROWS_AS(make_circle(-1.0, 1, 64, 2), InvalidArgumentError);
}

TEST_CASE("geometry is safe to evaluate concurrently on shared and distinct curves") {
  ClosedCurve shared = make_ellipse(1.3, 0.7, 96, 2);
  CurveGeometry reference = geometry(shared);
  std::vector<Mat> results(8);
  std::vector<std::thread> workers;
  for (int i = 0; i < 8; ++i) {
    workers.emplace_back([&, i] {
      if (i % 2 == 0) {
        results[i] = geometry(shared).kappa;
      } else {
        ClosedCurve own = make_circle(1.0 + 0.1 * i, 1, 64 + 32 * (i % 3), 2);
        geometry(own);
        results[i] = geometry(shared).kappa;
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const Mat& k : results)
    CHECK((k - reference.kappa).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("3d embedding keeps planar geometry") {
  ClosedCurve c = make_ellipse(1.3, 0.7, 64, 3);
  CurveGeometry g = geometry(c);
  CHECK(g.tangent.col(2).cwiseAbs().maxCoeff() < 1e-14);
  ClosedCurve c2 = make_ellipse(1.3, 0.7, 64, 2);
  CHECK(geometry(c2).length == doctest::Approx(g.length).epsilon(1e-14));
}
