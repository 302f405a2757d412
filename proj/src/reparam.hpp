#ifndef ELASTICA_REPARAM_HPP
#define ELASTICA_REPARAM_HPP

#include "curve.hpp"

// Arc-length-proportional machinery: the constraint map Phi, the
// projection P onto arc-length-proportional parametrisation, the parallel
// orthonormal frame, the controllability Gramian and the right inverse of
// dPhi, and the projection onto the tangent space of the constraint set.

namespace elastica {

struct SingularGramianError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FrameDriftError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonZeroMeanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Phi(gamma) = |gamma'| - L(gamma); zero exactly on arc-length-proportional
// curves, zero-mean by construction.
Vec phi(const CurveGeometry& geom);

// dPhi_gamma(v) = <v',T> - int <v',T> du (zero-mean).
Vec dphi(const CurveGeometry& geom, const VectorField& v);

// Resample gamma at the parameters where s(u)/L = j/N.
ClosedCurve project_arclength(const ClosedCurve& curve, const CurveGeometry& geom);

// Orthonormal normal frame transported by nu' = -<nu,g''> g'/|g'|^2.
struct FrameBundle {
  std::vector<Mat> normals;  // n-1 arrays of N unit vectors
  Mat initial_basis;         // rows: T(0), nu_1(0), ..., nu_{n-1}(0)
};
FrameBundle build_frame(const ClosedCurve& curve, const CurveGeometry& geom);

struct Gramian {
  Mat w;                 // n x n, W = int beta^2 sum_i nu_i nu_i^T du
  Vec bump;              // cutoff beta(u_j) = sin^2(pi u_j)
  double mu = 0.0;       // smallest eigenvalue
  double winv_norm = 0;  // ||W^{-1}|| = 1/mu
};
Gramian gramian(const CurveGeometry& geom, const FrameBundle& frame);

// Right inverse of dPhi: integrate y' = w T, correct by the controlled
// motion x' = B xi with xi = B^T W^{-1} y(1); returns y - x.
VectorField right_inverse(const CurveGeometry& geom, const FrameBundle& frame,
                          const Gramian& gram, const Vec& w);

// pr_{T Omega} V = V - r(dPhi V); requires an arc-length-proportional curve.
VectorField tangent_project(const CurveGeometry& geom, const FrameBundle& frame,
                            const Gramian& gram, const VectorField& v);
VectorField tangent_project(const ClosedCurve& curve, const CurveGeometry& geom,
                            const VectorField& v);

}  // namespace elastica

#endif
