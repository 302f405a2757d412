#ifndef ELASTICA_ENERGY_HPP
#define ELASTICA_ENERGY_HPP

#include "curve.hpp"

// Modified elastic energy E(gamma) = int k^2 ds + lambda^2 L(gamma), its
// first and second variations, the L^2(ds) gradient, the Euler-Lagrange
// residual, and the auxiliary functional J used on arc-length-proportional
// curves.

namespace elastica {

struct EnergyParams {
  double lambda = 1.0;  // nonzero; all formulas use lambda^2

  explicit EnergyParams(double l) : lambda(l) {
    if (l == 0.0) throw InvalidArgumentError("lambda must be nonzero");
  }
};

double energy(const CurveGeometry& geom, const EnergyParams& params);

// dE_gamma(v) = int [2<g_ss,v_ss> - 3k^2 <g_s,v_s> - lambda^2 <g_ss,v>] ds
double first_variation(const CurveGeometry& geom, const EnergyParams& params,
                       const VectorField& v);

// Pointwise L^2(ds) gradient 2 g_ssss + 3(k^2 g_s)_s - lambda^2 g_ss, with
// arc-length derivatives applied iteratively (|g'|^-1 d_u).
VectorField l2_gradient(const CurveGeometry& geom, const EnergyParams& params);

struct ElResidual {
  VectorField field;  // 2 d_s^4 gamma + d_s((3k^2 - lambda^2) gamma_s)
  double norm = 0.0;  // L^2(ds) norm; stationarity certificate
};
ElResidual el_residual(const CurveGeometry& geom, const EnergyParams& params);

// Second variation d^2E_gamma(V, W).
double second_variation(const CurveGeometry& geom, const EnergyParams& params,
                        const VectorField& v, const VectorField& w);

// J(gamma) = L^-3 int |gamma''|^2 du + lambda^2 L; agrees with E on
// arc-length-proportional curves.
double j_functional(const ClosedCurve& curve, const CurveGeometry& geom,
                    const EnergyParams& params);
double j_variation(const ClosedCurve& curve, const CurveGeometry& geom,
                   const EnergyParams& params, const VectorField& v);

}  // namespace elastica

#endif
