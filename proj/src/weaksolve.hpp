#ifndef ELASTICA_WEAKSOLVE_HPP
#define ELASTICA_WEAKSOLVE_HPP

#include "curve.hpp"
#include "energy.hpp"

// Weak-form H^2(ds) gradient (backend B): solve <g, v>_{H^2(ds)} = dE(v)
// over the real trigonometric basis {1, cos 2pi k u, sin 2pi k u, cos pi N u}.
// The inner product does not mix coordinate directions, so the Gram matrix
// of the full nN-dimensional problem is block diagonal with n identical
// N x N scalar blocks; one factorization serves all coordinates.

namespace elastica {

struct FactorizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar basis values on the grid, cached per N: columns are basis
// functions, rows are nodes. `d1` and `d2` hold analytic u-derivatives.
struct BasisTables {
  Mat val;
  Mat d1;
  Mat d2;
};
const BasisTables& basis_tables(int n);

struct GramSystem {
  Mat matrix;      // N x N scalar block of the H^2(ds) Gram form
  bool diagonal;   // fast path: arc-length-proportional curve
  Vec diag;        // diagonal entries when `diagonal`
};

GramSystem assemble_gram(const ClosedCurve& curve, const CurveGeometry& geom);

VectorField h2_gradient_weak(const ClosedCurve& curve, const CurveGeometry& geom,
                             const EnergyParams& params);

}  // namespace elastica

#endif
