#ifndef ELASTICA_KERNEL_HPP
#define ELASTICA_KERNEL_HPP

#include "curve.hpp"
#include "energy.hpp"

// Closed-form Green's function of the periodic operator d_s^4 - d_s^2 + 1
// on [0, L], built from the bivariate function A and the normalizer
// beta(L), and the O(N^2) kernel-quadrature H^2(ds) gradient backend.

namespace elastica {

struct GreensKernel {
  double length = 0.0;  // period L > 0
  double beta = 0.0;    // beta(L) = 2 sqrt(3) (cosh(sqrt(3)L/2) - cos(L/2))
};

GreensKernel make_kernel(double length);

// A(x1,x2) = sinh(sqrt3 x1/2) cos(x2/2) + sinh(sqrt3 x2/2) cos(x1/2)
//          + sqrt3 cosh(sqrt3 x1/2) sin(x2/2) + sqrt3 cosh(sqrt3 x2/2) sin(x1/2)
double a_func(double x1, double x2);

// First partials and the directional combinations (d2-d1)^m A, m = 1..3,
// derived symbolically from A.
struct APartials {
  double d1 = 0.0;     // d/dx1 A
  double d2 = 0.0;     // d/dx2 A
  double diff1 = 0.0;  // (d2 - d1) A
  double diff2 = 0.0;  // (d2 - d1)^2 A
  double diff3 = 0.0;  // (d2 - d1)^3 A
};
APartials a_partials(double x1, double x2);

// G(s,t) = A(L - |s-t|, |s-t|) / beta(L), 0 <= s,t <= L.
double green(const GreensKernel& kernel, double s, double t);

// Arc-length derivative of G in the second slot; zero on the diagonal.
double green_ds_tilde(const GreensKernel& kernel, double s, double t);

// Third-derivative jump across the diagonal; equals 1 for every L.
double jump_check(const GreensKernel& kernel);

// H^2(ds) gradient by direct kernel quadrature (backend A). Returns grad E.
VectorField h2_gradient_kernel(const ClosedCurve& curve, const CurveGeometry& geom,
                               const EnergyParams& params);

}  // namespace elastica

#endif
