#include "energy.hpp"

#include <cmath>

namespace elastica {

namespace {
Vec row_dots(const Mat& a, const Mat& b) {
  return (a.array() * b.array()).rowwise().sum();
}
}  // namespace

double energy(const CurveGeometry& geom, const EnergyParams& params) {
  return integrate_ds(geom, geom.ksq) + params.lambda * params.lambda * geom.length;
}

double first_variation(const CurveGeometry& geom, const EnergyParams& params,
                       const VectorField& v) {
  const double lam2 = params.lambda * params.lambda;
  Mat vs = arc_derivative(geom, v.values);
  Mat vss = arc_second_derivative(geom, v.values);
  Vec integrand = 2.0 * row_dots(geom.kappa, vss) -
                  3.0 * (geom.ksq.array() * row_dots(geom.tangent, vs).array()).matrix() -
                  lam2 * row_dots(geom.kappa, v.values);
  return integrate_ds(geom, integrand);
}

VectorField l2_gradient(const CurveGeometry& geom, const EnergyParams& params) {
  const double lam2 = params.lambda * params.lambda;
  // Iterated arc-length derivatives of gamma starting from the unit tangent.
  Mat g_ss = arc_derivative(geom, geom.tangent);
  Mat g_s3 = arc_derivative(geom, g_ss);
  Mat g_s4 = arc_derivative(geom, g_s3);
  Mat k2T = geom.tangent.array().colwise() * geom.ksq.array();
  Mat mid = arc_derivative(geom, k2T);
  return VectorField{2.0 * g_s4 + 3.0 * mid - lam2 * g_ss};
}

ElResidual el_residual(const CurveGeometry& geom, const EnergyParams& params) {
  const double lam2 = params.lambda * params.lambda;
  Mat g_ss = arc_derivative(geom, geom.tangent);
  Mat g_s3 = arc_derivative(geom, g_ss);
  Mat g_s4 = arc_derivative(geom, g_s3);
  Mat coefT = geom.tangent.array().colwise() * (3.0 * geom.ksq.array() - lam2);
  Mat field = 2.0 * g_s4 + arc_derivative(geom, coefT);
  double norm = std::sqrt(integrate_ds(geom, row_dots(field, field)));
  return ElResidual{VectorField{std::move(field)}, norm};
}

double second_variation(const CurveGeometry& geom, const EnergyParams& params,
                        const VectorField& v, const VectorField& w) {
  const double lam2 = params.lambda * params.lambda;
  const Mat& T = geom.tangent;
  const Mat& K = geom.kappa;

  Mat vs = arc_derivative(geom, v.values);
  Mat vss = arc_second_derivative(geom, v.values);
  Mat ws = arc_derivative(geom, w.values);
  Mat wss = arc_second_derivative(geom, w.values);

  Vec vss_T = row_dots(vss, T);
  Vec vs_K = row_dots(vs, K);
  Vec vs_T = row_dots(vs, T);
  Vec vss_K = row_dots(vss, K);

  // <W_ss, 2V_ss - 2<V_ss,T>T - 2<V_s,k>T - 6<V_s,T>k>
  Mat line1 = 2.0 * vss - 2.0 * (T.array().colwise() * vss_T.array()).matrix() -
              2.0 * (T.array().colwise() * vs_K.array()).matrix() -
              6.0 * (K.array().colwise() * vs_T.array()).matrix();
  // <W_s, -2<V_s,k>k - 6<V_ss,k>T - 2<V_ss,T>k>
  Mat line2 = -2.0 * (K.array().colwise() * vs_K.array()).matrix() -
              6.0 * (T.array().colwise() * vss_K.array()).matrix() -
              2.0 * (K.array().colwise() * vss_T.array()).matrix();
  // <W_s, -(3k^2 - l^2)V_s + (15k^2 - l^2)<V_s,T>T>
  Mat line3 = -(vs.array().colwise() * (3.0 * geom.ksq.array() - lam2)).matrix() +
              (T.array().colwise() * ((15.0 * geom.ksq.array() - lam2) * vs_T.array())).matrix();

  Vec integrand = row_dots(wss, line1) + row_dots(ws, line2 + line3);
  return integrate_ds(geom, integrand);
}

double j_functional(const ClosedCurve& curve, const CurveGeometry& geom,
                    const EnergyParams& params) {
  const double L = geom.length;
  Mat d2 = differentiate(curve.points, 2);
  double bend = d2.array().square().rowwise().sum().mean();
  return bend / (L * L * L) + params.lambda * params.lambda * L;
}

double j_variation(const ClosedCurve& curve, const CurveGeometry& geom,
                   const EnergyParams& params, const VectorField& v) {
  const double L = geom.length;
  Mat d2 = differentiate(curve.points, 2);
  double bend = d2.array().square().rowwise().sum().mean();

  Mat vp = differentiate(v.values, 1);
  double dL = row_dots(vp, geom.tangent).mean();
  Mat vpp = differentiate(v.values, 2);
  double cross = row_dots(vpp, d2).mean();

  const double lam2 = params.lambda * params.lambda;
  return -3.0 * dL * bend / std::pow(L, 4) + 2.0 * cross / (L * L * L) + lam2 * dL;
}

}  // namespace elastica
