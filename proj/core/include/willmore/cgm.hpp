#pragma once

// The conformal Gauss map Y : Sigma -> S^{3,1} in the R^3 model
//   Y = H (Phi, (|Phi|^2-1)/2, (|Phi|^2+1)/2) + (n, <n,Phi>, <n,Phi>)
// and the S^3 model Y = H_Psi (Psi, 1) + (N_Psi, 0), their derivatives, the
// closed-form gradient cross-checks, and blow-up oscillation diagnostics.

#include <memory>
#include <string>
#include <vector>

#include "willmore/minkowski.hpp"
#include "willmore/shape.hpp"

namespace willmore {

template <class Real>
using Vec4J = std::array<Jet2<Real>, 4>;

enum class CgmModel { R3, S3 };

template <class Real>
struct CgmSample {
  LorentzVecJ<Real> Y;  // jets of order (input order - 2)
  CgmModel model = CgmModel::R3;
  Real u = 0, v = 0;
  Real H_from_Y = 0;  // Y5 - Y4 at the point
};

// Y assembled from ShapeData by direct substitution into the definition.
template <class Real>
LorentzVecJ<Real> build_cgm(const ShapeData<Real>& s);

template <class Real>
CgmSample<Real> cgm_r3(const ImmersionChart& chart, Real u, Real v, int order);

// Jet-extracted dY (both coordinate directions).
template <class Real>
std::array<LorentzVecJ<Real>, 2> grad_cgm(const CgmSample<Real>& sample);

// Closed-form gradient dY = (dH)(Phi, ...) - A0(dPhi, <Phi,dPhi>, <Phi,dPhi>)
// with the A0 index raised by the metric; independent verification route.
template <class Real>
std::array<std::array<Real, 5>, 2> grad_cgm_closed_form(const ShapeData<Real>& s);

// Conformality defect of Y in a g-orthonormal oriented frame:
// <dz Y, dz Y>_eta as a complex number; vanishes iff Y* eta is proportional to g.
template <class Real>
std::complex<double> cgm_conformality_defect(const ShapeData<Real>& s,
                                             const LorentzVecJ<Real>& Y);

// Pullback defect: max |(Y* eta)_ij - (|A0|^2/2) g_ij| over ij (values).
template <class Real>
double cgm_pullback_defect(const ShapeData<Real>& s, const LorentzVecJ<Real>& Y);

// --- stereographic bridge ---------------------------------------------------------

// omega : R^3 -> S^3 \ {north pole}, omega(x) = (2x, |x|^2 - 1)/(|x|^2 + 1).
template <class Real>
Vec4J<Real> stereographic_omega(const Vec3J<Real>& x);

// pi : S^3 \ {north pole} -> R^3, pi(u) = (u1,u2,u3)/(1 - u4).
template <class Real>
Vec3J<Real> stereographic_pi(const Vec4J<Real>& u);

// --- S^3 charts -------------------------------------------------------------------

class S3Immersion {
 public:
  virtual ~S3Immersion() = default;
  virtual Vec4J<double> jets(double u, double v, int order) const = 0;
  virtual Vec4J<long double> jets(long double u, long double v, int order) const = 0;
};

struct S3Chart {
  Domain2 domain;
  std::shared_ptr<const S3Immersion> f;
  std::string label;
  double normal_sign = 1.0;  // orientation of the Hodge normal
};

// Built-in S^3 surfaces: great-sphere | latitude-sphere(rho0) | clifford |
// clifford-rotated.
S3Chart s3_zoo(const std::string& name, const std::vector<double>& params = {});
const std::vector<std::string>& s3_zoo_names();

// Shape data of an S^3 chart: N is the unit Hodge normal *(Psi ^ dPsi_u ^ dPsi_v)
// times the chart's normal_sign, A_ij = -<d_i Psi, d_j N>, H = tr_g A / 2.
template <class Real>
struct S3ShapeData {
  Vec4J<Real> psi;
  Vec4J<Real> dpsi_u, dpsi_v;
  Vec4J<Real> N;
  Mat2J<Real> g;
  Jet2<Real> det_g;
  Mat2J<Real> g_inv;
  Mat2J<Real> A;
  Jet2<Real> H;
  Mat2J<Real> A0;
};

template <class Real>
S3ShapeData<Real> s3_shape_at(const S3Chart& chart, Real u, Real v, int order);

template <class Real>
CgmSample<Real> cgm_s3(const S3Chart& chart, Real u, Real v, int order);

// Closed form eq-gY in the S^3 model: dY = (dH)(Psi,1) - A0(dPsi, 0), index raised.
template <class Real>
std::array<std::array<Real, 5>, 2> grad_cgm_s3_closed_form(const S3ShapeData<Real>& s);

// R^3 chart of the projected S^3 surface (same parameters): Phi = pi o Psi.
ImmersionChart project_s3_chart(const S3Chart& chart);

// --- oscillation ------------------------------------------------------------------

// osc over a sample set of |M Y(x) - M Y(y)|_euclid, estimated from the
// per-component envelope: sqrt(sum_i (max Y_i - min Y_i)^2).
double oscillation(const std::vector<LorentzVec>& samples, const LorentzMatrix& M);

// Y sampled on circles r in [s, s1] (geometric spacing) of a punctured-disk
// chart; returns the oscillation of M Y over the annulus.
double annulus_oscillation(const ImmersionChart& chart, double s, double s1,
                           const LorentzMatrix& M, int n_r = 16, int n_phi = 64);

}  // namespace willmore
