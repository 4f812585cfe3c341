#pragma once

// Linear algebra of R^{4,1} with eta = diag(+,+,+,+,-), and the representation
// of Conf(R^3) by eta-orthogonal 5x5 matrices acting on conformal Gauss maps.

#include <array>
#include <complex>

#include "willmore/jet.hpp"
#include "willmore/surface.hpp"

namespace willmore {

template <class Real>
using LorentzVecJ = std::array<Jet2<Real>, 5>;

using LorentzVec = std::array<double, 5>;

inline double eta_inner(const LorentzVec& a, const LorentzVec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

// Bilinear extension without conjugation: isotropic complex vectors encode
// conformality.
inline std::complex<double> eta_inner(const std::array<std::complex<double>, 5>& a,
                                      const std::array<std::complex<double>, 5>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

template <class Real>
Jet2<Real> eta_inner(const LorentzVecJ<Real>& a, const LorentzVecJ<Real>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

struct LorentzMatrix {
  std::array<std::array<double, 5>, 5> m{};

  static LorentzMatrix identity();
  LorentzVec apply(const LorentzVec& x) const;
  double det() const;
  // max |M^T eta M - eta| entry: membership defect in O(4,1)
  double eta_defect() const;
};

LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b);

template <class Real>
LorentzVecJ<Real> matrix_apply(const LorentzMatrix& M, const LorentzVecJ<Real>& y);

// eta-orthogonal representative of a conformal transformation of R^3, built
// factor by factor; satisfies CGM(Theta o Phi) = M * CGM(Phi) pointwise with
// the sign fixed by that identity (not just up to +-M).
LorentzMatrix lorentz_from_conformal(const ConformalMap3& map);

}  // namespace willmore
