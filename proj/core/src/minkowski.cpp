#include "willmore/minkowski.hpp"

#include <cmath>

namespace willmore {

LorentzMatrix LorentzMatrix::identity() {
  LorentzMatrix I;
  for (int i = 0; i < 5; ++i) I.m[i][i] = 1.0;
  return I;
}

LorentzVec LorentzMatrix::apply(const LorentzVec& x) const {
  LorentzVec r{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r[i] += m[i][j] * x[j];
  return r;
}

LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) {
  LorentzMatrix r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

double LorentzMatrix::det() const {
  // LU with partial pivoting on a copy.
  std::array<std::array<double, 5>, 5> a = m;
  double d = 1.0;
  for (int c = 0; c < 5; ++c) {
    int p = c;
    for (int r = c + 1; r < 5; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    if (a[c][c] == 0) return 0;
    d *= a[c][c];
    for (int r = c + 1; r < 5; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 5; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

double LorentzMatrix::eta_defect() const {
  const double eta[5] = {1, 1, 1, 1, -1};
  double worst = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += m[k][i] * eta[k] * m[k][j];
      const double target = (i == j) ? eta[i] : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  return worst;
}

template <class Real>
LorentzVecJ<Real> matrix_apply(const LorentzMatrix& M, const LorentzVecJ<Real>& y) {
  LorentzVecJ<Real> r;
  for (int i = 0; i < 5; ++i) {
    Jet2<Real> acc(y[0].order, Real(0));
    for (int j = 0; j < 5; ++j) acc = acc + jet_scale(y[j], Real(M.m[i][j]));
    r[i] = acc;
  }
  return r;
}

template LorentzVecJ<double> matrix_apply(const LorentzMatrix&, const LorentzVecJ<double>&);
template LorentzVecJ<long double> matrix_apply(const LorentzMatrix&,
                                               const LorentzVecJ<long double>&);

namespace {

LorentzMatrix translation_matrix(const std::array<double, 3>& v) {
  LorentzMatrix M = LorentzMatrix::identity();
  const double n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  for (int i = 0; i < 3; ++i) {
    M.m[i][3] = -v[i];
    M.m[i][4] = v[i];
    M.m[3][i] = v[i];
    M.m[4][i] = v[i];
  }
  M.m[3][3] = 1 - n2 / 2;
  M.m[3][4] = n2 / 2;
  M.m[4][3] = -n2 / 2;
  M.m[4][4] = 1 + n2 / 2;
  return M;
}

LorentzMatrix dilation_matrix(double s) {
  LorentzMatrix M = LorentzMatrix::identity();
  const double tau = std::log(s);
  M.m[3][3] = std::cosh(tau);
  M.m[3][4] = std::sinh(tau);
  M.m[4][3] = std::sinh(tau);
  M.m[4][4] = std::cosh(tau);
  return M;
}

LorentzMatrix rotation_matrix(const std::array<std::array<double, 3>, 3>& r) {
  LorentzMatrix M = LorentzMatrix::identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M.m[i][j] = r[i][j];
  return M;
}

// Unit inversion about the origin.  The overall sign (-1 on the x and 5th
// slots) is the one for which M * CGM(Phi) = CGM(inv o Phi) holds exactly on
// round spheres; it lands in SO(4,1).
LorentzMatrix inversion_origin_matrix() {
  LorentzMatrix M;
  M.m[0][0] = M.m[1][1] = M.m[2][2] = -1;
  M.m[3][3] = 1;
  M.m[4][4] = -1;
  return M;
}

}  // namespace

LorentzMatrix lorentz_from_conformal(const ConformalMap3& map) {
  LorentzMatrix M = LorentzMatrix::identity();
  for (const auto& f : map.factors) {
    LorentzMatrix F;
    switch (f.kind) {
      case ConformalFactor::Kind::Translation:
        F = translation_matrix(f.v);
        break;
      case ConformalFactor::Kind::Dilation:
        F = dilation_matrix(f.s);
        break;
      case ConformalFactor::Kind::Rotation:
        F = rotation_matrix(f.rot);
        break;
      case ConformalFactor::Kind::Inversion: {
        const LorentzMatrix T = translation_matrix(f.v);
        const LorentzMatrix Tinv = translation_matrix({-f.v[0], -f.v[1], -f.v[2]});
        F = T * inversion_origin_matrix() * Tinv;
        break;
      }
    }
    M = F * M;
  }
  return M;
}

}  // namespace willmore
