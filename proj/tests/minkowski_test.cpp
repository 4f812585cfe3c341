#include "willmore/minkowski.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "willmore/cgm.hpp"

namespace willmore {
namespace {

TEST(Eta, InnerProductCases) {
  const LorentzVec e4 = {0, 0, 0, 1, 0};
  const LorentzVec null = {0, 0, 0, 1, 1};
  const LorentzVec timelike = {1, 2, 0, 0, 3};
  EXPECT_DOUBLE_EQ(eta_inner(e4, e4), 1.0);              // spacelike unit
  EXPECT_DOUBLE_EQ(eta_inner(null, null), 0.0);          // null
  EXPECT_DOUBLE_EQ(eta_inner(timelike, timelike), -4.0); // timelike
  // complexified, bilinear without conjugation: (1, i, 0, 0, 0) is isotropic
  const std::array<std::complex<double>, 5> v = {
      std::complex<double>(1, 0), std::complex<double>(0, 1), 0.0, 0.0, 0.0};
  EXPECT_NEAR(std::abs(eta_inner(v, v)), 0.0, 1e-16);
}

TEST(Lorentz, GeneratorsAreEtaOrthogonal) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uni(-2, 2), ang(0, 2 * M_PI);
  for (int i = 0; i < 40; ++i) {
    ConformalMap3 m;
    switch (i % 4) {
      case 0:
        m = m.then(ConformalFactor::translation({uni(rng), uni(rng), uni(rng)}));
        break;
      case 1:
        m = m.then(ConformalFactor::dilation(std::exp(uni(rng))));
        break;
      case 2: {
        const double a = ang(rng);
        m = m.then(ConformalFactor::rotation(
            {{{1, 0, 0}, {0, std::cos(a), -std::sin(a)}, {0, std::sin(a), std::cos(a)}}}));
        break;
      }
      case 3:
        m = m.then(ConformalFactor::inversion({uni(rng), uni(rng), 3 + uni(rng)}));
        break;
    }
    const LorentzMatrix M = lorentz_from_conformal(m);
    EXPECT_LT(M.eta_defect(), 1e-10);
    EXPECT_NEAR(M.det(), 1.0, 1e-10);  // all generators land in SO(4,1)
  }
}

TEST(Lorentz, ClosureUnderProductsAndInverses) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(-1, 1);
  ConformalMap3 m;
  m = m.then(ConformalFactor::translation({0.4, -0.2, 1.0}))
          .then(ConformalFactor::inversion({0, 0, 4}))
          .then(ConformalFactor::dilation(2.5))
          .then(ConformalFactor::rotation({{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}}));
  const LorentzMatrix M = lorentz_from_conformal(m);
  EXPECT_LT(M.eta_defect(), 1e-9);
  // eta M^T eta is the inverse
  LorentzMatrix inv;
  const double eta[5] = {1, 1, 1, 1, -1};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) inv.m[i][j] = eta[i] * M.m[j][i] * eta[j];
  const LorentzMatrix prod = M * inv;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(prod.m[i][j], i == j ? 1.0 : 0.0, 1e-9);
  (void)uni;
  (void)rng;
}

TEST(Lorentz, SpecialMatrices) {
  // identity map
  const LorentzMatrix I = lorentz_from_conformal(ConformalMap3::identity());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(I.m[i][j], i == j ? 1.0 : 0.0);
  // rotations embed block-diagonally and fix the last two slots
  const std::array<std::array<double, 3>, 3> r = {
      {{0.36, -0.8, 0.48}, {0.8, 0.6, 0.0}, {-0.48, 0.288, 0.864}}};
  const LorentzMatrix R =
      lorentz_from_conformal(ConformalMap3::identity().then(ConformalFactor::rotation(r)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(R.m[i][j], r[i][j]);
  EXPECT_DOUBLE_EQ(R.m[3][3], 1.0);
  EXPECT_DOUBLE_EQ(R.m[4][4], 1.0);
  EXPECT_DOUBLE_EQ(R.m[3][4], 0.0);
  // dilation by e is the rapidity-1 boost in the (4,5) plane
  const LorentzMatrix B = lorentz_from_conformal(
      ConformalMap3::identity().then(ConformalFactor::dilation(std::exp(1.0))));
  const LorentzVec b = B.apply({0, 0, 0, 1, 0});
  EXPECT_NEAR(b[3], std::cosh(1.0), 1e-14);
  EXPECT_NEAR(b[4], std::sinh(1.0), 1e-14);
}

TEST(Lorentz, MatrixApplyOnJets) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> uni(-1, 1);
  LorentzVecJ<double> y;
  for (int i = 0; i < 5; ++i) {
    y[i] = Jet2<double>(2, uni(rng));
    for (int k = 1; k < jet_coeff_count(2); ++k) y[i].c[k] = uni(rng);
  }
  const LorentzMatrix I = LorentzMatrix::identity();
  const LorentzVecJ<double> same = matrix_apply(I, y);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < jet_coeff_count(2); ++k) EXPECT_DOUBLE_EQ(same[i].c[k], y[i].c[k]);
  // eta-orthogonal matrices preserve |Y|^2_eta coefficientwise
  const LorentzMatrix M = lorentz_from_conformal(
      ConformalMap3::identity().then(ConformalFactor::dilation(1.7)).then(
          ConformalFactor::translation({0.2, 0.5, -0.3})));
  const LorentzVecJ<double> my = matrix_apply(M, y);
  const Jet2<double> n1 = eta_inner(y, y);
  const Jet2<double> n2 = eta_inner(my, my);
  for (int k = 0; k < jet_coeff_count(2); ++k) EXPECT_NEAR(n1.c[k], n2.c[k], 1e-12);
}

// CGM(Theta o Phi) = M_Theta CGM(Phi): the operational content of the
// SO(4,1) representation, checked on the ellipsoid.
TEST(Lorentz, CgmCorrespondence) {
  const ImmersionChart ell = zoo("ellipsoid", {1, 1, 2});
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> uni(-1, 1), ang(0, 2 * M_PI), dt(-2, 2);
  ConformalMap3 maps[3];
  maps[0] = ConformalMap3::identity().then(ConformalFactor::dilation(2.0));
  maps[1] = ConformalMap3::identity()
                .then(ConformalFactor::inversion({0.2, -3.0, 0.4}))
                .then(ConformalFactor::translation({1.0, 0.2, -0.5}));
  maps[2] = ConformalMap3::identity()
                .then(ConformalFactor::rotation({{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}))
                .then(ConformalFactor::dilation(0.6))
                .then(ConformalFactor::inversion({0, 0, 3.3}));
  for (const auto& m : maps) {
    const LorentzMatrix M = lorentz_from_conformal(m);
    const ImmersionChart moved = apply_conformal(m, ell);
    for (int i = 0; i < 100; ++i) {
      const double u = dt(rng), v = ang(rng);
      const CgmSample<double> a = cgm_r3<double>(ell, u, v, 2);
      const CgmSample<double> b = cgm_r3<double>(moved, u, v, 2);
      LorentzVec ya{}, yb{};
      for (int c = 0; c < 5; ++c) {
        ya[c] = a.Y[c].value();
        yb[c] = b.Y[c].value();
      }
      const LorentzVec my = M.apply(ya);
      double scale = 1;
      for (int c = 0; c < 5; ++c) scale = std::max(scale, std::abs(yb[c]));
      for (int c = 0; c < 5; ++c) EXPECT_NEAR(my[c], yb[c], 1e-6 * scale);
    }
  }
}

}  // namespace
}  // namespace willmore
