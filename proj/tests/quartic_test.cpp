#include "willmore/quartic.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "willmore/dsl.hpp"

namespace willmore {
namespace {

// Synthetic non-Willmore conformal-to-tolerance chart: a small cubic graph over
// the plane, carried on a punctured disk with a spurious marker.
ImmersionChart synthetic_graph_chart() {
  ImmersionChart ch = chart_from_dsl(
      "(exp(-t)*cos(p), exp(-t)*sin(p),"
      " 0.05*((exp(-t)*cos(p))^3 - 3*exp(-t)*cos(p)*(exp(-t)*sin(p))^2))",
      Domain2::punctured_disk(2.2, 1e-6), "cubic-graph");
  ch.punctures.push_back({-1.0});
  return ch;
}

ImmersionChart punctured_sphere_chart() {
  ImmersionChart ch = chart_from_dsl(
      "(2*exp(-t)*cos(p)/(1+exp(-2*t)), 2*exp(-t)*sin(p)/(1+exp(-2*t)),"
      " (1-exp(-2*t))/(1+exp(-2*t)))",
      Domain2::punctured_disk(0.0, 1e-6), "sphere-punctured");
  ch.punctures.push_back({0.0});
  return ch;
}

TEST(Quartic, SphereVanishes) {
  const ImmersionChart sph = zoo("sphere");
  const QuarticSample s = quartic_at(sph, 0.4, 1.3);
  EXPECT_LT(std::abs(s.q), 1e-12);
  EXPECT_LT(s.scaled_q, 1e-12);
}

TEST(Quartic, CliffordConstantOneSixteenth) {
  const ImmersionChart cl = zoo("clifford-torus-projected");
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(0, 2 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const QuarticSample s = quartic_at(cl, d(rng), d(rng));
    EXPECT_NEAR(16 * s.q.real(), 1.0, 1e-10);
    EXPECT_LT(std::abs(s.q.imag()), 1e-12);
    EXPECT_LT(std::abs(s.dzbar_q), 1e-8 * std::abs(s.q));
    // conformality identities feeding the pole estimate
    EXPECT_LT(s.conf_defect, 1e-8 * (s.dzY_sq + 1e-14));
    EXPECT_LT(s.mixed_defect, 1e-8 * (std::sqrt(s.d2Y_sq * s.dzY_sq) + 1e-14));
  }
  const ScanReport scan = holomorphicity_scan(cl, {64, 64});
  EXPECT_LT(scan.normalized_residual, 1e-8);
  EXPECT_LT(scan.q_rel_variation, 1e-6);
}

TEST(Quartic, InvertedMinimalSurfacesVanishToRounding) {
  for (const char* name : {"inverted-catenoid", "inverted-enneper"}) {
    const ImmersionChart ch = zoo(name);
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> dt(ch.domain.u0 + 0.2, 8.0), dp(0, 2 * M_PI);
    for (int i = 0; i < 100; ++i) {
      const QuarticSample s = quartic_at(ch, dt(rng), dp(rng));
      EXPECT_LT(s.scaled_q, 1e-8) << name;
      EXPECT_LT(s.conf_defect, 1e-8 * (s.dzY_sq + 1e-14)) << name;
    }
    const ScanReport scan = holomorphicity_scan(ch, {64, 64});
    EXPECT_LT(scan.max_scaled_q, 1e-8) << name;
    EXPECT_LT(scan.normalized_residual, 1e-6) << name;
  }
}

TEST(Quartic, NonConformalChartRefused) {
  EXPECT_THROW(quartic_at(zoo("ellipsoid", {1, 1, 2}), 0.3, 1.0), NumericalError);
  EXPECT_THROW(quartic_at(zoo("torus-of-revolution"), 0.3, 1.0), NumericalError);
}

TEST(Quartic, NonWillmoreConformalScanIsWellFormed) {
  // no smallness claim applies off the Willmore class; the report is still
  // well-formed (round cylinder: conformal, non-Willmore)
  const ImmersionChart cyl = chart_from_dsl(
      "(cos(p), sin(p), t)", Domain2{DomainKind::Cylinder, -2, 2, 0, 2 * M_PI, false, true},
      "cylinder");
  const ScanReport scan = holomorphicity_scan(cyl, {24, 24});
  EXPECT_TRUE(std::isfinite(scan.max_abs_q));
  EXPECT_TRUE(std::isfinite(scan.normalized_residual));
  EXPECT_GT(scan.scale, 0.0);
}

// Chart rescaling z -> 2z multiplies the coefficient by 2^-4; equivalently the
// half-scale chart w -> Phi(2w) reports 2^4 q.
struct DoubledClifford final : ImmersionFormula<DoubledClifford> {
  std::shared_ptr<const Immersion> base = zoo("clifford-torus-projected").f;
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    // w -> Phi(2w): jets at the scaled point pick up 2^{a+b} per coefficient
    Vec3J<Real> at = base->jets(Real(2) * u, Real(2) * v, k);
    for (auto& comp : at)
      for (int d = 0; d <= k; ++d)
        for (int b = 0; b <= d; ++b) comp.c[jet_index(d - b, b)] *= std::pow(Real(2), d);
    return at;
  }
};

TEST(Quartic, TransformationLaw) {
  ImmersionChart half;
  half.domain = Domain2::flat_torus();
  half.f = std::make_shared<DoubledClifford>();
  half.label = "clifford-half-scale";
  const QuarticSample a = quartic_at(zoo("clifford-torus-projected"), 0.8, 2.6);
  const QuarticSample b = quartic_at(half, 0.4, 1.3);
  EXPECT_NEAR(b.q.real(), 16.0 * a.q.real(), 1e-8 * std::abs(16.0 * a.q.real()));
  EXPECT_LT(std::abs(b.q.imag()), 1e-10);
}

TEST(Quartic, DzbarMatchesFiniteDifferences) {
  // The spec-level cross-check lives on the Clifford torus: q is constant,
  // so the 4th-order stencil and the jet route must both sit inside the FD
  // truncation budget.
  {
    const ImmersionChart cl = zoo("clifford-torus-projected");
    const double u = 1.0, v = 2.2, h = 5e-3;
    const auto qat = [&](double du, double dv) { return quartic_at(cl, u + du, v + dv).q; };
    const std::complex<double> qx =
        (-qat(2 * h, 0) + 8.0 * qat(h, 0) - 8.0 * qat(-h, 0) + qat(-2 * h, 0)) / (12 * h);
    const std::complex<double> qy =
        (-qat(0, 2 * h) + 8.0 * qat(0, h) - 8.0 * qat(0, -h) + qat(0, -2 * h)) / (12 * h);
    const std::complex<double> fd = 0.5 * (qx + std::complex<double>(0, 1) * qy);
    const double budget = 1e-16 * 0.0625 / h + 1e-13;  // rounding/h + truncation
    const QuarticSample s0 = quartic_at(cl, u, v);
    EXPECT_LT(std::abs(fd - s0.dzbar_q), budget);
    EXPECT_LT(std::abs(s0.dzbar_q), 1e-12);
  }
  // Nonzero-q data point: the synthetic cubic graph; q is tiny there, so the
  // comparison carries a rounding floor.
  {
    const ImmersionChart ch = synthetic_graph_chart();
    const double u = 3.0, v = 0.9;
    const QuarticSample s0 = quartic_at(ch, u, v, Precision::Extended);
    ASSERT_GT(std::abs(s0.dzbar_q), 1e-16);
    const double h = 2e-3;
    const auto qat = [&](double du, double dv) {
      return quartic_at(ch, u + du, v + dv, Precision::Extended).q;
    };
    const std::complex<double> qx =
        (-qat(2 * h, 0) + 8.0 * qat(h, 0) - 8.0 * qat(-h, 0) + qat(-2 * h, 0)) / (12 * h);
    const std::complex<double> qy =
        (-qat(0, 2 * h) + 8.0 * qat(0, h) - 8.0 * qat(0, -h) + qat(0, -2 * h)) / (12 * h);
    // chart coordinate is z = -t + i phi: d/dz-bar = (-d_t + i d_phi)/2
    const std::complex<double> fd = 0.5 * (-qx + std::complex<double>(0, 1) * qy);
    EXPECT_LT(std::abs(fd - s0.dzbar_q), 0.05 * std::abs(s0.dzbar_q) + 1e-16);
  }
}

TEST(Fit, ExactPowerLaw) {
  // f(r) = r^-2 injected into the fitter
  const std::vector<double> radii = radius_ladder(1e-1, 0.5, 8);
  std::vector<double> vals;
  for (const double r : radii) vals.push_back(1.0 / (r * r));
  const ExponentFit f = fit_loglog(radii, vals);
  EXPECT_NEAR(f.slope, -2.0, 1e-6);
  EXPECT_LT(f.residual, 1e-10);
  EXPECT_FALSE(f.degenerate);
  EXPECT_THROW(radius_ladder(-1, 0.5, 4), ConfigError);
  EXPECT_THROW(fit_loglog({1.0}, {1.0}), ConfigError);
}

TEST(PoleOrder, VacuousOnClassifiedSurfaces) {
  const PoleOrderReport r =
      pole_order_fit(zoo("inverted-catenoid"), radius_ladder(1e-2, std::pow(10.0, -0.25), 9));
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.theorem_consistent);
  EXPECT_TRUE(r.fit.degenerate);
}

TEST(PoleOrder, SyntheticControlReportsFiniteSlope) {
  const ImmersionChart ch = synthetic_graph_chart();
  const PoleOrderReport r = pole_order_fit(ch, radius_ladder(3e-2, std::pow(10.0, -0.25), 6));
  EXPECT_FALSE(r.vacuous);
  EXPECT_TRUE(std::isfinite(r.fit.slope));
  EXPECT_TRUE(std::isfinite(r.fit.residual));
}

TEST(BranchExponents, InvertedSurfaces) {
  {
    const BranchExponents be =
        branch_exponents(zoo("inverted-catenoid"), radius_ladder(1e-2, std::pow(10.0, -0.25), 9));
    EXPECT_TRUE(be.consistent);
    EXPECT_NEAR(be.theta, 1.0, 0.05);
    EXPECT_TRUE(be.h_log_type);  // H ~ gamma log|z|
    EXPECT_GT(be.log_coeff, 0.0);
  }
  {
    const BranchExponents be =
        branch_exponents(zoo("inverted-enneper"), radius_ladder(1e-3, std::pow(10.0, -0.25), 9));
    EXPECT_TRUE(be.consistent);
    EXPECT_NEAR(be.theta, 2.0, 0.05);
    EXPECT_FALSE(be.h_log_type);
    EXPECT_NEAR(be.alpha, 2.0, 0.05);  // alpha in [0, theta], attained at 2
  }
}

TEST(BranchExponents, SpuriousMarkerGivesThetaZero) {
  const BranchExponents be =
      branch_exponents(punctured_sphere_chart(), radius_ladder(1e-2, std::pow(10.0, -0.25), 8));
  EXPECT_TRUE(be.consistent);
  EXPECT_NEAR(be.theta, 0.0, 0.05);
}

TEST(Scaling, ClassifiedSurfacesAndControls) {
  std::vector<double> zs;
  for (int k = 1; k <= 6; ++k) zs.push_back(std::pow(2.0, -k));
  for (const char* name : {"inverted-catenoid", "inverted-enneper"}) {
    const ScalingReport r = scaling_estimate(zoo(name), zs);
    EXPECT_TRUE(r.decayed) << name;
    for (const double e : r.entries) EXPECT_LT(e, 1e-8) << name;
  }
  // synthetic q ~ 1/z control: entries |z| sup|q| are constant, must FAIL
  EXPECT_FALSE(scaling_verdict({1.0, 1.0, 1.0, 1.0}));
  EXPECT_FALSE(scaling_verdict({1.0, 1.1, 0.9, 1.0}));
  // genuine o(1) decay passes
  EXPECT_TRUE(scaling_verdict({1.0, 0.5, 0.25, 0.12}));
  EXPECT_TRUE(scaling_verdict({1e-12, 1e-11, 1e-12, 1e-13}));  // vacuous rounding level
}

}  // namespace
}  // namespace willmore
