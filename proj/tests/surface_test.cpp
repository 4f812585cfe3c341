#include "willmore/surface.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "willmore/quartic.hpp"
#include "willmore/shape.hpp"

namespace willmore {
namespace {

std::pair<double, double> random_point(const ImmersionChart& ch, std::mt19937_64& rng) {
  const double u1 = ch.domain.kind == DomainKind::PuncturedDisk ? ch.t_cut() : ch.domain.u1;
  std::uniform_real_distribution<double> du(ch.domain.u0, u1), dv(ch.domain.v0, ch.domain.v1);
  return {du(rng), dv(rng)};
}

TEST(Zoo, NamesAndErrors) {
  for (const auto& name : zoo_names()) EXPECT_NO_THROW(zoo(name)) << name;
  EXPECT_THROW(zoo("helicoid"), ConfigError);
  EXPECT_THROW(zoo("ellipsoid", {1.0, -1.0, 2.0}), ConfigError);
  EXPECT_THROW(zoo("torus-of-revolution", {1.0, 2.0}), ConfigError);
}

TEST(Zoo, ImmersionCheck) {
  // min |d_x Phi x d_y Phi| > 1e-12 away from marked punctures; on punctured
  // charts the area element is taken in the disk gauge (x = e^{-t+i phi})
  std::mt19937_64 rng(41);
  for (const auto& name : zoo_names()) {
    ImmersionChart ch = zoo(name);
    const bool punctured = ch.domain.kind == DomainKind::PuncturedDisk;
    double mn = 1e300;
    for (int i = 0; i < 200; ++i) {
      auto [u, v] = random_point(ch, rng);
      if (punctured) u = ch.domain.u0 + (3.0 - ch.domain.u0) * (u - ch.domain.u0) /
                             (ch.t_cut() - ch.domain.u0);
      const ShapeData<double> s = shape_at(ch, u, v, 2);
      const double gauge = punctured ? std::exp(2 * u) : 1.0;
      mn = std::min(mn, std::sqrt(s.det_g.value()) * gauge);
    }
    EXPECT_GT(mn, 1e-12) << name;
  }
}

TEST(Zoo, SphereIsRound) {
  const ImmersionChart ch = zoo("sphere");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto [u, v] = random_point(ch, rng);
    const Vec3J<double> p = eval_jets<double>(ch, u, v, 0);
    const double r2 = p[0].value() * p[0].value() + p[1].value() * p[1].value() +
                      p[2].value() * p[2].value();
    EXPECT_NEAR(r2, 1.0, 1e-14);
  }
  EXPECT_TRUE(ch.punctures.empty());
}

TEST(Zoo, DeclaredBranchOrders) {
  EXPECT_EQ(zoo("inverted-catenoid").punctures.size(), 1u);
  EXPECT_DOUBLE_EQ(zoo("inverted-catenoid").punctures[0].declared_order, 1.0);
  EXPECT_EQ(zoo("inverted-enneper").punctures.size(), 1u);
  EXPECT_DOUBLE_EQ(zoo("inverted-enneper").punctures[0].declared_order, 2.0);
}

// Declared theta matches the fitted slope of log |grad Phi| vs log r.
TEST(Zoo, DeclaredThetaMatchesFit) {
  for (const char* name : {"inverted-catenoid", "inverted-enneper"}) {
    const ImmersionChart ch = zoo(name);
    const double r0 = std::string(name) == "inverted-enneper" ? 1e-3 : 1e-2;
    const BranchExponents be = branch_exponents(ch, radius_ladder(r0, std::pow(10.0, -0.25), 9));
    EXPECT_TRUE(be.consistent) << name;
    EXPECT_NEAR(be.theta, ch.punctures[0].declared_order, 0.05) << name;
  }
}

TEST(Conformal, IdentityActsTrivially) {
  const ImmersionChart base = zoo("ellipsoid");
  const ImmersionChart same = apply_conformal(ConformalMap3::identity(), base);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto [u, v] = random_point(base, rng);
    const Vec3J<double> a = eval_jets<double>(base, u, v, 3);
    const Vec3J<double> b = eval_jets<double>(same, u, v, 3);
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < jet_coeff_count(3); ++k) EXPECT_DOUBLE_EQ(a[c].c[k], b[c].c[k]);
  }
}

TEST(Conformal, CompositionLaw) {
  // apply(T2, apply(T1, Phi)) == apply(T2 o T1, Phi) at all tested jets
  const ImmersionChart base = zoo("torus-of-revolution");
  ConformalMap3 t1;
  t1 = t1.then(ConformalFactor::dilation(1.7)).then(ConformalFactor::translation({0.3, -1, 2}));
  ConformalMap3 t2;
  t2 = t2.then(ConformalFactor::inversion({0, 0, 5.0}))
          .then(ConformalFactor::rotation({{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}}));
  const ImmersionChart two_steps = apply_conformal(t2, apply_conformal(t1, base));
  const ImmersionChart one_step = apply_conformal(t1.then(t2), base);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto [u, v] = random_point(base, rng);
    const Vec3J<double> a = eval_jets<double>(two_steps, u, v, 3);
    const Vec3J<double> b = eval_jets<double>(one_step, u, v, 3);
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < jet_coeff_count(3); ++k)
        EXPECT_NEAR(a[c].c[k], b[c].c[k], 1e-12 * (1.0 + std::abs(b[c].c[k])));
  }
}

TEST(Conformal, InvertedCatenoidMatchesComposition) {
  // the zoo chart is inversion o (doubly covered catenoid end), pointwise
  const ImmersionChart inv = zoo("inverted-catenoid");
  const ImmersionChart cat = zoo("catenoid");
  const ConformalMap3 iota = ConformalMap3::identity().then(ConformalFactor::inversion({0, 0, 0}));
  const ImmersionChart icat = apply_conformal(iota, cat);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dt(0.2, 1.4), dp(0, 2 * M_PI);
  for (int i = 0; i < 50; ++i) {
    const double t = dt(rng), p = dp(rng);
    const Vec3J<double> a = eval_jets<double>(inv, t, p, 0);
    const Vec3J<double> b = eval_jets<double>(icat, 2 * t, std::fmod(2 * p, 2 * M_PI), 0);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(a[c].value(), b[c].value(), 1e-13);
  }
  // |Phi| -> 0 toward the puncture
  const Vec3J<double> far = eval_jets<double>(inv, 12.0, 0.3, 0);
  EXPECT_LT(std::abs(far[0].value()) + std::abs(far[1].value()) + std::abs(far[2].value()),
            1e-9);
}

TEST(Conformal, DilationPreservesSphereEnergies) {
  const ImmersionChart sph = zoo("sphere");
  const ImmersionChart big =
      apply_conformal(ConformalMap3::identity().then(ConformalFactor::dilation(2.0)), sph);
  const EnergyReport e0 = energies(sph, {64, 48});
  const EnergyReport e1 = energies(big, {64, 48});
  EXPECT_NEAR(e0.W, 4 * M_PI, 1e-6);
  EXPECT_NEAR(e1.W, e0.W, 1e-9);
  EXPECT_LT(e0.E, 1e-10);
  EXPECT_LT(e1.E, 1e-10);
}

TEST(Conformal, InversionCenterCollision) {
  const ImmersionChart sph = zoo("sphere");
  // center on the unit sphere
  const ImmersionChart bad = apply_conformal(
      ConformalMap3::identity().then(ConformalFactor::inversion({1.0, 0.0, 0.0})), sph);
  bool hit = false;
  for (double p = 0; p < 2 * M_PI; p += 1e-3) {
    try {
      (void)eval_jets<double>(bad, 0.0, p, 1);
    } catch (const NumericalError&) {
      hit = true;
      break;
    }
  }
  EXPECT_TRUE(hit);
}

TEST(Puncture, EvaluationGuard) {
  const ImmersionChart ch = zoo("inverted-catenoid");
  EXPECT_THROW(eval_jets<double>(ch, ch.t_cut() + 0.5, 0.0, 1), NumericalError);
  EXPECT_NO_THROW(eval_jets<double>(ch, ch.t_cut() - 0.5, 0.0, 1));
}

TEST(Blowup, AnnulusEnergiesMatch) {
  const ImmersionChart ch = zoo("inverted-catenoid");
  const std::vector<double> radii = {0.25, 0.05};
  const auto seq = blowup_sequence(ch, radii);
  ASSERT_EQ(seq.size(), 2u);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    // E(C \ B_1 of Phi_k) == E(B_{r_k} of Phi): the Willmore energy is geometric
    const auto total_A = [](const ImmersionChart& c, double t_lo, double t_hi) {
      const Axis at = gauss_legendre_axis(t_lo, t_hi, 128);
      const Axis ap = periodic_axis(0, 2 * M_PI, 64);
      double acc = 0;
      for (std::size_t i = 0; i < at.x.size(); ++i)
        for (std::size_t j = 0; j < ap.x.size(); ++j) {
          const ShapeData<double> s = shape_at(c, at.x[i], ap.x[j], 2);
          const double H = s.H.value();
          acc += (s.normA0_sq.value() + 2 * H * H) * std::sqrt(s.det_g.value()) * at.w[i] *
                 ap.w[j];
        }
      return acc;
    };
    const double e1 = total_A(seq[k], seq[k].domain.u0, seq[k].domain.u1);
    const double e2 = total_A(ch, -std::log(radii[k]), ch.t_cut());
    EXPECT_NEAR(e1, e2, 1e-9 * (1 + e2));
    // and the band B_2 \ B_1 of Phi_k matches B_{r_k} \ B_{r_k/2} of Phi
    const double b1 = total_A(seq[k], 0.0, std::log(2.0));
    const double b2 = total_A(ch, -std::log(radii[k]), -std::log(radii[k] / 2));
    EXPECT_NEAR(b1, b2, 1e-10 * (1 + b2));
  }
  // dyadic sup over the blown-up annuli decreases with k (lm:hyp_cvg shape)
  EXPECT_LT(energies(seq[1], {64, 32}).totalA, energies(seq[0], {64, 32}).totalA);
  EXPECT_THROW(blowup_sequence(ch, {2.0}), ConfigError);
  EXPECT_THROW(blowup_sequence(zoo("sphere"), {0.5}), ConfigError);
}

}  // namespace
}  // namespace willmore
