#include "willmore/jet.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace willmore {
namespace {

using J = Jet2<double>;

TEST(Jet, LayoutContract) {
  EXPECT_EQ(jet_coeff_count(5), 21);
  EXPECT_EQ(jet_index(0, 0), 0);
  EXPECT_EQ(jet_index(1, 0), 1);
  EXPECT_EQ(jet_index(0, 1), 2);
  EXPECT_EQ(jet_index(2, 0), 3);
  EXPECT_EQ(jet_index(1, 1), 4);
  EXPECT_EQ(jet_index(0, 2), 5);
}

TEST(Jet, MulOfCoordinates) {
  // x*y at (1,2), order 2: value 2, dx = 2, dy = 1, dxy = 1
  const J x = J::variable(1.0, 0, 2);
  const J y = J::variable(2.0, 1, 2);
  const J xy = jet_mul(x, y);
  EXPECT_DOUBLE_EQ(xy.value(), 2.0);
  EXPECT_DOUBLE_EQ(xy.deriv(1, 0), 2.0);
  EXPECT_DOUBLE_EQ(xy.deriv(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(xy.deriv(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(xy.deriv(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(xy.deriv(0, 2), 0.0);
}

TEST(Jet, AddZeroIsIdentity) {
  const J f = jet_exp(J::variable(0.7, 0, 4));
  const J z(4, 0.0);
  const J g = jet_add(f, z);
  for (int i = 0; i < jet_coeff_count(4); ++i) EXPECT_DOUBLE_EQ(g.c[i], f.c[i]);
}

TEST(Jet, SquareOfSquareIsQuartic) {
  // f = x^2 at (1,0), K=4: f*f = x^4, 4th x-derivative = 24 -> coeff 1
  const J x = J::variable(1.0, 0, 4);
  const J f = jet_mul(x, x);
  const J f2 = jet_mul(f, f);
  EXPECT_NEAR(f2.coeff(4, 0), 1.0, 1e-15);
  EXPECT_NEAR(f2.deriv(4, 0), 24.0, 1e-12);
  EXPECT_NEAR(f2.value(), 1.0, 1e-15);
  EXPECT_NEAR(f2.deriv(1, 0), 4.0, 1e-13);
}

TEST(Jet, OrderMismatchThrows) {
  const J a(3, 1.0), b(4, 1.0);
  EXPECT_THROW(jet_add(a, b), std::invalid_argument);
  EXPECT_THROW(jet_mul(a, b), std::invalid_argument);
}

TEST(Jet, ExpOfZeroJet) {
  const J z(3, 0.0);
  const J e = jet_exp(z);
  EXPECT_DOUBLE_EQ(e.value(), 1.0);
  EXPECT_DOUBLE_EQ(e.deriv(1, 0), 0.0);
}

TEST(Jet, LogExpRoundTrip) {
  // f = 0.3 + x, K = 5
  J f = J::variable(0.3, 0, 5);
  const J g = jet_log(jet_exp(f));
  for (int i = 0; i < jet_coeff_count(5); ++i) EXPECT_NEAR(g.c[i], f.c[i], 1e-14);
}

TEST(Jet, RecipRecipRoundTrip) {
  J f = J::variable(2.0, 0, 5);
  f.c[jet_index(0, 1)] = 0.5;
  f.c[jet_index(1, 1)] = -0.25;
  const J g = jet_recip(jet_recip(f));
  for (int i = 0; i < jet_coeff_count(5); ++i) EXPECT_NEAR(g.c[i], f.c[i], 1e-14);
}

TEST(Jet, DomainViolations) {
  EXPECT_THROW(jet_log(J(3, -1.0)), std::domain_error);
  EXPECT_THROW(jet_sqrt(J(3, 0.0)), std::domain_error);
  EXPECT_THROW(jet_recip(J(3, 0.0)), std::domain_error);
}

TEST(Jet, DifferentiationLowersOrderAndShiftsCoeffs) {
  const J x = J::variable(0.4, 0, 5);
  const J y = J::variable(-0.3, 1, 5);
  const J f = jet_mul(jet_sin(x), jet_cos(y));
  const J fx = jet_dx(f);
  EXPECT_EQ(fx.order, 4);
  for (int d = 0; d <= 4; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      EXPECT_NEAR(fx.coeff(a, b), (a + 1) * f.coeff(a + 1, b), 1e-15) << a << "," << b;
    }
}

// Product rule and chain rule hold exactly (to rounding) in jet arithmetic.
TEST(Jet, ProductRuleExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x0 = dist(rng), y0 = dist(rng);
    const J x = J::variable(x0, 0, 5);
    const J y = J::variable(y0, 1, 5);
    const J f = jet_exp(jet_scale(x, 0.5)) * jet_cos(y + 0.2 * x);
    const J g = jet_sinh(jet_scale(y, 0.7)) + jet_mul(x, x);
    const J fg = jet_mul(f, g);
    // d(fg) = df g + f dg, coefficientwise
    const J lhs = jet_dx(fg);
    const J rhs = jet_dx(f) * g.truncated(4) + f.truncated(4) * jet_dx(g);
    for (int i = 0; i < jet_coeff_count(4); ++i) EXPECT_NEAR(lhs.c[i], rhs.c[i], 1e-12);
  }
}

TEST(Jet, ChainRuleExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const double x0 = dist(rng), y0 = dist(rng);
    const J x = J::variable(x0, 0, 5);
    const J y = J::variable(y0, 1, 5);
    const J inner = jet_mul(x, y) + jet_scale(x, 0.3);
    const J f = jet_exp(inner);
    // d_x exp(u) = exp(u) * d_x u
    const J lhs = jet_dx(f);
    const J rhs = f.truncated(4) * jet_dx(inner);
    for (int i = 0; i < jet_coeff_count(4); ++i)
      EXPECT_NEAR(lhs.c[i], rhs.c[i], 1e-12 * std::max(1.0, std::abs(rhs.c[i])));
  }
}

// --- Wirtinger ----------------------------------------------------------------

TEST(Wirtinger, HolomorphicMonomial) {
  // z^2 at z = 1 + i: dz(z^2) = 2z = 2 + 2i, dzbar(z^2) = 0
  const CJet2<double> z = CJet2<double>::coordinate(1.0, 1.0, 3);
  const CJet2<double> z2 = z * z;
  const CJet2<double> dz = wirtinger_dz(z2);
  EXPECT_NEAR(dz.re.value(), 2.0, 1e-15);
  EXPECT_NEAR(dz.im.value(), 2.0, 1e-15);
  const CJet2<double> dzb = wirtinger_dzbar(z2);
  EXPECT_NEAR(dzb.re.value(), 0.0, 1e-15);
  EXPECT_NEAR(dzb.im.value(), 0.0, 1e-15);
}

TEST(Wirtinger, ConjugateCoordinate) {
  const CJet2<double> z = CJet2<double>::coordinate(0.3, -0.7, 2);
  const CJet2<double> zb = conj(z);
  const CJet2<double> d = wirtinger_dzbar(zb);
  EXPECT_NEAR(d.re.value(), 1.0, 1e-15);
  EXPECT_NEAR(d.im.value(), 0.0, 1e-15);
  const CJet2<double> dz = wirtinger_dz(zb);
  EXPECT_NEAR(dz.re.value(), 0.0, 1e-15);
}

TEST(Wirtinger, DzDzbarIsQuarterLaplacian) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-0.6, 0.6);
  for (int trial = 0; trial < 20; ++trial) {
    const J x = J::variable(dist(rng), 0, 5);
    const J y = J::variable(dist(rng), 1, 5);
    const CJet2<double> f(jet_cos(x + y * 0.5) * jet_exp(jet_scale(y, 0.3)),
                          jet_sin(jet_mul(x, y)));
    const CJet2<double> a = wirtinger_dz(wirtinger_dzbar(f));
    const CJet2<double> b = wirtinger_dzbar(wirtinger_dz(f));
    const CJet2<double> lap(jet_scale(laplacian_flat(f.re), 0.25),
                            jet_scale(laplacian_flat(f.im), 0.25));
    for (int i = 0; i < jet_coeff_count(3); ++i) {
      EXPECT_NEAR(a.re.c[i], lap.re.c[i], 1e-13);
      EXPECT_NEAR(a.im.c[i], lap.im.c[i], 1e-13);
      EXPECT_NEAR(b.re.c[i], lap.re.c[i], 1e-13);
      EXPECT_NEAR(b.im.c[i], lap.im.c[i], 1e-13);
    }
  }
}

TEST(Wirtinger, OrderZeroThrows) {
  const CJet2<double> f(J(0, 1.0), J(0, 2.0));
  EXPECT_THROW(wirtinger_dz(f), std::invalid_argument);
}

// --- flat Laplacian -------------------------------------------------------------

TEST(Laplacian, Radial) {
  // x^2 + y^2 -> 4
  const J x = J::variable(0.7, 0, 3);
  const J y = J::variable(-1.2, 1, 3);
  const J f = jet_mul(x, x) + jet_mul(y, y);
  EXPECT_NEAR(laplacian_flat(f).value(), 4.0, 1e-14);
}

TEST(Laplacian, LogIsHarmonicAwayFromOrigin) {
  const J x = J::variable(1.0, 0, 4);
  const J y = J::variable(0.0, 1, 4);
  const J f = jet_log(jet_mul(x, x) + jet_mul(y, y));
  EXPECT_NEAR(laplacian_flat(f).value(), 0.0, 1e-13);
}

TEST(Laplacian, Cubic) {
  // x^3 at (2,0), K=5: lap = 6x, value 12, d_x = 6
  const J x = J::variable(2.0, 0, 5);
  const J f = jet_mul(jet_mul(x, x), x);
  const J lap = laplacian_flat(f);
  EXPECT_NEAR(lap.value(), 12.0, 1e-13);
  EXPECT_NEAR(lap.deriv(1, 0), 6.0, 1e-13);
  EXPECT_THROW(laplacian_flat(J(1, 1.0)), std::invalid_argument);
}

// --- elementary functions vs finite differences -----------------------------------

double fd1(const std::function<double(double, double)>& f, double x, double y, int axis,
           double h) {
  return axis == 0 ? (f(x + h, y) - f(x - h, y)) / (2 * h) : (f(x, y + h) - f(x, y - h)) / (2 * h);
}

double fd2(const std::function<double(double, double)>& f, double x, double y, int a1, int a2,
           double h) {
  if (a1 == 0 && a2 == 0) return (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
  if (a1 == 1 && a2 == 1) return (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h);
  return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h);
}

TEST(Jet, AgainstFiniteDifferences) {
  // 50 random analytic functions from a compositional family, orders 1 and 2.
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng), e = coef(rng);
    const auto f = [&](double x, double y) {
      return std::exp(a * x) * std::cos(b * y + c * x) +
             std::log(1.5 + std::sin(d * x * y)) + std::sqrt(2.0 + e * x) * std::sinh(0.3 * y);
    };
    const double x0 = coef(rng), y0 = coef(rng);
    const J x = J::variable(x0, 0, 3);
    const J y = J::variable(y0, 1, 3);
    const J jf = jet_exp(jet_scale(x, a)) * jet_cos(jet_scale(y, b) + jet_scale(x, c)) +
                 jet_log(jet_sin(jet_scale(jet_mul(x, y), d)) + 1.5) +
                 jet_sqrt(jet_scale(x, e) + 2.0) * jet_sinh(jet_scale(y, 0.3));
    EXPECT_NEAR(jf.value(), f(x0, y0), 1e-13);
    const double h = 1e-5;
    // FD truncation ~ h^2 * |f'''|; generous budget 1e-7
    EXPECT_NEAR(jf.deriv(1, 0), fd1(f, x0, y0, 0, h), 2e-7);
    EXPECT_NEAR(jf.deriv(0, 1), fd1(f, x0, y0, 1, h), 2e-7);
    EXPECT_NEAR(jf.deriv(2, 0), fd2(f, x0, y0, 0, 0, 1e-4), 2e-5);
    EXPECT_NEAR(jf.deriv(0, 2), fd2(f, x0, y0, 1, 1, 1e-4), 2e-5);
    EXPECT_NEAR(jf.deriv(1, 1), fd2(f, x0, y0, 0, 1, 1e-4), 2e-5);
  }
}

TEST(Jet, AtanAndAtan2) {
  const J x = J::variable(0.8, 0, 4);
  const J y = J::variable(-0.5, 1, 4);
  const J th = jet_atan2(y, x);
  EXPECT_NEAR(th.value(), std::atan2(-0.5, 0.8), 1e-15);
  const auto f = [](double xx, double yy) { return std::atan2(yy, xx); };
  EXPECT_NEAR(th.deriv(1, 0), fd1(f, 0.8, -0.5, 0, 1e-6), 1e-8);
  EXPECT_NEAR(th.deriv(0, 1), fd1(f, 0.8, -0.5, 1, 1e-6), 1e-8);
  // swapped-dominance branch
  const J th2 = jet_atan2(x, y);
  EXPECT_NEAR(th2.value(), std::atan2(0.8, -0.5), 1e-15);
  EXPECT_NEAR(th2.deriv(0, 1), fd1([](double xx, double yy) { return std::atan2(xx, yy); },
                                   0.8, -0.5, 1, 1e-6),
              1e-8);
  // atan consistency
  const J at = jet_atan(jet_scale(x, 0.9));
  EXPECT_NEAR(at.value(), std::atan(0.72), 1e-15);
  EXPECT_NEAR(at.deriv(1, 0), 0.9 / (1 + 0.72 * 0.72), 1e-14);
}

TEST(Jet, PowVariants) {
  const J x = J::variable(1.7, 0, 4);
  const J p = jet_pow(x, 2.5);
  EXPECT_NEAR(p.value(), std::pow(1.7, 2.5), 1e-13);
  EXPECT_NEAR(p.deriv(1, 0), 2.5 * std::pow(1.7, 1.5), 1e-12);
  const J ip = jet_ipow(x - 3.0, 3);  // negative base allowed
  EXPECT_NEAR(ip.value(), std::pow(-1.3, 3), 1e-13);
  const J ineg = jet_ipow(x, -2);
  EXPECT_NEAR(ineg.value(), std::pow(1.7, -2), 1e-14);
}

TEST(Jet, LinearPullback) {
  // f(x,y) = sin(x) cos(y); pull back under (x,y) = (2s - u, s + 3u)
  const double s0 = 0.2, u0 = -0.4;
  const double x0 = 2 * s0 - u0, y0 = s0 + 3 * u0;
  const J fx = jet_sin(J::variable(x0, 0, 4)) * jet_cos(J::variable(y0, 1, 4));
  const J g = jet_pullback_linear(fx, 2.0, -1.0, 1.0, 3.0);
  const auto f = [](double s, double u) { return std::sin(2 * s - u) * std::cos(s + 3 * u); };
  EXPECT_NEAR(g.value(), f(s0, u0), 1e-14);
  EXPECT_NEAR(g.deriv(1, 0), fd1(f, s0, u0, 0, 1e-6), 1e-8);
  EXPECT_NEAR(g.deriv(0, 1), fd1(f, s0, u0, 1, 1e-6), 1e-8);
  EXPECT_NEAR(g.deriv(1, 1), fd2(f, s0, u0, 0, 1, 1e-4), 2e-6);
}

TEST(Jet, ExtendedPrecisionSameOps) {
  using L = Jet2<long double>;
  const L x = L::variable(0.3L, 0, 5);
  const L f = jet_log(jet_exp(x));
  EXPECT_NEAR(double(f.value()), 0.3, 1e-17);
  EXPECT_NEAR(double(f.deriv(1, 0)), 1.0, 1e-17);
}

}  // namespace
}  // namespace willmore
