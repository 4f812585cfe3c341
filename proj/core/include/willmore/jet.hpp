#pragma once

// Truncated bivariate Taylor arithmetic ("2-jets") up to order 6.
//
// A Jet2 stores the coefficients c_{ab} = d^a_x d^b_y f / (a! b!) of a scalar
// function at an implicit base point, for a + b <= order.  Layout contract
// (shared with every downstream module that reads raw coefficients):
// graded-lexicographic, index(a,b) = T(a+b) + b with T(d) = d(d+1)/2, i.e.
//   [ (0,0) | (1,0) (0,1) | (2,0) (1,1) (0,2) | ... ]
//
// All operations are pure value semantics; Real is double or long double.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace willmore {

inline constexpr int kMaxJetOrder = 6;
inline constexpr int kMaxJetCoeffs = (kMaxJetOrder + 1) * (kMaxJetOrder + 2) / 2;

constexpr int jet_coeff_count(int order) { return (order + 1) * (order + 2) / 2; }
constexpr int jet_index(int a, int b) {
  const int d = a + b;
  return d * (d + 1) / 2 + b;
}

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

template <class Real>
struct Jet2 {
  int order = 0;
  std::array<Real, kMaxJetCoeffs> c{};

  Jet2() = default;
  Jet2(int k, Real value) : order(k) {
    detail::require(k >= 0 && k <= kMaxJetOrder, "jet order out of range [0,6]");
    c[0] = value;
  }

  static Jet2 constant(Real value, int k) { return Jet2(k, value); }

  // Coordinate jet: value `v` in slot `axis` (0 = x, 1 = y), unit first derivative.
  static Jet2 variable(Real v, int axis, int k) {
    Jet2 j(k, v);
    if (k >= 1) j.c[axis == 0 ? jet_index(1, 0) : jet_index(0, 1)] = Real(1);
    return j;
  }

  Real value() const { return c[0]; }
  Real coeff(int a, int b) const { return c[jet_index(a, b)]; }
  // Raw derivative d^a_x d^b_y f (factorials restored).
  Real deriv(int a, int b) const {
    Real f = 1;
    for (int i = 2; i <= a; ++i) f *= Real(i);
    for (int i = 2; i <= b; ++i) f *= Real(i);
    return c[jet_index(a, b)] * f;
  }

  Jet2 truncated(int k) const {
    detail::require(k >= 0 && k <= order, "truncation order exceeds jet order");
    Jet2 r(k, Real(0));
    for (int i = 0; i < jet_coeff_count(k); ++i) r.c[i] = c[i];
    return r;
  }
};

// --- linear operations -----------------------------------------------------

template <class Real>
Jet2<Real> jet_add(const Jet2<Real>& a, const Jet2<Real>& b) {
  detail::require(a.order == b.order, "jet_add: order mismatch");
  Jet2<Real> r = a;
  for (int i = 0; i < jet_coeff_count(a.order); ++i) r.c[i] += b.c[i];
  return r;
}

template <class Real>
Jet2<Real> jet_sub(const Jet2<Real>& a, const Jet2<Real>& b) {
  detail::require(a.order == b.order, "jet_sub: order mismatch");
  Jet2<Real> r = a;
  for (int i = 0; i < jet_coeff_count(a.order); ++i) r.c[i] -= b.c[i];
  return r;
}

template <class Real>
Jet2<Real> jet_scale(const Jet2<Real>& a, Real s) {
  Jet2<Real> r = a;
  for (int i = 0; i < jet_coeff_count(a.order); ++i) r.c[i] *= s;
  return r;
}

template <class Real>
Jet2<Real> jet_neg(const Jet2<Real>& a) {
  return jet_scale(a, Real(-1));
}

// --- multiplication (truncated Cauchy product) ------------------------------

template <class Real>
Jet2<Real> jet_mul(const Jet2<Real>& f, const Jet2<Real>& g) {
  detail::require(f.order == g.order, "jet_mul: order mismatch");
  const int k = f.order;
  Jet2<Real> r(k, Real(0));
  for (int d1 = 0; d1 <= k; ++d1) {
    for (int b1 = 0; b1 <= d1; ++b1) {
      const Real cf = f.c[d1 * (d1 + 1) / 2 + b1];
      if (cf == Real(0)) continue;
      for (int d2 = 0; d2 + d1 <= k; ++d2) {
        const int base2 = d2 * (d2 + 1) / 2;
        const int dr = d1 + d2;
        const int baser = dr * (dr + 1) / 2 + b1;
        for (int b2 = 0; b2 <= d2; ++b2) {
          r.c[baser + b2] += cf * g.c[base2 + b2];
        }
      }
    }
  }
  return r;
}

template <class Real>
Jet2<Real> operator+(const Jet2<Real>& a, const Jet2<Real>& b) { return jet_add(a, b); }
template <class Real>
Jet2<Real> operator-(const Jet2<Real>& a, const Jet2<Real>& b) { return jet_sub(a, b); }
template <class Real>
Jet2<Real> operator-(const Jet2<Real>& a) { return jet_neg(a); }
template <class Real>
Jet2<Real> operator*(const Jet2<Real>& a, const Jet2<Real>& b) { return jet_mul(a, b); }
template <class Real>
Jet2<Real> operator*(Real s, const Jet2<Real>& a) { return jet_scale(a, s); }
template <class Real>
Jet2<Real> operator*(const Jet2<Real>& a, Real s) { return jet_scale(a, s); }
template <class Real>
Jet2<Real> operator+(const Jet2<Real>& a, Real s) { Jet2<Real> r = a; r.c[0] += s; return r; }
template <class Real>
Jet2<Real> operator+(Real s, const Jet2<Real>& a) { return a + s; }
template <class Real>
Jet2<Real> operator-(const Jet2<Real>& a, Real s) { Jet2<Real> r = a; r.c[0] -= s; return r; }
template <class Real>
Jet2<Real> operator-(Real s, const Jet2<Real>& a) { return jet_neg(a) + s; }

// --- differentiation ---------------------------------------------------------

// Partial derivative; lowers the order by exactly one.
template <class Real>
Jet2<Real> jet_dx(const Jet2<Real>& f) {
  detail::require(f.order >= 1, "jet_dx: order 0 input");
  Jet2<Real> r(f.order - 1, Real(0));
  for (int d = 0; d <= r.order; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      r.c[jet_index(a, b)] = Real(a + 1) * f.c[jet_index(a + 1, b)];
    }
  return r;
}

template <class Real>
Jet2<Real> jet_dy(const Jet2<Real>& f) {
  detail::require(f.order >= 1, "jet_dy: order 0 input");
  Jet2<Real> r(f.order - 1, Real(0));
  for (int d = 0; d <= r.order; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      r.c[jet_index(a, b)] = Real(b + 1) * f.c[jet_index(a, b + 1)];
    }
  return r;
}

template <class Real>
Jet2<Real> laplacian_flat(const Jet2<Real>& f) {
  detail::require(f.order >= 2, "laplacian_flat: order < 2");
  return jet_dx(jet_dx(f)) + jet_dy(jet_dy(f));
}

// --- elementary functions -----------------------------------------------------
//
// fn(f) is assembled from the univariate Taylor coefficients u_m = fn^(m)(f0)/m!
// at the base value f0 and the nilpotent part of f via Horner composition.

namespace detail {

template <class Real>
using Series = std::array<Real, kMaxJetOrder + 1>;

template <class Real>
Jet2<Real> compose_series(const Jet2<Real>& f, const Series<Real>& u) {
  const int k = f.order;
  Jet2<Real> hat = f;
  hat.c[0] = Real(0);
  Jet2<Real> r(k, u[k]);
  for (int m = k - 1; m >= 0; --m) {
    r = jet_mul(r, hat);
    r.c[0] += u[m];
  }
  return r;
}

[[noreturn]] inline void domain_violation(const char* fn, double value) {
  throw std::domain_error(std::string("jet_elementary: ") + fn +
                          " domain violation at base value " + std::to_string(value));
}

// Truncated reciprocal of a univariate series with p_0 != 0.
template <class Real>
Series<Real> series_recip(const Series<Real>& p, int k) {
  Series<Real> q{};
  q[0] = Real(1) / p[0];
  for (int n = 1; n <= k; ++n) {
    Real s = 0;
    for (int j = 1; j <= n; ++j) s += p[j] * q[n - j];
    q[n] = -s / p[0];
  }
  return q;
}

}  // namespace detail

template <class Real>
Jet2<Real> jet_exp(const Jet2<Real>& f) {
  detail::Series<Real> u{};
  const Real e = std::exp(f.value());
  Real fact = 1;
  for (int m = 0; m <= f.order; ++m) {
    if (m > 0) fact *= Real(m);
    u[m] = e / fact;
  }
  return detail::compose_series(f, u);
}

template <class Real>
Jet2<Real> jet_log(const Jet2<Real>& f) {
  const Real v = f.value();
  if (!(v > Real(0))) detail::domain_violation("log", double(v));
  detail::Series<Real> u{};
  u[0] = std::log(v);
  Real vp = v;
  for (int m = 1; m <= f.order; ++m) {
    u[m] = (m % 2 ? Real(1) : Real(-1)) / (Real(m) * vp);
    vp *= v;
  }
  return detail::compose_series(f, u);
}

template <class Real>
Jet2<Real> jet_recip(const Jet2<Real>& f) {
  const Real v = f.value();
  if (v == Real(0)) detail::domain_violation("recip", double(v));
  detail::Series<Real> u{};
  Real vp = v;
  for (int m = 0; m <= f.order; ++m) {
    u[m] = (m % 2 ? Real(-1) : Real(1)) / vp;
    vp *= v;
  }
  return detail::compose_series(f, u);
}

template <class Real>
Jet2<Real> jet_sqrt(const Jet2<Real>& f) {
  const Real v = f.value();
  if (!(v > Real(0))) detail::domain_violation("sqrt", double(v));
  detail::Series<Real> u{};
  u[0] = std::sqrt(v);
  // binomial series: u_m = C(1/2, m) v^{1/2 - m}
  Real coef = 1;
  for (int m = 1; m <= f.order; ++m) {
    coef *= (Real(0.5) - Real(m - 1)) / Real(m);
    u[m] = coef * u[0] / std::pow(v, Real(m));
  }
  return detail::compose_series(f, u);
}

template <class Real>
void jet_sincos(const Jet2<Real>& f, Jet2<Real>* s, Jet2<Real>* c) {
  const Real sv = std::sin(f.value()), cv = std::cos(f.value());
  detail::Series<Real> us{}, uc{};
  const Real cyc_s[4] = {sv, cv, -sv, -cv};
  Real fact = 1;
  for (int m = 0; m <= f.order; ++m) {
    if (m > 0) fact *= Real(m);
    us[m] = cyc_s[m % 4] / fact;
    uc[m] = cyc_s[(m + 1) % 4] / fact;
  }
  if (s) *s = detail::compose_series(f, us);
  if (c) *c = detail::compose_series(f, uc);
}

template <class Real>
Jet2<Real> jet_sin(const Jet2<Real>& f) {
  Jet2<Real> s;
  jet_sincos(f, &s, static_cast<Jet2<Real>*>(nullptr));
  return s;
}

template <class Real>
Jet2<Real> jet_cos(const Jet2<Real>& f) {
  Jet2<Real> c;
  jet_sincos(f, static_cast<Jet2<Real>*>(nullptr), &c);
  return c;
}

template <class Real>
Jet2<Real> jet_sinh(const Jet2<Real>& f) {
  const Real sv = std::sinh(f.value()), cv = std::cosh(f.value());
  detail::Series<Real> u{};
  Real fact = 1;
  for (int m = 0; m <= f.order; ++m) {
    if (m > 0) fact *= Real(m);
    u[m] = (m % 2 ? cv : sv) / fact;
  }
  return detail::compose_series(f, u);
}

template <class Real>
Jet2<Real> jet_cosh(const Jet2<Real>& f) {
  const Real sv = std::sinh(f.value()), cv = std::cosh(f.value());
  detail::Series<Real> u{};
  Real fact = 1;
  for (int m = 0; m <= f.order; ++m) {
    if (m > 0) fact *= Real(m);
    u[m] = (m % 2 ? sv : cv) / fact;
  }
  return detail::compose_series(f, u);
}

// Real power f^p (base value must be positive).
template <class Real>
Jet2<Real> jet_pow(const Jet2<Real>& f, Real p) {
  const Real v = f.value();
  if (!(v > Real(0))) detail::domain_violation("pow", double(v));
  detail::Series<Real> u{};
  u[0] = std::pow(v, p);
  Real coef = 1;
  for (int m = 1; m <= f.order; ++m) {
    coef *= (p - Real(m - 1)) / Real(m);
    u[m] = coef * std::pow(v, p - Real(m));
  }
  return detail::compose_series(f, u);
}

// Integer power by repeated multiplication; works for any base value.
template <class Real>
Jet2<Real> jet_ipow(const Jet2<Real>& f, int n) {
  if (n < 0) return jet_recip(jet_ipow(f, -n));
  Jet2<Real> r(f.order, Real(1));
  Jet2<Real> b = f;
  int e = n;
  while (e > 0) {
    if (e & 1) r = jet_mul(r, b);
    e >>= 1;
    if (e) b = jet_mul(b, b);
  }
  return r;
}

template <class Real>
Jet2<Real> jet_atan(const Jet2<Real>& f) {
  // atan'(x) = 1/(1+x^2): build the derivative series at the base value and
  // integrate it termwise.
  const int k = f.order;
  const Real v = f.value();
  detail::Series<Real> den{};  // 1 + (v+s)^2 = (1+v^2) + 2v s + s^2
  den[0] = Real(1) + v * v;
  if (k >= 1) den[1] = Real(2) * v;
  if (k >= 2) den[2] = Real(1);
  const auto der = detail::series_recip(den, k > 0 ? k - 1 : 0);
  detail::Series<Real> u{};
  u[0] = std::atan(v);
  for (int m = 1; m <= k; ++m) u[m] = der[m - 1] / Real(m);
  return detail::compose_series(f, u);
}

// Two-argument arctangent of a jet pair; base point may be in any quadrant but
// not at the origin.
template <class Real>
Jet2<Real> jet_atan2(const Jet2<Real>& y, const Jet2<Real>& x) {
  detail::require(x.order == y.order, "jet_atan2: order mismatch");
  const Real xv = x.value(), yv = y.value();
  const Real r2 = xv * xv + yv * yv;
  if (r2 == Real(0)) detail::domain_violation("atan2", 0.0);
  // On each half-plane atan2(y,x) differs from +-atan(ratio) by a constant, so
  // the series part comes from atan on the better-conditioned ratio and the
  // constant term is fixed afterwards.
  Jet2<Real> theta;
  if (std::abs(xv) >= std::abs(yv)) {
    theta = jet_atan(jet_mul(y, jet_recip(x)));
  } else {
    theta = jet_neg(jet_atan(jet_mul(x, jet_recip(y))));
  }
  theta.c[0] = std::atan2(yv, xv);
  return theta;
}

// --- complex jets and Wirtinger operators -------------------------------------

template <class Real>
struct CJet2 {
  Jet2<Real> re, im;

  CJet2() = default;
  CJet2(const Jet2<Real>& r, const Jet2<Real>& i) : re(r), im(i) {
    detail::require(r.order == i.order, "CJet2: order mismatch");
  }
  explicit CJet2(const Jet2<Real>& r) : re(r), im(Jet2<Real>(r.order, Real(0))) {}

  int order() const { return re.order; }
  std::complex<Real> value() const { return {re.value(), im.value()}; }

  // Coordinate jet z = x + iy at base (x0, y0).
  static CJet2 coordinate(Real x0, Real y0, int k) {
    return {Jet2<Real>::variable(x0, 0, k), Jet2<Real>::variable(y0, 1, k)};
  }
};

template <class Real>
CJet2<Real> operator+(const CJet2<Real>& a, const CJet2<Real>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class Real>
CJet2<Real> operator-(const CJet2<Real>& a, const CJet2<Real>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class Real>
CJet2<Real> operator*(const CJet2<Real>& a, const CJet2<Real>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class Real>
CJet2<Real> conj(const CJet2<Real>& a) {
  return {a.re, jet_neg(a.im)};
}

// Wirtinger derivatives d_z = (d_x - i d_y)/2, d_zbar = (d_x + i d_y)/2.
template <class Real>
CJet2<Real> wirtinger_dz(const CJet2<Real>& f) {
  detail::require(f.order() >= 1, "wirtinger_dz: order 0 input");
  const Real h = Real(0.5);
  return {jet_scale(jet_dx(f.re) + jet_dy(f.im), h),
          jet_scale(jet_dx(f.im) - jet_dy(f.re), h)};
}

template <class Real>
CJet2<Real> wirtinger_dzbar(const CJet2<Real>& f) {
  detail::require(f.order() >= 1, "wirtinger_dzbar: order 0 input");
  const Real h = Real(0.5);
  return {jet_scale(jet_dx(f.re) - jet_dy(f.im), h),
          jet_scale(jet_dx(f.im) + jet_dy(f.re), h)};
}

// Complex logarithm of a jet with nonzero base value.
template <class Real>
CJet2<Real> jet_clog(const CJet2<Real>& f) {
  const std::complex<Real> z0 = f.value();
  if (z0 == std::complex<Real>(0)) detail::domain_violation("clog", 0.0);
  const int k = f.order();
  // log(z0 + h) = log z0 + sum_{m>=1} (-1)^{m+1} (h/z0)^m / m
  CJet2<Real> hat = f;
  hat.re.c[0] = Real(0);
  hat.im.c[0] = Real(0);
  const std::complex<Real> inv = std::complex<Real>(1) / z0;
  CJet2<Real> hz = hat;  // hat/z0
  {
    const Jet2<Real> a = jet_scale(hat.re, inv.real()) - jet_scale(hat.im, inv.imag());
    const Jet2<Real> b = jet_scale(hat.re, inv.imag()) + jet_scale(hat.im, inv.real());
    hz = CJet2<Real>(a, b);
  }
  CJet2<Real> r(Jet2<Real>(k, Real(0)), Jet2<Real>(k, Real(0)));
  for (int m = k; m >= 1; --m) {
    const Real um = (m % 2 ? Real(1) : Real(-1)) / Real(m);
    r.re.c[0] += um;
    r = r * hz;
  }
  const std::complex<Real> l0 = std::log(z0);
  r.re.c[0] += l0.real();
  r.im.c[0] += l0.imag();
  return r;
}

// Pullback of a jet under the linear substitution (x,y) = (m00 s + m01 u, m10 s + m11 u):
// returns the jet of f(m00 s + m01 u, m10 s + m11 u) in the (s,u) variables.
template <class Real>
Jet2<Real> jet_pullback_linear(const Jet2<Real>& f, Real m00, Real m01, Real m10, Real m11) {
  const int k = f.order;
  const Jet2<Real> xs = jet_scale(Jet2<Real>::variable(Real(0), 0, k), m00) +
                        jet_scale(Jet2<Real>::variable(Real(0), 1, k), m01);
  const Jet2<Real> ys = jet_scale(Jet2<Real>::variable(Real(0), 0, k), m10) +
                        jet_scale(Jet2<Real>::variable(Real(0), 1, k), m11);
  // Evaluate the Taylor polynomial of f on the substituted coordinate jets.
  Jet2<Real> r(k, Real(0));
  std::array<Jet2<Real>, kMaxJetOrder + 1> xp, yp;
  xp[0] = Jet2<Real>(k, Real(1));
  yp[0] = xp[0];
  for (int i = 1; i <= k; ++i) {
    xp[i] = jet_mul(xp[i - 1], xs);
    yp[i] = jet_mul(yp[i - 1], ys);
  }
  for (int d = 0; d <= k; ++d)
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      const Real cf = f.c[jet_index(a, b)];
      if (cf == Real(0)) continue;
      r = r + jet_scale(jet_mul(xp[a], yp[b]), cf);
    }
  return r;
}

// --- small vector-of-jets helpers ---------------------------------------------

template <class Real>
using Vec3J = std::array<Jet2<Real>, 3>;

template <class Real>
Jet2<Real> dot(const Vec3J<Real>& a, const Vec3J<Real>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class Real>
Vec3J<Real> cross(const Vec3J<Real>& a, const Vec3J<Real>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class Real>
Vec3J<Real> operator+(const Vec3J<Real>& a, const Vec3J<Real>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <class Real>
Vec3J<Real> operator-(const Vec3J<Real>& a, const Vec3J<Real>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
template <class Real>
Vec3J<Real> jet_scale(const Vec3J<Real>& a, const Jet2<Real>& s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
template <class Real>
Vec3J<Real> jet_scale(const Vec3J<Real>& a, Real s) {
  return {jet_scale(a[0], s), jet_scale(a[1], s), jet_scale(a[2], s)};
}

}  // namespace willmore
