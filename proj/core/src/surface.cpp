#include "willmore/surface.hpp"

#include <cmath>

namespace willmore {

namespace {

constexpr double kInvertedEnneperScale = 100.0;  // z = 1/(scale * x)

template <class Real>
struct Coord {
  Jet2<Real> t, p;
  Coord(Real u, Real v, int k)
      : t(Jet2<Real>::variable(u, 0, k)), p(Jet2<Real>::variable(v, 1, k)) {}
};

// Unit sphere aligned so the chart normal is outward: n = Phi, H = -1.
struct SphereImmersion final : ImmersionFormula<SphereImmersion> {
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Jet2<Real> sech = jet_recip(jet_cosh(c.t));
    const Jet2<Real> tanh = jet_sinh(c.t) * sech;
    return {sech * jet_cos(c.p), sech * jet_sin(c.p), jet_neg(tanh)};
  }
};

struct EllipsoidImmersion final : ImmersionFormula<EllipsoidImmersion> {
  double a, b, cc;
  EllipsoidImmersion(double a_, double b_, double c_) : a(a_), b(b_), cc(c_) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Jet2<Real> sech = jet_recip(jet_cosh(c.t));
    const Jet2<Real> tanh = jet_sinh(c.t) * sech;
    return {jet_scale(sech * jet_cos(c.p), Real(a)), jet_scale(sech * jet_sin(c.p), Real(b)),
            jet_scale(jet_neg(tanh), Real(cc))};
  }
};

// Conformal chart, e^lambda = cosh t, minimal.
struct CatenoidImmersion final : ImmersionFormula<CatenoidImmersion> {
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Jet2<Real> ch = jet_cosh(c.t);
    return {ch * jet_cos(c.p), ch * jet_sin(c.p), c.t};
  }
};

// Degree-2 cover of the t -> +infinity catenoid end: the disk coordinate
// x = e^{-t+i phi} covers the end coordinate twice (x -> x^2), which makes the
// inverted surface a genuine branch point of order theta = 1.
struct CatenoidEndDoubleCover final : ImmersionFormula<CatenoidEndDoubleCover> {
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Jet2<Real> t2 = jet_scale(c.t, Real(2));
    const Jet2<Real> p2 = jet_scale(c.p, Real(2));
    const Jet2<Real> ch = jet_cosh(t2);
    return {ch * jet_cos(p2), ch * jet_sin(p2), t2};
  }
};

// Enneper surface, conformal chart with e^lambda = 1 + x^2 + y^2.
template <class Real>
Vec3J<Real> enneper_at(const Jet2<Real>& x, const Jet2<Real>& y) {
  const Jet2<Real> x2 = x * x, y2 = y * y;
  const Real third = Real(1) / Real(3);
  return {x - jet_scale(x * x2, third) + x * y2,
          jet_neg(y) + jet_scale(y * y2, third) - x2 * y,
          x2 - y2};
}

struct EnneperImmersion final : ImmersionFormula<EnneperImmersion> {
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    return enneper_at(c.t, c.p);
  }
};

// Enneper end chart: the punctured-disk coordinate x = e^{-t+i phi} maps to the
// Enneper parameter z = 1/(scale * x); the multiplicity-3 end sits at x = 0.
struct EnneperEndImmersion final : ImmersionFormula<EnneperEndImmersion> {
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Jet2<Real> r = jet_scale(jet_exp(c.t), Real(1) / Real(kInvertedEnneperScale));
    return enneper_at(r * jet_cos(c.p), jet_neg(r * jet_sin(c.p)));
  }
};

// Stereographic image of the Clifford torus: torus of revolution with radii
// ratio sqrt(2), in the conformal square-torus chart (both periods 2 pi):
//   Phi(u,w) = (1+sqrt2)/D * (cos u, sin u, sin w),  D = (2+sqrt2) - (1+sqrt2) cos w.
struct CliffordProjectedImmersion final : ImmersionFormula<CliffordProjectedImmersion> {
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Real s2 = std::sqrt(Real(2));
    const Jet2<Real> d = Real(2) + s2 - jet_scale(jet_cos(c.p), Real(1) + s2);
    const Jet2<Real> rho = jet_scale(jet_recip(d), Real(1) + s2);
    return {rho * jet_cos(c.t), rho * jet_sin(c.t), rho * jet_sin(c.p)};
  }
};

struct TorusImmersion final : ImmersionFormula<TorusImmersion> {
  double R, r;
  TorusImmersion(double R_, double r_) : R(R_), r(r_) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Coord<Real> c(u, v, k);
    const Jet2<Real> rad = Real(R) + jet_scale(jet_cos(c.p), Real(r));
    return {rad * jet_cos(c.t), rad * jet_sin(c.t), jet_scale(jet_sin(c.p), Real(r))};
  }
};

// Theta o Phi through jet arithmetic.
struct ComposedImmersion final : ImmersionFormula<ComposedImmersion> {
  std::shared_ptr<const Immersion> base;
  ConformalMap3 map;
  ComposedImmersion(std::shared_ptr<const Immersion> b, ConformalMap3 m)
      : base(std::move(b)), map(std::move(m)) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    return apply_map(map, base->jets(u, v, k));
  }
};

// Phi_k(z) = Phi(r_k / z) on the cylinder: t' = tau + log(1/r_k) is affine and
// psi enters with a sign flip, so jets pull back by negating odd-psi coefficients.
struct BlowupImmersion final : ImmersionFormula<BlowupImmersion> {
  std::shared_ptr<const Immersion> base;
  double log_rk;
  BlowupImmersion(std::shared_ptr<const Immersion> b, double lr) : base(std::move(b)), log_rk(lr) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Vec3J<Real> j = base->jets(u - Real(log_rk), -v, k);
    for (auto& comp : j)
      for (int d = 0; d <= k; ++d)
        for (int b = 1; b <= d; b += 2) comp.c[jet_index(d - b, b)] = -comp.c[jet_index(d - b, b)];
    return j;
  }
};

}  // namespace

template <class Real>
Vec3J<Real> eval_jets(const ImmersionChart& chart, Real u, Real v, int order) {
  if (chart.domain.kind == DomainKind::PuncturedDisk && chart.has_puncture()) {
    check_numeric(double(u) <= chart.t_cut() + 1e-12,
                  "evaluation within r_min of the puncture (label: " + chart.label + ")");
  }
  return chart.f->jets(u, v, order);
}

template Vec3J<double> eval_jets(const ImmersionChart&, double, double, int);
template Vec3J<long double> eval_jets(const ImmersionChart&, long double, long double, int);

// --- conformal factors ----------------------------------------------------------

ConformalFactor ConformalFactor::translation(const std::array<double, 3>& t) {
  ConformalFactor f;
  f.kind = Kind::Translation;
  f.v = t;
  return f;
}

ConformalFactor ConformalFactor::dilation(double s) {
  check_config(s > 0, "dilation factor must be positive");
  ConformalFactor f;
  f.kind = Kind::Dilation;
  f.s = s;
  return f;
}

ConformalFactor ConformalFactor::rotation(const std::array<std::array<double, 3>, 3>& r) {
  ConformalFactor f;
  f.kind = Kind::Rotation;
  f.rot = r;
  return f;
}

ConformalFactor ConformalFactor::inversion(const std::array<double, 3>& center) {
  ConformalFactor f;
  f.kind = Kind::Inversion;
  f.v = center;
  return f;
}

template <class Real>
Vec3J<Real> apply_factor(const ConformalFactor& f, const Vec3J<Real>& x) {
  switch (f.kind) {
    case ConformalFactor::Kind::Translation:
      return {x[0] + Real(f.v[0]), x[1] + Real(f.v[1]), x[2] + Real(f.v[2])};
    case ConformalFactor::Kind::Dilation:
      return jet_scale(x, Real(f.s));
    case ConformalFactor::Kind::Rotation: {
      Vec3J<Real> r;
      for (int i = 0; i < 3; ++i)
        r[i] = jet_scale(x[0], Real(f.rot[i][0])) + jet_scale(x[1], Real(f.rot[i][1])) +
               jet_scale(x[2], Real(f.rot[i][2]));
      return r;
    }
    case ConformalFactor::Kind::Inversion: {
      const Vec3J<Real> y = {x[0] - Real(f.v[0]), x[1] - Real(f.v[1]), x[2] - Real(f.v[2])};
      const Jet2<Real> n2 = dot(y, y);
      check_numeric(double(n2.value()) > 1e-24, "inversion center collides with a sample point");
      const Jet2<Real> inv = jet_recip(n2);
      return {y[0] * inv + Real(f.v[0]), y[1] * inv + Real(f.v[1]), y[2] * inv + Real(f.v[2])};
    }
  }
  throw std::logic_error("unreachable");
}

template Vec3J<double> apply_factor(const ConformalFactor&, const Vec3J<double>&);
template Vec3J<long double> apply_factor(const ConformalFactor&, const Vec3J<long double>&);

template <class Real>
Vec3J<Real> apply_map(const ConformalMap3& m, Vec3J<Real> x) {
  for (const auto& f : m.factors) x = apply_factor(f, x);
  return x;
}

template Vec3J<double> apply_map(const ConformalMap3&, Vec3J<double>);
template Vec3J<long double> apply_map(const ConformalMap3&, Vec3J<long double>);

std::array<double, 3> apply_map_point(const ConformalMap3& m, std::array<double, 3> x) {
  Vec3J<double> j = {Jet2<double>(0, x[0]), Jet2<double>(0, x[1]), Jet2<double>(0, x[2])};
  j = apply_map(m, j);
  return {j[0].value(), j[1].value(), j[2].value()};
}

ImmersionChart apply_conformal(const ConformalMap3& map, const ImmersionChart& chart) {
  ImmersionChart out = chart;
  out.f = std::make_shared<ComposedImmersion>(chart.f, map);
  out.label = chart.label + "+conf";
  return out;
}

// --- zoo --------------------------------------------------------------------------

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {
      "sphere",          "ellipsoid",         "catenoid",
      "enneper",         "inverted-catenoid", "inverted-enneper",
      "clifford-torus-projected", "torus-of-revolution"};
  return names;
}

ImmersionChart zoo(const std::string& name, const std::vector<double>& params) {
  ImmersionChart ch;
  ch.label = name;
  if (name == "sphere") {
    ch.domain = Domain2::cylinder(-9.0, 9.0);
    ch.f = std::make_shared<SphereImmersion>();
  } else if (name == "ellipsoid") {
    double a = 1, b = 1, c = 2;
    if (!params.empty()) {
      check_config(params.size() == 3, "ellipsoid expects 3 axis parameters");
      a = params[0];
      b = params[1];
      c = params[2];
    }
    check_config(a > 0 && b > 0 && c > 0, "ellipsoid axes must be positive");
    ch.domain = Domain2::cylinder(-9.0, 9.0);
    ch.f = std::make_shared<EllipsoidImmersion>(a, b, c);
  } else if (name == "catenoid") {
    ch.domain = Domain2::cylinder(-3.0, 3.0);
    ch.f = std::make_shared<CatenoidImmersion>();
  } else if (name == "enneper") {
    ch.domain = Domain2::rectangle(-1.5, 1.5, -1.5, 1.5);
    ch.f = std::make_shared<EnneperImmersion>();
  } else if (name == "inverted-catenoid") {
    // Inversion about the point where the doubly-covered catenoid end closes up.
    ch.domain = Domain2::punctured_disk(0.0, ch.r_min);
    ch.f = std::make_shared<ComposedImmersion>(
        std::make_shared<CatenoidEndDoubleCover>(),
        ConformalMap3::identity().then(ConformalFactor::inversion({0, 0, 0})));
    ch.punctures.push_back({1.0});
  } else if (name == "inverted-enneper") {
    // The center must sit off the surface (Enneper passes through the origin);
    // the trailing translation puts the branch-point image at the origin.
    ch.domain = Domain2::punctured_disk(0.0, ch.r_min);
    ch.f = std::make_shared<ComposedImmersion>(
        std::make_shared<EnneperEndImmersion>(),
        ConformalMap3::identity()
            .then(ConformalFactor::inversion({0, 0, 1}))
            .then(ConformalFactor::translation({0, 0, -1})));
    ch.punctures.push_back({2.0});
  } else if (name == "clifford-torus-projected") {
    ch.domain = Domain2::flat_torus();
    ch.f = std::make_shared<CliffordProjectedImmersion>();
  } else if (name == "torus-of-revolution") {
    double R = 2, r = 1;
    if (!params.empty()) {
      check_config(params.size() == 2, "torus-of-revolution expects (R, r)");
      R = params[0];
      r = params[1];
    }
    check_config(R > r && r > 0, "torus-of-revolution requires R > r > 0");
    ch.domain = Domain2::flat_torus();
    ch.f = std::make_shared<TorusImmersion>(R, r);
  } else {
    throw ConfigError("unknown zoo surface: " + name);
  }
  return ch;
}

// --- blow-up ----------------------------------------------------------------------

std::vector<ImmersionChart> blowup_sequence(const ImmersionChart& chart,
                                            const std::vector<double>& radii) {
  check_config(chart.domain.kind == DomainKind::PuncturedDisk,
               "blowup_sequence requires a punctured-disk chart");
  const double outer = std::exp(-chart.domain.u0);
  std::vector<ImmersionChart> out;
  out.reserve(radii.size());
  for (const double rk : radii) {
    check_config(rk > chart.r_min && rk < outer, "blow-up radius outside chart range");
    ImmersionChart b;
    b.domain = Domain2::cylinder(0.0, std::log(rk / chart.r_min));
    b.f = std::make_shared<BlowupImmersion>(chart.f, std::log(rk));
    b.punctures = chart.punctures;
    b.label = chart.label + "@blowup";
    b.r_min = chart.r_min;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace willmore
