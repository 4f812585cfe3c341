#include "willmore/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "willmore/parallel.hpp"

namespace willmore {

namespace {

template <class Real>
Vec3J<Real> truncv(const Vec3J<Real>& a, int k) {
  return {a[0].truncated(k), a[1].truncated(k), a[2].truncated(k)};
}

template <class Real>
Vec3J<Real> d_u(const Vec3J<Real>& a) {
  return {jet_dx(a[0]), jet_dx(a[1]), jet_dx(a[2])};
}

template <class Real>
Vec3J<Real> d_v(const Vec3J<Real>& a) {
  return {jet_dy(a[0]), jet_dy(a[1]), jet_dy(a[2])};
}

}  // namespace

template <class Real>
ShapeData<Real> shape_at(const ImmersionChart& chart, Real u, Real v, int order) {
  check_config(order >= 2 && order <= kMaxJetOrder, "shape_at: jet order must be in [2,6]");
  ShapeData<Real> s;
  s.phi = eval_jets(chart, u, v, order);
  s.dphi_u = d_u(s.phi);
  s.dphi_v = d_v(s.phi);
  s.g.m11 = dot(s.dphi_u, s.dphi_u);
  s.g.m12 = dot(s.dphi_u, s.dphi_v);
  s.g.m22 = dot(s.dphi_v, s.dphi_v);
  s.det_g = s.g.m11 * s.g.m22 - s.g.m12 * s.g.m12;
  check_numeric(double(s.det_g.value()) > 0,
                "degenerate metric (det g <= 0) on chart " + chart.label);

  const double mean_diag = 0.5 * double(s.g.m11.value() + s.g.m22.value());
  s.anisotropy =
      Real((std::abs(double(s.g.m11.value() - s.g.m22.value())) +
            2.0 * std::abs(double(s.g.m12.value()))) /
           mean_diag);
  if (double(s.anisotropy) <= kConformalTol) {
    s.lambda = jet_scale(jet_log(s.det_g), Real(0.25));
  }

  s.n = cross(s.dphi_u, s.dphi_v);
  {
    const Jet2<Real> inv_norm = jet_recip(jet_sqrt(s.det_g));
    for (auto& c : s.n) c = c * inv_norm;
  }

  const int ka = order - 2;
  const Vec3J<Real> du = truncv(s.dphi_u, ka);
  const Vec3J<Real> dv = truncv(s.dphi_v, ka);
  const Vec3J<Real> dn_u = d_u(s.n);
  const Vec3J<Real> dn_v = d_v(s.n);
  s.A.m11 = jet_neg(dot(du, dn_u));
  s.A.m22 = jet_neg(dot(dv, dn_v));
  s.A.m12 = jet_scale(dot(du, dn_v) + dot(dv, dn_u), Real(-0.5));

  const Jet2<Real> inv_det = jet_recip(s.det_g.truncated(ka));
  s.g_inv.m11 = s.g.m22.truncated(ka) * inv_det;
  s.g_inv.m22 = s.g.m11.truncated(ka) * inv_det;
  s.g_inv.m12 = jet_neg(s.g.m12.truncated(ka)) * inv_det;

  s.H = jet_scale(s.g_inv.m11 * s.A.m11 + jet_scale(s.g_inv.m12 * s.A.m12, Real(2)) +
                      s.g_inv.m22 * s.A.m22,
                  Real(0.5));

  s.A0.m11 = s.A.m11 - s.H * s.g.m11.truncated(ka);
  s.A0.m12 = s.A.m12 - s.H * s.g.m12.truncated(ka);
  s.A0.m22 = s.A.m22 - s.H * s.g.m22.truncated(ka);

  // |A0|^2_g = tr(B B) with the mixed tensor B = g^{-1} A0.
  const Jet2<Real> b11 = s.g_inv.m11 * s.A0.m11 + s.g_inv.m12 * s.A0.m12;
  const Jet2<Real> b12 = s.g_inv.m11 * s.A0.m12 + s.g_inv.m12 * s.A0.m22;
  const Jet2<Real> b21 = s.g_inv.m12 * s.A0.m11 + s.g_inv.m22 * s.A0.m12;
  const Jet2<Real> b22 = s.g_inv.m12 * s.A0.m12 + s.g_inv.m22 * s.A0.m22;
  s.normA0_sq = b11 * b11 + jet_scale(b12 * b21, Real(2)) + b22 * b22;

  s.K_gauss = (s.A.m11 * s.A.m22 - s.A.m12 * s.A.m12) * inv_det;
  return s;
}

template ShapeData<double> shape_at(const ImmersionChart&, double, double, int);
template ShapeData<long double> shape_at(const ImmersionChart&, long double, long double, int);

template <class Real>
WillmoreResidual willmore_residual(const ImmersionChart& chart, Real u, Real v, int order) {
  check_config(order >= 4, "willmore_residual needs jet order >= 4");
  const ShapeData<Real> s = shape_at(chart, u, v, order);
  const int kl = order - 4;
  Jet2<Real> lap_g;
  if (s.lambda) {
    lap_g = jet_exp(jet_scale(s.lambda->truncated(kl), Real(-2))) *
            laplacian_flat(s.H).truncated(kl);
  } else {
    // Laplace-Beltrami in divergence form through the jets of g.
    const int km = order - 3;
    const Jet2<Real> sq = jet_sqrt(s.det_g.truncated(km));
    const Jet2<Real> hu = jet_dx(s.H);
    const Jet2<Real> hv = jet_dy(s.H);
    const Jet2<Real> p =
        sq * (s.g_inv.m11.truncated(km) * hu + s.g_inv.m12.truncated(km) * hv);
    const Jet2<Real> q =
        sq * (s.g_inv.m12.truncated(km) * hu + s.g_inv.m22.truncated(km) * hv);
    lap_g = jet_recip(sq.truncated(kl)) * (jet_dx(p) + jet_dy(q));
  }
  WillmoreResidual r;
  r.residual = double(lap_g.value() + s.normA0_sq.value() * s.H.value());
  r.normalized = std::abs(r.residual) * std::sqrt(double(s.det_g.value()));
  return r;
}

template WillmoreResidual willmore_residual(const ImmersionChart&, double, double, int);
template WillmoreResidual willmore_residual(const ImmersionChart&, long double, long double, int);

// --- test fields -----------------------------------------------------------------

namespace {

template <class Real>
Jet2<Real> bump1(const Jet2<Real>& s) {
  // (1 - s^2)^3 inside |s| < 1, zero outside; C^2 at the edge.
  if (std::abs(double(s.value())) >= 1.0) return Jet2<Real>(s.order, Real(0));
  const Jet2<Real> b = Real(1) - s * s;
  return b * b * b;
}

struct BumpField final : VectorField {
  double cu, cv, hu, hv;
  std::array<double, 3> dir;
  BumpField(double cu_, double cv_, double hu_, double hv_, const std::array<double, 3>& d)
      : cu(cu_), cv(cv_), hu(hu_), hv(hv_), dir(d) {}

  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    const Jet2<Real> su = jet_scale(Jet2<Real>::variable(u, 0, k) - Real(cu), Real(1.0 / hu));
    const Jet2<Real> sv = jet_scale(Jet2<Real>::variable(v, 1, k) - Real(cv), Real(1.0 / hv));
    const Jet2<Real> b = bump1(su) * bump1(sv);
    return {jet_scale(b, Real(dir[0])), jet_scale(b, Real(dir[1])), jet_scale(b, Real(dir[2]))};
  }
  Vec3J<double> jets(double u, double v, int k) const override { return eval<double>(u, v, k); }
  Vec3J<long double> jets(long double u, long double v, int k) const override {
    return eval<long double>(u, v, k);
  }
  std::array<double, 4> support() const override { return {cu - hu, cu + hu, cv - hv, cv + hv}; }
};

struct NormalBumpField final : VectorField {
  ImmersionChart chart;
  double cu, cv, hu, hv;
  NormalBumpField(ImmersionChart ch, double cu_, double cv_, double hu_, double hv_)
      : chart(std::move(ch)), cu(cu_), cv(cv_), hu(hu_), hv(hv_) {}

  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    const Jet2<Real> su = jet_scale(Jet2<Real>::variable(u, 0, k) - Real(cu), Real(1.0 / hu));
    const Jet2<Real> sv = jet_scale(Jet2<Real>::variable(v, 1, k) - Real(cv), Real(1.0 / hv));
    const Jet2<Real> b = bump1(su) * bump1(sv);
    if (b.value() == Real(0) && k == 0) return {b, b, b};
    const ShapeData<Real> s = shape_at(chart, u, v, k + 1);
    return {b * s.n[0].truncated(k), b * s.n[1].truncated(k), b * s.n[2].truncated(k)};
  }
  Vec3J<double> jets(double u, double v, int k) const override { return eval<double>(u, v, k); }
  Vec3J<long double> jets(long double u, long double v, int k) const override {
    return eval<long double>(u, v, k);
  }
  std::array<double, 4> support() const override { return {cu - hu, cu + hu, cv - hv, cv + hv}; }
};

// Bump in the disk coordinates of a punctured-disk chart; smooth across x = 0.
struct DiskBumpField final : VectorField {
  double rho;
  std::array<double, 3> dir;
  DiskBumpField(double r, const std::array<double, 3>& d) : rho(r), dir(d) {}

  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    const Jet2<Real> t = Jet2<Real>::variable(u, 0, k);
    const Jet2<Real> p = Jet2<Real>::variable(v, 1, k);
    const Jet2<Real> r = jet_exp(jet_neg(t));
    const Jet2<Real> X = jet_scale(r * jet_cos(p), Real(1.0 / rho));
    const Jet2<Real> Y = jet_scale(r * jet_sin(p), Real(1.0 / rho));
    const Jet2<Real> b = bump1(X) * bump1(Y);
    return {jet_scale(b, Real(dir[0])), jet_scale(b, Real(dir[1])), jet_scale(b, Real(dir[2]))};
  }
  Vec3J<double> jets(double u, double v, int k) const override { return eval<double>(u, v, k); }
  Vec3J<long double> jets(long double u, long double v, int k) const override {
    return eval<long double>(u, v, k);
  }
  std::array<double, 4> support() const override {
    // t >= -log(rho * sqrt 2), all angles
    return {-std::log(rho * std::sqrt(2.0)), std::numeric_limits<double>::infinity(), 0,
            2 * M_PI};
  }
};

struct AxisBumpField final : VectorField {
  double cu, hu;
  std::array<double, 3> dir;
  AxisBumpField(double cu_, double hu_, const std::array<double, 3>& d)
      : cu(cu_), hu(hu_), dir(d) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real /*v*/, int k) const {
    const Jet2<Real> su = jet_scale(Jet2<Real>::variable(u, 0, k) - Real(cu), Real(1.0 / hu));
    const Jet2<Real> b = bump1(su);
    return {jet_scale(b, Real(dir[0])), jet_scale(b, Real(dir[1])), jet_scale(b, Real(dir[2]))};
  }
  Vec3J<double> jets(double u, double v, int k) const override { return eval<double>(u, v, k); }
  Vec3J<long double> jets(long double u, long double v, int k) const override {
    return eval<long double>(u, v, k);
  }
  std::array<double, 4> support() const override { return {cu - hu, cu + hu, 0, 2 * M_PI}; }
};

struct PerturbedImmersion final : ImmersionFormula<PerturbedImmersion> {
  std::shared_ptr<const Immersion> base;
  std::shared_ptr<VectorField> w;
  double eps;
  PerturbedImmersion(std::shared_ptr<const Immersion> b, std::shared_ptr<VectorField> field,
                     double e)
      : base(std::move(b)), w(std::move(field)), eps(e) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    Vec3J<Real> x = base->jets(u, v, k);
    const Vec3J<Real> dw = w->jets(u, v, k);
    for (int i = 0; i < 3; ++i) x[i] = x[i] + jet_scale(dw[i], Real(eps));
    return x;
  }
};

}  // namespace

std::shared_ptr<VectorField> bump_field(double cu, double cv, double hu, double hv,
                                        const std::array<double, 3>& dir) {
  return std::make_shared<BumpField>(cu, cv, hu, hv, dir);
}

std::shared_ptr<VectorField> normal_bump_field(const ImmersionChart& chart, double cu, double cv,
                                               double hu, double hv) {
  return std::make_shared<NormalBumpField>(chart, cu, cv, hu, hv);
}

std::shared_ptr<VectorField> disk_bump_field(double rho, const std::array<double, 3>& dir) {
  return std::make_shared<DiskBumpField>(rho, dir);
}

std::shared_ptr<VectorField> axis_bump_field(double cu, double hu,
                                             const std::array<double, 3>& dir) {
  return std::make_shared<AxisBumpField>(cu, hu, dir);
}

ImmersionChart perturb_chart(const ImmersionChart& chart, std::shared_ptr<VectorField> w,
                             double eps) {
  ImmersionChart out = chart;
  out.f = std::make_shared<PerturbedImmersion>(chart.f, std::move(w), eps);
  out.label = chart.label + "+eps*w";
  return out;
}

double field_c2_norm(const VectorField& w, const Domain2& dom, const GridSpec& spec) {
  const QuadGrid grid = make_grid(dom, spec);
  double best = 0;
  for (const double u : grid.u.x)
    for (const double v : grid.v.x) {
      const Vec3J<double> j = w.jets(u, v, 2);
      double n0 = 0, n1 = 0, n2 = 0;
      for (const auto& c : j) {
        n0 += c.value() * c.value();
        n1 += c.deriv(1, 0) * c.deriv(1, 0) + c.deriv(0, 1) * c.deriv(0, 1);
        n2 += c.deriv(2, 0) * c.deriv(2, 0) + c.deriv(1, 1) * c.deriv(1, 1) +
              c.deriv(0, 2) * c.deriv(0, 2);
      }
      best = std::max(best, std::sqrt(n0) + std::sqrt(n1) + std::sqrt(n2));
    }
  return best;
}

// --- energies ----------------------------------------------------------------------

namespace {

struct EnergyTotals {
  double W = 0, E = 0, totalA = 0, area = 0, gauss = 0;
};

EnergyTotals integrate_energies(const ImmersionChart& chart, const GridSpec& spec) {
  const QuadGrid grid = make_grid(chart.domain, spec);
  const std::size_t nu = grid.u.x.size();
  std::vector<EnergyTotals> partial(nu);
  parallel_chunks(nu, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      EnergyTotals acc;
      for (std::size_t j = 0; j < grid.v.x.size(); ++j) {
        const ShapeData<double> s = shape_at(chart, grid.u.x[i], grid.v.x[j], 2);
        const double dvol = std::sqrt(s.det_g.value()) * grid.u.w[i] * grid.v.w[j];
        const double H = s.H.value(), a0 = s.normA0_sq.value();
        acc.W += H * H * dvol;
        acc.E += a0 * dvol;
        acc.totalA += (a0 + 2 * H * H) * dvol;
        acc.area += dvol;
        acc.gauss += s.K_gauss.value() * dvol;
      }
      partial[i] = acc;
    }
  });
  EnergyTotals total;
  for (const auto& p : partial) {
    total.W += p.W;
    total.E += p.E;
    total.totalA += p.totalA;
    total.area += p.area;
    total.gauss += p.gauss;
  }
  return total;
}

}  // namespace

EnergyReport energies(const ImmersionChart& chart, const GridSpec& spec) {
  const EnergyTotals fine = integrate_energies(chart, spec);
  const GridSpec half{std::max(8, spec.nu / 2), std::max(8, spec.nv / 2)};
  const EnergyTotals coarse = integrate_energies(chart, half);
  EnergyReport r;
  r.W = fine.W;
  r.E = fine.E;
  r.totalA = fine.totalA;
  r.area = fine.area;
  r.gaussInt = fine.gauss;
  r.grid = spec;
  r.err_W = std::abs(fine.W - coarse.W);
  r.err_E = std::abs(fine.E - coarse.E);
  r.err_totalA = std::abs(fine.totalA - coarse.totalA);
  r.err_area = std::abs(fine.area - coarse.area);
  r.err_gauss = std::abs(fine.gauss - coarse.gauss);
  check_numeric(std::isfinite(r.W) && std::isfinite(r.E) && std::isfinite(r.area),
                "non-integrable blow-up detected in energies on " + chart.label);
  return r;
}

double annulus_energy(const ImmersionChart& chart, double rho, int n_t, int n_phi) {
  check_config(chart.domain.kind == DomainKind::PuncturedDisk,
               "annulus_energy expects a punctured-disk chart");
  const double t_lo = -std::log(2.0 * rho), t_hi = -std::log(rho);
  check_config(t_lo >= chart.domain.u0 - 1e-12 && t_hi <= chart.t_cut() + 1e-12,
               "annulus outside chart range");
  const Axis at = gauss_legendre_axis(t_lo, t_hi, n_t);
  const Axis ap = periodic_axis(0, 2 * M_PI, n_phi);
  double acc = 0;
  for (std::size_t i = 0; i < at.x.size(); ++i)
    for (std::size_t j = 0; j < ap.x.size(); ++j) {
      const ShapeData<double> s = shape_at(chart, at.x[i], ap.x[j], 2);
      const double H = s.H.value();
      acc += (s.normA0_sq.value() + 2 * H * H) * std::sqrt(s.det_g.value()) * at.w[i] * ap.w[j];
    }
  return acc;
}

// --- weak form ----------------------------------------------------------------------

namespace {

// The 1/2 normalizes the divergence-form pairing to d/ds W(Phi + s w); fixed by
// the normal-variation family on the round cylinder, where both sides are
// available in closed form.
constexpr double kWeakFormScale = 0.5;

struct V3 {
  double x = 0, y = 0, z = 0;
};
V3 operator+(V3 a, V3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
V3 operator-(V3 a, V3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
V3 operator*(double s, V3 a) { return {s * a.x, s * a.y, s * a.z}; }
double dot3(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
V3 cross3(V3 a, V3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

V3 value_of(const Vec3J<double>& v) {
  return {v[0].value(), v[1].value(), v[2].value()};
}
V3 deriv_of(const Vec3J<double>& v, int a, int b) {
  return {v[0].deriv(a, b), v[1].deriv(a, b), v[2].deriv(a, b)};
}

}  // namespace

double weak_form_pairing(const ImmersionChart& chart, const VectorField& w, const GridSpec& spec) {
  const auto sup = w.support();
  const Domain2& dom = chart.domain;
  double ulo = std::max(dom.u0, sup[0]);
  double uhi = std::min(chart.domain.kind == DomainKind::PuncturedDisk ? chart.t_cut() : dom.u1,
                        sup[1]);
  check_config(uhi > ulo, "test field support does not meet the chart");
  if (!dom.periodic_u) {
    check_config(sup[0] > dom.u0 + 1e-12, "test field support touches the domain boundary");
    if (dom.kind != DomainKind::PuncturedDisk)
      check_config(sup[1] < dom.u1 - 1e-12, "test field support touches the domain boundary");
  }
  Axis au = gauss_legendre_axis(ulo, uhi, spec.nu);
  Axis av;
  if (dom.periodic_v) {
    av = periodic_axis(dom.v0, dom.v1, spec.nv);
  } else {
    check_config(sup[2] > dom.v0 + 1e-12 && sup[3] < dom.v1 - 1e-12,
                 "test field support touches the domain boundary");
    av = gauss_legendre_axis(std::max(dom.v0, sup[2]), std::min(dom.v1, sup[3]), spec.nv);
  }

  const std::size_t nu = au.x.size();
  std::vector<double> partial(nu, 0.0);
  parallel_chunks(nu, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double acc = 0;
      for (std::size_t j = 0; j < av.x.size(); ++j) {
        const double u = au.x[i], v = av.x[j];
        const Vec3J<double> wj = w.jets(u, v, 1);
        const V3 dw_u = deriv_of(wj, 1, 0), dw_v = deriv_of(wj, 0, 1);
        const V3 wval = value_of(wj);
        if (dot3(wval, wval) == 0 && dot3(dw_u, dw_u) == 0 && dot3(dw_v, dw_v) == 0) continue;

        const ShapeData<double> s = shape_at(chart, u, v, 3);
        const double g11 = s.g.m11.value(), g12 = s.g.m12.value(), g22 = s.g.m22.value();
        const double det = s.det_g.value(), sq = std::sqrt(det);
        const double i11 = g22 / det, i12 = -g12 / det, i22 = g11 / det;
        const V3 n = value_of(s.n);
        const double H = s.H.value();
        const V3 dn_u = deriv_of(s.n, 1, 0), dn_v = deriv_of(s.n, 0, 1);
        // dH~ with H~ = H n
        const V3 dH_u = s.H.deriv(1, 0) * n + H * dn_u;
        const V3 dH_v = s.H.deriv(0, 1) * n + H * dn_v;
        // raised index
        const V3 gH1 = i11 * dH_u + i12 * dH_v;
        const V3 gH2 = i12 * dH_u + i22 * dH_v;
        const V3 gn1 = i11 * dn_u + i12 * dn_v;
        const V3 gn2 = i12 * dn_u + i22 * dn_v;
        // complex structure on vectors: (Jv)^i = J^i_k v^k
        const double J11 = -g12 / sq, J12 = -g22 / sq, J21 = g11 / sq, J22 = g12 / sq;
        const V3 jn1 = J11 * gn1 + J12 * gn2;
        const V3 jn2 = J21 * gn1 + J22 * gn2;
        const V3 Hvec = H * n;
        const V3 S1 = gH1 - 3 * dot3(gH1, n) * n + cross3(jn1, Hvec);
        const V3 S2 = gH2 - 3 * dot3(gH2, n) * n + cross3(jn2, Hvec);
        acc += (dot3(S1, dw_u) + dot3(S2, dw_v)) * sq * au.w[i] * av.w[j];
      }
      partial[i] = acc;
    }
  });
  double total = 0;
  for (double p : partial) total += p;
  return kWeakFormScale * total;
}

double weak_form_fd_oracle(const ImmersionChart& chart, std::shared_ptr<VectorField> w,
                           const GridSpec& spec, double eps) {
  // Integrate the +-eps difference of H^2 dvol over a support-aligned grid so
  // the unperturbed part cancels exactly and the bump edges coincide with cell
  // boundaries (the integrand is polynomial-smooth inside the support).
  const auto sup = w->support();
  const Domain2& dom = chart.domain;
  const double ulo = std::max(dom.u0, sup[0]);
  const double uhi = std::min(
      chart.domain.kind == DomainKind::PuncturedDisk ? chart.t_cut() : dom.u1, sup[1]);
  check_config(uhi > ulo, "test field support does not meet the chart");
  const Axis au = gauss_legendre_axis(ulo, uhi, spec.nu);
  // Support-interior v-ranges get a GL axis aligned to the bump edges even on
  // periodic charts; only all-angle supports keep the trapezoid rule.
  const bool v_strict = sup[2] > dom.v0 + 1e-12 && sup[3] < dom.v1 - 1e-12;
  const Axis av = (dom.periodic_v && !v_strict)
                      ? periodic_axis(dom.v0, dom.v1, spec.nv)
                      : gauss_legendre_axis(std::max(dom.v0, sup[2]), std::min(dom.v1, sup[3]),
                                            spec.nv);
  const auto dq = [&](double e) {
    const ImmersionChart plus = perturb_chart(chart, w, e);
    const ImmersionChart minus = perturb_chart(chart, w, -e);
    const std::size_t nu = au.x.size();
    std::vector<double> partial(nu, 0.0);
    parallel_chunks(nu, [&](std::size_t, std::size_t b, std::size_t en) {
      for (std::size_t i = b; i < en; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < av.x.size(); ++j) {
          const ShapeData<double> sp = shape_at(plus, au.x[i], av.x[j], 2);
          const ShapeData<double> sm = shape_at(minus, au.x[i], av.x[j], 2);
          const double hp = sp.H.value(), hm = sm.H.value();
          acc += (hp * hp * std::sqrt(sp.det_g.value()) -
                  hm * hm * std::sqrt(sm.det_g.value())) *
                 au.w[i] * av.w[j];
        }
        partial[i] = acc;
      }
    });
    double total = 0;
    for (double p : partial) total += p;
    return total / (2 * e);
  };
  const double d1 = dq(eps);
  const double d2 = dq(eps / 2);
  return (4 * d2 - d1) / 3;
}

// --- monotonicity -------------------------------------------------------------------

struct MonotonicityIntegrator::Cell {
  double u, v;             // lower-left corner
  double min_d, max_d;     // over corners and GL probes
  std::array<double, 4> gl_area, gl_h2, gl_pair;  // densities at 2x2 GL nodes
  double cell_area_dvol;   // for the boundary-fraction diagnostic
};

MonotonicityIntegrator::~MonotonicityIntegrator() = default;

MonotonicityIntegrator::MonotonicityIntegrator(const ImmersionChart& chart,
                                               const std::array<double, 3>& x0,
                                               const GridSpec& spec)
    : chart_(chart), x0_(x0) {
  const Domain2& dom = chart.domain;
  nu_ = spec.nu;
  nv_ = spec.nv;
  u0_ = dom.u0;
  v0_ = dom.v0;
  const double u1 = dom.kind == DomainKind::PuncturedDisk ? chart.t_cut() : dom.u1;
  hu_ = (u1 - dom.u0) / nu_;
  hv_ = (dom.v1 - dom.v0) / nv_;

  corner_d_.assign(std::size_t(nu_ + 1) * (nv_ + 1), 0.0);
  parallel_chunks(std::size_t(nu_ + 1), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (int j = 0; j <= nv_; ++j)
        corner_d_[i * (nv_ + 1) + j] = dist2(u0_ + hu_ * double(i), v0_ + hv_ * j);
  });

  cells_.resize(std::size_t(nu_) * nv_);
  const double gl = 0.5773502691896257645091488;  // 2-point Gauss node
  parallel_chunks(std::size_t(nu_), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (int j = 0; j < nv_; ++j) {
        Cell& c = cells_[i * nv_ + j];
        c.u = u0_ + hu_ * double(i);
        c.v = v0_ + hv_ * j;
        double mn = corner_d_[i * (nv_ + 1) + j];
        double mx = mn;
        for (const double d : {corner_d_[i * (nv_ + 1) + j + 1],
                               corner_d_[(i + 1) * (nv_ + 1) + j],
                               corner_d_[(i + 1) * (nv_ + 1) + j + 1]}) {
          mn = std::min(mn, d);
          mx = std::max(mx, d);
        }
        c.cell_area_dvol = 0;
        for (int a = 0; a < 2; ++a)
          for (int bb = 0; bb < 2; ++bb) {
            const double uu = c.u + hu_ * (0.5 + (a ? 0.5 : -0.5) * gl);
            const double vv = c.v + hv_ * (0.5 + (bb ? 0.5 : -0.5) * gl);
            const Density den = density_at(uu, vv);
            const int idx = a * 2 + bb;
            c.gl_area[idx] = den.area;
            c.gl_h2[idx] = den.h2;
            c.gl_pair[idx] = den.pairing;
            const double d = dist2(uu, vv);
            mn = std::min(mn, d);
            mx = std::max(mx, d);
            c.cell_area_dvol += den.area * hu_ * hv_ / 4;
          }
        c.min_d = mn;
        c.max_d = mx;
      }
  });
}

double MonotonicityIntegrator::dist2(double u, double v) const {
  const Vec3J<double> p = eval_jets<double>(chart_, u, v, 0);
  const double dx = p[0].value() - x0_[0], dy = p[1].value() - x0_[1], dz = p[2].value() - x0_[2];
  return dx * dx + dy * dy + dz * dz;
}

MonotonicityIntegrator::Density MonotonicityIntegrator::density_at(double u, double v) const {
  const ShapeData<double> s = shape_at(chart_, u, v, 2);
  const double sq = std::sqrt(s.det_g.value());
  const double H = s.H.value();
  const V3 n = value_of(s.n);
  const V3 x = value_of(s.phi);
  const V3 d = {x.x - x0_[0], x.y - x0_[1], x.z - x0_[2]};
  return {sq, H * H * sq, dot3(d, H * n) * sq};
}

void MonotonicityIntegrator::accum_square(double ulo, double vlo, double h_u, double h_v,
                                          double d00, double d10, double d01, double d11,
                                          double rho2, int depth, BallIntegrals* out) const {
  const bool in00 = d00 <= rho2, in10 = d10 <= rho2, in01 = d01 <= rho2, in11 = d11 <= rho2;
  const int count = int(in00) + int(in10) + int(in01) + int(in11);
  if (count == 4) {
    const Density den = density_at(ulo + h_u / 2, vlo + h_v / 2);
    const double a = h_u * h_v;
    out->area += den.area * a;
    out->h2 += den.h2 * a;
    out->pairing += den.pairing * a;
    return;
  }
  if (count == 0) return;
  if (depth > 0) {
    const double dm0 = dist2(ulo + h_u / 2, vlo);
    const double dm1 = dist2(ulo + h_u / 2, vlo + h_v);
    const double d0m = dist2(ulo, vlo + h_v / 2);
    const double d1m = dist2(ulo + h_u, vlo + h_v / 2);
    const double dmm = dist2(ulo + h_u / 2, vlo + h_v / 2);
    accum_square(ulo, vlo, h_u / 2, h_v / 2, d00, dm0, d0m, dmm, rho2, depth - 1, out);
    accum_square(ulo + h_u / 2, vlo, h_u / 2, h_v / 2, dm0, d10, dmm, d1m, rho2, depth - 1, out);
    accum_square(ulo, vlo + h_v / 2, h_u / 2, h_v / 2, d0m, dmm, d01, dm1, rho2, depth - 1, out);
    accum_square(ulo + h_u / 2, vlo + h_v / 2, h_u / 2, h_v / 2, dmm, d1m, dm1, d11, rho2,
                 depth - 1, out);
    return;
  }
  // Leaf: polygon of the inside region, corners in cyclic order 00 -> 10 -> 11 -> 01,
  // with edge crossings located by bisection on the true distance function.
  const auto crossing = [&](double ua, double va, double ub, double vb, double da,
                            double db) -> std::pair<double, double> {
    double lo = 0, hi = 1, dlo = da - rho2, dhi = db - rho2;
    (void)dhi;
    for (int it = 0; it < 16; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double dm = dist2(ua + (ub - ua) * mid, va + (vb - va) * mid) - rho2;
      if ((dm > 0) == (dlo > 0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    const double m = 0.5 * (lo + hi);
    return {ua + (ub - ua) * m, va + (vb - va) * m};
  };
  const double cu[4] = {ulo, ulo + h_u, ulo + h_u, ulo};
  const double cv[4] = {vlo, vlo, vlo + h_v, vlo + h_v};
  const double cd[4] = {d00, d10, d11, d01};
  std::array<std::pair<double, double>, 8> poly;
  int np = 0;
  for (int k = 0; k < 4; ++k) {
    const int k2 = (k + 1) % 4;
    if (cd[k] <= rho2) poly[np++] = {cu[k], cv[k]};
    if ((cd[k] <= rho2) != (cd[k2] <= rho2))
      poly[np++] = crossing(cu[k], cv[k], cu[k2], cv[k2], cd[k], cd[k2]);
  }
  if (np < 3) return;
  double area2 = 0, cx = 0, cy = 0;
  for (int k = 0; k < np; ++k) {
    const auto& a = poly[k];
    const auto& b = poly[(k + 1) % np];
    const double w = a.first * b.second - b.first * a.second;
    area2 += w;
    cx += (a.first + b.first) * w;
    cy += (a.second + b.second) * w;
  }
  const double area = std::abs(area2) / 2;
  if (area <= 0) return;
  cx /= 3 * area2;
  cy /= 3 * area2;
  const Density den = density_at(cx, cy);
  out->area += den.area * area;
  out->h2 += den.h2 * area;
  out->pairing += den.pairing * area;
  // leaf subcells still straddling the boundary = the unresolved strip
  out->boundary_area += den.area * h_u * h_v;
}

MonotonicityIntegrator::BallIntegrals MonotonicityIntegrator::ball(double rho) const {
  const double rho2 = rho * rho;
  BallIntegrals out;
  const double wq = hu_ * hv_ / 4;
  for (int i = 0; i < nu_; ++i)
    for (int j = 0; j < nv_; ++j) {
      const Cell& c = cells_[std::size_t(i) * nv_ + j];
      if (c.min_d > rho2) continue;
      if (c.max_d <= rho2) {
        for (int k = 0; k < 4; ++k) {
          out.area += c.gl_area[k] * wq;
          out.h2 += c.gl_h2[k] * wq;
          out.pairing += c.gl_pair[k] * wq;
        }
        continue;
      }
      accum_cut(i, j, rho2, &out);
    }
  return out;
}

void MonotonicityIntegrator::accum_cut(int iu, int iv, double rho2, BallIntegrals* out) const {
  const double d00 = corner_d_[std::size_t(iu) * (nv_ + 1) + iv];
  const double d10 = corner_d_[std::size_t(iu + 1) * (nv_ + 1) + iv];
  const double d01 = corner_d_[std::size_t(iu) * (nv_ + 1) + iv + 1];
  const double d11 = corner_d_[std::size_t(iu + 1) * (nv_ + 1) + iv + 1];
  accum_square(u0_ + hu_ * iu, v0_ + hv_ * iv, hu_, hv_, d00, d10, d01, d11, rho2, 2, out);
}

MonotonicityReport MonotonicityIntegrator::check(double t, double T, double tolerance) const {
  check_config(0 < t && t < T, "monotonicity requires 0 < t < T");
  const BallIntegrals bt = ball(t);
  const BallIntegrals bT = ball(T);
  check_numeric(bT.area <= 0 || bT.boundary_area <= 0.05 * std::max(bT.area, bt.area),
                "monotonicity grid too coarse: indicator boundary cells exceed 5% of ball area");
  MonotonicityReport r;
  r.t = t;
  r.T = T;
  r.area_t = bt.area;
  r.area_T = bT.area;
  r.lhs = bT.area / (T * T) - bt.area / (t * t);
  r.rhs = -0.25 * (bT.h2 - bt.h2) - bT.pairing / (T * T) + bt.pairing / (t * t);
  r.holds = r.lhs >= r.rhs - tolerance;
  return r;
}

MonotonicityReport monotonicity_check(const ImmersionChart& chart, const std::array<double, 3>& x0,
                                      double t, double T, const GridSpec& spec, double tolerance) {
  return MonotonicityIntegrator(chart, x0, spec).check(t, T, tolerance);
}

}  // namespace willmore
