#include "willmore/cgm.hpp"

#include <cmath>

namespace willmore {

template <class Real>
LorentzVecJ<Real> build_cgm(const ShapeData<Real>& s) {
  const int k = s.H.order;
  const Vec3J<Real> phi = {s.phi[0].truncated(k), s.phi[1].truncated(k), s.phi[2].truncated(k)};
  const Vec3J<Real> n = {s.n[0].truncated(k), s.n[1].truncated(k), s.n[2].truncated(k)};
  const Jet2<Real> phi2 = dot(phi, phi);
  const Jet2<Real> ndotphi = dot(n, phi);
  LorentzVecJ<Real> Y;
  for (int i = 0; i < 3; ++i) Y[i] = s.H * phi[i] + n[i];
  Y[3] = s.H * jet_scale(phi2 - Real(1), Real(0.5)) + ndotphi;
  Y[4] = s.H * jet_scale(phi2 + Real(1), Real(0.5)) + ndotphi;
  return Y;
}

template LorentzVecJ<double> build_cgm(const ShapeData<double>&);
template LorentzVecJ<long double> build_cgm(const ShapeData<long double>&);

template <class Real>
CgmSample<Real> cgm_r3(const ImmersionChart& chart, Real u, Real v, int order) {
  check_config(order >= 2, "cgm_r3 needs jet order >= 2");
  const ShapeData<Real> s = shape_at(chart, u, v, order);
  CgmSample<Real> out;
  out.Y = build_cgm(s);
  out.model = CgmModel::R3;
  out.u = u;
  out.v = v;
  out.H_from_Y = out.Y[4].value() - out.Y[3].value();
  return out;
}

template CgmSample<double> cgm_r3(const ImmersionChart&, double, double, int);
template CgmSample<long double> cgm_r3(const ImmersionChart&, long double, long double, int);

template <class Real>
std::array<LorentzVecJ<Real>, 2> grad_cgm(const CgmSample<Real>& sample) {
  check_config(sample.Y[0].order >= 1, "grad_cgm: jet order exhausted");
  std::array<LorentzVecJ<Real>, 2> d;
  for (int i = 0; i < 5; ++i) {
    d[0][i] = jet_dx(sample.Y[i]);
    d[1][i] = jet_dy(sample.Y[i]);
  }
  return d;
}

template std::array<LorentzVecJ<double>, 2> grad_cgm(const CgmSample<double>&);
template std::array<LorentzVecJ<long double>, 2> grad_cgm(const CgmSample<long double>&);

template <class Real>
std::array<std::array<Real, 5>, 2> grad_cgm_closed_form(const ShapeData<Real>& s) {
  // ell(Phi) = (Phi, (|Phi|^2-1)/2, (|Phi|^2+1)/2); dY = (dH) ell - A0 (dPhi, <Phi,dPhi>, ...)
  const Real phi[3] = {s.phi[0].value(), s.phi[1].value(), s.phi[2].value()};
  const Real phi2 = phi[0] * phi[0] + phi[1] * phi[1] + phi[2] * phi[2];
  const Real ell[5] = {phi[0], phi[1], phi[2], (phi2 - 1) / 2, (phi2 + 1) / 2};
  const Real dH[2] = {s.H.deriv(1, 0), s.H.deriv(0, 1)};
  // covariant A0, raised second index: (A0)_i^k = A0_ij g^{jk}
  const Real a0[2][2] = {{s.A0.m11.value(), s.A0.m12.value()},
                         {s.A0.m12.value(), s.A0.m22.value()}};
  const Real gi[2][2] = {{s.g_inv.m11.value(), s.g_inv.m12.value()},
                         {s.g_inv.m12.value(), s.g_inv.m22.value()}};
  Real dphi[2][3];
  for (int c = 0; c < 3; ++c) {
    dphi[0][c] = s.dphi_u[c].value();
    dphi[1][c] = s.dphi_v[c].value();
  }
  // 5-vector companion of dPhi: (dPhi, <Phi,dPhi>, <Phi,dPhi>)
  Real dell[2][5];
  for (int i = 0; i < 2; ++i) {
    const Real pd = phi[0] * dphi[i][0] + phi[1] * dphi[i][1] + phi[2] * dphi[i][2];
    dell[i][0] = dphi[i][0];
    dell[i][1] = dphi[i][1];
    dell[i][2] = dphi[i][2];
    dell[i][3] = pd;
    dell[i][4] = pd;
  }
  std::array<std::array<Real, 5>, 2> out{};
  for (int i = 0; i < 2; ++i) {
    Real raised[2] = {0, 0};  // (A0)_i^k
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) raised[k] += a0[i][j] * gi[j][k];
    for (int c = 0; c < 5; ++c)
      out[i][c] = dH[i] * ell[c] - raised[0] * dell[0][c] - raised[1] * dell[1][c];
  }
  return out;
}

template std::array<std::array<double, 5>, 2> grad_cgm_closed_form(const ShapeData<double>&);
template std::array<std::array<long double, 5>, 2> grad_cgm_closed_form(
    const ShapeData<long double>&);

namespace {

template <class Real>
std::array<std::array<double, 5>, 2> frame_derivatives(const ShapeData<Real>& s,
                                                       const LorentzVecJ<Real>& Y) {
  // g-orthonormal oriented frame e1 = d_u / sqrt(g11), e2 = (d_v - (g12/g11) d_u)/mu.
  const double g11 = double(s.g.m11.value()), g12 = double(s.g.m12.value()),
               g22 = double(s.g.m22.value());
  const double mu = std::sqrt(std::max(g22 - g12 * g12 / g11, 0.0));
  const double e1u = 1.0 / std::sqrt(g11);
  const double e2u = -g12 / (g11 * mu), e2v = 1.0 / mu;
  std::array<std::array<double, 5>, 2> d{};
  for (int c = 0; c < 5; ++c) {
    const double du = double(Y[c].deriv(1, 0));
    const double dv = double(Y[c].deriv(0, 1));
    d[0][c] = e1u * du;
    d[1][c] = e2u * du + e2v * dv;
  }
  return d;
}

}  // namespace

template <class Real>
std::complex<double> cgm_conformality_defect(const ShapeData<Real>& s,
                                             const LorentzVecJ<Real>& Y) {
  const auto d = frame_derivatives(s, Y);
  LorentzVec E1{}, E2{};
  for (int c = 0; c < 5; ++c) {
    E1[c] = d[0][c];
    E2[c] = d[1][c];
  }
  const double a = eta_inner(E1, E1) - eta_inner(E2, E2);
  const double b = -2.0 * eta_inner(E1, E2);
  return {0.25 * a, 0.25 * b};
}

template std::complex<double> cgm_conformality_defect(const ShapeData<double>&,
                                                      const LorentzVecJ<double>&);
template std::complex<double> cgm_conformality_defect(const ShapeData<long double>&,
                                                      const LorentzVecJ<long double>&);

template <class Real>
double cgm_pullback_defect(const ShapeData<Real>& s, const LorentzVecJ<Real>& Y) {
  LorentzVec du{}, dv{};
  for (int c = 0; c < 5; ++c) {
    du[c] = double(Y[c].deriv(1, 0));
    dv[c] = double(Y[c].deriv(0, 1));
  }
  const double p11 = eta_inner(du, du), p12 = eta_inner(du, dv), p22 = eta_inner(dv, dv);
  const double f = 0.5 * double(s.normA0_sq.value());
  double worst = std::abs(p11 - f * double(s.g.m11.value()));
  worst = std::max(worst, std::abs(p12 - f * double(s.g.m12.value())));
  worst = std::max(worst, std::abs(p22 - f * double(s.g.m22.value())));
  return worst;
}

template double cgm_pullback_defect(const ShapeData<double>&, const LorentzVecJ<double>&);
template double cgm_pullback_defect(const ShapeData<long double>&,
                                    const LorentzVecJ<long double>&);

// --- stereographic ---------------------------------------------------------------

template <class Real>
Vec4J<Real> stereographic_omega(const Vec3J<Real>& x) {
  const Jet2<Real> r2 = dot(x, x);
  const Jet2<Real> inv = jet_recip(r2 + Real(1));
  return {jet_scale(x[0] * inv, Real(2)), jet_scale(x[1] * inv, Real(2)),
          jet_scale(x[2] * inv, Real(2)), (r2 - Real(1)) * inv};
}

template Vec4J<double> stereographic_omega(const Vec3J<double>&);
template Vec4J<long double> stereographic_omega(const Vec3J<long double>&);

template <class Real>
Vec3J<Real> stereographic_pi(const Vec4J<Real>& u) {
  if (double(u[3].value()) >= 1.0 - 1e-14)
    throw NumericalError("stereographic projection at the north pole");
  const Jet2<Real> inv = jet_recip(Real(1) - u[3]);
  return {u[0] * inv, u[1] * inv, u[2] * inv};
}

template Vec3J<double> stereographic_pi(const Vec4J<double>&);
template Vec3J<long double> stereographic_pi(const Vec4J<long double>&);

// --- S^3 charts --------------------------------------------------------------------

namespace {

template <class Real>
struct Coord4 {
  Jet2<Real> t, p;
  Coord4(Real u, Real v, int k)
      : t(Jet2<Real>::variable(u, 0, k)), p(Jet2<Real>::variable(v, 1, k)) {}
};

template <class Derived>
class S3Formula : public S3Immersion {
 public:
  Vec4J<double> jets(double u, double v, int k) const override {
    return static_cast<const Derived*>(this)->template eval<double>(u, v, k);
  }
  Vec4J<long double> jets(long double u, long double v, int k) const override {
    return static_cast<const Derived*>(this)->template eval<long double>(u, v, k);
  }
};

// The round S^2 chart shared by the sphere-like S^3 surfaces (outward-oriented).
template <class Real>
Vec3J<Real> unit_sphere_chart(const Jet2<Real>& t, const Jet2<Real>& p) {
  const Jet2<Real> sech = jet_recip(jet_cosh(t));
  const Jet2<Real> tanh = jet_sinh(t) * sech;
  return {sech * jet_cos(p), sech * jet_sin(p), jet_neg(tanh)};
}

struct GreatSphere final : S3Formula<GreatSphere> {
  template <class Real>
  Vec4J<Real> eval(Real u, Real v, int k) const {
    Coord4<Real> c(u, v, k);
    const Vec3J<Real> psi = unit_sphere_chart(c.t, c.p);
    return {psi[0], psi[1], psi[2], Jet2<Real>(k, Real(0))};
  }
};

struct LatitudeSphere final : S3Formula<LatitudeSphere> {
  double rho0;
  explicit LatitudeSphere(double r) : rho0(r) {}
  template <class Real>
  Vec4J<Real> eval(Real u, Real v, int k) const {
    Coord4<Real> c(u, v, k);
    const Vec3J<Real> psi = unit_sphere_chart(c.t, c.p);
    const Real sr = std::sin(Real(rho0)), cr = std::cos(Real(rho0));
    return {jet_scale(psi[0], sr), jet_scale(psi[1], sr), jet_scale(psi[2], sr),
            Jet2<Real>(k, cr)};
  }
};

struct CliffordS3 final : S3Formula<CliffordS3> {
  template <class Real>
  Vec4J<Real> eval(Real u, Real v, int k) const {
    Coord4<Real> c(u, v, k);
    const Real s = Real(1) / std::sqrt(Real(2));
    return {jet_scale(jet_cos(c.t), s), jet_scale(jet_sin(c.t), s), jet_scale(jet_cos(c.p), s),
            jet_scale(jet_sin(c.p), s)};
  }
};

struct RotatedS3 final : S3Formula<RotatedS3> {
  std::shared_ptr<const S3Immersion> base;
  std::array<std::array<double, 4>, 4> R;
  RotatedS3(std::shared_ptr<const S3Immersion> b, const std::array<std::array<double, 4>, 4>& r)
      : base(std::move(b)), R(r) {}
  template <class Real>
  Vec4J<Real> eval(Real u, Real v, int k) const {
    const Vec4J<Real> x = base->jets(u, v, k);
    Vec4J<Real> y;
    for (int i = 0; i < 4; ++i) {
      Jet2<Real> acc(k, Real(0));
      for (int j = 0; j < 4; ++j) acc = acc + jet_scale(x[j], Real(R[i][j]));
      y[i] = acc;
    }
    return y;
  }
};

std::array<std::array<double, 4>, 4> so4_rotation(double a14, double a23) {
  std::array<std::array<double, 4>, 4> R{};
  for (int i = 0; i < 4; ++i) R[i][i] = 1;
  R[0][0] = std::cos(a14);
  R[0][3] = -std::sin(a14);
  R[3][0] = std::sin(a14);
  R[3][3] = std::cos(a14);
  std::array<std::array<double, 4>, 4> S{};
  for (int i = 0; i < 4; ++i) S[i][i] = 1;
  S[1][1] = std::cos(a23);
  S[1][2] = -std::sin(a23);
  S[2][1] = std::sin(a23);
  S[2][2] = std::cos(a23);
  std::array<std::array<double, 4>, 4> M{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += R[i][k] * S[k][j];
      M[i][j] = s;
    }
  return M;
}

template <class Real>
Jet2<Real> dot4(const Vec4J<Real>& a, const Vec4J<Real>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Hodge normal *(a ^ b ^ c) in R^4.
template <class Real>
Vec4J<Real> hodge_normal(const Vec4J<Real>& a, const Vec4J<Real>& b, const Vec4J<Real>& c) {
  const int k = a[0].order;
  Vec4J<Real> n = {Jet2<Real>(k, Real(0)), Jet2<Real>(k, Real(0)), Jet2<Real>(k, Real(0)),
                   Jet2<Real>(k, Real(0))};
  // n_d = eps_{d i j l} a_i b_j c_l
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int signs[6] = {1, -1, -1, 1, 1, -1};
  for (int d = 0; d < 4; ++d) {
    int rest[3], m = 0;
    for (int i = 0; i < 4; ++i)
      if (i != d) rest[m++] = i;
    Jet2<Real> acc(k, Real(0));
    for (int p = 0; p < 6; ++p) {
      const Jet2<Real> term = a[rest[perms[p][0]]] * b[rest[perms[p][1]]] * c[rest[perms[p][2]]];
      acc = acc + jet_scale(term, Real(signs[p]));
    }
    // parity of moving slot d to the front of (d, rest)
    const Real sign = (d % 2 == 0) ? Real(1) : Real(-1);
    n[d] = jet_scale(acc, sign);
  }
  return n;
}

}  // namespace

const std::vector<std::string>& s3_zoo_names() {
  static const std::vector<std::string> names = {"great-sphere", "latitude-sphere", "clifford",
                                                 "clifford-rotated"};
  return names;
}

S3Chart s3_zoo(const std::string& name, const std::vector<double>& params) {
  S3Chart ch;
  ch.label = name;
  // Orientation matching the R^3 charts under stereographic projection, so the
  // two conformal Gauss map models coincide (not just up to sign).
  ch.normal_sign = -1;
  if (name == "great-sphere") {
    ch.domain = Domain2::cylinder(-3, 3);
    ch.f = std::make_shared<GreatSphere>();
  } else if (name == "latitude-sphere") {
    const double rho0 = params.empty() ? M_PI / 3 : params[0];
    check_config(rho0 > 0 && rho0 < M_PI, "latitude-sphere needs rho0 in (0, pi)");
    ch.domain = Domain2::cylinder(-3, 3);
    ch.f = std::make_shared<LatitudeSphere>(rho0);
  } else if (name == "clifford") {
    ch.domain = Domain2::flat_torus();
    ch.f = std::make_shared<CliffordS3>();
  } else if (name == "clifford-rotated") {
    ch.domain = Domain2::flat_torus();
    ch.f = std::make_shared<RotatedS3>(std::make_shared<CliffordS3>(), so4_rotation(0.3, 0.2));
  } else {
    throw ConfigError("unknown S^3 surface: " + name);
  }
  return ch;
}

template <class Real>
S3ShapeData<Real> s3_shape_at(const S3Chart& chart, Real u, Real v, int order) {
  check_config(order >= 2, "s3_shape_at needs jet order >= 2");
  S3ShapeData<Real> s;
  s.psi = chart.f->jets(u, v, order);
  for (int i = 0; i < 4; ++i) {
    s.dpsi_u[i] = jet_dx(s.psi[i]);
    s.dpsi_v[i] = jet_dy(s.psi[i]);
  }
  s.g.m11 = dot4(s.dpsi_u, s.dpsi_u);
  s.g.m12 = dot4(s.dpsi_u, s.dpsi_v);
  s.g.m22 = dot4(s.dpsi_v, s.dpsi_v);
  s.det_g = s.g.m11 * s.g.m22 - s.g.m12 * s.g.m12;
  check_numeric(double(s.det_g.value()) > 0, "degenerate S^3 chart " + chart.label);

  const int kp = order - 1;
  Vec4J<Real> psi_t = {s.psi[0].truncated(kp), s.psi[1].truncated(kp), s.psi[2].truncated(kp),
                       s.psi[3].truncated(kp)};
  s.N = hodge_normal(psi_t, s.dpsi_u, s.dpsi_v);
  {
    const Jet2<Real> norm = jet_sqrt(dot4(s.N, s.N));
    const Jet2<Real> inv = jet_recip(norm);
    for (auto& c : s.N) c = jet_scale(c * inv, Real(chart.normal_sign));
  }

  const int ka = order - 2;
  Vec4J<Real> du, dv, dn_u, dn_v;
  for (int i = 0; i < 4; ++i) {
    du[i] = s.dpsi_u[i].truncated(ka);
    dv[i] = s.dpsi_v[i].truncated(ka);
    dn_u[i] = jet_dx(s.N[i]);
    dn_v[i] = jet_dy(s.N[i]);
  }
  s.A.m11 = jet_neg(dot4(du, dn_u));
  s.A.m22 = jet_neg(dot4(dv, dn_v));
  s.A.m12 = jet_scale(dot4(du, dn_v) + dot4(dv, dn_u), Real(-0.5));

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
  return s;
}

template S3ShapeData<double> s3_shape_at(const S3Chart&, double, double, int);
template S3ShapeData<long double> s3_shape_at(const S3Chart&, long double, long double, int);

template <class Real>
CgmSample<Real> cgm_s3(const S3Chart& chart, Real u, Real v, int order) {
  const S3ShapeData<Real> s = s3_shape_at(chart, u, v, order);
  const int k = s.H.order;
  CgmSample<Real> out;
  for (int i = 0; i < 4; ++i) out.Y[i] = s.H * s.psi[i].truncated(k) + s.N[i].truncated(k);
  out.Y[4] = s.H;
  out.model = CgmModel::S3;
  out.u = u;
  out.v = v;
  out.H_from_Y = out.Y[4].value() - out.Y[3].value();
  return out;
}

template CgmSample<double> cgm_s3(const S3Chart&, double, double, int);
template CgmSample<long double> cgm_s3(const S3Chart&, long double, long double, int);

template <class Real>
std::array<std::array<Real, 5>, 2> grad_cgm_s3_closed_form(const S3ShapeData<Real>& s) {
  const Real psi[4] = {s.psi[0].value(), s.psi[1].value(), s.psi[2].value(), s.psi[3].value()};
  const Real nu[5] = {psi[0], psi[1], psi[2], psi[3], 1};
  const Real dH[2] = {s.H.deriv(1, 0), s.H.deriv(0, 1)};
  const Real a0[2][2] = {{s.A0.m11.value(), s.A0.m12.value()},
                         {s.A0.m12.value(), s.A0.m22.value()}};
  const Real gi[2][2] = {{s.g_inv.m11.value(), s.g_inv.m12.value()},
                         {s.g_inv.m12.value(), s.g_inv.m22.value()}};
  Real dpsi[2][5];
  for (int c = 0; c < 4; ++c) {
    dpsi[0][c] = s.dpsi_u[c].value();
    dpsi[1][c] = s.dpsi_v[c].value();
  }
  dpsi[0][4] = dpsi[1][4] = 0;
  std::array<std::array<Real, 5>, 2> out{};
  for (int i = 0; i < 2; ++i) {
    Real raised[2] = {0, 0};
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) raised[k] += a0[i][j] * gi[j][k];
    for (int c = 0; c < 5; ++c)
      out[i][c] = dH[i] * nu[c] - raised[0] * dpsi[0][c] - raised[1] * dpsi[1][c];
  }
  return out;
}

template std::array<std::array<double, 5>, 2> grad_cgm_s3_closed_form(const S3ShapeData<double>&);
template std::array<std::array<long double, 5>, 2> grad_cgm_s3_closed_form(
    const S3ShapeData<long double>&);

namespace {

struct ProjectedImmersion final : ImmersionFormula<ProjectedImmersion> {
  std::shared_ptr<const S3Immersion> base;
  explicit ProjectedImmersion(std::shared_ptr<const S3Immersion> b) : base(std::move(b)) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    return stereographic_pi(base->jets(u, v, k));
  }
};

}  // namespace

ImmersionChart project_s3_chart(const S3Chart& chart) {
  ImmersionChart ch;
  ch.domain = chart.domain;
  ch.f = std::make_shared<ProjectedImmersion>(chart.f);
  ch.label = chart.label + "-projected";
  return ch;
}

// --- oscillation -------------------------------------------------------------------

double oscillation(const std::vector<LorentzVec>& samples, const LorentzMatrix& M) {
  check_config(!samples.empty(), "oscillation: empty region");
  LorentzVec lo = M.apply(samples[0]);
  LorentzVec hi = lo;
  for (std::size_t s = 1; s < samples.size(); ++s) {
    const LorentzVec y = M.apply(samples[s]);
    for (int i = 0; i < 5; ++i) {
      lo[i] = std::min(lo[i], y[i]);
      hi[i] = std::max(hi[i], y[i]);
    }
  }
  double acc = 0;
  for (int i = 0; i < 5; ++i) acc += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(acc);
}

double annulus_oscillation(const ImmersionChart& chart, double s, double s1,
                           const LorentzMatrix& M, int n_r, int n_phi) {
  check_config(chart.domain.kind == DomainKind::PuncturedDisk,
               "annulus_oscillation expects a punctured-disk chart");
  check_config(0 < s && s < s1, "annulus_oscillation: need 0 < s < s1");
  std::vector<LorentzVec> samples;
  samples.reserve(std::size_t(n_r) * n_phi);
  for (int i = 0; i < n_r; ++i) {
    const double r = s * std::pow(s1 / s, double(i) / (n_r - 1));
    const double t = -std::log(r);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2 * M_PI * j / n_phi;
      const CgmSample<double> cs = cgm_r3<double>(chart, t, phi, 2);
      LorentzVec y;
      for (int c = 0; c < 5; ++c) y[c] = cs.Y[c].value();
      samples.push_back(y);
    }
  }
  return oscillation(samples, M);
}

}  // namespace willmore
