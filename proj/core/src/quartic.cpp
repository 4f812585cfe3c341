#include "willmore/quartic.hpp"

#include <algorithm>
#include <cmath>

#include "willmore/parallel.hpp"

namespace willmore {

namespace {

// Flip the sign of the first coordinate axis: jets of f(-s, v) from jets of
// f(t, v).  Used to pass from cylinder t to the holomorphic coordinate -t.
template <class Real>
Jet2<Real> flip_first_axis(const Jet2<Real>& f) {
  Jet2<Real> r = f;
  for (int d = 0; d <= f.order; ++d)
    for (int b = 0; b <= d; ++b)
      if ((d - b) % 2) r.c[jet_index(d - b, b)] = -r.c[jet_index(d - b, b)];
  return r;
}

template <class Real>
QuarticSample quartic_impl(const ImmersionChart& chart, double u, double v) {
  const ShapeData<Real> s = shape_at(chart, Real(u), Real(v), 5);
  check_numeric(double(s.anisotropy) <= kQuarticConformalTol,
                "quartic_at: non-conformal chart (anisotropy " +
                    std::to_string(double(s.anisotropy)) + ") on " + chart.label);
  LorentzVecJ<Real> Y = build_cgm(s);  // order 3
  const bool punctured = chart.domain.kind == DomainKind::PuncturedDisk;
  if (punctured)
    for (auto& c : Y) c = flip_first_axis(c);

  // d_z Y (order 2), d2_zz Y (order 1), all five components as complex jets.
  std::array<CJet2<Real>, 5> dzY, d2Y;
  for (int i = 0; i < 5; ++i) {
    dzY[i] = wirtinger_dz(CJet2<Real>(Y[i]));
    d2Y[i] = wirtinger_dz(dzY[i]);
  }
  const auto eta_c = [](const std::array<CJet2<Real>, 5>& a,
                        const std::array<CJet2<Real>, 5>& b) {
    CJet2<Real> acc = a[0] * b[0];
    acc = acc + a[1] * b[1];
    acc = acc + a[2] * b[2];
    acc = acc + a[3] * b[3];
    acc = acc - a[4] * b[4];
    return acc;
  };
  const CJet2<Real> qjet = eta_c(d2Y, d2Y);
  const CJet2<Real> dzbar_q = wirtinger_dzbar(qjet);

  std::array<CJet2<Real>, 5> dzY1;  // truncated for the mixed pairing
  for (int i = 0; i < 5; ++i)
    dzY1[i] = CJet2<Real>(dzY[i].re.truncated(1), dzY[i].im.truncated(1));
  const CJet2<Real> mixed = eta_c(d2Y, dzY1);

  std::array<CJet2<Real>, 5> dzY2 = dzY;
  const CJet2<Real> confc = eta_c(dzY2, dzY2);

  QuarticSample out;
  out.u = u;
  out.v = v;
  out.q = {double(qjet.re.value()), double(qjet.im.value())};
  out.dzbar_q = {double(dzbar_q.re.value()), double(dzbar_q.im.value())};
  out.det_g = double(s.det_g.value());
  out.scaled_q = std::abs(out.q) * out.det_g;
  double d2 = 0, d1 = 0;
  for (int i = 0; i < 5; ++i) {
    const double re = double(d2Y[i].re.value()), im = double(d2Y[i].im.value());
    d2 += re * re + im * im;
    const double re1 = double(dzY[i].re.value()), im1 = double(dzY[i].im.value());
    d1 += re1 * re1 + im1 * im1;
  }
  out.d2Y_sq = d2;
  out.dzY_sq = d1;
  out.conf_defect = std::abs(std::complex<double>(double(confc.re.value()),
                                                  double(confc.im.value())));
  out.mixed_defect =
      std::abs(std::complex<double>(double(mixed.re.value()), double(mixed.im.value())));
  out.disk_factor = punctured ? std::exp(4.0 * u) : 1.0;
  return out;
}

}  // namespace

QuarticSample quartic_at(const ImmersionChart& chart, double u, double v, Precision prec) {
  return prec == Precision::Extended ? quartic_impl<long double>(chart, u, v)
                                     : quartic_impl<double>(chart, u, v);
}

ScanReport holomorphicity_scan(const ImmersionChart& chart, const GridSpec& spec, Precision prec,
                               bool keep_samples) {
  const QuadGrid grid = make_grid(chart.domain, spec);
  const std::size_t nu = grid.u.x.size();
  struct Partial {
    double max_q = 0, min_q = 1e300, max_dzbar = 0, max_scaled = 0, max_d2 = 0;
    std::vector<QuarticSample> samples;
  };
  std::vector<Partial> parts(nu);
  parallel_chunks(nu, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Partial& p = parts[i];
      for (std::size_t j = 0; j < grid.v.x.size(); ++j) {
        const QuarticSample smp = quartic_at(chart, grid.u.x[i], grid.v.x[j], prec);
        p.max_q = std::max(p.max_q, std::abs(smp.q));
        p.min_q = std::min(p.min_q, std::abs(smp.q));
        p.max_dzbar = std::max(p.max_dzbar, std::abs(smp.dzbar_q));
        p.max_scaled = std::max(p.max_scaled, smp.scaled_q);
        p.max_d2 = std::max(p.max_d2, smp.d2Y_sq);
        if (keep_samples) p.samples.push_back(smp);
      }
    }
  });
  ScanReport r;
  double min_q = 1e300;
  for (auto& p : parts) {
    r.max_abs_q = std::max(r.max_abs_q, p.max_q);
    min_q = std::min(min_q, p.min_q);
    r.max_dzbar = std::max(r.max_dzbar, p.max_dzbar);
    r.max_scaled_q = std::max(r.max_scaled_q, p.max_scaled);
    r.max_d2Y_sq = std::max(r.max_d2Y_sq, p.max_d2);
    if (keep_samples)
      r.samples.insert(r.samples.end(), p.samples.begin(), p.samples.end());
  }
  // When q is genuinely zero the q-scale is pure rounding noise; fall back to
  // the size of the objects q is built from.
  r.scale = std::max({r.max_abs_q, 1e-14, 1e-4 * r.max_d2Y_sq});
  r.normalized_residual = r.max_dzbar / r.scale;
  r.q_rel_variation = (r.max_abs_q - min_q) / std::max(r.max_abs_q, 1e-14);
  return r;
}

// --- circle suprema and fits ---------------------------------------------------------

namespace {

// sup over the circle |x| = r (256 angular samples, doubled until the sup moves
// by < 1%).
double circle_sup(const std::function<double(double, double)>& f, double t, int n0 = 256,
                  int n_max = 2048) {
  double prev = -1;
  for (int n = n0; n <= n_max; n *= 2) {
    double sup = 0;
    for (int j = 0; j < n; ++j) sup = std::max(sup, f(t, 2 * M_PI * j / n));
    if (prev >= 0 && std::abs(sup - prev) <= 0.01 * std::abs(sup)) return sup;
    prev = sup;
  }
  return prev;
}

struct CirclePoint {
  double abs_q_disk = 0;
  double d2Y_sq = 0;
  double abs_q = 0;
};

}  // namespace

std::vector<double> radius_ladder(double r0, double ratio, int count) {
  check_config(r0 > 0 && ratio > 0 && ratio < 1 && count >= 2, "bad radius ladder");
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i) r[i] = r0 * std::pow(ratio, i);
  return r;
}

ExponentFit fit_loglog(const std::vector<double>& radii, const std::vector<double>& values) {
  check_config(radii.size() == values.size() && radii.size() >= 2, "fit needs >= 2 samples");
  ExponentFit f;
  f.radii = radii;
  f.values = values;
  f.window_lo = 0;
  f.window_hi = int(radii.size()) - 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = int(radii.size());
  for (int i = 0; i < n; ++i) {
    if (!(values[i] > 0)) {
      f.degenerate = true;
      return f;
    }
    const double x = std::log(radii[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double e = std::log(values[i]) - (f.slope * std::log(radii[i]) + f.intercept);
    rss += e * e;
  }
  f.residual = std::sqrt(rss / n);
  return f;
}

namespace {

ExponentFit fit_window(std::vector<double> radii, std::vector<double> values, int drop_tail) {
  const int keep = int(radii.size()) - drop_tail;
  std::vector<double> r(radii.begin(), radii.begin() + keep);
  std::vector<double> v(values.begin(), values.begin() + keep);
  ExponentFit f = fit_loglog(r, v);
  f.radii = std::move(radii);
  f.values = std::move(values);
  f.window_hi = keep - 1;
  return f;
}

}  // namespace

PoleOrderReport pole_order_fit(const ImmersionChart& chart, const std::vector<double>& radii) {
  check_config(chart.domain.kind == DomainKind::PuncturedDisk,
               "pole_order_fit expects a punctured-disk chart");
  check_config(radii.size() >= 6, "pole_order_fit wants >= 6 radii");
  std::vector<double> vq(radii.size()), vref(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    check_config(r > chart.r_min && r < std::exp(-chart.domain.u0), "fit radius outside chart");
    const Precision prec = r < 1e-3 ? Precision::Extended : Precision::Double;
    const double t = -std::log(r);
    vq[i] = circle_sup(
        [&](double tt, double pp) {
          const QuarticSample s = quartic_at(chart, tt, pp, prec);
          return std::abs(s.q) * s.disk_factor;
        },
        t);
    vref[i] = circle_sup(
        [&](double tt, double pp) { return quartic_at(chart, tt, pp, prec).d2Y_sq; }, t);
  }
  PoleOrderReport rep;
  bool vac = true;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    // q at rounding level relative to its constituents (disk gauge both sides)
    const double ref = vref[i] * std::exp(4.0 * -std::log(radii[i]));
    if (vq[i] > 1e-10 * ref) vac = false;
  }
  rep.vacuous = vac;
  rep.fit = fit_loglog(radii, vq);
  if (rep.vacuous) {
    rep.fit.degenerate = true;
    rep.theorem_consistent = true;  // identically-zero quartic, pole order vacuous
    rep.generic_bound_ok = true;
    return rep;
  }
  rep.theorem_consistent = rep.fit.slope >= -0.1;
  rep.generic_bound_ok = rep.fit.slope >= -2.1;
  return rep;
}

BranchExponents branch_exponents(const ImmersionChart& chart, const std::vector<double>& radii) {
  check_config(chart.domain.kind == DomainKind::PuncturedDisk,
               "branch_exponents expects a punctured-disk chart");
  check_config(radii.size() >= 4, "branch_exponents wants >= 4 radii");
  const std::size_t n = radii.size();
  // limit point of Phi at the puncture, so |Phi - Phi0| obeys the r^{1+theta}
  // law even when the chart does not vanish there (spurious markers)
  std::array<double, 3> phi0{0, 0, 0};
  {
    const double t0 = chart.t_cut();
    for (int j = 0; j < 8; ++j) {
      const Vec3J<double> p = eval_jets<double>(chart, t0, 2 * M_PI * j / 8.0, 0);
      for (int c = 0; c < 3; ++c) phi0[c] += p[c].value() / 8.0;
    }
  }
  std::vector<double> v_phi(n), v_grad(n), v_H(n), v_phi_d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = radii[i];
    const double t = -std::log(r);
    const bool ext = r < 1e-3;
    const auto eval = [&](double tt, double pp, int what) -> double {
      if (ext) {
        const ShapeData<long double> s = shape_at(chart, (long double)(tt), (long double)(pp), 2);
        if (what == 0) {
          double acc = 0;
          for (int c = 0; c < 3; ++c) {
            const double d = double(s.phi[c].value()) - phi0[c];
            acc += d * d;
          }
          return std::sqrt(acc);
        }
        if (what == 1)
          return std::sqrt(double(s.g.m11.value() + s.g.m22.value())) * std::exp(tt);
        return std::abs(double(s.H.value()));
      }
      const ShapeData<double> s = shape_at(chart, tt, pp, 2);
      if (what == 0) {
        double acc = 0;
        for (int c = 0; c < 3; ++c) {
          const double d = s.phi[c].value() - phi0[c];
          acc += d * d;
        }
        return std::sqrt(acc);
      }
      if (what == 1) return std::sqrt(s.g.m11.value() + s.g.m22.value()) * std::exp(tt);
      return std::abs(s.H.value());
    };
    v_phi[i] = circle_sup([&](double a, double b) { return eval(a, b, 0); }, t);
    v_grad[i] = circle_sup([&](double a, double b) { return eval(a, b, 1); }, t);
    v_H[i] = circle_sup([&](double a, double b) { return eval(a, b, 2); }, t);
    // double-precision |Phi - phi0| for the cancellation probe
    const ShapeData<double> sd = shape_at(chart, t, 0.37, 2);
    double acc = 0;
    for (int c = 0; c < 3; ++c) {
      const double d = sd.phi[c].value() - phi0[c];
      acc += d * d;
    }
    v_phi_d[i] = std::sqrt(acc);
  }

  BranchExponents out;
  // Cancellation probe at the two smallest radii: double vs extended evaluation.
  int drop = 0;
  for (std::size_t i = n - 2; i < n; ++i) {
    const double t = -std::log(radii[i]);
    const ShapeData<long double> sl = shape_at(chart, (long double)t, 0.37L, 2);
    double acc = 0;
    for (int c = 0; c < 3; ++c) {
      const double d = double(sl.phi[c].value()) - phi0[c];
      acc += d * d;
    }
    const double ext_phi = std::sqrt(acc);
    if (std::abs(ext_phi - v_phi_d[i]) > 1e-6 * std::abs(ext_phi)) {
      out.cancellation_flagged = true;
      drop = 2;
    }
  }
  out.phi_fit = fit_window(radii, v_phi, drop);
  out.grad_fit = fit_window(radii, v_grad, drop);
  const double theta_phi = out.phi_fit.slope - 1.0;
  const double theta_grad = out.grad_fit.slope;
  out.theta = 0.5 * (theta_phi + theta_grad);
  out.consistent = std::abs(theta_phi - theta_grad) <= 0.1;

  out.h_fit = fit_window(radii, v_H, drop);
  // gamma log|z| branch: |H| ~ a log(1/r) + b.  Triggered by a near-zero
  // power-law slope, or when the log model fits clearly better (the observable
  // slope of log-type data only approaches 0 like 1/log r).
  double a_log = 0, b_log = 0, res_log = 0;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = out.h_fit.window_hi + 1;
    for (int i = 0; i < m; ++i) {
      const double x = -std::log(radii[i]);
      sx += x;
      sy += v_H[i];
      sxx += x * x;
      sxy += x * v_H[i];
    }
    const double det = m * sxx - sx * sx;
    a_log = (m * sxy - sx * sy) / det;
    b_log = (sy * sxx - sx * sxy) / det;
    double rss = 0;
    int used = 0;
    for (int i = 0; i < m; ++i) {
      const double pred = a_log * (-std::log(radii[i])) + b_log;
      if (pred > 0 && v_H[i] > 0) {
        const double e = std::log(pred) - std::log(v_H[i]);
        rss += e * e;
        ++used;
      } else {
        rss += 1e6;  // log model inapplicable
        ++used;
      }
    }
    res_log = std::sqrt(rss / std::max(1, used));
  }
  if (std::abs(out.h_fit.slope) < 0.05 || (a_log > 0 && res_log < 0.5 * out.h_fit.residual)) {
    out.h_log_type = true;
    out.log_coeff = a_log;
    out.log_intercept = b_log;
    out.alpha = 0;
  } else {
    out.alpha = -out.h_fit.slope;
  }
  return out;
}

ScalingReport scaling_estimate(const ImmersionChart& chart, const std::vector<double>& z_list,
                               Precision prec) {
  check_config(chart.domain.kind == DomainKind::PuncturedDisk,
               "scaling_estimate expects a punctured-disk chart");
  ScalingReport rep;
  rep.z = z_list;
  rep.entries.resize(z_list.size());
  const double outer = std::exp(-chart.domain.u0);
  for (std::size_t k = 0; k < z_list.size(); ++k) {
    const double zk = z_list[k];
    check_config(zk / 2 > chart.r_min && 2 * zk <= outer * (1 + 1e-12),
                 "scaling annulus outside the chart");
    double sup = 0;
    for (int lev = -2; lev <= 2; ++lev) {
      const double r = zk * std::pow(2.0, lev / 2.0);
      const double t = -std::log(r);
      sup = std::max(sup, circle_sup(
                              [&](double tt, double pp) {
                                const QuarticSample s = quartic_at(chart, tt, pp, prec);
                                return std::abs(s.q) * s.disk_factor;
                              },
                              t));
    }
    rep.entries[k] = zk * sup;
  }
  rep.decayed = scaling_verdict(rep.entries);
  return rep;
}

bool scaling_verdict(const std::vector<double>& entries) {
  if (entries.empty()) return false;
  bool all_tiny = true;
  for (const double e : entries)
    if (e > 1e-8) all_tiny = false;
  if (all_tiny) return true;
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i] >= entries[i - 1]) return false;
  return entries.back() < 0.5 * entries.front();
}

}  // namespace willmore
