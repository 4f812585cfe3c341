#include "willmore/domain.hpp"

#include <array>

namespace willmore {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

}  // namespace

Axis periodic_axis(double a, double b, int n) {
  check_config(n >= 1, "periodic axis needs >= 1 node");
  Axis ax;
  const double h = (b - a) / n;
  ax.x.resize(n);
  ax.w.assign(n, h);
  for (int i = 0; i < n; ++i) ax.x[i] = a + h * i;
  return ax;
}

Axis gauss_legendre_axis(double a, double b, int n) {
  check_config(b > a, "axis range empty");
  const int cells = std::max(1, (n + 15) / 16);
  Axis ax;
  ax.x.reserve(16 * cells);
  ax.w.reserve(16 * cells);
  const double h = (b - a) / cells;
  for (int c = 0; c < cells; ++c) {
    const double mid = a + h * (c + 0.5);
    for (int k = 7; k >= 0; --k) {
      ax.x.push_back(mid - 0.5 * h * kGlNodes[k]);
      ax.w.push_back(0.5 * h * kGlWeights[k]);
    }
    for (int k = 0; k < 8; ++k) {
      ax.x.push_back(mid + 0.5 * h * kGlNodes[k]);
      ax.w.push_back(0.5 * h * kGlWeights[k]);
    }
  }
  return ax;
}

QuadGrid make_grid(const Domain2& dom, const GridSpec& spec) {
  check_config(spec.nu >= 8 && spec.nv >= 8, "grid counts must be >= 8 per axis");
  QuadGrid g;
  g.u = dom.periodic_u ? periodic_axis(dom.u0, dom.u1, spec.nu)
                       : gauss_legendre_axis(dom.u0, dom.u1, spec.nu);
  g.v = dom.periodic_v ? periodic_axis(dom.v0, dom.v1, spec.nv)
                       : gauss_legendre_axis(dom.v0, dom.v1, spec.nv);
  return g;
}

}  // namespace willmore
