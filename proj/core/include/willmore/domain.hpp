#pragma once

#include <cmath>
#include <vector>

#include "willmore/errors.hpp"

namespace willmore {

// Parameter domains.  Punctured disks are realized in cylinder coordinates
// (t, phi) with disk coordinate x = e^{-t + i phi}; the puncture is the
// t -> +infinity end and evaluation is cut off at radius r_min.
enum class DomainKind { Rectangle, FlatTorus, Cylinder, PuncturedDisk };

struct Domain2 {
  DomainKind kind = DomainKind::Rectangle;
  double u0 = 0, u1 = 1;  // first axis range
  double v0 = 0, v1 = 1;  // second axis range
  bool periodic_u = false;
  bool periodic_v = false;

  static Domain2 rectangle(double a, double b, double c, double d) {
    return {DomainKind::Rectangle, a, b, c, d, false, false};
  }
  static Domain2 flat_torus() {
    return {DomainKind::FlatTorus, 0, 2 * M_PI, 0, 2 * M_PI, true, true};
  }
  static Domain2 cylinder(double t_min, double t_max) {
    return {DomainKind::Cylinder, t_min, t_max, 0, 2 * M_PI, false, true};
  }
  // Punctured disk of outer radius e^{-t_min}; the t-range is truncated at
  // r = r_min by chart construction.
  static Domain2 punctured_disk(double t_min, double r_min) {
    check_config(r_min > 0 && std::exp(-t_min) > r_min, "punctured disk: empty radius range");
    return {DomainKind::PuncturedDisk, t_min, -std::log(r_min), 0, 2 * M_PI, false, true};
  }

  bool has_puncture_axis() const { return kind == DomainKind::PuncturedDisk; }
};

// One quadrature axis: nodes and weights.
struct Axis {
  std::vector<double> x;
  std::vector<double> w;
};

// Uniform nodes on [a, b) with equal weights (trapezoid rule on a period).
Axis periodic_axis(double a, double b, int n);

// Composite Gauss-Legendre with 16 nodes per cell; n is rounded up to a
// multiple of 16.
Axis gauss_legendre_axis(double a, double b, int n);

struct GridSpec {
  int nu = 64;
  int nv = 64;
};

// Tensor quadrature grid adapted to the domain kind.
struct QuadGrid {
  Axis u, v;
  std::size_t size() const { return u.x.size() * v.x.size(); }
};

QuadGrid make_grid(const Domain2& dom, const GridSpec& spec);

}  // namespace willmore
