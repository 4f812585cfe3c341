#pragma once

// Parametric immersions into R^3: evaluation backends producing jets, the
// built-in zoo, conformal transformations of R^3, and blow-up reparametrizations
// around punctures.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "willmore/domain.hpp"
#include "willmore/jet.hpp"

namespace willmore {

// Evaluation backend; implementations provide both precisions behind one
// interface so charts can be re-evaluated in extended precision near punctures.
class Immersion {
 public:
  virtual ~Immersion() = default;
  virtual Vec3J<double> jets(double u, double v, int order) const = 0;
  virtual Vec3J<long double> jets(long double u, long double v, int order) const = 0;
};

template <class Derived>
class ImmersionFormula : public Immersion {
 public:
  Vec3J<double> jets(double u, double v, int order) const override {
    return static_cast<const Derived*>(this)->template eval<double>(u, v, order);
  }
  Vec3J<long double> jets(long double u, long double v, int order) const override {
    return static_cast<const Derived*>(this)->template eval<long double>(u, v, order);
  }
};

struct Puncture {
  // Declared branch order theta (|grad Phi| ~ |x|^theta); negative = undeclared.
  double declared_order = -1;
};

struct ImmersionChart {
  Domain2 domain;
  std::shared_ptr<const Immersion> f;
  std::vector<Puncture> punctures;  // punctured disks carry one puncture at the origin
  std::string label;
  double r_min = 1e-6;  // evaluation refused within this disk radius of a puncture

  bool has_puncture() const { return !punctures.empty(); }
  // Largest admissible cylinder coordinate t (puncture guard).
  double t_cut() const { return -std::log(r_min); }
};

// Evaluate chart jets with the puncture guard applied.
template <class Real>
Vec3J<Real> eval_jets(const ImmersionChart& chart, Real u, Real v, int order);

// --- conformal transformations of R^3 -----------------------------------------

struct ConformalFactor {
  enum class Kind { Translation, Dilation, Rotation, Inversion };
  Kind kind = Kind::Translation;
  std::array<double, 3> v{0, 0, 0};                 // translation vector / inversion center
  double s = 1.0;                                   // dilation factor (> 0)
  std::array<std::array<double, 3>, 3> rot{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static ConformalFactor translation(const std::array<double, 3>& t);
  static ConformalFactor dilation(double s);
  static ConformalFactor rotation(const std::array<std::array<double, 3>, 3>& r);
  // x -> (x - c)/|x - c|^2 + c
  static ConformalFactor inversion(const std::array<double, 3>& center);
};

// Composition list applied left-to-right: x -> f_n(...f_1(x)).
struct ConformalMap3 {
  std::vector<ConformalFactor> factors;

  static ConformalMap3 identity() { return {}; }
  ConformalMap3 then(const ConformalFactor& f) const {
    ConformalMap3 m = *this;
    m.factors.push_back(f);
    return m;
  }
  ConformalMap3 then(const ConformalMap3& g) const {
    ConformalMap3 m = *this;
    m.factors.insert(m.factors.end(), g.factors.begin(), g.factors.end());
    return m;
  }
};

// Apply one factor / a whole composition to a point jet.
template <class Real>
Vec3J<Real> apply_factor(const ConformalFactor& f, const Vec3J<Real>& x);
template <class Real>
Vec3J<Real> apply_map(const ConformalMap3& m, Vec3J<Real> x);

std::array<double, 3> apply_map_point(const ConformalMap3& m, std::array<double, 3> x);

// Chart evaluating Theta o Phi through jet arithmetic.  Punctures are carried
// over; an inversion center colliding with a sample point raises at evaluation.
ImmersionChart apply_conformal(const ConformalMap3& map, const ImmersionChart& chart);

// --- zoo -----------------------------------------------------------------------

// Built-in analytic surfaces:
//   sphere | ellipsoid(a,b,c) | catenoid | enneper | inverted-catenoid |
//   inverted-enneper | clifford-torus-projected | torus-of-revolution(R,r)
ImmersionChart zoo(const std::string& name, const std::vector<double>& params = {});

// Names in zoo order (for test sweeps).
const std::vector<std::string>& zoo_names();

// --- blow-up -------------------------------------------------------------------

// Phi_k(z) := Phi(r_k / z) on C \ B_1, represented on the cylinder
// (tau, psi) -> z = e^{tau + i psi}.  Requires a punctured-disk chart.
std::vector<ImmersionChart> blowup_sequence(const ImmersionChart& chart,
                                            const std::vector<double>& radii);

}  // namespace willmore
