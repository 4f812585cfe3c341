#pragma once

// Pointwise differential geometry of immersed charts (fundamental forms,
// curvatures) plus the quadrature-based functionals: energies, Willmore
// residual, weak-form first variation, dyadic annulus energies and the
// monotonicity-formula verification.

#include <optional>

#include "willmore/domain.hpp"
#include "willmore/surface.hpp"

namespace willmore {

template <class Real>
struct Mat2J {
  Jet2<Real> m11, m12, m22;  // symmetric
};

// Per-point package of first/second fundamental form data, all jet-valued.
// Orders: phi at K, g and n at K-1, A / H / A0 at K-2.
template <class Real>
struct ShapeData {
  Vec3J<Real> phi;
  Vec3J<Real> dphi_u, dphi_v;
  Mat2J<Real> g;
  Jet2<Real> det_g;
  Mat2J<Real> g_inv;
  std::optional<Jet2<Real>> lambda;  // conformal factor; absent off conformal gauge
  Real anisotropy = 0;               // |g11-g22| + 2|g12| over mean diagonal
  Vec3J<Real> n;
  Mat2J<Real> A;
  Jet2<Real> H;
  Mat2J<Real> A0;       // traceless part, covariant indices
  Jet2<Real> normA0_sq; // |A0|^2_g
  Jet2<Real> K_gauss;   // det A / det g
};

// Relative anisotropy below which a chart is treated as conformal.
inline constexpr double kConformalTol = 1e-8;

template <class Real>
ShapeData<Real> shape_at(const ImmersionChart& chart, Real u, Real v, int order);

// Residual of the Willmore equation Delta_g H + |A0|^2_g H at a point, with the
// scale-weighted normalization |res| * sqrt(det g) used by the reports.
struct WillmoreResidual {
  double residual = 0;
  double normalized = 0;
};
template <class Real>
WillmoreResidual willmore_residual(const ImmersionChart& chart, Real u, Real v, int order = 5);

// --- test vector fields ----------------------------------------------------------

class VectorField {
 public:
  virtual ~VectorField() = default;
  virtual Vec3J<double> jets(double u, double v, int order) const = 0;
  virtual Vec3J<long double> jets(long double u, long double v, int order) const = 0;
  // Parameter-space support box (ulo, uhi, vlo, vhi); fields vanish outside.
  virtual std::array<double, 4> support() const = 0;
};

// Tensor-product polynomial bump b(s) = (1 - s^2)^3 times a constant direction.
std::shared_ptr<VectorField> bump_field(double cu, double cv, double hu, double hv,
                                        const std::array<double, 3>& dir);

// Same bump times the chart's unit normal.
std::shared_ptr<VectorField> normal_bump_field(const ImmersionChart& chart, double cu, double cv,
                                               double hu, double hv);

// Bump in disk coordinates x = e^{-t+i phi}, supported across the puncture of a
// punctured-disk chart: w = b(X/rho) b(Y/rho) * dir.
std::shared_ptr<VectorField> disk_bump_field(double rho, const std::array<double, 3>& dir);

// First-axis bump, constant along the periodic angle: w = b((u-cu)/hu) * dir.
std::shared_ptr<VectorField> axis_bump_field(double cu, double hu,
                                             const std::array<double, 3>& dir);

// Chart evaluating Phi + eps * w (for difference-quotient oracles).
ImmersionChart perturb_chart(const ImmersionChart& chart, std::shared_ptr<VectorField> w,
                             double eps);

// sup over the grid of |w| + |Dw| + |D^2 w| in chart coordinates.
double field_c2_norm(const VectorField& w, const Domain2& dom, const GridSpec& spec);

// --- integrated quantities --------------------------------------------------------

struct EnergyReport {
  double W = 0;        // int H^2 dvol
  double E = 0;        // int |A0|^2 dvol
  double totalA = 0;   // int |A|^2 dvol
  double area = 0;
  double gaussInt = 0; // int K dvol
  GridSpec grid;
  // refinement-based estimates: |fine - half-resolution|
  double err_W = 0, err_E = 0, err_totalA = 0, err_area = 0, err_gauss = 0;
};

EnergyReport energies(const ImmersionChart& chart, const GridSpec& spec);

// int_{B_{2 rho} \ B_rho} |A|^2 dvol on a punctured-disk chart (disk radii).
double annulus_energy(const ImmersionChart& chart, double rho, int n_t = 32, int n_phi = 64);

// First variation of W against w in the divergence form
//   dW(Phi) . w = 1/2 * int < grad H~ - 3 pi_n(grad H~) + (J grad n) x H~ , grad w >_g dvol_g
// with H~ = H n; metric pairings make the expression chart-independent.
double weak_form_pairing(const ImmersionChart& chart, const VectorField& w, const GridSpec& spec);

// Central finite-difference oracle d/ds W(Phi + s w), Richardson-extrapolated.
double weak_form_fd_oracle(const ImmersionChart& chart, std::shared_ptr<VectorField> w,
                           const GridSpec& spec, double eps = 1e-3);

// --- monotonicity -----------------------------------------------------------------

struct MonotonicityReport {
  double t = 0, T = 0;
  double lhs = 0, rhs = 0;
  double area_t = 0, area_T = 0;
  bool holds = false;
};

// Caches chart samples around a center x0 so whole (t, T) sweeps reuse one grid.
class MonotonicityIntegrator {
 public:
  MonotonicityIntegrator(const ImmersionChart& chart, const std::array<double, 3>& x0,
                         const GridSpec& spec);
  ~MonotonicityIntegrator();

  // Area, int H^2, int <x - x0, H~> over {|Phi - x0| <= rho}, plus the area
  // carried by indicator-boundary cells (coarseness diagnostic).
  struct BallIntegrals {
    double area = 0, h2 = 0, pairing = 0;
    double boundary_area = 0;
  };
  BallIntegrals ball(double rho) const;

  MonotonicityReport check(double t, double T, double tolerance = 5e-4) const;

 private:
  struct Cell;
  ImmersionChart chart_;  // by value: integrators outlive caller temporaries
  std::array<double, 3> x0_;
  std::vector<Cell> cells_;
  std::vector<double> corner_d_;  // |Phi - x0|^2 at (nu+1) x (nv+1) vertices
  int nu_ = 0, nv_ = 0;
  double hu_ = 0, hv_ = 0, u0_ = 0, v0_ = 0;

  double dist2(double u, double v) const;
  struct Density {
    double area, h2, pairing;
  };
  Density density_at(double u, double v) const;
  void accum_cut(int iu, int iv, double rho2, BallIntegrals* out) const;
  void accum_square(double ulo, double vlo, double h_u, double h_v, double d00, double d10,
                    double d01, double d11, double rho2, int depth, BallIntegrals* out) const;
};

MonotonicityReport monotonicity_check(const ImmersionChart& chart, const std::array<double, 3>& x0,
                                      double t, double T, const GridSpec& spec,
                                      double tolerance = 5e-4);

}  // namespace willmore
