#pragma once

// Bryant's quartic coefficient q(z) = <d2_zz Y, d2_zz Y>_eta, its
// anti-holomorphic residual dzbar q (computed inside jet arithmetic, never by
// differencing), and the branch-point diagnostics: pole-order fits, asymptotic
// exponent fits and the |z| * sup|q| scaling table.
//
// On punctured-disk charts the holomorphic chart coordinate is z = -t + i phi
// (so that e^z is the disk coordinate); quartic values convert to the disk
// gauge by q_disk = q_chart * e^{4t}.

#include <complex>

#include "willmore/cgm.hpp"

namespace willmore {

enum class Precision { Double, Extended };

struct QuarticSample {
  double u = 0, v = 0;            // chart point
  std::complex<double> q;         // chart-gauge coefficient
  std::complex<double> dzbar_q;
  double det_g = 0;
  double scaled_q = 0;            // |q| * det g (noise-robust magnitude)
  double d2Y_sq = 0;              // |d2_zz Y|^2_euclid, the natural reference scale
  double dzY_sq = 0;              // |dz Y|^2_euclid
  double conf_defect = 0;         // |<dz Y, dz Y>_eta|
  double mixed_defect = 0;        // |<d2_zz Y, dz Y>_eta|
  double disk_factor = 1;         // e^{4t} on punctured disks, 1 otherwise
};

// Maximum metric anisotropy accepted by the (dz)^4 interpretation.
inline constexpr double kQuarticConformalTol = 1e-6;

QuarticSample quartic_at(const ImmersionChart& chart, double u, double v,
                         Precision prec = Precision::Double);

struct ScanReport {
  double max_abs_q = 0;
  double max_dzbar = 0;
  double max_scaled_q = 0;
  double max_d2Y_sq = 0;
  double scale = 0;                // max(sup|q|, 1e-14, 1e-4 * sup |d2Y|^2)
  double normalized_residual = 0;  // max|dzbar q| / scale
  double q_rel_variation = 0;      // (max|q| - min|q|) / max(|q|, floor)
  std::vector<QuarticSample> samples;
};

ScanReport holomorphicity_scan(const ImmersionChart& chart, const GridSpec& spec,
                               Precision prec = Precision::Double, bool keep_samples = false);

struct ExponentFit {
  std::vector<double> radii;
  std::vector<double> values;  // sup over the circle
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // rms log-residual; slope meaningful only when < 0.1
  bool degenerate = false;
  int window_lo = 0, window_hi = 0;  // inclusive index window used for the fit
};

// Least-squares slope of log(value) against log(radius).
ExponentFit fit_loglog(const std::vector<double>& radii, const std::vector<double>& values);

struct PoleOrderReport {
  ExponentFit fit;       // on sup_{|x|=r} |q_disk|
  bool vacuous = false;  // identically-zero quartic (q at rounding level throughout)
  bool theorem_consistent = false;  // slope >= -0.1 (bounded q)
  bool generic_bound_ok = false;    // slope >= -2.1 (pole order at most 2)
};

PoleOrderReport pole_order_fit(const ImmersionChart& chart, const std::vector<double>& radii);

struct BranchExponents {
  ExponentFit phi_fit;   // slope = 1 + theta
  ExponentFit grad_fit;  // slope = theta
  double theta = 0;      // combined estimate
  bool consistent = true;       // |(phi_slope - 1) - grad_slope| <= 0.1
  bool cancellation_flagged = false;
  // |H| behaviour: either sup|H| ~ r^{-alpha} or the gamma log|z| branch
  ExponentFit h_fit;
  bool h_log_type = false;
  double alpha = 0;
  double log_coeff = 0;      // |H| ~ log_coeff * log(1/r) + log_intercept
  double log_intercept = 0;
};

BranchExponents branch_exponents(const ImmersionChart& chart, const std::vector<double>& radii);

struct ScalingReport {
  std::vector<double> z;        // |z_k|
  std::vector<double> entries;  // |z_k| * sup_{annulus} |q_disk|
  bool decayed = false;         // o(1) verdict
};

// The o(1) sequence of the final pole estimate; annuli B_{2|z|} \ B_{|z|/2}.
ScalingReport scaling_estimate(const ImmersionChart& chart, const std::vector<double>& z_list,
                               Precision prec = Precision::Extended);

// Verdict: all entries at rounding level, or strictly decreasing with the last
// below half the first.  Exposed so synthetic magnitude sequences can be fed in.
bool scaling_verdict(const std::vector<double>& entries);

// Geometric radius ladder r0 * ratio^k, k = 0..count-1.
std::vector<double> radius_ladder(double r0, double ratio, int count);

}  // namespace willmore
