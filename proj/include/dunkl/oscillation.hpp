#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dunkl/params.hpp"

namespace dunkl {

/// σ̄_k = σ(σ - (-1)^k).
inline double sigma_bar(const Params& p, std::size_t k) {
  return p.sigma * (p.sigma - ((k % 2 == 0) ? 1.0 : -1.0));
}

/// q_k(x) = (2k+1+2σ)s - s²x² - σ̄_k x^{-2}.
double q_k(const Params& p, std::size_t k, double x);

enum class Regime { four_zero, two_zero_pos, two_zero_neg, two_zero_zero, no_oscillation };

/// Geometry of q_k: turning points, maximum, and the Ĵ_k cutoff b_{k,+}
/// (solution of q_k(b) b² = 4π when σ̄_k < 0 and k is large enough).
struct OscillationProfile {
  std::size_t k = 0;
  double sigma_bar = 0.0;
  double c_max = 0.0;
  std::optional<double> x_max;
  std::optional<double> a_k;
  double b_k = 0.0;  // NaN when q_k has no zeros (regime == no_oscillation)
  std::optional<double> b_k_plus;
  Regime regime = Regime::no_oscillation;

  bool has_oscillation() const {
    return regime != Regime::no_oscillation && regime != Regime::two_zero_pos;
  }
};

OscillationProfile profile(const Params& p, std::size_t k);

/// Membership in Ĵ_k: the oscillation set, minus (-b_{k,+}, b_{k,+}) when
/// σ̄_k < 0 and b_{k,+} exists.
bool jhat_contains(const OscillationProfile& prof, double x);

enum class ScanStatistic {
  thm11_i,
  thm11_ii,
  thm11_iii,
  thm12,
  thm13_i,   // same per-k values as thm11_ii; used with a lower-envelope statistic
  thm13_ii,  // same per-k values as thm11_iii
  root_spacing,
  lemmaF,
  lemmaG
};

struct ScanOptions {
  double points_per_wavelength = 40.0;
  double epsilon = 1.0;  // lemmaG window half-width, in units of k^{-1/6}
  std::size_t jobs = 1;
};

/// One scan over a k-list. per_k_values follow the statistic's definition:
///   thm11_i      sup over Ĵ_k of ξ_k² sqrt(q_k)
///   thm11_ii/iii k^{1/6} · max ξ_k² (over ℝ, resp. |x| >= x_{k,k/2})
///   thm12        sup over ℝ of φ_k²
///   root_spacing k^{1/6} · max over Ĵ_k of distance to the nearest node
///   lemmaF       k^{5/12} · sup_{x in [b_{k+1}, b_{k+1}+5]} ξ_k(x)(x-b_k)²
///   lemmaG       k^{-1/6} · max partial sum Σ_{l<k} ξ_l² near x_{k,1}
/// fitted_slope is least-squares over k >= 50: for thm11_ii/iii and thm13_*
/// it is the slope of log(max ξ_k²) (i.e. per-k value with the k^{1/6}
/// normalization removed); for the rest, the slope of log per_k.
struct EstimateScan {
  double sigma = 0.0;
  double s = 1.0;
  std::vector<std::size_t> k_list;
  ScanStatistic statistic = ScanStatistic::thm11_ii;
  std::vector<double> per_k_values;
  std::optional<double> fitted_slope;
};

EstimateScan run_scan(const Params& p, ScanStatistic statistic,
                      const std::vector<std::size_t>& k_list,
                      const ScanOptions& opts = {});

// Spec-named wrappers.
inline EstimateScan scan_thm11(const Params& p, const std::vector<std::size_t>& ks,
                               ScanStatistic which, const ScanOptions& o = {}) {
  return run_scan(p, which, ks, o);
}
inline EstimateScan scan_thm12(const Params& p, const std::vector<std::size_t>& ks,
                               const ScanOptions& o = {}) {
  return run_scan(p, ScanStatistic::thm12, ks, o);
}
inline EstimateScan scan_root_spacing(const Params& p, const std::vector<std::size_t>& ks,
                                      const ScanOptions& o = {}) {
  return run_scan(p, ScanStatistic::root_spacing, ks, o);
}
inline EstimateScan scan_lemmaF(const Params& p, const std::vector<std::size_t>& ks,
                                const ScanOptions& o = {}) {
  return run_scan(p, ScanStatistic::lemmaF, ks, o);
}
inline EstimateScan scan_lemmaG(const Params& p, const std::vector<std::size_t>& ks,
                                double epsilon, ScanOptions o = {}) {
  o.epsilon = epsilon;
  return run_scan(p, ScanStatistic::lemmaG, ks, o);
}

/// Least-squares line of log y against log k, restricted to k >= k_min;
/// returns {slope, intercept}.
std::optional<std::pair<double, double>> fit_log_line(
    const std::vector<std::size_t>& ks, const std::vector<double>& ys,
    std::size_t k_min = 50);

/// Least-squares slope of log y against log k, restricted to k >= k_min.
std::optional<double> fit_log_slope(const std::vector<std::size_t>& ks,
                                    const std::vector<double>& ys,
                                    std::size_t k_min = 50);

/// Roughly geometric k ladder in [kmin, kmax]; parity forced when asked.
std::vector<std::size_t> log_spaced_k(std::size_t kmin, std::size_t kmax,
                                      std::size_t count, bool force_even = false);

}  // namespace dunkl
