#pragma once

#include <cstdint>
#include <vector>

#include "dunkl/params.hpp"

namespace dunkl {

/// Off-diagonal Jacobi coefficients of the three-term recurrence
/// x p_{k-1} = b_k p_k + b_{k-1} p_{k-2}, plus p0 and the weight mass.
/// b_k = sqrt(k/(2s)) for k even, sqrt((k+2σ)/(2s)) for k odd.
struct RecurrenceCoeffs {
  std::vector<double> b;  // b[0] unused (=0), valid indices 1..k_max
  double p0 = 0.0;
  double mu0 = 0.0;
};

RecurrenceCoeffs recurrence_coeffs(const Params& p, std::size_t k_max);

/// Single Jacobi coefficient b_k without building the table.
inline double jacobi_b(const Params& p, std::size_t k) {
  const double num = (k % 2 == 0) ? static_cast<double>(k)
                                  : static_cast<double>(k) + 2.0 * p.sigma;
  return std::sqrt(num / (2.0 * p.s));
}

enum class BasisKind { poly, phi, xi };

/// Value in scaled form: value = mantissa * 2^exponent. The mantissa is kept
/// within [2^-512, 2^512] so the pair stays finite for k far beyond the point
/// where the raw polynomial would overflow.
struct BasisEval {
  std::size_t k = 0;
  double x = 0.0;
  double mantissa = 0.0;
  std::int64_t exponent = 0;
  BasisKind kind = BasisKind::poly;

  /// Reconstructed double; underflows to 0 / overflows to ±inf outside range.
  double value() const {
    if (mantissa == 0.0) return 0.0;
    if (exponent > 2000) return mantissa > 0 ? HUGE_VAL : -HUGE_VAL;
    if (exponent < -2000) return 0.0;
    return std::ldexp(mantissa, static_cast<int>(exponent));
  }
};

/// Evaluate p_k, φ_k = p_k e^{-sx²/2} or ξ_k = |x|^σ φ_k at x by the forward
/// recurrence with rescaling. Gaussian and |x|^σ factors are folded into the
/// exponent, never applied as a final multiplication.
BasisEval eval_basis(const Params& p, std::size_t k, double x, BasisKind kind);

/// All of ξ_0(x) .. ξ_k(x) as plain doubles from one recurrence pass.
/// (ξ values are polynomially bounded away from 0, so doubles suffice.)
std::vector<double> eval_xi_all(const Params& p, std::size_t k, double x);

/// Same single pass, φ flavor.
std::vector<double> eval_phi_all(const Params& p, std::size_t k, double x);

/// p_k(0) for even k, via the closed product form evaluated in log space.
double p_at_zero(const Params& p, std::size_t k);

/// p_k'(0) for odd k, closed form with prefactor (-1)^{(k-1)/2}/(1+2σ).
double dp_at_zero(const Params& p, std::size_t k);

/// log γ_k (leading coefficient of p_k; γ_k > 0 always).
double leading_coeff_log(const Params& p, std::size_t k);

/// m!_σ : 0!_σ = 1, m!_σ = (m-1)!_σ · m (m even), (m-1)!_σ · (m+2σ) (m odd).
double perturbed_factorial(const Params& p, std::size_t m);

/// Precomputed-coefficient evaluator for hot loops (scans, quadrature).
/// Semantics identical to eval_basis / eval_xi_all.
class BasisTable {
 public:
  BasisTable(const Params& p, std::size_t k_max);

  const Params& params() const { return p_; }
  std::size_t k_max() const { return k_max_; }
  double b(std::size_t k) const { return b_[k]; }

  BasisEval eval(std::size_t k, double x, BasisKind kind) const;
  double xi(std::size_t k, double x) const { return eval(k, x, BasisKind::xi).value(); }
  double phi(std::size_t k, double x) const { return eval(k, x, BasisKind::phi).value(); }

  /// Σ_{ℓ=0}^{k-1} ξ_ℓ²(x) in one pass.
  double xi_sq_partial_sum(std::size_t k, double x) const;

 private:
  Params p_;
  std::size_t k_max_;
  std::vector<double> b_;
  double p0_;
};

namespace detail {

// Scaled recurrence state: simultaneous (p_{k-1}, p_k) with one shared
// base-2 exponent. step() advances one index.
struct ScaledRecurrence {
  double prev = 0.0;   // p_{k-1}
  double cur = 0.0;    // p_k
  std::int64_t exp2 = 0;
  std::size_t k = 0;

  void rescale();
};

// Derivative of p_k via the ladder: k even -> sqrt(2ks) p_{k-1};
// k odd -> sqrt(2(k+2σ)s) p_{k-1} - 2σ p_k / x. Returned scaled.
BasisEval eval_dpoly(const Params& p, std::size_t k, double x);

}  // namespace detail

}  // namespace dunkl
