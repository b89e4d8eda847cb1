#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dunkl/hermite_basis.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

/// Gauss rule for the weight |x|^{2σ} e^{-sx²}: nodes are the roots of p_k
/// (strictly decreasing), weights the Christoffel numbers λ_{k,i}.
/// log_weights carries log λ from the closed-form identity
/// p_k'(x)² λ = 2s at nonzero roots and 2s/(1+2σ) at the x=0 node (odd k),
/// usable far beyond the range where λ itself is representable.
struct QuadratureRule {
  std::size_t k = 0;
  Params params{0.0, 1.0};
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
};

/// Golub–Welsch over the recurrence coefficients, then up to 3 Newton steps
/// on the recurrence-evaluated p_k per node, then exact symmetrization.
QuadratureRule build_rule(const Params& p, std::size_t k);

/// ⟨f, g⟩_σ for φ-like evaluands (Gaussian included in the samples); the rule
/// absorbs the full measure, compensating e^{+s x²} in log space.
double inner_product(const QuadratureRule& rule,
                     const std::function<double(double)>& f,
                     const std::function<double(double)>& g);

double inner_product(const Params& p, const std::function<double(double)>& f,
                     const std::function<double(double)>& g, std::size_t order);

/// Max relative moment error over even monomials x^{2m}, 2m <= 2k-1.
double exactness_residual(const Params& p, std::size_t k);

/// Signed residual of one monomial moment (test hook; degree may exceed the
/// exactness bound, in which case the residual is genuinely nonzero).
double moment_residual(const QuadratureRule& rule, std::size_t degree);

/// Closed-form moment ∫ x^{2m} |x|^{2σ} e^{-sx²} dx = s^{-(m+σ+1/2)} Γ(m+σ+1/2).
double even_moment(const Params& p, std::size_t m);

/// lhs = q(x)² and rhs = ‖q‖² Σ_{ℓ<=k} p_ℓ²(x) for q = Σ c_ℓ p_ℓ of degree
/// <= k-1 (coefficients in the orthonormal basis). lhs <= rhs always.
std::pair<double, double> christoffel_sum_check(const Params& p, std::size_t k,
                                                double x,
                                                const std::vector<double>& coeffs);

}  // namespace dunkl
