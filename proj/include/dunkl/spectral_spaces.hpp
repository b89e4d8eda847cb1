#pragma once

#include <functional>
#include <vector>

#include "dunkl/dunkl_calculus.hpp"
#include "dunkl/params.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

enum class SeqParity { even, odd, mixed };

/// Finite Hermite-coefficient sequence c_0..c_N with a parity tag.
struct CoeffSeq {
  std::vector<double> coeffs;
  SeqParity parity = SeqParity::mixed;
};

SeqParity detect_parity(const std::vector<double>& coeffs, double tol = 0.0);

/// c_k = ⟨φ_k, f⟩_σ by quadrature, k <= N. order = 0 picks the default
/// 4(N+1); results are exact for f in the span when order >= N+1 and
/// approximate otherwise.
CoeffSeq analyze(const Params& p, const std::function<double(double)>& f,
                 std::size_t N, std::size_t order = 0);

/// Σ c_k φ_k on a grid (forward scaled recurrence accumulation).
SampledFn synthesize(const Params& p, const CoeffSeq& c, const std::vector<double>& grid);
double synthesize_at(const Params& p, const CoeffSeq& c, double x);

struct SeqNorms {
  double m = 0.0;
  double ell2_m = 0.0;  // ( Σ c_k² (1+k)^m )^{1/2}
  double C_m = 0.0;     // sup_k |c_k| (1+k)^m
};
SeqNorms seq_norms(const CoeffSeq& c, double m);

/// ‖c‖_{W_σ^m} = ( Σ c_k² (1+(2k+1+2σ)s)^m )^{1/2} — (1+L)^m diagonalized
/// on the eigenbasis; any real m >= 0.
double w_sigma_norm(const Params& p, const CoeffSeq& c, double m);

/// Ξ: odd sequences -> even sequences, the coefficient-space realization of
/// division by x. Products accumulate in log space, signs tracked separately.
CoeffSeq xi_map(const Params& p, const CoeffSeq& c);

/// d/dx on coefficients: T_σ minus 2σ·Ξ on the odd part. Exact on finite
/// expansions.
CoeffSeq derivative_coeffs(const Params& p, const CoeffSeq& c);

struct MConstants {
  double ev = 0.0;
  double odd = 0.0;
};
/// The S^{M} ⊂ W_σ^m embedding exponents, four cases by sign of σ and parity
/// of m'.
MConstants m_constants(double sigma, std::size_t m_prime);

enum class NormFlavor { S, S_sigma };

struct SchwartzEstimate {
  double value = 0.0;
  bool truncation_warning = false;  // top 10% of coefficients carry >1e-6 of the l² mass
};

/// Grid-sup estimate (a lower bound of the true sup) of ‖·‖_{S^m} or
/// ‖·‖_{S_σ^m}: operator powers are applied in coefficient space, the sup is
/// taken over a synthesized grid with the parity-correct |x|^σ weighting.
SchwartzEstimate schwartz_norm_estimate(const Params& p, const CoeffSeq& c,
                                        std::size_t m, NormFlavor flavor);

}  // namespace dunkl
