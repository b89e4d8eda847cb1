#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dunkl/hermite_basis.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

enum class OpName { T, B, Bp, L, Sigma, X };

/// Finite section of an operator on the span of φ_0..φ_{dim-1}. Entries are
/// stored dense (dims stay small); structurally the bandwidth is <= 2.
struct OpMatrix {
  OpName name = OpName::L;
  std::size_t dim = 0;
  std::vector<double> entries;  // row-major dim x dim

  double at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  double& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }

  std::vector<double> apply(const std::vector<double>& v) const;
};

OpMatrix op_matrix(const Params& p, OpName name, std::size_t dim);

OpMatrix mat_mul(const OpMatrix& a, const OpMatrix& b);
OpMatrix mat_sub(const OpMatrix& a, const OpMatrix& b);

enum class Parity { even, odd, none };

/// Function samples on a strictly increasing grid. When parity != none the
/// grid must be symmetric about 0 bit-for-bit, so reflection is exact lookup.
struct SampledFn {
  std::vector<double> grid;
  std::vector<double> values;
  Parity parity = Parity::none;
};

/// (T_σ f)(x) = f'(x) + 2σ (f(x) - f(-x)) / (2x); at x = 0 the removable
/// limit (1+2σ) f'(0) (odd/general) or f'(0) (even).
SampledFn apply_T_pointwise(const Params& p, const SampledFn& f, const SampledFn& dfdx);

enum class CommutatorCheck { LB, LBp, BBp, DxRel, LSigma };

/// Max-norm residual of the named operator identity on the interior
/// (dim-4)x(dim-4) block, relative to the identity's own scale.
double commutator_residual(const Params& p, std::size_t dim, CommutatorCheck which);

/// max over interior grid points of |ξ_k'' + q_k ξ_k| / (1 + |q_k ξ_k|),
/// with ξ_k'' by 5-point central differences on the (uniform) grid.
double xi_ode_residual(const Params& p, std::size_t k, const std::vector<double>& grid);

/// (lhs, rhs) of the logarithmic-derivative identity at x: lhs is ξ_k'/ξ_k by
/// central differences, rhs the parity-correct closed form
/// sx ± σ/x - sqrt(2(k+1+2σ̃)s) p_{k+1}(x)/p_k(x).
std::pair<double, double> log_derivative_check(const Params& p, std::size_t k, double x);

namespace fd {
/// 5-point central first/second derivatives of a callable, step h.
double d1(const std::function<double(double)>& f, double x, double h);
double d2(const std::function<double(double)>& f, double x, double h);
}  // namespace fd

}  // namespace dunkl
