#include "dunkl/dunkl_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace dunkl {

namespace {

// coefficient of B φ_k -> φ_{k-1}: sqrt(2ks) (k even), sqrt(2(k+2σ)s) (k odd)
double lower_coeff(const Params& p, std::size_t k) {
  return std::sqrt(2.0 * (static_cast<double>(k) + (k % 2 ? 2.0 * p.sigma : 0.0)) * p.s);
}

}  // namespace

std::vector<double> OpMatrix::apply(const std::vector<double>& v) const {
  std::vector<double> out(dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < dim; ++c) acc += at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

OpMatrix op_matrix(const Params& p, OpName name, std::size_t dim) {
  if (dim < 2) throw DomainError("op_matrix: dim must be >= 2");
  OpMatrix m;
  m.name = name;
  m.dim = dim;
  m.entries.assign(dim * dim, 0.0);
  switch (name) {
    case OpName::L:
      for (std::size_t k = 0; k < dim; ++k) m.at(k, k) = eigenvalue(p, k);
      break;
    case OpName::Sigma:
      for (std::size_t k = 0; k < dim; ++k)
        m.at(k, k) = (k % 2 == 0) ? p.sigma : -p.sigma;
      break;
    case OpName::B:
      for (std::size_t k = 1; k < dim; ++k) m.at(k - 1, k) = lower_coeff(p, k);
      break;
    case OpName::Bp:
      for (std::size_t k = 0; k + 1 < dim; ++k) m.at(k + 1, k) = lower_coeff(p, k + 1);
      break;
    case OpName::X:
      for (std::size_t k = 1; k < dim; ++k) {
        const double b = jacobi_b(p, k);
        m.at(k - 1, k) = b;
        m.at(k, k - 1) = b;
      }
      break;
    case OpName::T:
      for (std::size_t k = 1; k < dim; ++k) {
        const double c = 0.5 * lower_coeff(p, k);
        m.at(k - 1, k) = c;   // from B
        m.at(k, k - 1) = -c;  // from -B'
      }
      break;
  }
  return m;
}

OpMatrix mat_mul(const OpMatrix& a, const OpMatrix& b) {
  OpMatrix out;
  out.dim = a.dim;
  out.entries.assign(a.dim * a.dim, 0.0);
  for (std::size_t r = 0; r < a.dim; ++r)
    for (std::size_t k = 0; k < a.dim; ++k) {
      const double arx = a.at(r, k);
      if (arx == 0.0) continue;
      for (std::size_t c = 0; c < a.dim; ++c) out.at(r, c) += arx * b.at(k, c);
    }
  return out;
}

OpMatrix mat_sub(const OpMatrix& a, const OpMatrix& b) {
  OpMatrix out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] -= b.entries[i];
  return out;
}

SampledFn apply_T_pointwise(const Params& p, const SampledFn& f, const SampledFn& dfdx) {
  const std::size_t n = f.grid.size();
  if (dfdx.grid.size() != n || f.values.size() != n || dfdx.values.size() != n)
    throw DomainError("apply_T_pointwise: mismatched sample sizes");
  for (std::size_t i = 0; i < n; ++i)
    if (f.grid[i] != -f.grid[n - 1 - i])
      throw GridAsymmetric("apply_T_pointwise: grid not symmetric about 0");

  SampledFn out;
  out.grid = f.grid;
  out.parity = Parity::none;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = f.grid[i];
    if (x == 0.0) {
      out.values[i] = (f.parity == Parity::even)
                          ? dfdx.values[i]
                          : (1.0 + 2.0 * p.sigma) * dfdx.values[i];
    } else {
      const double refl = f.values[n - 1 - i];
      out.values[i] = dfdx.values[i] + 2.0 * p.sigma * (f.values[i] - refl) / (2.0 * x);
    }
  }
  return out;
}

double commutator_residual(const Params& p, std::size_t dim, CommutatorCheck which) {
  if (dim < 8) throw DomainError("commutator_residual: dim must be >= 8");
  const OpMatrix L = op_matrix(p, OpName::L, dim);
  const OpMatrix B = op_matrix(p, OpName::B, dim);
  const OpMatrix Bp = op_matrix(p, OpName::Bp, dim);
  const OpMatrix S = op_matrix(p, OpName::Sigma, dim);

  OpMatrix lhs, rhs;
  switch (which) {
    case CommutatorCheck::LB:  // [L,B] = -2sB
      lhs = mat_sub(mat_mul(L, B), mat_mul(B, L));
      rhs = B;
      for (double& v : rhs.entries) v *= -2.0 * p.s;
      break;
    case CommutatorCheck::LBp:  // [L,B'] = 2sB'
      lhs = mat_sub(mat_mul(L, Bp), mat_mul(Bp, L));
      rhs = Bp;
      for (double& v : rhs.entries) v *= 2.0 * p.s;
      break;
    case CommutatorCheck::BBp:  // [B,B'] = 2s(1+2Σ)
      lhs = mat_sub(mat_mul(B, Bp), mat_mul(Bp, B));
      rhs = S;
      for (std::size_t k = 0; k < dim; ++k)
        rhs.at(k, k) = 2.0 * p.s * (1.0 + 2.0 * rhs.at(k, k));
      break;
    case CommutatorCheck::DxRel: {  // [T,x] = 1+2Σ
      const OpMatrix T = op_matrix(p, OpName::T, dim);
      const OpMatrix X = op_matrix(p, OpName::X, dim);
      lhs = mat_sub(mat_mul(T, X), mat_mul(X, T));
      rhs = S;
      for (std::size_t k = 0; k < dim; ++k) rhs.at(k, k) = 1.0 + 2.0 * rhs.at(k, k);
      break;
    }
    case CommutatorCheck::LSigma:  // [L,Σ] = 0
      lhs = mat_sub(mat_mul(L, S), mat_mul(S, L));
      rhs = L;
      for (double& v : rhs.entries) v = 0.0;
      break;
  }

  const std::size_t inner = dim - 4;
  double scale = 0.0, worst = 0.0;
  for (std::size_t r = 0; r < inner; ++r)
    for (std::size_t c = 0; c < inner; ++c) {
      scale = std::max({scale, std::fabs(rhs.at(r, c)), std::fabs(lhs.at(r, c))});
      worst = std::max(worst, std::fabs(lhs.at(r, c) - rhs.at(r, c)));
    }
  return worst / std::max(scale, 1.0);
}

double xi_ode_residual(const Params& p, std::size_t k, const std::vector<double>& grid) {
  const std::size_t n = grid.size();
  if (n < 5) throw DomainError("xi_ode_residual: need at least 5 grid points");
  for (double x : grid)
    if (x == 0.0) throw SingularPoint("xi_ode_residual: grid touches 0");
  const double h = grid[1] - grid[0];
  const double mean_h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
  if (!(std::fabs(mean_h - h) <= 1e-9 * std::fabs(h)))
    throw DomainError("xi_ode_residual: grid must be uniform");

  BasisTable table(p, k);
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) xi[i] = table.xi(k, grid[i]);

  const double sb = p.sigma * (p.sigma - ((k % 2 == 0) ? 1.0 : -1.0));
  const double lam = eigenvalue(p, k);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double x = grid[i];
    const double q = lam - p.s * p.s * x * x - sb / (x * x);
    const double d2 =
        (-xi[i - 2] + 16.0 * xi[i - 1] - 30.0 * xi[i] + 16.0 * xi[i + 1] - xi[i + 2]) /
        (12.0 * h * h);
    const double qxi = q * xi[i];
    worst = std::max(worst, std::fabs(d2 + qxi) / (1.0 + std::fabs(qxi)));
  }
  return worst;
}

std::pair<double, double> log_derivative_check(const Params& p, std::size_t k, double x) {
  if (x == 0.0) throw SingularPoint("log_derivative_check: x must be nonzero");
  BasisTable table(p, k + 1);

  // local evaluation scale: root-sum-square of p_0..p_{k+1} at x
  double prev = 0.0, cur = p.p0(), scale2 = cur * cur;
  for (std::size_t j = 1; j <= k + 1; ++j) {
    const double next = (x * cur - table.b(j - 1) * prev) / table.b(j);
    prev = cur;
    cur = next;
    scale2 += cur * cur;
  }
  const double pk1 = cur, pk = prev;
  if (std::fabs(pk) < 1e-12 * std::sqrt(scale2))
    throw NearZeroDivision("log_derivative_check: p_k(x) too close to a node");

  const double sigma_term = (k % 2 == 0) ? p.sigma / x : -p.sigma / x;
  const double ladder = std::sqrt(
      2.0 * (static_cast<double>(k) + 1.0 + (k % 2 == 0 ? 2.0 * p.sigma : 0.0)) * p.s);
  const double rhs = p.s * x + sigma_term - ladder * pk1 / pk;

  const double h = 1e-5 * std::max(1.0, std::fabs(x));
  const auto xi = [&](double t) { return table.xi(k, t); };
  const double lhs = fd::d1(xi, x, h) / table.xi(k, x);
  return {lhs, rhs};
}

namespace fd {

double d1(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

double d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
          f(x + 2 * h)) /
         (12.0 * h * h);
}

}  // namespace fd

}  // namespace dunkl
