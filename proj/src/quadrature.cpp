#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dunkl/tridiag.hpp"

namespace dunkl {

namespace {

// (p_k, p_{k-1}) at x in one scaled pass over the table's coefficients.
struct PolyPair {
  double pk, pk1;      // mantissas
  std::int64_t exp2;   // shared exponent
};

PolyPair poly_pair(const BasisTable& t, std::size_t k, double x) {
  double prev = 0.0, cur = t.params().p0();
  std::int64_t e2 = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double next = (x * cur - t.b(j - 1) * prev) / t.b(j);
    prev = cur;
    cur = next;
    const double a = std::fabs(cur != 0.0 ? cur : prev);
    if (a >= 0x1p256 || (a <= 0x1p-256 && a > 0.0)) {
      const int sh = std::ilogb(cur != 0.0 ? cur : prev);
      cur = std::ldexp(cur, -sh);
      prev = std::ldexp(prev, -sh);
      e2 += sh;
    }
  }
  return {cur, prev, e2};
}

// Newton correction p_k(x)/p_k'(x); exponents cancel in the ratio.
double newton_step(const BasisTable& t, std::size_t k, double x) {
  const Params& p = t.params();
  const PolyPair pp = poly_pair(t, k, x);
  const double ladder =
      std::sqrt(2.0 * (static_cast<double>(k) + (k % 2 ? 2.0 * p.sigma : 0.0)) * p.s);
  double dmant = ladder * pp.pk1;
  if (k % 2 == 1) dmant -= 2.0 * p.sigma * pp.pk / x;
  if (dmant == 0.0) return 0.0;
  return pp.pk / dmant;
}

// log |p_k'(x_root)| with the root's p_k contribution dropped (it vanishes).
double log_abs_dpoly_at_root(const BasisTable& t, std::size_t k, double x) {
  const Params& p = t.params();
  if (x == 0.0) {
    // only the middle node of an odd rule; p_k'(0) has its own closed form
    return std::log(std::fabs(dp_at_zero(p, k)));
  }
  const PolyPair pp = poly_pair(t, k, x);
  const double ladder =
      std::sqrt(2.0 * (static_cast<double>(k) + (k % 2 ? 2.0 * p.sigma : 0.0)) * p.s);
  double dmant = ladder * pp.pk1;
  if (k % 2 == 1) dmant -= 2.0 * p.sigma * pp.pk / x;
  return std::log(std::fabs(dmant)) + static_cast<double>(pp.exp2) * M_LN2;
}

}  // namespace

QuadratureRule build_rule(const Params& p, std::size_t k) {
  if (k < 1) throw DomainError("build_rule: k must be >= 1");
  QuadratureRule rule;
  rule.k = k;
  rule.params = p;

  BasisTable table(p, k + 1);
  std::vector<double> d(k, 0.0), e(k, 0.0);
  for (std::size_t i = 0; i + 1 < k; ++i) e[i] = table.b(i + 1);
  std::vector<double> z0(k, 0.0);
  z0[0] = 1.0;
  tridiag_ql_implicit(d, e, &z0, 1e-14, 60 * k);

  const double mu0 = p.mu0();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    rule.nodes[i] = d[order[i]];
    rule.weights[i] = mu0 * z0[order[i]] * z0[order[i]];
  }

  // Newton polish on the recurrence-evaluated polynomial (recovers digits the
  // eigensolver loses for clustered small nodes when sigma < 0)
  const double scale = std::fabs(rule.nodes.front());
  for (std::size_t i = 0; i < k; ++i) {
    double& x = rule.nodes[i];
    if (std::fabs(x) < 1e-13 * std::max(1.0, scale)) { x = 0.0; continue; }
    for (int step = 0; step < 3; ++step) {
      const double dx = newton_step(table, k, x);
      if (!std::isfinite(dx) || std::fabs(dx) > 0.25 * std::fabs(x)) break;
      x -= dx;
      if (std::fabs(dx) < 1e-16 * std::fabs(x)) break;
    }
  }

  // exact symmetry: x_{k,i} = -x_{k,k+1-i}
  for (std::size_t i = 0; i < k / 2; ++i) {
    const std::size_t j = k - 1 - i;
    const double m = 0.5 * (rule.nodes[i] - rule.nodes[j]);
    rule.nodes[i] = m;
    rule.nodes[j] = -m;
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;

  // closed-form weights: p_k'(x)^2 λ = 2s at every nonzero root; the
  // reflection term of T_σ survives only at x = 0, where the constant
  // becomes 2s/(1+2σ)
  rule.log_weights.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double log_c = std::log(2.0 * p.s) -
                         (rule.nodes[i] == 0.0 ? std::log1p(2.0 * p.sigma) : 0.0);
    rule.log_weights[i] = log_c - 2.0 * log_abs_dpoly_at_root(table, k, rule.nodes[i]);
  }
  return rule;
}

double inner_product(const QuadratureRule& rule,
                     const std::function<double(double)>& f,
                     const std::function<double(double)>& g) {
  const double s = rule.params.s;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double w = std::exp(rule.log_weights[i] + s * x * x);
    acc += f(x) * g(x) * w;
  }
  return acc;
}

double inner_product(const Params& p, const std::function<double(double)>& f,
                     const std::function<double(double)>& g, std::size_t order) {
  return inner_product(build_rule(p, order), f, g);
}

double even_moment(const Params& p, std::size_t m) {
  const double a = static_cast<double>(m) + p.sigma + 0.5;
  return std::exp(-a * std::log(p.s) + std::lgamma(a));
}

double moment_residual(const QuadratureRule& rule, std::size_t degree) {
  const Params& p = rule.params;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    if (x == 0.0) { if (degree == 0) acc += std::exp(rule.log_weights[i]); continue; }
    const double t = std::exp(static_cast<double>(degree) * std::log(std::fabs(x)) +
                              rule.log_weights[i]);
    acc += (x < 0.0 && degree % 2 == 1) ? -t : t;
  }
  if (degree % 2 == 1) {
    // odd moments are zero; report the absolute drift against a same-degree scale
    const double ref = even_moment(p, (degree + 1) / 2);
    return acc / ref;
  }
  const double mu = even_moment(p, degree / 2);
  return acc / mu - 1.0;
}

double exactness_residual(const Params& p, std::size_t k) {
  const QuadratureRule rule = build_rule(p, k);
  double worst = 0.0;
  for (std::size_t m = 0; 2 * m + 1 <= 2 * k - 1; ++m)
    worst = std::max(worst, std::fabs(moment_residual(rule, 2 * m)));
  return worst;
}

std::pair<double, double> christoffel_sum_check(const Params& p, std::size_t k,
                                                double x,
                                                const std::vector<double>& coeffs) {
  if (k == 0) throw DomainError("christoffel_sum_check: k must be >= 1");
  if (coeffs.empty()) throw DomainError("christoffel_sum_check: empty polynomial");
  if (coeffs.size() - 1 > k - 1)
    throw DegreeTooHigh("christoffel_sum_check: degree must be <= k-1");
  BasisTable table(p, k);
  std::vector<double> pv(k + 1);
  {
    double prev = 0.0, cur = p.p0();
    pv[0] = cur;
    for (std::size_t j = 1; j <= k; ++j) {
      const double next = (x * cur - table.b(j - 1) * prev) / table.b(j);
      prev = cur;
      cur = next;
      pv[j] = cur;
    }
  }
  double q = 0.0, norm2 = 0.0, sum = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    q += coeffs[l] * pv[l];
    norm2 += coeffs[l] * coeffs[l];
  }
  for (std::size_t l = 0; l <= k; ++l) sum += pv[l] * pv[l];
  return {q * q, norm2 * sum};
}

}  // namespace dunkl
