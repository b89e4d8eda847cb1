#include "dunkl/spectral_spaces.hpp"

#include <algorithm>
#include <cmath>

#include "dunkl/oscillation.hpp"

namespace dunkl {

SeqParity detect_parity(const std::vector<double>& coeffs, double tol) {
  bool any_even = false, any_odd = false;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (std::fabs(coeffs[k]) <= tol) continue;
    (k % 2 == 0 ? any_even : any_odd) = true;
  }
  if (any_even && any_odd) return SeqParity::mixed;
  if (any_odd) return SeqParity::odd;
  return SeqParity::even;
}

CoeffSeq analyze(const Params& p, const std::function<double(double)>& f,
                 std::size_t N, std::size_t order) {
  if (order == 0) order = 4 * (N + 1);
  const QuadratureRule rule = build_rule(p, order);
  CoeffSeq out;
  out.coeffs.assign(N + 1, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double w = std::exp(rule.log_weights[i] + p.s * x * x);
    const double fw = f(x) * w;
    if (fw == 0.0) continue;
    const std::vector<double> phis = eval_phi_all(p, N, x);
    for (std::size_t k = 0; k <= N; ++k) out.coeffs[k] += phis[k] * fw;
  }
  double top = 0.0;
  for (double v : out.coeffs) top = std::max(top, std::fabs(v));
  out.parity = detect_parity(out.coeffs, 1e-12 * top);
  return out;
}

double synthesize_at(const Params& p, const CoeffSeq& c, double x) {
  if (c.coeffs.empty()) return 0.0;
  const std::vector<double> phis = eval_phi_all(p, c.coeffs.size() - 1, x);
  double acc = 0.0;
  for (std::size_t k = 0; k < c.coeffs.size(); ++k) acc += c.coeffs[k] * phis[k];
  return acc;
}

SampledFn synthesize(const Params& p, const CoeffSeq& c, const std::vector<double>& grid) {
  SampledFn out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.values[i] = synthesize_at(p, c, grid[i]);
  switch (c.parity) {
    case SeqParity::even: out.parity = Parity::even; break;
    case SeqParity::odd: out.parity = Parity::odd; break;
    default: out.parity = Parity::none; break;
  }
  return out;
}

SeqNorms seq_norms(const CoeffSeq& c, double m) {
  if (m < 0.0) throw DomainError("seq_norms: m must be >= 0");
  SeqNorms n;
  n.m = m;
  double acc = 0.0, sup = 0.0;
  for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
    const double w = std::pow(1.0 + static_cast<double>(k), m);
    acc += c.coeffs[k] * c.coeffs[k] * w;
    sup = std::max(sup, std::fabs(c.coeffs[k]) * w);
  }
  n.ell2_m = std::sqrt(acc);
  n.C_m = sup;
  return n;
}

double w_sigma_norm(const Params& p, const CoeffSeq& c, double m) {
  if (m < 0.0) throw DomainError("w_sigma_norm: m must be >= 0");
  double acc = 0.0;
  for (std::size_t k = 0; k < c.coeffs.size(); ++k)
    acc += c.coeffs[k] * c.coeffs[k] * std::pow(1.0 + eigenvalue(p, k), m);
  return std::sqrt(acc);
}

CoeffSeq xi_map(const Params& p, const CoeffSeq& c) {
  if (c.parity != SeqParity::odd)
    throw ParityError("xi_map: input sequence must be odd");
  const std::size_t n = c.coeffs.size();
  CoeffSeq out;
  out.coeffs.assign(n, 0.0);
  out.parity = SeqParity::even;
  const double log2s = std::log(2.0 * p.s);
  for (std::size_t l = 0; l + 1 < n; l += 2) {
    // running log of (k-1)(k-3)...(l+2) / ((k+2σ)(k-2+2σ)...(l+1+2σ))
    double log_ratio = -std::log(static_cast<double>(l) + 1.0 + 2.0 * p.sigma);
    double sign = 1.0;
    double acc = 0.0;
    for (std::size_t k = l + 1; k < n; k += 2) {
      acc += sign * std::exp(0.5 * (log2s + log_ratio)) * c.coeffs[k];
      log_ratio += std::log(static_cast<double>(k) + 1.0) -
                   std::log(static_cast<double>(k) + 2.0 + 2.0 * p.sigma);
      sign = -sign;
    }
    out.coeffs[l] = acc;
  }
  return out;
}

namespace {

CoeffSeq apply_T_coeffs(const Params& p, const CoeffSeq& c) {
  const std::size_t n = c.coeffs.size();
  CoeffSeq out;
  out.coeffs.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = c.coeffs[k];
    if (ck == 0.0) continue;
    const double down = std::sqrt(
        2.0 * (static_cast<double>(k) + (k % 2 ? 2.0 * p.sigma : 0.0)) * p.s);
    const double up = std::sqrt(
        2.0 * (static_cast<double>(k) + 1.0 + (k % 2 ? 0.0 : 2.0 * p.sigma)) * p.s);
    if (k > 0) out.coeffs[k - 1] += 0.5 * down * ck;
    out.coeffs[k + 1] -= 0.5 * up * ck;
  }
  out.parity = detect_parity(out.coeffs, 0.0);
  return out;
}

CoeffSeq apply_X_coeffs(const Params& p, const CoeffSeq& c) {
  const std::size_t n = c.coeffs.size();
  CoeffSeq out;
  out.coeffs.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = c.coeffs[k];
    if (ck == 0.0) continue;
    if (k > 0) out.coeffs[k - 1] += jacobi_b(p, k) * ck;
    out.coeffs[k + 1] += jacobi_b(p, k + 1) * ck;
  }
  out.parity = detect_parity(out.coeffs, 0.0);
  return out;
}

}  // namespace

CoeffSeq derivative_coeffs(const Params& p, const CoeffSeq& c) {
  const std::size_t n = c.coeffs.size();
  CoeffSeq out = apply_T_coeffs(p, c);
  if (p.sigma != 0.0) {
    CoeffSeq odd_part;
    odd_part.coeffs.assign(n, 0.0);
    bool any = false;
    for (std::size_t k = 1; k < n; k += 2) {
      odd_part.coeffs[k] = c.coeffs[k];
      any = any || c.coeffs[k] != 0.0;
    }
    if (any) {
      odd_part.parity = SeqParity::odd;
      const CoeffSeq xinv = xi_map(p, odd_part);
      for (std::size_t k = 0; k < xinv.coeffs.size(); ++k)
        out.coeffs[k] -= 2.0 * p.sigma * xinv.coeffs[k];
    }
  }
  out.parity = detect_parity(out.coeffs, 0.0);
  return out;
}

MConstants m_constants(double sigma, std::size_t m_prime) {
  const double m = static_cast<double>(m_prime);
  const double ce = std::ceil(sigma);
  MConstants out;
  if (m_prime % 2 == 0) {
    const double v = sigma >= 0.0 ? 1.5 * m + 0.25 * m * ce * (ce + 3.0) + ce
                                  : 2.5 * m;
    out.ev = out.odd = v;
  } else {
    out.ev = sigma >= 0.0
                 ? 0.5 * (3.0 * m - 1.0) + 0.25 * (m - 1.0) * ce * (ce + 3.0) + ce
                 : 0.5 * (5.0 * m + 1.0);
    out.odd = sigma >= 0.0
                  ? 0.5 * (3.0 * m + 1.0) + 0.25 * (m + 1.0) * ce * (ce + 3.0) + ce
                  : 0.5 * (5.0 * m + 7.0);
  }
  return out;
}

namespace {

// sup over a positive half-grid of weight(x)·|g(x)|; parity makes the
// negative side redundant.
double weighted_sup(const Params& p, const CoeffSeq& v, double x_hi, double sig_pow) {
  double sup = 0.0;
  const std::size_t n_lin = 1600, n_geo = 240;
  const auto probe = [&](double x) {
    const double g = synthesize_at(p, v, x);
    const double w = sig_pow == 0.0 ? 1.0 : std::pow(std::fabs(x), sig_pow);
    sup = std::max(sup, w * std::fabs(g));
  };
  if (sig_pow >= 0.0) probe(0.0);
  for (std::size_t i = 1; i <= n_geo; ++i)
    probe(x_hi * std::pow(10.0, -8.0 * (1.0 - static_cast<double>(i) / n_geo)));
  for (std::size_t i = 1; i <= n_lin; ++i)
    probe(x_hi * static_cast<double>(i) / static_cast<double>(n_lin));
  return sup;
}

}  // namespace

SchwartzEstimate schwartz_norm_estimate(const Params& p, const CoeffSeq& c,
                                        std::size_t m, NormFlavor flavor) {
  if (m > 4) throw DomainError("schwartz_norm_estimate: m must be <= 4");
  SchwartzEstimate est;

  // truncation health of the input expansion
  const std::size_t n = c.coeffs.size();
  if (n >= 4) {
    double mass = 0.0, top_mass = 0.0;
    const std::size_t top_start = n - std::max<std::size_t>(1, n / 10);
    for (std::size_t k = 0; k < n; ++k) {
      const double m2 = c.coeffs[k] * c.coeffs[k];
      mass += m2;
      if (k >= top_start) top_mass += m2;
    }
    est.truncation_warning = mass > 0.0 && top_mass > 1e-6 * mass;
  }

  // σ < 0 norms live on the parity components separately; take the max
  if (p.sigma < 0.0 && flavor == NormFlavor::S_sigma &&
      detect_parity(c.coeffs, 0.0) == SeqParity::mixed) {
    CoeffSeq ev = c, od = c;
    for (std::size_t k = 1; k < n; k += 2) ev.coeffs[k] = 0.0;
    for (std::size_t k = 0; k < n; k += 2) od.coeffs[k] = 0.0;
    ev.parity = SeqParity::even;
    od.parity = SeqParity::odd;
    est.value = std::max(schwartz_norm_estimate(p, ev, m, flavor).value,
                         schwartz_norm_estimate(p, od, m, flavor).value);
    return est;
  }
  const SeqParity base_parity = detect_parity(c.coeffs, 0.0);

  const double x_hi = profile(p, n + m + 1).b_k + 2.0;
  double total = 0.0;
  for (std::size_t j = 0; j <= m; ++j) {
    CoeffSeq tj = c;
    for (std::size_t jj = 0; jj < j; ++jj)
      tj = flavor == NormFlavor::S ? derivative_coeffs(p, tj) : apply_T_coeffs(p, tj);
    for (std::size_t i = 0; i + j <= m; ++i) {
      if (i > 0) tj = apply_X_coeffs(p, tj);
      double sig_pow;
      if (flavor == NormFlavor::S) {
        sig_pow = 0.0;
      } else if (p.sigma >= 0.0) {
        sig_pow = p.sigma;
      } else {
        // parity-correct weighting: the factor |x|^σ rides on the terms whose
        // total parity flips the base parity
        const bool shifted = (i + j) % 2 == 1;
        const bool weight_on = (base_parity == SeqParity::odd) ? !shifted : shifted;
        sig_pow = weight_on ? p.sigma : 0.0;
      }
      total += weighted_sup(p, tj, x_hi, sig_pow);
    }
  }
  est.value = total;
  return est;
}

}  // namespace dunkl
