#include "dunkl/hermite_basis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>

namespace dunkl {

namespace {

constexpr double kRescaleHi = 0x1p256;
constexpr double kRescaleLo = 0x1p-256;
constexpr double kLog2e = 1.4426950408889634074;  // 1/ln 2

void warn_soft_limit(std::size_t k) {
  static std::atomic<bool> warned{false};
  if (k > kIndexSoftLimit && !warned.exchange(true)) {
    std::fprintf(stderr,
                 "dunkl: index k=%zu exceeds %zu; values remain finite but "
                 "accumulated rounding may cost digits\n",
                 k, kIndexSoftLimit);
  }
}

// Splits y = m * 2^e with m in [1,2); e added to *acc, m returned.
double split_exp2(double y, std::int64_t* acc) {
  int e = 0;
  const double m = std::frexp(y, &e);
  *acc += e;
  return m;
}

}  // namespace

RecurrenceCoeffs recurrence_coeffs(const Params& p, std::size_t k_max) {
  RecurrenceCoeffs rc;
  rc.b.assign(k_max + 1, 0.0);
  for (std::size_t k = 1; k <= k_max; ++k) rc.b[k] = jacobi_b(p, k);
  rc.p0 = p.p0();
  rc.mu0 = p.mu0();
  return rc;
}

namespace detail {

void ScaledRecurrence::rescale() {
  const double ref = cur != 0.0 ? cur : prev;
  if (ref == 0.0) return;
  const double aref = std::fabs(ref);
  if (aref < kRescaleHi && aref > kRescaleLo) return;
  int sh = std::ilogb(ref);
  cur = std::ldexp(cur, -sh);
  prev = std::ldexp(prev, -sh);
  exp2 += sh;
}

BasisEval eval_dpoly(const Params& p, std::size_t k, double x) {
  BasisEval d;
  d.k = k;
  d.x = x;
  d.kind = BasisKind::poly;
  if (k == 0) return d;  // p_0 constant
  const BasisEval below = eval_basis(p, k - 1, x, BasisKind::poly);
  const double ladder = std::sqrt(
      2.0 * (static_cast<double>(k) + (k % 2 ? 2.0 * p.sigma : 0.0)) * p.s);
  if (k % 2 == 0) {
    d.mantissa = ladder * below.mantissa;
    d.exponent = below.exponent;
  } else {
    if (x == 0.0) throw SingularPoint("eval_dpoly: odd-case ladder needs x != 0");
    // combine two scaled terms: sqrt(2(k+2σ)s) p_{k-1}  -  2σ p_k / x
    const BasisEval at = eval_basis(p, k, x, BasisKind::poly);
    const std::int64_t e0 = std::max(below.exponent, at.exponent);
    const double t1 = std::ldexp(ladder * below.mantissa,
                                 static_cast<int>(below.exponent - e0));
    const double t2 = std::ldexp(2.0 * p.sigma * at.mantissa / x,
                                 static_cast<int>(at.exponent - e0));
    d.mantissa = t1 - t2;
    d.exponent = e0;
  }
  if (d.mantissa != 0.0) d.mantissa = split_exp2(d.mantissa, &d.exponent);
  return d;
}

}  // namespace detail

BasisEval eval_basis(const Params& p, std::size_t k, double x, BasisKind kind) {
  warn_soft_limit(k);
  if (kind == BasisKind::xi && x == 0.0 && p.sigma < 0.0 && k % 2 == 0)
    throw SingularPoint("eval_basis: xi_k is unbounded at 0 for sigma<0, k even");

  BasisEval out;
  out.k = k;
  out.x = x;
  out.kind = kind;

  detail::ScaledRecurrence st;
  st.prev = 0.0;
  st.cur = p.p0();
  for (std::size_t j = 1; j <= k; ++j) {
    const double bj = jacobi_b(p, j);
    const double bj1 = j >= 2 ? jacobi_b(p, j - 1) : 0.0;
    const double next = (x * st.cur - bj1 * st.prev) / bj;
    st.prev = st.cur;
    st.cur = next;
    st.k = j;
    st.rescale();
  }
  out.mantissa = st.cur;
  out.exponent = st.exp2;

  if (kind != BasisKind::poly) {
    // exponent contributions in base 2: Gaussian, then |x|^σ for xi
    double g = -0.5 * p.s * x * x * kLog2e;
    if (kind == BasisKind::xi) {
      if (x == 0.0) {
        // limit value: 0 unless σ = 0 (then ξ_k = φ_k = p_k at 0)
        out.mantissa = (p.sigma == 0.0) ? out.mantissa : 0.0;
        out.exponent = (p.sigma == 0.0) ? out.exponent : 0;
        return out;
      }
      g += p.sigma * std::log2(std::fabs(x));
    }
    const double gi = std::floor(g);
    out.exponent += static_cast<std::int64_t>(gi);
    out.mantissa *= std::exp2(g - gi);
  }
  if (out.mantissa != 0.0) out.mantissa = split_exp2(out.mantissa, &out.exponent);
  return out;
}

namespace {

std::vector<double> eval_all_impl(const Params& p, std::size_t k, double x,
                                  bool with_abs_x_sigma) {
  if (with_abs_x_sigma && x == 0.0 && p.sigma < 0.0)
    throw SingularPoint("eval_xi_all: x = 0 with sigma < 0");
  std::vector<double> vals(k + 1);
  double g2 = -0.5 * p.s * x * x * kLog2e;
  if (with_abs_x_sigma && x != 0.0) g2 += p.sigma * std::log2(std::fabs(x));
  if (with_abs_x_sigma && x == 0.0 && p.sigma > 0.0) g2 = -HUGE_VAL;  // |0|^σ = 0

  detail::ScaledRecurrence st;
  st.cur = p.p0();
  auto reconstruct = [&](double mant, std::int64_t e2) -> double {
    if (mant == 0.0) return 0.0;
    const double t = static_cast<double>(e2) + g2;
    if (t < -1060.0) return 0.0;
    return mant * std::exp2(t);
  };
  vals[0] = reconstruct(st.cur, 0);
  for (std::size_t j = 1; j <= k; ++j) {
    const double bj = jacobi_b(p, j);
    const double bj1 = j >= 2 ? jacobi_b(p, j - 1) : 0.0;
    const double next = (x * st.cur - bj1 * st.prev) / bj;
    st.prev = st.cur;
    st.cur = next;
    st.k = j;
    st.rescale();
    vals[j] = reconstruct(st.cur, st.exp2);
  }
  return vals;
}

}  // namespace

std::vector<double> eval_xi_all(const Params& p, std::size_t k, double x) {
  return eval_all_impl(p, k, x, true);
}

std::vector<double> eval_phi_all(const Params& p, std::size_t k, double x) {
  return eval_all_impl(p, k, x, false);
}

BasisTable::BasisTable(const Params& p, std::size_t k_max)
    : p_(p), k_max_(k_max), b_(k_max + 2, 0.0), p0_(p.p0()) {
  for (std::size_t k = 1; k < b_.size(); ++k) b_[k] = jacobi_b(p, k);
}

BasisEval BasisTable::eval(std::size_t k, double x, BasisKind kind) const {
  if (kind == BasisKind::xi && x == 0.0 && p_.sigma < 0.0 && k % 2 == 0)
    throw SingularPoint("BasisTable::eval: xi_k unbounded at 0");
  BasisEval out;
  out.k = k;
  out.x = x;
  out.kind = kind;
  double prev = 0.0, cur = p0_;
  std::int64_t e2 = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double next = (x * cur - b_[j - 1] * prev) / b_[j];
    prev = cur;
    cur = next;
    const double a = std::fabs(cur != 0.0 ? cur : prev);
    if (a >= kRescaleHi || (a <= kRescaleLo && a > 0.0)) {
      const int sh = std::ilogb(cur != 0.0 ? cur : prev);
      cur = std::ldexp(cur, -sh);
      prev = std::ldexp(prev, -sh);
      e2 += sh;
    }
  }
  out.mantissa = cur;
  out.exponent = e2;
  if (kind != BasisKind::poly) {
    double g = -0.5 * p_.s * x * x * kLog2e;
    if (kind == BasisKind::xi) {
      if (x == 0.0) {
        if (p_.sigma != 0.0) { out.mantissa = 0.0; out.exponent = 0; }
        return out;
      }
      g += p_.sigma * std::log2(std::fabs(x));
    }
    const double gi = std::floor(g);
    out.exponent += static_cast<std::int64_t>(gi);
    out.mantissa *= std::exp2(g - gi);
  }
  if (out.mantissa != 0.0) out.mantissa = split_exp2(out.mantissa, &out.exponent);
  return out;
}

double BasisTable::xi_sq_partial_sum(std::size_t k, double x) const {
  if (x == 0.0 && p_.sigma < 0.0)
    throw SingularPoint("xi_sq_partial_sum: x = 0 with sigma < 0");
  double g2 = -0.5 * p_.s * x * x * kLog2e;
  if (x != 0.0) g2 += p_.sigma * std::log2(std::fabs(x));
  else if (p_.sigma > 0.0) g2 = -HUGE_VAL;
  double prev = 0.0, cur = p0_;
  std::int64_t e2 = 0;
  auto reconstruct = [&](double m) -> double {
    if (m == 0.0) return 0.0;
    const double t = static_cast<double>(e2) + g2;
    return t < -1060.0 ? 0.0 : m * std::exp2(t);
  };
  double acc = 0.0;
  if (k > 0) { const double v = reconstruct(cur); acc += v * v; }
  for (std::size_t j = 1; j + 1 <= k; ++j) {
    const double next = (x * cur - b_[j - 1] * prev) / b_[j];
    prev = cur;
    cur = next;
    const double a = std::fabs(cur != 0.0 ? cur : prev);
    if (a >= kRescaleHi || (a <= kRescaleLo && a > 0.0)) {
      const int sh = std::ilogb(cur != 0.0 ? cur : prev);
      cur = std::ldexp(cur, -sh);
      prev = std::ldexp(prev, -sh);
      e2 += sh;
    }
    const double v = reconstruct(cur);
    acc += v * v;
  }
  return acc;
}

double p_at_zero(const Params& p, std::size_t k) {
  if (k % 2 != 0) throw ParityError("p_at_zero: k must be even");
  // p_k(0) = (-1)^{k/2} sqrt( Π_{j odd<k}(j+2σ) / Π_{j even<=k, j>=2} j ) p_0
  double lg = 0.0;
  for (std::size_t j = 1; j < k; j += 2) lg += std::log(static_cast<double>(j) + 2.0 * p.sigma);
  for (std::size_t j = 2; j <= k; j += 2) lg -= std::log(static_cast<double>(j));
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::exp(0.5 * lg) * p.p0();
}

double dp_at_zero(const Params& p, std::size_t k) {
  if (k % 2 != 1) throw ParityError("dp_at_zero: k must be odd");
  // prefactor (-1)^{(k-1)/2}/(1+2σ) on sqrt( Π(j+2σ, j odd<=k) 2s / Π(j even<k) )
  double lg = std::log(2.0 * p.s);
  for (std::size_t j = 1; j <= k; j += 2) lg += std::log(static_cast<double>(j) + 2.0 * p.sigma);
  for (std::size_t j = 2; j < k; j += 2) lg -= std::log(static_cast<double>(j));
  const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign / (1.0 + 2.0 * p.sigma) * std::exp(0.5 * lg) * p.p0();
}

double leading_coeff_log(const Params& p, std::size_t k) {
  // γ_k = (2s)^{1/2} γ_{k-1} / sqrt(k or k+2σ); cf. the b_k coefficients.
  double lg = std::log(p.p0());
  for (std::size_t j = 1; j <= k; ++j) {
    const double den = (j % 2 == 0) ? static_cast<double>(j)
                                    : static_cast<double>(j) + 2.0 * p.sigma;
    lg += 0.5 * (std::log(2.0 * p.s) - std::log(den));
  }
  return lg;
}

double perturbed_factorial(const Params& p, std::size_t m) {
  double v = 1.0;
  for (std::size_t j = 1; j <= m; ++j)
    v *= (j % 2 == 0) ? static_cast<double>(j)
                      : static_cast<double>(j) + 2.0 * p.sigma;
  return v;
}

}  // namespace dunkl
