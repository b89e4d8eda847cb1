#include "dunkl/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>

#include "dunkl/hermite_basis.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

double q_k(const Params& p, std::size_t k, double x) {
  const double sb = sigma_bar(p, k);
  if (x == 0.0) {
    if (sb != 0.0) throw SingularPoint("q_k: x = 0 with sigma_bar != 0");
    return eigenvalue(p, k);
  }
  return eigenvalue(p, k) - p.s * p.s * x * x - sb / (x * x);
}

OscillationProfile profile(const Params& p, std::size_t k) {
  OscillationProfile prof;
  prof.k = k;
  prof.sigma_bar = sigma_bar(p, k);
  const double lam_over_s = 2.0 * static_cast<double>(k) + 1.0 + 2.0 * p.sigma;
  prof.c_max = prof.sigma_bar > 0.0 ? lam_over_s - 2.0 * std::sqrt(prof.sigma_bar)
                                    : lam_over_s;

  const double disc = lam_over_s * lam_over_s - 4.0 * prof.sigma_bar;
  if (prof.sigma_bar > 0.0) {
    prof.x_max = std::sqrt(std::sqrt(prof.sigma_bar) / p.s);
    if (prof.c_max < 0.0) {
      prof.regime = Regime::no_oscillation;
      prof.b_k = std::nan("");
      return prof;
    }
    prof.b_k = std::sqrt((lam_over_s + std::sqrt(disc)) / (2.0 * p.s));
    if (prof.c_max == 0.0) {
      prof.regime = Regime::two_zero_pos;
      return prof;
    }
    prof.regime = Regime::four_zero;
    prof.a_k = std::sqrt((lam_over_s - std::sqrt(disc)) / (2.0 * p.s));
    return prof;
  }

  prof.b_k = std::sqrt((lam_over_s + std::sqrt(disc)) / (2.0 * p.s));
  if (prof.sigma_bar == 0.0) {
    prof.regime = Regime::two_zero_zero;
    return prof;
  }

  prof.regime = Regime::two_zero_neg;
  // b_{k,+}: smaller solution of g(b) = q_k(b) b² - 4π = 0, bisected on
  // (b_k·1e-6, argmax of g) where the sign change is bracketed
  const double lam = lam_over_s * p.s;
  const auto g = [&](double b) {
    return (lam - p.s * p.s * b * b) * b * b - prof.sigma_bar - 4.0 * M_PI;
  };
  const double b_star = std::sqrt(lam_over_s / (2.0 * p.s));
  if (g(b_star) > 0.0) {
    double lo = prof.b_k * 1e-6, hi = b_star;
    const double tol = 1e-12 * prof.b_k;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    prof.b_k_plus = 0.5 * (lo + hi);
  }
  return prof;
}

bool jhat_contains(const OscillationProfile& prof, double x) {
  const double ax = std::fabs(x);
  switch (prof.regime) {
    case Regime::no_oscillation:
    case Regime::two_zero_pos:
      return false;
    case Regime::four_zero:
      return *prof.a_k < ax && ax < prof.b_k;
    case Regime::two_zero_zero:
      return ax < prof.b_k;
    case Regime::two_zero_neg:
      if (prof.b_k_plus) return *prof.b_k_plus <= ax && ax < prof.b_k;
      return 0.0 < ax && ax < prof.b_k;
  }
  return false;
}

namespace {

// Wavelength-aware samples of [lo, hi]: step ~ (local wavelength)/ppw, capped
// near each turning point so Airy-scale structure stays resolved.
std::vector<double> adaptive_samples(const Params& p, std::size_t k, double lo,
                                     double hi, double ppw,
                                     const std::vector<double>& turning_points,
                                     double airy_w) {
  std::vector<double> xs;
  if (!(hi > lo)) return xs;
  const double span = hi - lo;
  const double coarse = span / 401.0;
  const double min_dx = std::max(span * 1e-7, airy_w / 64.0);
  const double sb = sigma_bar(p, k);
  const double lam = eigenvalue(p, k);
  double x = lo;
  while (x < hi) {
    xs.push_back(x);
    double q = lam - p.s * p.s * x * x;
    if (sb != 0.0) q -= sb / std::max(x * x, 1e-280);
    double dx = 2.0 * M_PI / (ppw * std::sqrt(std::max(std::fabs(q), 1e-12)));
    for (double tp : turning_points)
      dx = std::min(dx, (std::fabs(x - tp) + airy_w) / 12.0);
    dx = std::min(dx, coarse);
    dx = std::max(dx, min_dx);
    x += dx;
  }
  xs.push_back(hi);
  return xs;
}

// Sup of f over the samples, with golden-section polish of each local max.
double refined_sup(const std::function<double(double)>& f,
                   const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  std::vector<double> fv(n);
  for (std::size_t i = 0; i < n; ++i) fv[i] = f(xs[i]);
  double best = *std::max_element(fv.begin(), fv.end());
  constexpr double kGolden = 0.6180339887498949;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(fv[i] >= fv[i - 1] && fv[i] >= fv[i + 1])) continue;
    double a = xs[i - 1], b = xs[i + 1];
    double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 22; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - kGolden * (b - a);
        fc = f(c);
      } else {
        a = c; c = d; fc = fd;
        d = a + kGolden * (b - a);
        fd = f(d);
      }
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

double airy_width(const Params& p, const OscillationProfile& prof) {
  const double b = std::isnan(prof.b_k) ? 1.0 : prof.b_k;
  return std::cbrt(1.0 / (2.0 * p.s * p.s * std::max(b, 1e-6)));
}

// positive nodes (ascending) plus 0 if present
std::vector<double> ascending_nonneg_nodes(const QuadratureRule& rule) {
  std::vector<double> out;
  for (auto it = rule.nodes.rbegin(); it != rule.nodes.rend(); ++it)
    if (*it >= 0.0) out.push_back(*it);
  return out;
}

double dist_to_nearest(const std::vector<double>& ascending, double x) {
  auto it = std::lower_bound(ascending.begin(), ascending.end(), x);
  double d = HUGE_VAL;
  if (it != ascending.end()) d = std::min(d, std::fabs(*it - x));
  if (it != ascending.begin()) d = std::min(d, std::fabs(*(it - 1) - x));
  return d;
}

double jhat_lower_edge(const OscillationProfile& prof) {
  switch (prof.regime) {
    case Regime::four_zero: return *prof.a_k;
    case Regime::two_zero_zero: return 0.0;
    case Regime::two_zero_neg:
      return prof.b_k_plus ? *prof.b_k_plus : prof.b_k * 1e-6;
    default: return std::nan("");
  }
}

double per_k_thm11_i(const Params& p, std::size_t k, const ScanOptions& o) {
  const OscillationProfile prof = profile(p, k);
  if (!prof.has_oscillation()) throw RegimeError("thm11_i: J-hat is empty");
  BasisTable table(p, k);
  const double w = airy_width(p, prof);
  const double lo = jhat_lower_edge(prof);
  const auto xs = adaptive_samples(p, k, lo, prof.b_k, o.points_per_wavelength,
                                   {lo, prof.b_k}, w);
  const auto f = [&](double x) {
    const double q = q_k(p, k, x);
    if (q <= 0.0) return 0.0;
    const double xi = table.xi(k, x);
    return xi * xi * std::sqrt(q);
  };
  return refined_sup(f, xs);
}

double per_k_max_xi_sq(const Params& p, std::size_t k, const ScanOptions& o,
                       double lo_override /* <0: none */) {
  const OscillationProfile prof = profile(p, k);
  if (!prof.has_oscillation())
    throw RegimeError("max xi^2: no oscillation region at this k");
  BasisTable table(p, k);
  const double w = airy_width(p, prof);
  double lo;
  if (lo_override >= 0.0) lo = lo_override;
  else if (prof.sigma_bar == 0.0) lo = 0.0;
  else lo = prof.b_k * 1e-6;
  std::vector<double> tps{prof.b_k};
  if (prof.a_k) tps.push_back(*prof.a_k);
  const double hi = prof.b_k + 4.0 * w;
  const auto xs = adaptive_samples(p, k, lo, hi, o.points_per_wavelength, tps, w);
  const auto f = [&](double x) {
    const double xi = table.xi(k, x);
    return xi * xi;
  };
  return refined_sup(f, xs);
}

double per_k_thm12(const Params& p, std::size_t k, const ScanOptions& o) {
  const OscillationProfile prof = profile(p, k);
  BasisTable table(p, k);
  const auto f = [&](double x) {
    const double v = table.phi(k, x);
    return v * v;
  };
  if (!prof.has_oscillation()) {
    // k = 0 corner: pure Gaussian bump at the origin
    return f(0.0);
  }
  const double w = airy_width(p, prof);
  std::vector<double> tps{prof.b_k};
  if (prof.a_k) tps.push_back(*prof.a_k);
  auto xs = adaptive_samples(p, k, prof.b_k * 1e-6, prof.b_k + 4.0 * w,
                             o.points_per_wavelength, tps, w);
  xs.insert(xs.begin(), 0.0);  // phi is finite at the origin; keep xs ascending
  return refined_sup(f, xs);
}

double per_k_root_spacing(const Params& p, std::size_t k, const ScanOptions& o) {
  const OscillationProfile prof = profile(p, k);
  if (!prof.has_oscillation())
    throw RegimeError("root_spacing: J-hat is empty at this k");
  const QuadratureRule rule = build_rule(p, k);
  const auto nodes = ascending_nonneg_nodes(rule);
  const double w = airy_width(p, prof);
  const double lo = jhat_lower_edge(prof);
  const auto xs = adaptive_samples(p, k, lo, prof.b_k, o.points_per_wavelength,
                                   {lo, prof.b_k}, w);
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, dist_to_nearest(nodes, x));
  return std::pow(static_cast<double>(k), 1.0 / 6.0) * worst;
}

double per_k_lemmaF(const Params& p, std::size_t k, const ScanOptions&) {
  const double b_k = profile(p, k).b_k;
  const double b_k1 = profile(p, k + 1).b_k;
  if (std::isnan(b_k) || std::isnan(b_k1))
    throw RegimeError("lemmaF: q_k has no turning point at this k");
  BasisTable table(p, k);
  const auto f = [&](double x) {
    const double d = x - b_k;
    return std::fabs(table.xi(k, x)) * d * d;
  };
  std::vector<double> xs(1501);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = b_k1 + 5.0 * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
  const double sup = refined_sup(f, xs);
  return std::pow(static_cast<double>(k), 5.0 / 12.0) * sup;
}

double per_k_lemmaG(const Params& p, std::size_t k, const ScanOptions& o) {
  const QuadratureRule rule = build_rule(p, k);
  const double x1 = rule.nodes.front();
  const double half = o.epsilon * std::pow(static_cast<double>(k), -1.0 / 6.0);
  BasisTable table(p, k);
  const auto f = [&](double x) { return table.xi_sq_partial_sum(k, x); };
  std::vector<double> xs(o.epsilon == 0.0 ? 1 : 161);
  if (xs.size() == 1) {
    xs[0] = x1;
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i)
      xs[i] = x1 - half +
              2.0 * half * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
  }
  const double sup = refined_sup(f, xs);
  return std::pow(static_cast<double>(k), -1.0 / 6.0) * sup;
}

}  // namespace

std::optional<std::pair<double, double>> fit_log_line(
    const std::vector<std::size_t>& ks, const std::vector<double>& ys,
    std::size_t k_min) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < k_min || !(ys[i] > 0.0)) continue;
    const double lx = std::log(static_cast<double>(ks[i]));
    const double ly = std::log(ys[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double den = static_cast<double>(n) * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  const double slope = (static_cast<double>(n) * sxy - sx * sy) / den;
  const double intercept = (sy - slope * sx) / static_cast<double>(n);
  return std::make_pair(slope, intercept);
}

std::optional<double> fit_log_slope(const std::vector<std::size_t>& ks,
                                    const std::vector<double>& ys,
                                    std::size_t k_min) {
  const auto line = fit_log_line(ks, ys, k_min);
  if (!line) return std::nullopt;
  return line->first;
}

std::vector<std::size_t> log_spaced_k(std::size_t kmin, std::size_t kmax,
                                      std::size_t count, bool force_even) {
  std::vector<std::size_t> ks;
  if (count == 0 || kmax < kmin) return ks;
  const double lmin = std::log(static_cast<double>(kmin));
  const double lmax = std::log(static_cast<double>(kmax));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0
                                : static_cast<double>(i) / static_cast<double>(count - 1);
    auto k = static_cast<std::size_t>(std::llround(std::exp(lmin + t * (lmax - lmin))));
    k = std::clamp<std::size_t>(k, kmin, kmax);
    if (force_even && k % 2 == 1) k = (k + 1 <= kmax) ? k + 1 : k - 1;
    if (ks.empty() || k > ks.back()) ks.push_back(k);
  }
  return ks;
}

EstimateScan run_scan(const Params& p, ScanStatistic statistic,
                      const std::vector<std::size_t>& k_list,
                      const ScanOptions& opts) {
  // regime preconditions, checked up front for the whole list
  for (std::size_t k : k_list) {
    switch (statistic) {
      case ScanStatistic::thm11_ii:
      case ScanStatistic::thm13_i:
        if (k % 2 == 0 && p.sigma < 0.0)
          throw RegimeError("thm11_ii/thm13_i needs k odd or sigma >= 0");
        break;
      case ScanStatistic::thm11_iii:
      case ScanStatistic::thm13_ii:
        if (!(p.sigma < 0.0) || k % 2 != 0)
          throw RegimeError("thm11_iii/thm13_ii needs sigma < 0 and k even");
        break;
      case ScanStatistic::thm12:
        if (!(p.sigma < 0.0)) throw DomainError("thm12 needs sigma < 0");
        if (k % 2 != 0) throw DomainError("thm12 needs even k");
        break;
      case ScanStatistic::lemmaG:
        if (opts.epsilon < 0.0) throw DomainError("lemmaG needs epsilon >= 0");
        break;
      default:
        break;
    }
  }

  EstimateScan scan;
  scan.sigma = p.sigma;
  scan.s = p.s;
  scan.k_list = k_list;
  scan.statistic = statistic;
  scan.per_k_values.assign(k_list.size(), 0.0);

  std::exception_ptr error;
  std::mutex error_mutex;
  parallel_for_index(k_list.size(), opts.jobs, [&](std::size_t i) {
    try {
      const std::size_t k = k_list[i];
      double v = 0.0;
      switch (statistic) {
        case ScanStatistic::thm11_i:
          v = per_k_thm11_i(p, k, opts);
          break;
        case ScanStatistic::thm11_ii:
        case ScanStatistic::thm13_i:
          v = std::pow(static_cast<double>(k), 1.0 / 6.0) *
              per_k_max_xi_sq(p, k, opts, -1.0);
          break;
        case ScanStatistic::thm11_iii:
        case ScanStatistic::thm13_ii: {
          const QuadratureRule rule = build_rule(p, k);
          const double x_small = rule.nodes[k / 2 - 1];  // smallest positive root
          v = std::pow(static_cast<double>(k), 1.0 / 6.0) *
              per_k_max_xi_sq(p, k, opts, x_small);
          break;
        }
        case ScanStatistic::thm12:
          v = per_k_thm12(p, k, opts);
          break;
        case ScanStatistic::root_spacing:
          v = per_k_root_spacing(p, k, opts);
          break;
        case ScanStatistic::lemmaF:
          v = per_k_lemmaF(p, k, opts);
          break;
        case ScanStatistic::lemmaG:
          v = per_k_lemmaG(p, k, opts);
          break;
      }
      scan.per_k_values[i] = v;
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  });
  if (error) std::rethrow_exception(error);

  auto slope = fit_log_slope(k_list, scan.per_k_values, 50);
  if (slope && (statistic == ScanStatistic::thm11_ii ||
                statistic == ScanStatistic::thm11_iii ||
                statistic == ScanStatistic::thm13_i ||
                statistic == ScanStatistic::thm13_ii))
    slope = *slope - 1.0 / 6.0;  // slope convention: raw max ξ_k², not k^{1/6}-scaled
  scan.fitted_slope = slope;
  return scan;
}

}  // namespace dunkl
