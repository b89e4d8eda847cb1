#include "dunkl/tridiag.hpp"

#include <cmath>

#include "dunkl/params.hpp"

namespace dunkl {

namespace {

inline double hypot2(double a, double b) {
  const double aa = std::fabs(a), ab = std::fabs(b);
  if (aa > ab) { const double r = ab / aa; return aa * std::sqrt(1.0 + r * r); }
  if (ab == 0.0) return 0.0;
  const double r = aa / ab;
  return ab * std::sqrt(1.0 + r * r);
}

inline double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

}  // namespace

void tridiag_ql_implicit(std::vector<double>& d, std::vector<double>& e,
                         std::vector<double>* first_row, double tol,
                         std::size_t max_iters) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;
  std::size_t iter_budget = max_iters;

  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      // find the first deflatable off-diagonal at or above l
      std::size_t m = l;
      while (m + 1 < n) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= tol * dd) break;
        ++m;
      }
      if (m == l) break;
      if (iter_budget-- == 0)
        throw ConvergenceError("tridiag_ql_implicit: iteration budget exhausted");

      // Wilkinson shift from the 2x2 block at l
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = hypot2(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
      double s = 1.0, c = 1.0, p = 0.0;

      bool split = false;
      for (std::size_t i1 = m; i1 > l; --i1) {
        const std::size_t i = i1 - 1;
        double f = s * e[i];
        const double b = c * e[i];
        r = hypot2(f, g);
        e[i + 1] = r;
        if (r == 0.0) {  // negligible rotation: split the matrix
          d[i + 1] -= p;
          e[m] = 0.0;
          split = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (first_row) {
          auto& z = *first_row;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
      }
      if (!split) {
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    }
  }
}

}  // namespace dunkl
