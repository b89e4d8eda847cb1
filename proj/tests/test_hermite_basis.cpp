#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dunkl/hermite_basis.hpp"
#include "dunkl/quadrature.hpp"

using namespace dunkl;

namespace {

constexpr double kPiQuarterInv = 0.75112554446494248;  // pi^(-1/4)

// Leading coefficient by Newton divided differences on distinct points:
// the top divided difference of a degree-k polynomial is its leading term.
double leading_coeff_by_divided_differences(const Params& p, std::size_t k) {
  const std::size_t n = k + 1;
  std::vector<double> xs(n), fv(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = 2.0 * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * n));  // Chebyshev on [-2,2]
    fv[i] = eval_basis(p, k, xs[i], BasisKind::poly).value();
  }
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      fv[i] = (fv[i + 1] - fv[i]) / (xs[i + level] - xs[i]);
  return fv[0];
}

}  // namespace

TEST_CASE("make_params validates the admissible range") {
  CHECK(make_params(0.0, 1.0).sigma == 0.0);
  CHECK(make_params(-0.3, 2.0).s == 2.0);
  CHECK_THROWS_AS(make_params(-0.5, 1.0), DomainError);
  CHECK_THROWS_AS(make_params(-0.7, 1.0), DomainError);
  CHECK_THROWS_AS(make_params(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_params(0.0, -1.0), DomainError);
}

TEST_CASE("recurrence coefficients") {
  SUBCASE("sigma=0, s=1/2 gives b_k = sqrt(k)") {
    const auto rc = recurrence_coeffs(make_params(0.0, 0.5), 30);
    for (std::size_t k = 1; k <= 30; ++k)
      CHECK(rc.b[k] == doctest::Approx(std::sqrt(double(k))).epsilon(1e-15));
  }
  SUBCASE("b_1 = sqrt((1+2sigma)/(2s))") {
    const auto rc = recurrence_coeffs(make_params(0.5, 1.0), 1);
    CHECK(rc.b[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("p0 and mu0") {
    const auto rc = recurrence_coeffs(make_params(0.0, 1.0), 1);
    CHECK(rc.p0 == doctest::Approx(kPiQuarterInv).epsilon(1e-15));
    CHECK(rc.mu0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
    CHECK(rc.p0 == doctest::Approx(1.0 / std::sqrt(rc.mu0)).epsilon(1e-15));
  }
}

TEST_CASE("eval_basis point values") {
  const auto p = make_params(0.0, 1.0);
  CHECK(eval_basis(p, 0, 0.0, BasisKind::poly).value() ==
        doctest::Approx(kPiQuarterInv).epsilon(1e-15));

  // odd polynomials vanish at the origin
  for (std::size_t k : {1u, 3u, 9u, 41u})
    CHECK(eval_basis(make_params(0.7, 2.0), k, 0.0, BasisKind::poly).value() == 0.0);

  // smallest positive zero of p_2: x^2 = (1+2sigma)/(2s)
  const auto p2 = make_params(0.5, 1.0);
  CHECK(eval_basis(p2, 2, 1.0, BasisKind::poly).value() ==
        doctest::Approx(0.0).epsilon(1e-14));

  // phi folds the Gaussian: phi_0(x) = p0 e^{-sx^2/2}
  const double x = 1.7;
  CHECK(eval_basis(p, 0, x, BasisKind::phi).value() ==
        doctest::Approx(kPiQuarterInv * std::exp(-0.5 * x * x)).epsilon(1e-14));

  // xi adds |x|^sigma
  const auto p3 = make_params(0.5, 1.0);
  CHECK(eval_basis(p3, 0, x, BasisKind::xi).value() ==
        doctest::Approx(p3.p0() * std::sqrt(x) * std::exp(-0.5 * x * x)).epsilon(1e-14));

  SUBCASE("xi singularity at 0 for sigma<0, even k") {
    CHECK_THROWS_AS(eval_basis(make_params(-0.3, 1.0), 2, 0.0, BasisKind::xi),
                    SingularPoint);
    // odd k has a zero limit instead
    CHECK(eval_basis(make_params(-0.3, 1.0), 3, 0.0, BasisKind::xi).value() == 0.0);
  }
}

TEST_CASE("scaled evaluation stays finite far beyond raw-double range") {
  const auto p = make_params(0.5, 1.0);
  const auto ev = eval_basis(p, 3000, 80.0, BasisKind::poly);
  CHECK(std::isfinite(ev.mantissa));
  CHECK(std::fabs(ev.mantissa) >= 0x1p-512);
  CHECK(std::fabs(ev.mantissa) <= 0x1p512);
  CHECK(ev.exponent > 2000);  // raw value would overflow by a wide margin
  // deep in the Gaussian tail phi underflows to an honest 0
  CHECK(eval_basis(p, 3000, 200.0, BasisKind::phi).value() == 0.0);
  // just past the turning point it is tiny but finite
  const double near_edge = eval_basis(p, 3000, 80.0, BasisKind::phi).value();
  CHECK(std::isfinite(near_edge));
  CHECK(std::fabs(near_edge) < 1e-10);
  CHECK(near_edge != 0.0);
}

TEST_CASE("parity: p_k(-x) = (-1)^k p_k(x) bit-for-bit") {
  const auto p = make_params(-0.3, 2.0);
  for (std::size_t k : {0u, 1u, 2u, 7u, 40u, 301u}) {
    for (double x : {0.3, 1.9, 7.7}) {
      const auto plus = eval_basis(p, k, x, BasisKind::poly);
      const auto minus = eval_basis(p, k, -x, BasisKind::poly);
      const double expected = (k % 2 == 0) ? plus.mantissa : -plus.mantissa;
      CHECK(minus.mantissa == expected);
      CHECK(minus.exponent == plus.exponent);
    }
  }
}

TEST_CASE("p_at_zero closed form") {
  const auto p = make_params(0.0, 1.0);
  CHECK(p_at_zero(p, 0) == doctest::Approx(p.p0()).epsilon(1e-15));
  CHECK(p_at_zero(p, 2) ==
        doctest::Approx(-std::sqrt(0.5) * kPiQuarterInv).epsilon(1e-14));
  CHECK_THROWS_AS(p_at_zero(p, 3), ParityError);

  SUBCASE("agrees with the recurrence evaluation up to k=2000") {
    for (double sigma : {-0.3, 0.0, 0.5, 2.0}) {
      const auto pp = make_params(sigma, 1.3);
      for (std::size_t k : {0u, 2u, 40u, 400u, 2000u}) {
        const double closed = p_at_zero(pp, k);
        const double rec = eval_basis(pp, k, 0.0, BasisKind::poly).value();
        CHECK(closed == doctest::Approx(rec).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("dp_at_zero closed form") {
  const auto p = make_params(0.0, 1.0);
  CHECK(dp_at_zero(p, 1) ==
        doctest::Approx(std::sqrt(2.0) * kPiQuarterInv).epsilon(1e-14));
  CHECK_THROWS_AS(dp_at_zero(p, 2), ParityError);

  SUBCASE("finite-difference oracle at k=3") {
    const double h = 1e-5;
    const auto pk = [&](double x) { return eval_basis(p, 3, x, BasisKind::poly).value(); };
    const double fd = (pk(-2 * h) - 8 * pk(-h) + 8 * pk(h) - pk(2 * h)) / (12 * h);
    CHECK(dp_at_zero(p, 3) == doctest::Approx(fd).epsilon(1e-8));
  }

  SUBCASE("log-space form agrees with recurrence slope for large odd k") {
    for (double sigma : {-0.3, 0.5}) {
      const auto pp = make_params(sigma, 1.0);
      for (std::size_t k : {1u, 41u, 401u, 1999u}) {
        const double h = 1e-6;
        const double fd =
            (eval_basis(pp, k, h, BasisKind::poly).value() -
             eval_basis(pp, k, -h, BasisKind::poly).value()) /
            (2 * h);
        CHECK(dp_at_zero(pp, k) == doctest::Approx(fd).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("leading coefficient") {
  const auto p = make_params(0.5, 1.0);
  CHECK(leading_coeff_log(p, 0) == doctest::Approx(std::log(p.p0())).epsilon(1e-14));
  // odd step: gamma_1 = sqrt(2s/(1+2sigma)) gamma_0 = gamma_0 here
  CHECK(leading_coeff_log(p, 1) == doctest::Approx(std::log(p.p0())).epsilon(1e-14));

  SUBCASE("divided-difference oracle at k=10") {
    const auto p0 = make_params(0.0, 1.0);
    const double gamma = std::exp(leading_coeff_log(p0, 10));
    CHECK(gamma ==
          doctest::Approx(leading_coeff_by_divided_differences(p0, 10)).epsilon(1e-8));
  }
}

TEST_CASE("perturbed factorial") {
  CHECK(perturbed_factorial(make_params(0.5, 1.0), 0) == 1.0);
  CHECK(perturbed_factorial(make_params(0.5, 1.0), 2) == doctest::Approx(4.0));
  const auto p0 = make_params(0.0, 1.0);
  double fact = 1.0;
  for (std::size_t m = 1; m <= 12; ++m) {
    fact *= double(m);
    CHECK(perturbed_factorial(p0, m) == doctest::Approx(fact).epsilon(1e-15));
  }
  // positivity across the admissible range
  for (double sigma : {-0.49, -0.1, 1.7})
    for (std::size_t m : {1u, 5u, 8u})
      CHECK(perturbed_factorial(make_params(sigma, 1.0), m) > 0.0);
}

TEST_CASE("recurrence equals gamma_k times the root product for small k") {
  const auto p = make_params(0.5, 1.0);
  for (std::size_t k : {3u, 8u, 12u}) {
    const auto rule = build_rule(p, k);
    const double lg = leading_coeff_log(p, k);
    for (double x : {0.37, 1.21, 2.9}) {
      double prod_log = lg;
      double sign = 1.0;
      for (double r : rule.nodes) {
        prod_log += std::log(std::fabs(x - r));
        if (x < r) sign = -sign;
      }
      const double direct = sign * std::exp(prod_log);
      const double rec = eval_basis(p, k, x, BasisKind::poly).value();
      CHECK(rec == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("zero structure: one sign per gap, flip across nodes") {
  for (double sigma : {-0.3, 0.5}) {
    const auto p = make_params(sigma, 1.0);
    for (std::size_t k : {5u, 37u, 120u, 200u}) {
      const auto rule = build_rule(p, k);
      double prev_mid_sign = 0.0;
      for (std::size_t i = 0; i + 1 < rule.nodes.size(); ++i) {
        const double mid = 0.5 * (rule.nodes[i] + rule.nodes[i + 1]);
        const double v = eval_basis(p, k, mid, BasisKind::poly).mantissa;
        REQUIRE(v != 0.0);
        if (prev_mid_sign != 0.0) CHECK(v * prev_mid_sign < 0.0);
        prev_mid_sign = v;
      }
    }
  }
}

TEST_CASE("eval_xi_all matches single evaluations") {
  const auto p = make_params(-0.3, 1.0);
  const double x = 2.31;
  const auto all = eval_xi_all(p, 60, x);
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::size_t> pick(0, 60);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t k = pick(rng);
    CHECK(all[k] ==
          doctest::Approx(eval_basis(p, k, x, BasisKind::xi).value()).epsilon(1e-13));
  }
}

TEST_CASE("BasisTable agrees with eval_basis") {
  const auto p = make_params(0.5, 2.0);
  BasisTable table(p, 500);
  for (std::size_t k : {0u, 1u, 17u, 499u})
    for (double x : {0.05, 1.0, 11.0}) {
      CHECK(table.xi(k, x) ==
            doctest::Approx(eval_basis(p, k, x, BasisKind::xi).value()).epsilon(1e-13));
      CHECK(table.phi(k, x) ==
            doctest::Approx(eval_basis(p, k, x, BasisKind::phi).value()).epsilon(1e-13));
    }
}
