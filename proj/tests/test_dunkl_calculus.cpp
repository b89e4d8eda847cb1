#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dunkl/dunkl_calculus.hpp"
#include "dunkl/hermite_basis.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/spectral_spaces.hpp"

using namespace dunkl;

namespace {

std::vector<double> symmetric_grid(double hi, std::size_t half) {
  std::vector<double> g;
  for (std::size_t i = half; i > 0; --i) g.push_back(-hi * double(i) / double(half));
  g.push_back(0.0);
  for (std::size_t i = 1; i <= half; ++i) g.push_back(hi * double(i) / double(half));
  return g;
}

SampledFn sample(const std::vector<double>& grid, double (*f)(double), Parity par) {
  SampledFn out;
  out.grid = grid;
  out.parity = par;
  out.values.reserve(grid.size());
  for (double x : grid) out.values.push_back(f(x));
  return out;
}

// T_sigma on the monomial x^j: (j + 2 sigma [j odd]) x^{j-1}; iterating m
// times on x^m lands on the constant m!_sigma. Exact integer-ish arithmetic.
double T_power_m_times(double sigma, unsigned m) {
  double coeff = 1.0;
  for (unsigned j = m; j >= 1; --j) {
    coeff *= double(j) + (j % 2 == 1 ? 2.0 * sigma : 0.0);
    if (j == 1) break;
  }
  return coeff;
}

}  // namespace

TEST_CASE("apply_T_pointwise") {
  const auto grid = symmetric_grid(2.0, 50);

  SUBCASE("odd coordinate function: T x = 1 + 2 sigma") {
    const auto p = make_params(0.5, 1.0);
    const auto f = sample(grid, [](double x) { return x; }, Parity::odd);
    const auto df = sample(grid, [](double) { return 1.0; }, Parity::even);
    const auto out = apply_T_pointwise(p, f, df);
    for (double v : out.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-15));
  }

  SUBCASE("even function: T = d/dx") {
    const auto p = make_params(1.7, 1.0);
    const auto f = sample(grid, [](double x) { return x * x; }, Parity::even);
    const auto df = sample(grid, [](double x) { return 2.0 * x; }, Parity::odd);
    const auto out = apply_T_pointwise(p, f, df);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(out.values[i] == doctest::Approx(2.0 * grid[i]).epsilon(1e-15));
  }

  SUBCASE("sigma = 0 reduces to the derivative, exactly") {
    const auto p = make_params(0.0, 1.0);
    const auto f = sample(grid, [](double x) { return std::sin(x); }, Parity::odd);
    const auto df = sample(grid, [](double x) { return std::cos(x); }, Parity::even);
    const auto out = apply_T_pointwise(p, f, df);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] == 0.0) continue;  // removable-limit branch multiplies by 1+2sigma=1
      CHECK(out.values[i] == df.values[i]);
    }
  }

  SUBCASE("asymmetric grid rejected") {
    const auto p = make_params(0.5, 1.0);
    SampledFn f;
    f.grid = {-1.0, 0.0, 2.0};
    f.values = {0.0, 0.0, 0.0};
    f.parity = Parity::even;
    CHECK_THROWS_AS(apply_T_pointwise(p, f, f), GridAsymmetric);
  }
}

TEST_CASE("operator matrices") {
  const auto p = make_params(0.5, 1.0);

  SUBCASE("L is the eigenvalue diagonal") {
    const auto L = op_matrix(p, OpName::L, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(L.at(i, j) == (i == j ? 2.0 * double(i + 1) : 0.0));
  }

  SUBCASE("B annihilates e_0") {
    const auto B = op_matrix(p, OpName::B, 6);
    std::vector<double> e0(6, 0.0);
    e0[0] = 1.0;
    for (double v : B.apply(e0)) CHECK(v == 0.0);
  }

  SUBCASE("B'B = L - (1+2Sigma)s entrywise") {
    const std::size_t dim = 12;
    const auto B = op_matrix(p, OpName::B, dim);
    const auto Bp = op_matrix(p, OpName::Bp, dim);
    const auto BpB = mat_mul(Bp, B);
    for (std::size_t k = 0; k + 1 < dim; ++k) {  // top row/col of the section is exact here
      const double sig_k = k % 2 == 0 ? p.sigma : -p.sigma;
      const double expected = eigenvalue(p, k) - (1.0 + 2.0 * sig_k) * p.s;
      CHECK(BpB.at(k, k) == doctest::Approx(expected).epsilon(1e-14));
      for (std::size_t j = 0; j < dim; ++j)
        if (j != k) CHECK(std::fabs(BpB.at(k, j)) <= 1e-14);
    }
  }

  SUBCASE("X matrix carries the recurrence coefficients") {
    const auto X = op_matrix(p, OpName::X, 8);
    for (std::size_t k = 1; k < 8; ++k) {
      CHECK(X.at(k - 1, k) == doctest::Approx(jacobi_b(p, k)).epsilon(1e-15));
      CHECK(X.at(k, k - 1) == doctest::Approx(jacobi_b(p, k)).epsilon(1e-15));
    }
  }
}

TEST_CASE("commutator residuals") {
  for (double sigma : {-0.3, 0.0, 0.5, 2.0}) {
    const auto p = make_params(sigma, 1.3);
    for (auto which : {CommutatorCheck::LB, CommutatorCheck::LBp, CommutatorCheck::BBp,
                       CommutatorCheck::DxRel, CommutatorCheck::LSigma}) {
      CHECK(commutator_residual(p, 64, which) <= 1e-12);
    }
  }
  // smallest admissible section still yields a finite residual
  CHECK(std::isfinite(commutator_residual(make_params(0.5, 1.0), 8, CommutatorCheck::LB)));
  CHECK_THROWS_AS(commutator_residual(make_params(0.5, 1.0), 7, CommutatorCheck::LB),
                  DomainError);
}

TEST_CASE("xi ODE residual") {
  SUBCASE("k=0, sigma=0: Gaussian solution") {
    const auto p = make_params(0.0, 1.0);
    std::vector<double> grid;
    for (double x = 0.2; x <= 2.0; x += 1e-3) grid.push_back(x);
    CHECK(xi_ode_residual(p, 0, grid) <= 1e-6);
  }
  SUBCASE("k=50, sigma=0.5") {
    const auto p = make_params(0.5, 1.0);
    std::vector<double> grid;
    const double h = 1e-3 / std::sqrt(50.0);
    for (double x = 0.3; x <= 8.0; x += h) grid.push_back(x);
    CHECK(xi_ode_residual(p, 50, grid) <= 1e-5);
  }
  SUBCASE("grid touching 0 is singular") {
    const auto p = make_params(-0.3, 1.0);
    std::vector<double> grid;
    for (int i = -5; i <= 5; ++i) grid.push_back(i * 1e-2);
    CHECK_THROWS_AS(xi_ode_residual(p, 50, grid), SingularPoint);
  }
}

TEST_CASE("log-derivative identity") {
  SUBCASE("k=0, sigma=0: pure Gaussian slope -sx") {
    const auto p = make_params(0.0, 1.3);
    for (double x : {0.4, 1.0, 2.2}) {
      const auto [lhs, rhs] = log_derivative_check(p, 0, x);
      CHECK(rhs == doctest::Approx(-p.s * x).epsilon(1e-12));
      CHECK(std::fabs(lhs - rhs) <= 1e-6 * (1.0 + std::fabs(rhs)));
    }
  }
  SUBCASE("k=7, sigma=0.5 off the roots") {
    const auto p = make_params(0.5, 1.0);
    const auto [lhs, rhs] = log_derivative_check(p, 7, 1.3);
    CHECK(std::fabs(lhs - rhs) <= 1e-6 * (1.0 + std::fabs(rhs)));
  }
  SUBCASE("poles at the roots of p_k") {
    const auto p = make_params(0.5, 1.0);
    const auto rule = build_rule(p, 7);
    CHECK_THROWS_AS(log_derivative_check(p, 7, rule.nodes[0]), NearZeroDivision);
  }
}

TEST_CASE("matrix/pointwise agreement for B up to k=40") {
  const auto p = make_params(0.5, 1.0);
  const double h = 1e-5;
  for (std::size_t k : {1u, 2u, 11u, 40u}) {
    const double coeff =
        std::sqrt(2.0 * (double(k) + (k % 2 ? 2.0 * p.sigma : 0.0)) * p.s);
    for (double x : {0.6, 1.7}) {
      const auto phi = [&](double t) {
        return eval_basis(p, k, t, BasisKind::phi).value();
      };
      double t_phi = fd::d1(phi, x, h);  // derivative part of T_sigma
      if (k % 2 == 1) t_phi += 2.0 * p.sigma * phi(x) / x;
      const double pointwise = p.s * x * phi(x) + t_phi;
      const double matrix_side =
          coeff * eval_basis(p, k - 1, x, BasisKind::phi).value();
      CHECK(pointwise == doctest::Approx(matrix_side).epsilon(1e-8));
    }
  }
}

TEST_CASE("adjointness of B and B' under the weighted product") {
  const auto p = make_params(-0.3, 1.0);
  const std::size_t n = 20;
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto B = op_matrix(p, OpName::B, n + 1);
  const auto Bp = op_matrix(p, OpName::Bp, n + 1);
  for (int trial = 0; trial < 5; ++trial) {
    CoeffSeq c, d;
    c.coeffs.assign(n + 1, 0.0);
    d.coeffs.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      c.coeffs[k] = gauss(rng);
      d.coeffs[k] = gauss(rng);
    }
    CoeffSeq Bc, Bpd;
    Bc.coeffs = B.apply(c.coeffs);
    Bpd.coeffs = Bp.apply(d.coeffs);
    const auto rule = build_rule(p, 2 * n + 8);
    const auto f1 = [&](double x) { return synthesize_at(p, Bc, x); };
    const auto g1 = [&](double x) { return synthesize_at(p, d, x); };
    const auto f2 = [&](double x) { return synthesize_at(p, c, x); };
    const auto g2 = [&](double x) { return synthesize_at(p, Bpd, x); };
    const double left = inner_product(rule, f1, g1);
    const double right = inner_product(rule, f2, g2);
    CHECK(left == doctest::Approx(right).epsilon(1e-9));
  }
}

TEST_CASE("iterated T_sigma of monomials at the origin") {
  // (T^m x^m)(0) = m!_sigma, i.e. (m!_sigma/m!) times the m-th derivative m!
  for (double sigma : {-0.3, 0.0, 0.5, 2.0}) {
    const auto p = make_params(sigma, 1.0);
    for (unsigned m = 0; m <= 8; ++m) {
      CHECK(T_power_m_times(sigma, m) ==
            doctest::Approx(perturbed_factorial(p, m)).epsilon(1e-10));
    }
  }
}

TEST_CASE("even K-block: H + sigma(sigma-1)x^-2 on xi_{2k}") {
  const auto p = make_params(0.5, 1.0);
  const double h = 1e-4;
  for (std::size_t k : {0u, 3u, 10u}) {
    const auto xi = [&](double t) {
      return eval_basis(p, 2 * k, t, BasisKind::xi).value();
    };
    const double lam = (4.0 * double(k) + 1.0 + 2.0 * p.sigma) * p.s;
    double worst = 0.0;
    for (double x = 0.5; x <= 2.5; x += 0.25) {
      const double lhs = -fd::d2(xi, x, h) + p.s * p.s * x * x * xi(x) +
                         p.sigma * (p.sigma - 1.0) / (x * x) * xi(x);
      worst = std::max(worst, std::fabs(lhs - lam * xi(x)) / (1.0 + std::fabs(lam * xi(x))));
    }
    CHECK(worst <= 1e-5);
  }
}
