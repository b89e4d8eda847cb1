#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/dunkl_calculus.hpp"
#include "dunkl/params.hpp"

namespace dunkl {

enum class F1Family {
  inverse_multiple,  // f1 = c/x
  power,             // f1 = c x^r, r != -1
  log_derivative     // f1 = c g'/g
};

enum class LogDerivG { g_x, g_cos, g_exp, g_exp_xn };

/// Drift specification for P = H - 2 f1 d/dx + f2 on (a subset of) R_+.
struct F1Spec {
  F1Family family = F1Family::inverse_multiple;
  double c = 0.0;
  double r = 0.0;                       // power family exponent
  LogDerivG g = LogDerivG::g_exp;       // log_derivative choice
  int n = 1;                            // g = exp(x^n)
};

/// Fully assembled operator: f2 from the defining identity
/// f2 = σ(σ-1)x⁻² - f1² - f1', conjugator h = x^σ e^{-F1}, spectrum
/// (4k+1+2σ)s with eigenfunctions sqrt(2)·h·φ_{2k}.
struct PerturbedOperator {
  F1Spec f1_spec;
  double sigma = 0.0;
  double s = 1.0;
  std::optional<double> a;  // set by the c1/c2 construction (h = x^a)
  std::function<double(double)> f1, df1, F1, f2, h;
  std::vector<double> excluded;  // interior points of R_+ outside U

  double eigenvalue(std::size_t k) const {
    return (4.0 * static_cast<double>(k) + 1.0 + 2.0 * sigma) * s;
  }
  /// u_k = sqrt(2) h φ_{2k}, pointwise.
  double eigenfunction_at(std::size_t k, double x) const;
};

PerturbedOperator derive_f2_h(const F1Spec& spec, double sigma, double s);

/// Corollary construction for P = H - 2c1 x⁻¹ d/dx + c2 x⁻²: both roots of
/// a² + (2c1-1)a - c2 = 0, each kept iff σ = a + c1 > -1/2.
std::vector<PerturbedOperator> solve_c1c2(double c1, double c2, double s);

SampledFn eigenfunction(const PerturbedOperator& op, std::size_t k,
                        const std::vector<double>& grid);

/// max over the grid of |P u - λ_k u| / (λ_k ‖u‖_∞), derivatives by 5-point
/// central differences evaluated off-grid.
double eigen_residual(const PerturbedOperator& op, std::size_t k,
                      const std::vector<double>& grid);

/// ∫ u_k² e^{2F1} dx over R_+ (quadrature reduction through the weight
/// identity h² e^{2F1} = x^{2σ}); 1 for a normalized eigenfunction.
double eigenfunction_norm_sq(const PerturbedOperator& op, std::size_t k);

/// The x = log y transplant of P to the real line.
struct LogTransformed {
  const PerturbedOperator* op = nullptr;
  /// v_k(x) = sqrt(2) h(e^x) φ_{2k}(e^x).
  double eigenfunction_at(std::size_t k, double x) const;
  /// P1 v = -e^{-2x} v'' - 2(f1(e^x)e^{-x} - e^{-2x}/2) v' + (s²e^{2x} + f2(e^x)) v.
  double apply_at(std::size_t k, double x, double h_fd) const;
  double eigen_residual(std::size_t k, const std::vector<double>& grid) const;
  /// ∫ v_k² e^{2F1(e^x)} e^x dx by composite Simpson; 1 when normalized.
  double norm_sq(std::size_t k) const;
};

LogTransformed log_change_of_variables(const PerturbedOperator& op);

}  // namespace dunkl
