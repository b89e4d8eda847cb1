#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dunkl {

// Error taxonomy shared by all modules. Everything derives from
// std::runtime_error so callers can catch coarsely or by exact type.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};
struct ParityError : std::runtime_error {
  explicit ParityError(const std::string& msg) : std::runtime_error(msg) {}
};
struct SingularPoint : std::runtime_error {
  explicit SingularPoint(const std::string& msg) : std::runtime_error(msg) {}
};
struct GridAsymmetric : std::runtime_error {
  explicit GridAsymmetric(const std::string& msg) : std::runtime_error(msg) {}
};
struct NearZeroDivision : std::runtime_error {
  explicit NearZeroDivision(const std::string& msg) : std::runtime_error(msg) {}
};
struct DegreeTooHigh : std::runtime_error {
  explicit DegreeTooHigh(const std::string& msg) : std::runtime_error(msg) {}
};
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};
struct RegimeError : std::runtime_error {
  explicit RegimeError(const std::string& msg) : std::runtime_error(msg) {}
};
struct BadFamily : std::runtime_error {
  explicit BadFamily(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameters of the weight |x|^{2σ} e^{-s x²}. Valid iff σ > -1/2 and s > 0.
struct Params {
  double sigma;
  double s;

  /// Total mass of the weight, μ0 = s^{-(σ+1/2)} Γ(σ+1/2).
  double mu0() const {
    return std::exp(-(sigma + 0.5) * std::log(s) + std::lgamma(sigma + 0.5));
  }

  /// First orthonormal polynomial, p0 = μ0^{-1/2}.
  double p0() const {
    return std::exp(0.5 * ((sigma + 0.5) * std::log(s) - std::lgamma(sigma + 0.5)));
  }
};

inline Params make_params(double sigma, double s) {
  if (!(sigma > -0.5))
    throw DomainError("make_params: sigma must be > -1/2, got " + std::to_string(sigma));
  if (!(s > 0.0))
    throw DomainError("make_params: s must be > 0, got " + std::to_string(s));
  return Params{sigma, s};
}

/// Eigenvalue of the oscillator on the k-th basis function: (2k+1+2σ)s.
inline double eigenvalue(const Params& p, std::size_t k) {
  return (2.0 * static_cast<double>(k) + 1.0 + 2.0 * p.sigma) * p.s;
}

// Evaluations above this index still run but carry a precision caveat; the
// scaled recurrence itself stays finite far beyond.
inline constexpr std::size_t kIndexSoftLimit = 5000;

}  // namespace dunkl
