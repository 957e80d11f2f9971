#pragma once

// Model parameters and the alpha-dependent constants of the front equation.

namespace gsqg {

/// Gamma function on the real line. Arguments in (-1, 0) and below are reduced
/// by the recurrence Gamma(z) = Gamma(z + 1) / z; non-positive integers throw.
double gamma_fn(double z);

/// 2 sin(pi alpha / 2) Gamma(alpha - 1)
double compute_A(double alpha);
/// Gamma(1 - alpha/2) / (2^alpha pi Gamma(alpha/2))
double compute_g_alpha(double alpha);
/// Gamma(alpha/2) / (n! Gamma(alpha/2 - n)) = (1/n!) prod_{j=1..n} (alpha/2 - j)
double compute_cn(double alpha, int n);
/// -A / (6 (3 - alpha))
double compute_Aprime(double alpha);
/// -(1/sqrt(pi)) sin(pi alpha / 2) Gamma((1 - alpha)/2) Gamma(alpha/2)
double compute_Cprime(double alpha);
/// sqrt(pi) Gamma((1 - alpha)/2) / (2 Gamma(1 - alpha/2))
double scaleid_constant(double alpha);

/// Ratio between the prefactor K of the physical-space cubic bracket and
/// theta * A'. Obtained by least-squares calibration against the direct
/// frequency-sum evaluation (tools/calibrate_cubic) and frozen here.
inline constexpr double kCubicBracketFactor = 3.0;

class Params {
 public:
  explicit Params(double alpha, double theta = -1.0);

  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }
  double A() const noexcept { return A_; }
  double g_alpha() const noexcept { return g_alpha_; }
  double A_prime() const noexcept { return A_prime_; }
  double C_prime() const noexcept { return C_prime_; }
  double c(int n) const { return compute_cn(alpha_, n); }
  /// Prefactor of d_x{phi^2 |d|^{3-a} phi - phi |d|^{3-a}(phi^2) + |d|^{3-a}(phi^3)/3}.
  double cubic_K() const noexcept { return kCubicBracketFactor * theta_ * A_prime_; }

 private:
  double alpha_;
  double theta_;
  double A_;
  double g_alpha_;
  double A_prime_;
  double C_prime_;
};

}  // namespace gsqg
