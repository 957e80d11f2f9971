#include "gsqg/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"

namespace gsqg {
namespace {
void require_alpha(double alpha, const char* who) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw DomainError(std::string(who) + ": alpha must lie in (1,2), got " + std::to_string(alpha));
}
}  // namespace

double gamma_fn(double z) {
  if (!std::isfinite(z)) throw DomainError("gamma: non-finite argument");
  if (z <= 0.0 && z == std::floor(z)) throw DomainError("gamma: pole at non-positive integer");
  double scale = 1.0;
  while (z < 0.0) {
    scale /= z;
    z += 1.0;
  }
  return scale * std::tgamma(z);
}

double compute_A(double alpha) {
  require_alpha(alpha, "compute_A");
  return 2.0 * std::sin(std::numbers::pi * alpha / 2.0) * gamma_fn(alpha - 1.0);
}

double compute_g_alpha(double alpha) {
  require_alpha(alpha, "compute_g_alpha");
  return gamma_fn(1.0 - alpha / 2.0) / (std::pow(2.0, alpha) * std::numbers::pi * gamma_fn(alpha / 2.0));
}

double compute_cn(double alpha, int n) {
  require_alpha(alpha, "compute_cn");
  if (n < 1) throw DomainError("compute_cn: n must be >= 1");
  double c = 1.0;
  for (int j = 1; j <= n; ++j) c *= (alpha / 2.0 - j) / j;
  return c;
}

double compute_Aprime(double alpha) { return -compute_A(alpha) / (6.0 * (3.0 - alpha)); }

double compute_Cprime(double alpha) {
  require_alpha(alpha, "compute_Cprime");
  return -(1.0 / std::sqrt(std::numbers::pi)) * std::sin(std::numbers::pi * alpha / 2.0) *
         gamma_fn((1.0 - alpha) / 2.0) * gamma_fn(alpha / 2.0);
}

double scaleid_constant(double alpha) {
  require_alpha(alpha, "scaleid_constant");
  return std::sqrt(std::numbers::pi) * gamma_fn((1.0 - alpha) / 2.0) / (2.0 * gamma_fn(1.0 - alpha / 2.0));
}

Params::Params(double alpha, double theta) : alpha_(alpha), theta_(theta) {
  require_alpha(alpha, "params");
  if (!std::isfinite(theta)) throw DomainError("params: theta must be finite");
  A_ = compute_A(alpha);
  g_alpha_ = compute_g_alpha(alpha);
  A_prime_ = compute_Aprime(alpha);
  C_prime_ = compute_Cprime(alpha);
}

}  // namespace gsqg
