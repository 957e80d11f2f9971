#include "gsqg/symbols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

double t1_prime(const CubicSymbolPoint& pt, double alpha) {
  std::array<double, 3> e{pt.eta1, pt.eta2, pt.eta3};
  // A vanishing argument cancels the terms pairwise; return the exact zero.
  if (e[0] == 0.0 || e[1] == 0.0 || e[2] == 0.0) return 0.0;
  std::sort(e.begin(), e.end());
  const double p = 3.0 - alpha;
  auto f = [p](double x) { return std::pow(std::abs(x), p); };
  const double s = (e[0] + e[1]) + e[2];
  return f(e[0]) + f(e[1]) + f(e[2]) + f(s) - f(e[0] + e[1]) - f(e[0] + e[2]) - f(e[1] + e[2]);
}

namespace {

// \int_Z^inf cos(w z) z^{-nu} dz, nu > 1.
double cosine_tail(double w, double z0, double nu) {
  w = std::abs(w);
  if (w == 0.0) return std::pow(z0, 1.0 - nu) / (nu - 1.0);
  const auto& rule = quad::gauss_legendre(16);
  const double z1 = std::max(z0, 40.0 / w);
  double head = 0.0;
  if (z1 > z0) {
    const auto panels = quad::tail_panels(z0, z1, 1.5, 2.0 / w);
    const double end = panels.back().b;
    head = quad::integrate(panels, rule, [w, nu](double z) { return std::cos(w * z) * std::pow(z, -nu); });
    z0 = end;
  }
  // \int_Z^inf e^{iwz} z^{-nu} = -e^{iwZ}/(iw) Z^{-nu} sum_k (nu)_k / (iwZ)^k
  using C = std::complex<double>;
  const C iwz(0.0, w * z0);
  C term(1.0, 0.0), sum(0.0, 0.0);
  double prev = INFINITY;
  for (int k = 0; k < 80; ++k) {
    const double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    if (mag < 1e-18 * std::abs(sum)) break;
    prev = mag;
    term *= (nu + k) / iwz;
  }
  const C lead = -std::exp(C(0.0, w * z0)) / C(0.0, w) * std::pow(z0, -nu);
  return head + (lead * sum).real();
}

}  // namespace

TnResult tn_quadrature_detailed(std::span<const double> etas_in, int n, double alpha, double tol) {
  if (n != 1 && n != 2) throw InvalidInput("tn_quadrature: n must be 1 or 2");
  if (static_cast<int>(etas_in.size()) != 2 * n + 1)
    throw InvalidInput("tn_quadrature: expected " + std::to_string(2 * n + 1) + " frequencies");
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("tn_quadrature: alpha must lie in (1,2)");
  if (!(tol >= 1e-10)) throw InvalidInput("tn_quadrature: tol must be >= 1e-10");
  std::vector<double> eta(etas_in.begin(), etas_in.end());
  for (double e : eta)
    if (!std::isfinite(e)) throw InvalidInput("tn_quadrature: non-finite frequency");
  std::sort(eta.begin(), eta.end());
  for (double e : eta)
    if (e == 0.0) return {0.0, 0.0, 0.0};

  const int m = 2 * n + 1;
  const double nu = 2.0 * n + 2.0 - alpha;
  double total = 0.0, sumabs = 0.0, etamin = INFINITY;
  for (double e : eta) {
    total += e;
    sumabs += std::abs(e);
    etamin = std::min(etamin, std::abs(e));
  }
  // Re prod (1 - e^{i eta_j z}) = 2^m (-1)^n prod sin(eta_j z/2) sin(S z/2)
  const double prefactor = 2.0 * std::ldexp(1.0, m) * (n % 2 == 0 ? 1.0 : -1.0);
  auto integrand = [&](double z) {
    double p = std::sin(0.5 * total * z);
    for (double e : eta) p *= std::sin(0.5 * e * z);
    return prefactor * p * std::pow(z, -nu);
  };

  const double z_lo = 1e-8 / sumabs, z_1 = 1.0 / sumabs;
  const double z_tail = std::max(2.0 * z_1, 20.0 / etamin);

  // Tail via the subset expansion Re P = sum_S (-1)^{|S|} cos(eta_S z).
  double tail = 0.0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    double w = 0.0;
    int bits = 0;
    for (int j = 0; j < m; ++j)
      if (mask & (1 << j)) {
        w += eta[j];
        ++bits;
      }
    tail += (bits % 2 ? -2.0 : 2.0) * cosine_tail(w, z_tail, nu);
  }

  const auto& fine = quad::gauss_legendre(16);
  const auto& coarse = quad::gauss_legendre(10);
  double achieved = INFINITY;
  for (int level = 0; level < 5; ++level) {
    const double h = std::ldexp(2.0 / sumabs, -level);
    auto panels = quad::geometric_panels(z_lo, z_1, 2.0);
    const auto body = quad::uniform_panels(z_1, z_tail, h);
    panels.insert(panels.end(), body.begin(), body.end());
    const auto est = quad::integrate_pair(panels, fine, coarse, integrand);
    const double value = est.value + tail;
    // Neglected core [0, z_lo]: |f| <= 2 prod|eta| |S| z^alpha.
    double core = 2.0 * std::abs(total) * std::pow(z_lo, alpha + 1.0) / (alpha + 1.0);
    for (double e : eta) core *= std::abs(e);
    achieved = est.error + core + 1e-15 * std::ldexp(1.0, m) * std::pow(z_tail, 1.0 - nu);
    if (achieved <= tol * (1.0 + std::abs(value))) return {value, achieved, 0.0};
  }
  throw AccuracyError("tn_quadrature: tolerance not reached", achieved);
}

double tn_quadrature(std::span<const double> etas, int n, double alpha, double tol) {
  return tn_quadrature_detailed(etas, n, alpha, tol).value;
}

double phase_phi(double xi, double eta1, double eta2, double alpha) {
  const double lo = std::min(eta1, eta2), hi = std::max(eta1, eta2);
  const double p = 1.0 - alpha;
  auto sigma = [p](double x) { return x == 0.0 ? 0.0 : x * std::pow(std::abs(x), p); };
  return sigma(xi - (lo + hi)) + sigma(lo) + sigma(hi) - sigma(xi);
}

double resonance_ratio(double xi, double alpha) {
  if (xi == 0.0) throw DomainError("resonance_ratio: xi must be nonzero");
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("resonance_ratio: alpha must lie in (1,2)");
  const double a = std::pow(3.0, 2.0 - alpha);
  return (a - std::pow(2.0, 3.0 - alpha) + 1.0) / (3.0 - a) * xi;
}

double z_weight(double xi, int r) {
  if (r < 0) throw InvalidInput("z_weight: r must be >= 0");
  const double a = std::abs(xi);
  return a + std::pow(a, r + 3);
}

double rho_cutoff(double t) { return std::pow(t + 1.0, -0.49); }

double scattering_beta(double t, const Params& params) {
  const double r = rho_cutoff(t);
  const double s = lp_psi_integral();
  return -params.theta() * params.A_prime() * s * s * r * r;
}

ScatteringPhase scattering_phase_step(const ScatteringPhase& phase, std::span<const cplx> spectrum, double t,
                                      double dt, const Params& params) {
  const Grid& g = phase.grid;
  if (static_cast<int>(spectrum.size()) != g.size())
    throw GridMismatch("scattering_phase_step: spectrum does not match the phase grid");
  if (std::abs(phase.time - t) > 1e-12 * std::max(1.0, std::abs(t)))
    throw InvalidInput("scattering_phase_step: phase time does not match t");
  const double beta = scattering_beta(t, params);
  const double density = g.length() / (2.0 * std::numbers::pi);
  ScatteringPhase out = phase;
  for (int k = 0; k < g.size(); ++k) {
    if (k == 0 || k == g.nyquist_index()) continue;
    const double xi = g.frequency(k);
    const double a = std::abs(xi);
    // T1'(xi,xi,-xi) = T1'(xi,-xi,xi) = T1'(-xi,xi,xi), even in xi.
    const double sym = t1_prime({a, a, -a}, params.alpha());
    // Hermitian average: |c(xi)|^2 and |c(-xi)|^2 agree for real fields up to
    // transform round-off; averaging keeps Theta exactly odd.
    const int mirror = g.size() - k;
    const double mag2 = 0.5 * (std::norm(spectrum[k]) + std::norm(spectrum[mirror])) * density * density;
    out.theta[k] += dt * xi * 3.0 * beta * sym * mag2;
  }
  out.time = t + dt;
  return out;
}

}  // namespace gsqg
