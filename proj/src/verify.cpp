#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "gsqg/cli.hpp"
#include "gsqg/constants.hpp"
#include "gsqg/contourfield.hpp"
#include "gsqg/diagnostics.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/rhs.hpp"
#include "gsqg/symbols.hpp"

namespace gsqg {

namespace {

using std::numbers::pi;

// Lanczos (g = 7, n = 9) with reflection; does not go through std::tgamma.
double lanczos_gamma(double z) {
  static const double c[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  double x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

struct Check {
  const char* name;
  double threshold;
  bool minimum;
  std::function<std::pair<double, std::string>()> measure;
};

Spectrum random_spectrum(const Grid& g, int kmax, std::mt19937_64& rng, double amp) {
  std::normal_distribution<double> nd;
  Spectrum c(g.size(), cplx(0.0, 0.0));
  for (int m = 1; m <= kmax; ++m) {
    const cplx z(nd(rng), nd(rng));
    c[g.index(m)] = amp * z;
    c[g.index(-m)] = std::conj(amp * z);
  }
  return c;
}

double l2(const Spectrum& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

std::vector<std::pair<std::string, std::vector<Check>>> suite() {
  std::vector<std::pair<std::string, std::vector<Check>>> s;

  s.push_back({"constants",
               {
                   {"constants.A", 1e-10, false, [] { return std::pair{std::abs(compute_A(1.5) - std::sqrt(2 * pi)), std::string("|A(1.5) - sqrt(2 pi)|")}; }},
                   {"constants.c1", 0.0, false,
                    [] {
                      double worst = 0.0;
                      for (int i = 0; i < 10; ++i) {
                        const double a = 1.05 + 0.1 * i;
                        worst = std::max(worst, std::abs(compute_cn(a, 1) - (a / 2 - 1)));
                      }
                      return std::pair{worst, std::string("max |c1 - (alpha/2 - 1)| over 10 alpha")};
                    }},
                   {"constants.Aprime", 1e-12, false,
                    [] { return std::pair{std::abs(compute_Aprime(1.5) + compute_A(1.5) / 9), std::string("|A'(1.5) + A/9|")}; }},
                   {"constants.Cprime", 1e-6, false,
                    [] {
                      const double g34 = lanczos_gamma(0.75);
                      const double ref = -(1 / std::sqrt(pi)) * std::sin(0.75 * pi) * lanczos_gamma(-0.25) * g34;
                      return std::pair{std::abs(compute_Cprime(1.5) - ref),
                                       "|C'(1.5) - Lanczos path|, C'(1.5) = " + format_number(compute_Cprime(1.5))};
                    }},
               }});

  s.push_back({"symbols",
               {
                   {"symbols.t1_relation", 1e-6, false,
                    [] {
                      std::mt19937_64 rng(2024);
                      std::uniform_real_distribution<double> mag(0.1, 10.0);
                      std::bernoulli_distribution sign(0.5);
                      double worst = 0.0;
                      for (double a : {1.25, 1.5, 1.75}) {
                        const double A = compute_A(a);
                        for (int i = 0; i < 50; ++i) {
                          double e[3];
                          for (auto& x : e) x = (sign(rng) ? -1 : 1) * mag(rng);
                          const double ref = A * t1_prime({e[0], e[1], e[2]}, a) / ((2 - a) * (3 - a));
                          worst = std::max(worst, std::abs(tn_quadrature(e, 1, a) - ref) / std::abs(ref));
                        }
                      }
                      return std::pair{worst, std::string("max relative error, 50 points x 3 alpha")};
                    }},
                   {"symbols.t1_zero", 0.0, false,
                    [] {
                      double worst = 0.0;
                      for (double x : {0.3, -1.7, 4.0}) {
                        worst = std::max(worst, std::abs(t1_prime({0.0, x, 1.1}, 1.5)));
                        worst = std::max(worst, std::abs(t1_prime({x, 0.0, -2.0}, 1.3)));
                        worst = std::max(worst, std::abs(t1_prime({x, 0.9, 0.0}, 1.8)));
                      }
                      return std::pair{worst, std::string("max |T1'| with a zero argument")};
                    }},
                   {"symbols.resonance_zero", 1e-12, false,
                    [] {
                      std::mt19937_64 rng(3);
                      std::uniform_real_distribution<double> u(-4, 4);
                      double worst = 0.0;
                      for (int i = 0; i < 20; ++i) {
                        const double xi = u(rng);
                        worst = std::max(worst, std::abs(phase_phi(xi, xi, xi, 1.5)));
                      }
                      return std::pair{worst, std::string("max |Phi(xi, xi, xi)| over 20 xi")};
                    }},
                   {"symbols.resonance_ratio", 1e-6, false,
                    [] { return std::pair{std::abs(resonance_ratio(1, 1.5) + 0.0760094), std::string("|ratio(1, 1.5) + 0.0760094|")}; }},
                   {"symbols.quotient_order", 1.9, true,
                    [] {
                      double worst = INFINITY;
                      for (double a : {1.3, 1.5, 1.8}) {
                        const double xi = 1.0, target = resonance_ratio(xi, a);
                        double prev = 0;
                        for (int i = 0; i < 4; ++i) {
                          const double d = 0.1 / (1 << i);
                          const double e1 = xi / 3 + d, e2 = xi / 3 + 0.5 * d;
                          const double err = std::abs(t1_prime({e1, e2, xi - e1 - e2}, a) / phase_phi(xi, e1, e2, a) - target);
                          if (i > 0) worst = std::min(worst, std::log2(prev / err));
                          prev = err;
                        }
                      }
                      return std::pair{worst, std::string("minimum observed order under halving")};
                    }},
               }});

  s.push_back({"rhs",
               {
                   {"rhs.cubic_equivalence", 1e-8, false,
                    [] {
                      const Grid g(64, 11.0);
                      std::mt19937_64 rng(11);
                      double worst = 0.0;
                      for (double a : {1.25, 1.5, 1.75}) {
                        const Params p(a);
                        for (int f = 0; f < 10; ++f) {
                          const auto phi = FrontState::from_spectrum(g, random_spectrum(g, 20, rng, 0.05));
                          const Spectrum r = cubic_spectral_rhs(phi, p).spectrum();
                          const Spectrum o = cubic_convolution_oracle(phi, p).spectrum();
                          Spectrum d(r.size());
                          for (std::size_t k = 0; k < r.size(); ++k) d[k] = r[k] - o[k];
                          worst = std::max(worst, l2(d) / l2(o));
                        }
                      }
                      return std::pair{worst, std::string("max relative L2 error, N=64, 10 fields x 3 alpha")};
                    }},
                   {"rhs.cubic_K", 1e-10, false,
                    [] {
                      const Grid g(32, 9.0);
                      std::mt19937_64 rng(20240611);
                      double worst = 0.0;
                      for (double a : {1.25, 1.5, 1.75}) {
                        const Params p(a);
                        double lo = INFINITY, hi = -INFINITY;
                        for (int f = 0; f < 10; ++f) {
                          const auto phi = FrontState::from_spectrum(g, random_spectrum(g, 15, rng, 1.0));
                          const Spectrum b = cubic_bracket(phi, a).spectrum();
                          const Spectrum o = cubic_convolution_oracle(phi, p).spectrum();
                          cplx num = 0.0;
                          double den = 0.0;
                          for (int k = 0; k < g.size(); ++k) {
                            num += std::conj(b[k]) * o[k];
                            den += std::norm(b[k]);
                          }
                          const double k_fit = (num / den).real();
                          lo = std::min(lo, k_fit);
                          hi = std::max(hi, k_fit);
                        }
                        worst = std::max(worst, (hi - lo) / std::abs(p.cubic_K()));
                        worst = std::max(worst, std::abs(0.5 * (hi + lo) - p.cubic_K()) / std::abs(p.cubic_K()));
                      }
                      return std::pair{worst, std::string("relative spread of the fitted K over 10 fields x 3 alpha")};
                    }},
                   {"rhs.series_order", 4.5, true,
                    [] {
                      const Params p(1.5);
                      const Grid g(64, 2 * pi);
                      double prev = 0.0, worst = INFINITY;
                      for (int i = 0; i < 3; ++i) {
                        const double a = 1e-2 / (1 << i);
                        const auto s = FrontState::from_function(g, [a](double x) { return a * std::cos(x); });
                        const auto c = contour_rhs(s, p);
                        const auto q = cubic_spectral_rhs(s, p);
                        double e = 0.0;
                        for (int j = 0; j < g.size(); ++j) e += std::pow(c[j] - q[j], 2);
                        e = std::sqrt(e);
                        if (i > 0) worst = std::min(worst, std::log2(prev / e));
                        prev = e;
                      }
                      return std::pair{worst, std::string("amplitude order of contour - cubic under halving")};
                    }},
               }});

  s.push_back({"contourfield",
               {
                   {"contourfield.scaleid", 1e-8, false,
                    [] {
                      double worst = 0.0;
                      for (double a : {1.15, 1.3, 1.5, 1.7, 1.85})
                        for (double c : {0.25, 0.6, 1.7, 4.0}) worst = std::max(worst, scaleid_check(c, a).gap);
                      return std::pair{worst, std::string("max gap over 20 (alpha, c) pairs")};
                    }},
                   {"contourfield.kinematic", 1e-4, false,
                    [] {
                      const RunConfig cfg = preset("kinematic");
                      const Params p(cfg.alpha, cfg.theta);
                      const FrontState phi = initial_state(cfg);
                      const FrontGeometry geom(phi, FrontGeometry::default_offset(phi), p);
                      const auto rhs = full_rhs(phi, p, RhsMode::kContour, cfg.stepper.quad);
                      return std::pair{kinematic_residual(geom, rhs, cfg.stepper.quad),
                                       std::string("kinematic residual on the kinematic preset")};
                    }},
               }});
  return s;
}

}  // namespace

std::vector<std::string> verify_groups() { return {"constants", "symbols", "rhs", "contourfield"}; }

std::vector<CheckResult> verify_suite(const VerifyOptions& opts) {
  const auto known = verify_groups();
  for (const auto& g : opts.groups)
    if (std::find(known.begin(), known.end(), g) == known.end())
      throw InvalidInput("verify: unknown group '" + g + "'");
  std::vector<CheckResult> out;
  for (const auto& [group, checks] : suite()) {
    if (!opts.groups.empty() && std::find(opts.groups.begin(), opts.groups.end(), group) == opts.groups.end())
      continue;
    for (const auto& c : checks) {
      CheckResult r{c.name, 0.0, c.threshold, c.minimum, false, ""};
      try {
        auto [value, detail] = c.measure();
        if (auto it = opts.tamper.find(c.name); it != opts.tamper.end()) {
          value += it->second;
          detail += " (tampered)";
        }
        r.measured = value;
        r.detail = detail;
        r.passed = c.minimum ? value >= c.threshold : value <= c.threshold;
      } catch (const Error& e) {
        r.measured = NAN;
        r.detail = std::string(e.kind()) + ": " + e.what();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace gsqg
