#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gsqg/constants.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/symbols.hpp"

using namespace gsqg;

TEST_CASE("t1_prime examples") {
  CHECK(t1_prime({1.7, 0.0, -0.4}, 1.5) == 0.0);
  CHECK(t1_prime({0.0, 3.0, 2.0}, 1.3) == 0.0);
  CHECK(std::abs(t1_prime({1, 1, -1}, 1.5) - (4 - std::pow(2.0, 1.5))) < 1e-14);
  CHECK(std::abs(t1_prime({1, 1, -1}, 1.5) - 1.1715729) < 1e-7);
  CHECK(std::abs(t1_prime({2, 2, -2}, 1.5) - 3.3137085) < 1e-7);
  for (double a : {1.2, 1.6}) {
    const double xi = 0.7;
    CHECK(std::abs(t1_prime({xi, xi, -xi}, a) - (4 - std::pow(2.0, 3 - a)) * std::pow(xi, 3 - a)) < 1e-14);
  }
}

TEST_CASE("t1_prime is bit-identical under permutations") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    double e[3] = {u(rng), u(rng), u(rng)};
    std::sort(e, e + 3);
    const double ref = t1_prime({e[0], e[1], e[2]}, 1.37);
    do {
      CHECK(t1_prime({e[0], e[1], e[2]}, 1.37) == ref);
    } while (std::next_permutation(e, e + 3));
  }
}

TEST_CASE("tn_quadrature n=1 against the closed form") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mag(0.1, 10.0);
  std::bernoulli_distribution sign(0.5);
  for (double a : {1.25, 1.5, 1.75}) {
    const double A = compute_A(a);
    for (int i = 0; i < 50; ++i) {
      double e[3];
      for (auto& x : e) x = (sign(rng) ? -1 : 1) * mag(rng);
      const double ref = A * t1_prime({e[0], e[1], e[2]}, a) / ((2 - a) * (3 - a));
      const double got = tn_quadrature(e, 1, a);
      CHECK(std::abs(got - ref) <= 1e-6 * std::abs(ref));
    }
  }
  const double e[3] = {1, 1, -1};
  CHECK(std::abs(tn_quadrature(e, 1, 1.5) - 3.91559692653592) < 1e-9);
  const double p1[3] = {1, 2, -0.5}, p2[3] = {-0.5, 1, 2};
  CHECK(tn_quadrature(p1, 1, 1.5) == tn_quadrature(p2, 1, 1.5));
  const double z[3] = {1, 0, 2};
  CHECK(tn_quadrature(z, 1, 1.5) == 0.0);
}

TEST_CASE("tn_quadrature input validation") {
  const double e3[3] = {1, 2, 3};
  CHECK_THROWS_AS(tn_quadrature(e3, 2, 1.5), InvalidInput);
  CHECK_THROWS_AS(tn_quadrature(e3, 1, 1.5, 1e-12), InvalidInput);
  CHECK_THROWS_AS(tn_quadrature(e3, 1, 2.5), DomainError);
}

namespace {
// prod of the 2n smallest |eta| times |eta_(2n)|^{1-alpha}
double case2_scale(std::vector<double> e, double a) {
  std::sort(e.begin(), e.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  double p = 1;
  for (int k = 0; k < 4; ++k) p *= std::abs(e[k]);
  return p * std::pow(std::abs(e[3]), 1 - a);
}

std::vector<double> case2_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.2, 5.0);
  std::bernoulli_distribution sign(0.5);
  for (;;) {
    std::vector<double> e(5);
    for (auto& x : e) x = (sign(rng) ? -1 : 1) * mag(rng);
    std::vector<double> s = e;
    std::sort(s.begin(), s.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    if (std::abs(s[3]) >= 3.0 / 200.0 * std::abs(s[4])) return e;
  }
}
}  // namespace

TEST_CASE("tn_quadrature n=2: zeros and the Case II bound") {
  const double z[5] = {1, -2, 0, 0.5, 3};
  CHECK(tn_quadrature(z, 2, 1.5) == 0.0);
  for (double a : {1.3, 1.7}) {
    std::mt19937_64 cal(7), chk(8);
    double c_fit = 0;
    for (int i = 0; i < 30; ++i) {
      auto e = case2_point(cal);
      c_fit = std::max(c_fit, std::abs(tn_quadrature(e, 2, a)) / case2_scale(e, a));
    }
    const double frozen = 1.5 * c_fit;
    for (int i = 0; i < 30; ++i) {
      auto e = case2_point(chk);
      CHECK(std::abs(tn_quadrature(e, 2, a)) <= frozen * case2_scale(e, a));
    }
  }
}

TEST_CASE("phase_phi") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 20; ++i) {
    const double xi = u(rng);
    CHECK(std::abs(phase_phi(xi, xi, xi, 1.5)) <= 1e-12);
    CHECK(std::abs(phase_phi(xi, xi, -xi, 1.5)) <= 1e-12);
    CHECK(std::abs(phase_phi(xi, -xi, xi, 1.5)) <= 1e-12);
    const double e1 = u(rng), e2 = u(rng);
    CHECK(phase_phi(xi, e1, e2, 1.4) == phase_phi(xi, e2, e1, 1.4));
  }
  CHECK(std::abs(phase_phi(1, 1.0 / 3, 1.0 / 3, 1.5) - (3 * std::sqrt(1.0 / 3) - 1)) < 1e-14);
  CHECK(std::abs(phase_phi(1, 1.0 / 3, 1.0 / 3, 1.5) - 0.7320508) < 1e-7);
  CHECK(phase_phi(0, 0, 0, 1.5) == 0.0);
}

TEST_CASE("resonance ratio and convergence of the quotient") {
  CHECK(std::abs(resonance_ratio(1, 1.5) - (-0.0760094)) < 1e-6);
  CHECK(resonance_ratio(2, 1.5) == 2 * resonance_ratio(1, 1.5));
  CHECK_THROWS_AS(resonance_ratio(0, 1.5), DomainError);
  for (double a : {1.3, 1.5, 1.8}) {
    const double xi = 1.0, target = resonance_ratio(xi, a);
    double prev = 0;
    for (int i = 0; i < 4; ++i) {
      const double d = 0.1 / (1 << i);
      const double e1 = xi / 3 + d, e2 = xi / 3 + 0.5 * d;
      const double q = t1_prime({e1, e2, xi - e1 - e2}, a) / phase_phi(xi, e1, e2, a);
      const double err = std::abs(q - target);
      if (i > 0) CHECK(std::log2(prev / err) >= 1.9);
      prev = err;
    }
  }
}

TEST_CASE("z_weight") {
  CHECK(z_weight(1, 0) == 2);
  CHECK(z_weight(1, 8) == 2);
  CHECK(z_weight(2, 8) == 2050);
  CHECK(z_weight(0, 8) == 0);
  CHECK(z_weight(-2, 8) == 2050);
  CHECK_THROWS_AS(z_weight(1, -1), InvalidInput);
}

TEST_CASE("scattering phase step") {
  Params p(1.5);
  Grid g(64, 20.0);
  ScatteringPhase ph(g);
  Spectrum zero(64, cplx(0, 0));
  auto same = scattering_phase_step(ph, zero, 0.0, 0.1, p);
  for (double v : same.theta) CHECK(v == 0.0);
  CHECK(same.time == doctest::Approx(0.1));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  std::vector<double> vals(64);
  for (auto& v : vals) v = nd(rng);
  FrontState s(g, vals);
  auto one = scattering_phase_step(ph, s.spectrum(), 0.0, 0.1, p);
  for (int m = 1; m < 32; ++m) CHECK(one.theta[g.index(m)] == -one.theta[g.index(-m)]);

  // single mode increment
  Spectrum single(64, cplx(0, 0));
  const int m0 = 3;
  single[g.index(m0)] = cplx(0.01, 0.02);
  single[g.index(-m0)] = cplx(0.01, -0.02);
  const double dt = 0.25, t = 2.0;
  ScatteringPhase at_t(g);
  at_t.time = t;
  auto inc = scattering_phase_step(at_t, single, t, dt, p);
  const double xi0 = g.frequency(m0);
  const double dens = g.length() / (2 * std::numbers::pi);
  const double c = std::norm(single[g.index(m0)]) * dens * dens;
  const double beta = scattering_beta(t, p);
  const double expect = dt * xi0 * 3 * beta * (4 - std::pow(2.0, 1.5)) * std::pow(xi0, 1.5) * c;
  CHECK(std::abs(inc.theta[g.index(m0)] - expect) < 1e-14 * std::abs(expect) + 1e-300);
  CHECK(t1_prime({xi0, xi0, -xi0}, 1.5) == t1_prime({xi0, -xi0, xi0}, 1.5));
  CHECK(std::abs(beta - p.A_prime() * std::pow(2.85, 2) * std::pow(3.0, -0.98)) < 1e-14);

  CHECK_THROWS_AS(scattering_phase_step(ph, Spectrum(32), 0.0, 0.1, p), GridMismatch);
  CHECK_THROWS_AS(scattering_phase_step(ph, zero, 1.0, 0.1, p), InvalidInput);
}
