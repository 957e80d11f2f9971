#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "doctest.h"
#include "gsqg/errors.hpp"
#include "gsqg/spectral.hpp"
#include "oracles.hpp"

using namespace gsqg;
using std::numbers::pi;

TEST_CASE("grid validates size and length") {
  CHECK_THROWS_AS(Grid(7, 1.0), InvalidInput);
  CHECK_THROWS_AS(Grid(6, 1.0), InvalidInput);
  CHECK_THROWS_AS(Grid(16, 0.0), InvalidInput);
  CHECK_THROWS_AS(Grid(16, -1.0), InvalidInput);
  Grid g(16, 2 * pi);
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(8) == 8);
  CHECK(g.mode(9) == -7);
  int zeros = 0;
  for (int k = 0; k < g.size(); ++k) zeros += g.mode(k) == 0;
  CHECK(zeros == 1);
  for (int m = -7; m <= 7; ++m) CHECK(g.mode(g.index(m)) == m);
}

TEST_CASE("zero field has zero spectrum") {
  Grid g(32, 10.0);
  FrontState s(g, std::vector<double>(32, 0.0));
  for (auto c : s.spectrum()) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("single cosine gives two equal coefficients") {
  Grid g(64, 7.0);
  auto s = FrontState::from_function(g, [&](double x) { return std::cos(2 * pi * x / g.length()); });
  const auto& c = s.spectrum();
  for (int k = 0; k < g.size(); ++k) {
    if (std::abs(g.mode(k)) == 1)
      CHECK(std::abs(c[k] - 0.5) < 1e-15);
    else
      CHECK(std::abs(c[k]) < 1e-15);
  }
}

TEST_CASE("forward transform matches direct DFT, Hermitian, Parseval, round trip") {
  Grid g(64, 5.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  std::vector<double> v(64);
  for (auto& x : v) x = nd(rng);
  FrontState s(g, v);
  const auto& c = s.spectrum();
  const auto ref = oracle::direct_dft(v);
  CHECK(oracle::rel_l2(c, ref) < 1e-13);
  for (int m = 1; m < 32; ++m) CHECK(std::abs(c[g.index(m)] - std::conj(c[g.index(-m)])) < 1e-14);
  double space = 0, freq = 0;
  for (double x : v) space += x * x * g.dx();
  for (auto z : c) freq += std::norm(z) * g.length();
  CHECK(std::abs(space - freq) / space < 1e-12);
  const auto back = transform_inverse(c);
  CHECK(oracle::rel_l2(back, v) < 1e-12);
}

TEST_CASE("non-finite samples are rejected") {
  Grid g(16, 1.0);
  std::vector<double> v(16, 0.0);
  v[3] = std::numeric_limits<double>::quiet_NaN();
  FrontState s(g, v);
  CHECK_THROWS_AS(s.spectrum(), InvalidInput);
  v[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(transform_forward(v), InvalidInput);
}

TEST_CASE("fractional derivative examples") {
  Grid g(64, 2 * pi);
  auto phi = FrontState(g, oracle::random_field(g, 20, 3));
  auto same = fractional_derivative(phi, 0.0);
  CHECK(oracle::rel_l2(same.values(), phi.values()) < 1e-14);

  auto c4 = FrontState::from_function(g, [](double x) { return std::cos(4 * x); });
  auto lap = fractional_derivative(c4, 2.0);
  for (int j = 0; j < g.size(); ++j) CHECK(std::abs(lap[j] - 16 * std::cos(4 * g.x(j))) < 1e-12);
  auto half = fractional_derivative(c4, 1.0 - 1.5);
  for (int j = 0; j < g.size(); ++j) CHECK(std::abs(half[j] - 0.5 * std::cos(4 * g.x(j))) < 1e-14);
}

TEST_CASE("fractional derivative inverse pairs on mean-zero fields") {
  Grid g(128, 20.0);
  auto phi = FrontState(g, oracle::random_field(g, 40, 5));
  for (double s : {0.5, -0.5, 0.5, -0.5, 1.25 - 1.0, -(1.75 - 1.0)}) {
    auto back = fractional_derivative(fractional_derivative(phi, s), -s);
    CHECK(oracle::rel_l2(back.values(), phi.values()) < 1e-10);
  }
}

TEST_CASE("zero mode of negative-order multipliers is zero") {
  Grid g(16, 1.0);
  auto one = FrontState(g, std::vector<double>(16, 1.0));
  auto r = fractional_derivative(one, -0.3);
  CHECK(oracle::max_abs(r.values()) == 0.0);
}

TEST_CASE("derivative of a mode") {
  Grid g(32, 2 * pi);
  auto s = FrontState::from_function(g, [](double x) { return std::sin(3 * x); });
  auto d = derivative(s, 1);
  for (int j = 0; j < 32; ++j) CHECK(std::abs(d[j] - 3 * std::cos(3 * g.x(j))) < 1e-13);
}

TEST_CASE("LP blocks: dyadic scaling, support, partition of unity") {
  for (double xi : {0.3, 1.0, 1.3, 1.5, 2.2, 3.1, 17.0}) {
    for (int k = -4; k < 6; ++k) CHECK(lp_psi_k(xi, k) == lp_psi_k(std::ldexp(xi, -k), 0));
  }
  CHECK(lp_psi(1.25) == 1.0);
  CHECK(lp_psi(1.6) == 0.0);
  CHECK(lp_psi(1.4) > 0.0);
  CHECK(lp_psi(1.4) < 1.0);
  Grid g(512, 100 * pi);
  const auto r = lp_range(g);
  for (int k = 1; k < g.size() / 2; ++k) {
    const double xi = g.frequency(k);
    double sum = lp_psi_le(xi, r.low);
    for (int b = r.low + 1; b <= r.high; ++b) sum += lp_psi_k(xi, b);
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(lp_psi_le(xi, r.low) == 0.0);
  }
}

TEST_CASE("LP projections") {
  Grid g(64, 2 * pi);
  auto mode = FrontState::from_function(g, [](double x) { return std::cos(x); });
  // psi_0(1) = psi(1) - psi(2) = 1
  auto p0 = lp_project(mode, 0);
  CHECK(oracle::rel_l2(p0.values(), mode.values()) < 1e-15);
  auto p3 = lp_project(mode, 3);
  CHECK(oracle::max_abs(p3.values()) < 1e-15);

  Grid big(256, 60.0);
  auto phi = FrontState(big, oracle::random_field(big, 120, 8));
  const auto r = lp_range(big);
  std::vector<double> sum(big.size(), 0.0);
  auto low = lp_project_low(phi, r.low);
  for (int j = 0; j < big.size(); ++j) sum[j] = low[j];
  double e2 = std::pow(lp_energy_low(phi, r.low), 2);
  for (int k = r.low + 1; k <= r.high; ++k) {
    auto pk = lp_project(phi, k);
    for (int j = 0; j < big.size(); ++j) sum[j] += pk[j];
    e2 += std::pow(lp_energy(phi, k), 2);
  }
  CHECK(oracle::rel_l2(sum, phi.values()) < 1e-10);
  double l2 = 0;
  for (double v : phi.values()) l2 += v * v * big.dx();
  CHECK(std::abs(e2 - l2) / l2 < 1e-12);
}

TEST_CASE("dealiased triple product") {
  Grid g(64, 2 * pi);
  auto c = FrontState::from_function(g, [](double x) { return std::cos(5 * x); });
  auto p = dealias_product(c, c, c);
  for (int j = 0; j < 64; ++j) {
    const double x = g.x(j);
    CHECK(std::abs(p[j] - (3 * std::cos(5 * x) + std::cos(15 * x)) / 4) < 1e-14);
  }
  auto one = FrontState(g, std::vector<double>(64, 1.0));
  auto phi = FrontState(g, oracle::random_field(g, 31, 2));
  auto q = dealias_product(one, one, phi);
  CHECK(oracle::rel_l2(q.values(), phi.values()) < 1e-14);

  // Full-band random inputs: product equals the direct convolution on |m| < N/2.
  auto a = FrontState(g, oracle::random_field(g, 31, 21));
  auto b = FrontState(g, oracle::random_field(g, 31, 22));
  auto d = FrontState(g, oracle::random_field(g, 31, 23));
  auto prod = dealias_product(a, b, d);
  const auto ref = oracle::direct_triple(g, a.spectrum(), b.spectrum(), d.spectrum());
  CHECK(oracle::rel_l2(prod.spectrum(), ref) < 1e-12);

  Grid other(32, 2 * pi);
  CHECK_THROWS_AS(dealias_product(a, FrontState(other, std::vector<double>(32, 0.0)), a), GridMismatch);
}

TEST_CASE("spectrum cache is shared and thread-safe") {
  Grid g(256, 3.0);
  FrontState s(g, oracle::random_field(g, 100, 4));
  std::vector<std::thread> ts;
  std::vector<const Spectrum*> ptrs(8);
  for (int i = 0; i < 8; ++i) ts.emplace_back([&, i] { ptrs[i] = &s.spectrum(); });
  for (auto& t : ts) t.join();
  for (auto* p : ptrs) CHECK(p == ptrs[0]);
}
