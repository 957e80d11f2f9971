#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gsqg/diagnostics.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/evolve.hpp"
#include "gsqg/rhs.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace gsqg;
using std::numbers::pi;

namespace {
// Direct synthesis of d^j/dx^j of the trigonometric interpolant at x.
double synth(const Grid& g, const Spectrum& c, int j, double x) {
  std::complex<long double> s = 0;
  for (int k = 0; k < g.size(); ++k) {
    if (k == g.nyquist_index()) continue;
    const long double xi = g.frequency(k);
    s += static_cast<std::complex<long double>>(c[k]) * std::pow(std::complex<long double>(0, xi), j) *
         std::exp(std::complex<long double>(0, xi * x));
  }
  return static_cast<double>(s.real());
}
}  // namespace

TEST_CASE("sobolev norm") {
  Grid g(64, 2 * pi);
  CHECK(sobolev_norm(FrontState(g, std::vector<double>(64, 0.0)), 2.0) == 0.0);
  auto c = FrontState::from_function(g, [](double x) { return std::cos(5 * x); });
  const double l2 = sobolev_norm(c, 0.0);
  CHECK(l2 == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  for (double s : {1.0, 2.0, 4.0, -0.5})
    CHECK(std::pow(sobolev_norm(c, s), 2) == doctest::Approx(std::pow(26.0, s) * l2 * l2).epsilon(1e-13));

  Grid h(128, 17.0);
  FrontState phi(h, oracle::random_field(h, 63, 4));
  double direct = 0;
  for (double v : phi.values()) direct += v * v * h.dx();
  CHECK(std::abs(sobolev_norm(phi, 0.0) - std::sqrt(direct)) < 1e-12 * std::sqrt(direct));
}

TEST_CASE("z norm") {
  Grid g(64, 2 * pi);
  CHECK(z_norm(FrontState(g, std::vector<double>(64, 0.0)), 8) == 0.0);
  const double a = 0.3;
  auto c = FrontState::from_function(g, [a](double x) { return a * std::cos(3 * x); });
  const double density = 1.0;  // L / 2 pi
  CHECK(z_norm(c, 8) == doctest::Approx((3 + std::pow(3.0, 11)) * a / 2 * density).epsilon(1e-13));
  CHECK(z_norm(c, 0) == doctest::Approx((3 + 27.0) * a / 2).epsilon(1e-13));

  // max over modes, not the sum
  auto two = FrontState::from_function(g, [](double x) { return std::cos(x) + 1e-3 * std::cos(2 * x); });
  const double w1 = (1 + 1) * 0.5, w2 = (2 + std::pow(2.0, 3)) * 0.5e-3;
  CHECK(z_norm(two, 0) == doctest::Approx(std::max(w1, w2)).epsilon(1e-13));
  CHECK_THROWS_AS(z_norm(c, -1), InvalidInput);

  Grid wide(64, 20 * pi);
  auto cw = FrontState::from_function(wide, [](double x) { return std::cos(0.3 * x); });
  CHECK(z_norm(cw, 0) == doctest::Approx((0.3 + std::pow(0.3, 3)) * 0.5 * 10).epsilon(1e-12));
}

TEST_CASE("sup norms of derivatives") {
  Grid g(64, 2 * pi);
  auto c = FrontState::from_function(g, [](double x) { return std::cos(4 * x); });
  const auto n = sup_derivative_norms(c, 5);
  REQUIRE(n.size() == 6);
  for (int j = 0; j <= 5; ++j) CHECK(n[j] == doctest::Approx(std::pow(4.0, j)).epsilon(1e-10));
  for (double v : sup_derivative_norms(FrontState(g, std::vector<double>(64, 0.0)), 3)) CHECK(v == 0.0);

  Grid h(128, 10.0);
  FrontState phi(h, oracle::random_field(h, 4, 19));
  const auto got = sup_derivative_norms(phi, 3);
  for (int j = 0; j <= 3; ++j) {
    double fine = 0;
    for (int i = 0; i < 16 * 128; ++i) fine = std::max(fine, std::abs(synth(h, phi.spectrum(), j, i * h.dx() / 16)));
    CHECK(std::abs(got[j] - fine) <= 0.01 * fine);
  }
}

TEST_CASE("scaling field") {
  Params p(1.5);
  Grid g(128, 20.0);
  auto gauss = FrontState::from_function(g, [](double x) { return 0.01 * std::exp(-std::pow(x - 10.0, 2)); });
  auto rhs = full_rhs(gauss, p, RhsMode::kCubicSpectral);
  auto s = scaling_field(gauss, rhs, p);
  auto dx = derivative(gauss, 1);
  for (int j = 0; j < 128; ++j) CHECK(s[j] == doctest::Approx(g.centered_x(j) * dx[j]).epsilon(1e-15));

  auto k = FrontState(g, std::vector<double>(128, 2.0), 3.0);
  auto sk = scaling_field(k, full_rhs(k, p, RhsMode::kCubicSpectral), p);
  CHECK(oracle::max_abs(sk.values()) == 0.0);

  CHECK_THROWS_AS(scaling_field(gauss.with_time(1.0), rhs, p), InvalidInput);

  // Linear flow of cos(kx): phi_t from the rhs module against the homogeneity
  // of the dispersion relation, (2 - alpha) omega(xi) = xi omega'(xi).
  Grid c2(64, 2 * pi);
  const double t = 2.5;
  auto cosk = propagate_linear(FrontState::from_function(c2, [](double x) { return std::cos(3 * x); }), t, p);
  auto def = scaling_field(cosk, linear_term(cosk, p), p);
  const auto xi_omega_prime = sample_symbol(c2, [&](double xi) {
    return xi == 0.0 ? 0.0 : -p.theta() * p.A() * (2.0 - p.alpha()) * xi * std::pow(std::abs(xi), 1.0 - p.alpha());
  });
  auto tl = FrontState::from_spectrum(c2, apply_imag_symbol(cosk.spectrum(), xi_omega_prime), t);
  auto dx2 = derivative(cosk, 1);
  const double scale = oracle::max_abs(def.values());
  for (int j = 0; j < 64; ++j) CHECK(std::abs(def[j] - (t * tl[j] + c2.centered_x(j) * dx2[j])) < 1e-10 * scale);
  // and against the closed form -sin(3x + w t)((2 - alpha) t w + 3 x)
  const double w = p.A() * std::sqrt(3.0);
  for (int j = 0; j < 64; ++j) {
    const double x = c2.x(j);
    const double expect = -std::sin(3 * x + w * t) * (0.5 * t * w + 3 * c2.centered_x(j));
    CHECK(std::abs(def[j] - expect) < 1e-10 * scale);
  }
}

TEST_CASE("decay fit") {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 50; ++i) {
    const double t = 2 + i * 3.0;
    s.emplace_back(t, 0.7 * std::pow(t + 1, -0.5));
  }
  auto f = decay_fit(s, 2, 200);
  CHECK(std::abs(f.slope + 0.5) < 1e-6);
  CHECK(f.residual < 1e-12);
  CHECK(f.samples == 50);
  std::vector<std::pair<double, double>> flat;
  for (int i = 0; i < 20; ++i) flat.emplace_back(1 + i, 3.0);
  CHECK(std::abs(decay_fit(flat, 1, 30).slope) < 1e-14);
  CHECK_THROWS_AS(decay_fit(flat, 1, 5), InvalidInput);
  CHECK_THROWS_AS(decay_fit(flat, 0.5, 30), InvalidInput);
  CHECK_THROWS_AS(decay_fit(flat, 10, 10), InvalidInput);
}

TEST_CASE("diagnostics record and stream") {
  Params p(1.5);
  Grid g(256, 60.0);
  FrontState phi(g, oracle::random_field(g, 60, 9, 0.01), 1.25);
  auto rhs = full_rhs(phi, p, RhsMode::kCubicSpectral);
  DiagnosticsConfig cfg;
  auto rec = diagnostics_record(phi, rhs, p, cfg, 7);
  CHECK(rec.l2_norm == rec.sobolev[0].second);
  CHECK(rec.sup_dx.size() == 10);
  CHECK(rec.max_slope == rec.sup_dx[1]);
  double e2 = 0;
  for (const auto& [k, v] : rec.lp_energies) e2 += v * v;
  CHECK(std::abs(e2 - rec.l2_norm * rec.l2_norm) <= 1e-8 * rec.l2_norm * rec.l2_norm);
  for (double v : rec.sup_dx) CHECK((std::isfinite(v) && v >= 0));
  CHECK(rec.z_norm >= 0);
  CHECK(rec.scaling_field_hr >= 0);

  rec.extra.emplace_back("probe", 1.0 / 3.0);
  const auto line = to_ndjson(rec);
  CHECK(line.find('\n') == std::string::npos);
  auto j = nlohmann::json::parse(line);
  CHECK(j["schema"] == kDiagnosticsSchema);
  CHECK(j["step"] == 7);
  CHECK(j["t"].get<double>() == 1.25);
  CHECK(j["l2_norm"].get<double>() == rec.l2_norm);
  CHECK(j["sobolev_4"].get<double>() == rec.sobolev[2].second);
  CHECK(j["sup_dx_9"].get<double>() == rec.sup_dx[9]);
  CHECK(j["probe"].get<double>() == 1.0 / 3.0);
  CHECK(j.contains("lp_low"));
  CHECK(format_number(0.1) == "0.10000000000000001");
}
