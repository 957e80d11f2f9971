#include "gsqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gsqg/errors.hpp"
#include "gsqg/evolve.hpp"

namespace gsqg {

double sobolev_norm(const FrontState& state, double s) {
  const Grid& g = state.grid();
  const Spectrum& c = state.spectrum();
  double sum = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    const double xi = g.frequency(k);
    sum += std::pow(1.0 + xi * xi, s) * std::norm(c[k]);
  }
  return std::sqrt(g.length() * sum);
}

double z_norm(const FrontState& state, int r) {
  if (r < 0) throw InvalidInput("z_norm: r must be >= 0");
  const Grid& g = state.grid();
  const Spectrum& c = state.spectrum();
  const double density = g.length() / (2.0 * std::numbers::pi);
  double best = 0.0;
  for (int k = 1; k < g.size(); ++k) {
    if (k == g.nyquist_index()) continue;
    const double a = std::abs(g.frequency(k));
    best = std::max(best, (a + std::pow(a, r + 3)) * density * std::abs(c[k]));
  }
  return best;
}

std::vector<double> sup_derivative_norms(const FrontState& state, int j_max) {
  if (j_max < 0) throw InvalidInput("sup_derivative_norms: j_max must be >= 0");
  std::vector<double> out(j_max + 1, 0.0);
  for (int j = 0; j <= j_max; ++j) {
    const FrontState d = j == 0 ? state : derivative(state, j);
    for (double v : d.values()) out[j] = std::max(out[j], std::abs(v));
  }
  return out;
}

FrontState scaling_field(const FrontState& state, const FrontState& rhs_value, const Params& params) {
  require_same_grid(state.grid(), rhs_value.grid(), "scaling_field");
  if (std::abs(state.time() - rhs_value.time()) > 1e-12 * std::max(1.0, std::abs(state.time())))
    throw InvalidInput("scaling_field: phi_t is given at a different time than phi");
  const Grid& g = state.grid();
  const FrontState dx = derivative(state, 1);
  const double c = (2.0 - params.alpha()) * state.time();
  std::vector<double> out(g.size());
  for (int j = 0; j < g.size(); ++j) out[j] = c * rhs_value[j] + g.centered_x(j) * dx[j];
  return FrontState(g, std::move(out), state.time());
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& series, double t1, double t2) {
  if (!(t1 >= 1.0)) throw InvalidInput("decay_fit: window must start at t >= 1");
  if (!(t2 > t1)) throw InvalidInput("decay_fit: window end must exceed its start");
  std::vector<double> xs, ys;
  for (const auto& [t, y] : series) {
    if (t < t1 || t > t2) continue;
    if (!(y > 0.0)) throw InvalidInput("decay_fit: samples must be positive");
    xs.push_back(std::log(t + 1.0));
    ys.push_back(std::log(y));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 10) throw InvalidInput("decay_fit: fewer than 10 samples in the window");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) rss += std::pow(ys[i] - intercept - slope * xs[i], 2);
  return {t1, t2, slope, intercept, std::sqrt(rss / n), n};
}

DiagnosticsRecord diagnostics_record(const FrontState& state, const FrontState& rhs_value, const Params& params,
                                     const DiagnosticsConfig& cfg, std::int64_t step) {
  DiagnosticsRecord rec;
  rec.step = step;
  rec.t = state.time();
  rec.l2_norm = sobolev_norm(state, 0.0);
  double m = 0.0;
  for (double v : state.values()) m += v;
  rec.mean = m / state.grid().size();
  for (double s : cfg.sobolev_s) rec.sobolev.emplace_back(s, s == 0.0 ? rec.l2_norm : sobolev_norm(state, s));
  rec.r = cfg.r;
  rec.z_norm = z_norm(state, cfg.r);
  rec.sup_dx = sup_derivative_norms(state, cfg.r + 1);
  rec.scaling_field_hr = sobolev_norm(scaling_field(state, rhs_value, params), cfg.scaling_s);
  if (cfg.lp_energies) {
    const auto range = lp_range(state.grid());
    rec.lp_energies.emplace_back(range.low, lp_energy_low(state, range.low));
    for (int k = range.low + 1; k <= range.high; ++k) rec.lp_energies.emplace_back(k, lp_energy(state, k));
  }
  rec.max_slope = rec.sup_dx.size() > 1 ? rec.sup_dx[1] : max_slope(state);
  return rec;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_ndjson(const DiagnosticsRecord& rec) {
  std::string out = "{";
  bool first = true;
  auto key = [&](const std::string& k) {
    if (!first) out += ",";
    first = false;
    out += "\"" + k + "\":";
  };
  auto num = [&](const std::string& k, double v) {
    key(k);
    out += format_number(v);
  };
  auto label = [](double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", s);
    return std::string(buf);
  };
  key("schema");
  out += std::string("\"") + kDiagnosticsSchema + "\"";
  key("step");
  out += std::to_string(rec.step);
  num("t", rec.t);
  num("l2_norm", rec.l2_norm);
  num("mean", rec.mean);
  for (const auto& [s, v] : rec.sobolev) num("sobolev_" + label(s), v);
  num("z_norm", rec.z_norm);
  key("z_r");
  out += std::to_string(rec.r);
  for (std::size_t j = 0; j < rec.sup_dx.size(); ++j) num("sup_dx_" + std::to_string(j), rec.sup_dx[j]);
  num("scaling_field_hr", rec.scaling_field_hr);
  for (std::size_t i = 0; i < rec.lp_energies.size(); ++i) {
    if (i == 0) {
      key("lp_low_k");
      out += std::to_string(rec.lp_energies[0].first);
      num("lp_low", rec.lp_energies[0].second);
    } else {
      num("lp_" + std::to_string(rec.lp_energies[i].first), rec.lp_energies[i].second);
    }
  }
  num("max_slope", rec.max_slope);
  for (const auto& [k, v] : rec.extra) num(k, v);
  out += "}";
  return out;
}

}  // namespace gsqg
