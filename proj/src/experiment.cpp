#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "gsqg/cli.hpp"
#include "gsqg/contourfield.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/symbols.hpp"

namespace gsqg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << body;
  if (!out) throw InvalidInput("write failed: " + path.string());
}

json header(const RunConfig& cfg, const char* schema) {
  return {{"schema", schema},
          {"format_version", kFormatVersion},
          {"config_hash", config_hash(cfg)},
          {"alpha", cfg.alpha},
          {"theta", cfg.theta},
          {"flags", convention_flags()}};
}

std::string checkpoint_flags(const RunConfig& cfg) {
  std::string out = "config_hash=" + config_hash(cfg);
  const json flags = convention_flags();
  for (const auto& [k, v] : flags.items()) out += " " + k + "=" + v.get<std::string>();
  return out;
}

// Unwrapped total variation of the phase samples.
double phase_variation(const std::vector<double>& args) {
  double tv = 0.0;
  for (std::size_t i = 1; i < args.size(); ++i) tv += std::abs(std::remainder(args[i] - args[i - 1], 2.0 * std::numbers::pi));
  return tv;
}

int nearest_mode(const Grid& g, double xi) {
  const int m = static_cast<int>(std::lround(xi * g.length() / (2.0 * std::numbers::pi)));
  return std::clamp(m, 1, g.size() / 2 - 1);
}

struct Output {
  fs::path dir;
  std::ofstream ndjson;
  explicit Output(const RunConfig& cfg) : dir(cfg.out_dir) {
    fs::create_directories(dir);
    write_file(dir / "config.json", emit_config(cfg));
    fs::remove(dir / "failure.json");
    ndjson.open(dir / "diagnostics.ndjson", std::ios::binary | std::ios::trunc);
    if (!ndjson) throw InvalidInput("cannot write " + (dir / "diagnostics.ndjson").string());
    ndjson << header(cfg, "gsqg.header/1").dump() << "\n";
  }
  void line(const std::string& s) { ndjson << s << "\n"; }
};

json run_evolve(const RunConfig& cfg, Output& out) {
  const Params params(cfg.alpha, cfg.theta);
  const FrontState phi0 = initial_state(cfg);
  const Grid& grid = phi0.grid();
  StepperConfig sc = cfg.stepper;
  if (sc.dt == 0.0) sc.dt = default_dt(phi0, params);

  const double t_wrap = wrap_time(phi0, params);
  double t1 = 2.0, t2 = std::min(cfg.stepper.t_end, 0.3 * t_wrap);
  if (!cfg.decay_window.empty()) {
    t1 = cfg.decay_window[0];
    t2 = cfg.decay_window[1];
  }

  std::vector<int> modes;
  for (double xi : cfg.phase_xi) modes.push_back(nearest_mode(grid, xi));
  ScatteringPhase phase(grid), phase_before(grid);
  phase.time = phase_before.time = phi0.time();

  struct Sample {
    double t, l2, mean, h4, slope;
    std::vector<double> arg_h, arg_v;
  };
  std::vector<Sample> samples;
  double slope_max = max_slope(phi0);
  std::int64_t steps = 0;

  RunSinks sinks;
  sinks.sample_every = cfg.sample_every;
  sinks.on_step = [&](const FrontState& before, const FrontState& after) {
    phase_before = phase;
    phase.time = before.time();
    phase = scattering_phase_step(phase, before.spectrum(), before.time(), after.time() - before.time(), params);
    phase.time = after.time();
    slope_max = std::max(slope_max, max_slope(after));
    ++steps;
  };
  sinks.on_sample = [&](const FrontState& s, std::int64_t step) {
    const FrontState rhs = full_rhs(s, params, sc.mode, sc.quad);
    DiagnosticsRecord rec = diagnostics_record(s, rhs, params, cfg.diagnostics, step);
    const ScatteringPhase& th = s.time() == phase.time ? phase : phase_before;
    const HState h = to_hstate(s, params);
    Sample smp{s.time(), rec.l2_norm, rec.mean, sobolev_norm(s, 4.0), rec.max_slope, {}, {}};
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const int k = grid.index(modes[i]);
      const cplx hk = h.h[k];
      const cplx vk = std::polar(1.0, th.theta[k]) * hk;
      smp.arg_h.push_back(std::arg(hk));
      smp.arg_v.push_back(std::arg(vk));
      rec.extra.emplace_back("theta_" + std::to_string(i), th.theta[k]);
      rec.extra.emplace_back("arg_h_" + std::to_string(i), std::arg(hk));
      rec.extra.emplace_back("arg_v_" + std::to_string(i), std::arg(vk));
    }
    samples.push_back(std::move(smp));
    out.line(to_ndjson(rec));
  };
  const std::string flags = checkpoint_flags(cfg);
  fs::create_directories(out.dir / "checkpoints");
  sinks.on_checkpoint = [&](const FrontState& s, std::int64_t step) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%08lld.ckpt", static_cast<long long>(step));
    write_checkpoint((out.dir / "checkpoints" / name).string(), s, params, flags);
  };

  const FrontState final_state = run(phi0, sc, params, sinks);

  const Sample& first = samples.front();
  double l2_drift = 0.0, mean_drift = 0.0, h4_max = 0.0;
  json history = json::array();
  std::vector<std::pair<double, double>> slope_series;
  for (const auto& s : samples) {
    l2_drift = std::max(l2_drift, std::abs(s.l2 - first.l2) / first.l2);
    mean_drift = std::max(mean_drift, std::abs(s.mean - first.mean));
    h4_max = std::max(h4_max, s.h4);
    history.push_back({s.t, s.slope});
    slope_series.emplace_back(s.t, s.slope);
  }

  json summary;
  summary["steps"] = steps;
  summary["dt"] = cfg.stepper.t_end > 0 ? cfg.stepper.t_end / std::max<std::int64_t>(steps, 1) : 0.0;
  summary["t_end"] = final_state.time();
  summary["t_wrap"] = t_wrap;
  summary["l2"] = {{"initial", first.l2}, {"final", samples.back().l2}, {"drift", l2_drift}};
  summary["mean_drift"] = mean_drift;
  summary["h4"] = {{"initial", first.h4}, {"max", h4_max}, {"growth", h4_max / first.h4 - 1.0}};
  summary["max_slope"] = {{"initial", first.slope},
                          {"max", slope_max},
                          {"ratio", first.slope > 0 ? slope_max / first.slope : 0.0},
                          {"history", history}};
  try {
    const DecayFit f = decay_fit(slope_series, t1, t2);
    summary["decay"] = {{"window", {f.t1, f.t2}},   {"slope", f.slope},     {"intercept", f.intercept},
                        {"residual", f.residual},   {"samples", f.samples}, {"quantity", "max|phi_x|"}};
  } catch (const InvalidInput& e) {
    summary["decay"] = {{"window", {t1, t2}}, {"slope", nullptr}, {"error", e.what()}};
  }

  // Phase variation over the last half of the decay window.
  const double mid = 0.5 * (t1 + t2);
  json sc_json;
  json xis = json::array(), var_h = json::array(), var_v = json::array(), ratio = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    std::vector<double> ah, av;
    for (const auto& s : samples)
      if (s.t >= mid && s.t <= t2) {
        ah.push_back(s.arg_h[i]);
        av.push_back(s.arg_v[i]);
      }
    const double vh = phase_variation(ah), vv = phase_variation(av);
    const double r = vh > 0.0 ? vv / vh : (vv > 0.0 ? INFINITY : 0.0);
    xis.push_back(grid.frequency(grid.index(modes[i])));
    var_h.push_back(vh);
    var_v.push_back(vv);
    ratio.push_back(std::isfinite(r) ? json(r) : json(nullptr));
    worst = std::max(worst, r);
  }
  summary["scattering"] = {{"xi", xis},         {"window", {mid, t2}}, {"variation_h", var_h},
                           {"variation_v", var_v}, {"ratio", ratio},
                           {"max_ratio", std::isfinite(worst) ? json(worst) : json(nullptr)}};
  return summary;
}

json run_kinematic(const RunConfig& cfg, Output& out) {
  const Params params(cfg.alpha, cfg.theta);
  const FrontState phi = initial_state(cfg);
  const double h = cfg.offset > 0.0 ? cfg.offset : FrontGeometry::default_offset(phi);
  const FrontGeometry geom(phi, h, params);
  const auto detailed = contour_rhs_detailed(phi, params, cfg.stepper.quad);
  const FrontState rhs = full_rhs(phi, params, RhsMode::kContour, cfg.stepper.quad);
  const auto vel = curve_velocity(geom, cfg.stepper.quad);
  const double residual = kinematic_residual(geom, rhs, cfg.stepper.quad);
  DiagnosticsRecord rec = diagnostics_record(phi, rhs, params, cfg.diagnostics, 0);
  rec.extra.emplace_back("kinematic_residual", residual);
  out.line(to_ndjson(rec));
  double scale = 0.0;
  for (double v : rhs.values()) scale = std::max(scale, std::abs(v));
  return {{"offset", h},
          {"kinematic_residual", residual},
          {"max_phi_t", scale},
          {"rhs_error_estimate", detailed.error_estimate},
          {"velocity_error_estimate", vel.error_estimate}};
}

json run_probe(const RunConfig& cfg, Output& out) {
  const double a = cfg.alpha;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  double max_phi = 0.0, min_order = INFINITY;
  for (int i = 0; i < 20; ++i) {
    const double xi = u(rng);
    const double target = resonance_ratio(xi, a);
    const double phi_res = phase_phi(xi, xi, xi, a);
    max_phi = std::max(max_phi, std::abs(phi_res));
    json rec = {{"schema", "gsqg.probe/1"}, {"xi", xi}, {"phi_resonant", phi_res}, {"ratio", target}};
    double prev = 0.0;
    json errs = json::array();
    for (int j = 0; j < 4; ++j) {
      const double d = 0.1 * xi / (1 << j);
      const double e1 = xi / 3 + d, e2 = xi / 3 + 0.5 * d;
      const double q = t1_prime({e1, e2, xi - e1 - e2}, a) / phase_phi(xi, e1, e2, a);
      const double err = std::abs(q - target);
      errs.push_back(err);
      if (j > 0 && err > 0.0) min_order = std::min(min_order, std::log2(prev / err));
      prev = err;
    }
    rec["quotient_errors"] = errs;
    out.line(rec.dump());
  }
  return {{"resonance_ratio_1", resonance_ratio(1.0, a)},
          {"max_abs_phi_resonant", max_phi},
          {"min_quotient_order", min_order}};
}

}  // namespace

FrontState initial_state(const RunConfig& cfg) {
  const Grid grid(cfg.n, cfg.length);
  const auto& ic = cfg.initial;
  if (ic.family == "gaussian") {
    const double c = ic.center ? *ic.center : 0.5 * cfg.length;
    return FrontState::from_function(grid, [&](double x) { return ic.amplitude * std::exp(-std::pow((x - c) / ic.width, 2)); });
  }
  if (ic.family == "cosine")
    return FrontState::from_function(grid, [&](double x) { return ic.amplitude * std::cos(ic.wavenumber * x); });
  if (ic.family == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Spectrum c(grid.size(), cplx(0.0, 0.0));
    for (int m = 1; m <= ic.kmax; ++m) {
      const cplx z(nd(rng), nd(rng));
      c[grid.index(m)] = ic.amplitude * z / static_cast<double>(ic.kmax);
      c[grid.index(-m)] = std::conj(c[grid.index(m)]);
    }
    return FrontState::from_spectrum(grid, c);
  }
  if (ic.family == "file") {
    const std::string body = read_file(ic.path);
    if (body.rfind("gsqg-checkpoint", 0) == 0) {
      Checkpoint ck = decode_checkpoint(body);
      if (!(ck.state.grid() == grid)) throw InvalidInput("initial file: checkpoint grid differs from the config grid");
      return ck.state.with_time(0.0);
    }
    std::istringstream in(body);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (!in.eof()) throw InvalidInput("initial file: could not parse samples in " + ic.path);
    if (static_cast<int>(v.size()) != grid.size())
      throw InvalidInput("initial file: expected " + std::to_string(grid.size()) + " samples, got " +
                         std::to_string(v.size()));
    return FrontState(grid, std::move(v));
  }
  throw InvalidInput("unknown initial family " + ic.family);
}

double wrap_time(const FrontState& state, const Params& params) {
  const Grid& g = state.grid();
  const Spectrum& c = state.spectrum();
  double best = 0.0, xi_peak = 0.0;
  for (int m = 1; m < g.size() / 2; ++m) {
    const double xi = g.frequency(g.index(m));
    const double w = xi * std::abs(c[g.index(m)]);
    if (w > best) {
      best = w;
      xi_peak = xi;
    }
  }
  if (xi_peak == 0.0) return INFINITY;
  const double vg = (2.0 - params.alpha()) * params.A() * std::pow(xi_peak, 1.0 - params.alpha());
  return g.length() / (2.0 * vg);
}

json run_experiment(const RunConfig& cfg) {
  Output out(cfg);
  json summary = header(cfg, "gsqg.summary/1");
  summary["name"] = cfg.name;
  summary["experiment"] = cfg.experiment;
  try {
    json body;
    if (cfg.experiment == "evolve") body = run_evolve(cfg, out);
    else if (cfg.experiment == "kinematic") body = run_kinematic(cfg, out);
    else if (cfg.experiment == "resonance-probe") body = run_probe(cfg, out);
    else throw InvalidInput("unknown experiment " + cfg.experiment);
    summary.update(body);
    summary["status"] = "ok";
  } catch (const Error& e) {
    json fail = header(cfg, "gsqg.failure/1");
    fail["kind"] = e.kind();
    fail["message"] = e.what();
    fail["exit_code"] = static_cast<int>(e.exit_code());
    if (auto* n = dynamic_cast<const NumericalError*>(&e)) fail["time"] = n->time();
    if (auto* b = dynamic_cast<const BlowupError*>(&e)) fail["max_slope"] = b->max_slope();
    if (auto* a = dynamic_cast<const AccuracyError*>(&e)) fail["achieved"] = a->achieved();
    if (auto* v = dynamic_cast<const ValidationError*>(&e)) fail["violations"] = v->violations();
    out.ndjson.flush();
    write_file(out.dir / "failure.json", fail.dump(2) + "\n");
    throw;
  }
  out.ndjson.flush();
  write_file(out.dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace gsqg
