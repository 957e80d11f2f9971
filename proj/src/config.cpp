#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "gsqg/cli.hpp"
#include "gsqg/errors.hpp"
#include "presets.hpp"

namespace gsqg {

using nlohmann::json;

namespace {

class Reader {
 public:
  std::vector<std::string> bad;

  // Returns the object at key (or null when absent); reports unknown keys.
  const json* section(const json& parent, const char* key, const std::string& path,
                      std::initializer_list<const char*> allowed) {
    const json* obj = &parent;
    if (key != nullptr) {
      auto it = parent.find(key);
      if (it == parent.end()) return nullptr;
      if (!it->is_object()) {
        bad.push_back(path + " must be an object");
        return nullptr;
      }
      obj = &*it;
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj->items())
      if (!ok.count(k)) bad.push_back("unknown key '" + (path.empty() ? k : path + "." + k) + "'");
    return obj;
  }

  void number(const json* obj, const char* key, const std::string& path, double& out) {
    if (const json* v = get(obj, key)) {
      if (v->is_number()) out = v->get<double>();
      else bad.push_back(path + " must be a number");
    }
  }
  void integer(const json* obj, const char* key, const std::string& path, int& out) {
    if (const json* v = get(obj, key)) {
      if (v->is_number_integer() && v->get<std::int64_t>() >= INT32_MIN && v->get<std::int64_t>() <= INT32_MAX)
        out = v->get<int>();
      else bad.push_back(path + " must be an integer");
    }
  }
  void u64(const json* obj, const char* key, const std::string& path, std::uint64_t& out) {
    if (const json* v = get(obj, key)) {
      if (v->is_number_unsigned()) out = v->get<std::uint64_t>();
      else bad.push_back(path + " must be a non-negative integer");
    }
  }
  void string(const json* obj, const char* key, const std::string& path, std::string& out) {
    if (const json* v = get(obj, key)) {
      if (v->is_string()) out = v->get<std::string>();
      else bad.push_back(path + " must be a string");
    }
  }
  void boolean(const json* obj, const char* key, const std::string& path, bool& out) {
    if (const json* v = get(obj, key)) {
      if (v->is_boolean()) out = v->get<bool>();
      else bad.push_back(path + " must be a boolean");
    }
  }
  void numbers(const json* obj, const char* key, const std::string& path, std::vector<double>& out) {
    if (const json* v = get(obj, key)) {
      bool okay = v->is_array();
      if (okay)
        for (const auto& e : *v) okay = okay && e.is_number();
      if (!okay) {
        bad.push_back(path + " must be an array of numbers");
        return;
      }
      out.clear();
      for (const auto& e : *v) out.push_back(e.get<double>());
    }
  }

 private:
  static const json* get(const json* obj, const char* key) {
    if (obj == nullptr) return nullptr;
    auto it = obj->find(key);
    return it == obj->end() ? nullptr : &*it;
  }
};

void check_semantics(const RunConfig& c, std::vector<std::string>& bad) {
  if (!(c.alpha > 1.0 && c.alpha < 2.0)) bad.push_back("params.alpha must lie in the open interval (1, 2)");
  if (!std::isfinite(c.theta) || c.theta == 0.0) bad.push_back("params.theta must be finite and nonzero");
  std::optional<Grid> grid;
  const bool n_ok = c.n >= 8 && c.n % 2 == 0;
  const bool l_ok = c.length > 0.0 && std::isfinite(c.length);
  if (!n_ok) bad.push_back("grid.n must be even and >= 8");
  if (!l_ok) bad.push_back("grid.length must be positive and finite");
  if (n_ok && l_ok) grid.emplace(c.n, c.length);
  static const std::set<std::string> experiments{"evolve", "kinematic", "resonance-probe"};
  if (!experiments.count(c.experiment)) bad.push_back("experiment must be one of evolve, kinematic, resonance-probe");

  const auto& ic = c.initial;
  if (!std::isfinite(ic.amplitude)) bad.push_back("initial.amplitude must be finite");
  if (ic.family == "gaussian") {
    if (!(ic.width > 0.0) || !std::isfinite(ic.width)) bad.push_back("initial.width must be positive");
    if (ic.center && !std::isfinite(*ic.center)) bad.push_back("initial.center must be finite");
  } else if (ic.family == "cosine") {
    const double m = ic.wavenumber * c.length / (2.0 * std::numbers::pi);
    if (!std::isfinite(m) || std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m)))
      bad.push_back("initial.wavenumber times length / 2 pi must be an integer");
    else if (grid && std::abs(std::round(m)) >= c.n / 2)
      bad.push_back("initial.wavenumber is not resolved by the grid");
  } else if (ic.family == "random") {
    if (ic.kmax < 1 || (grid && ic.kmax >= c.n / 2)) bad.push_back("initial.kmax must lie in [1, n/2)");
  } else if (ic.family == "file") {
    if (ic.path.empty()) bad.push_back("initial.path is required for the file family");
  } else {
    bad.push_back("initial.family must be one of gaussian, cosine, random, file");
  }

  try {
    c.stepper.validate();
  } catch (const ValidationError& e) {
    bad.insert(bad.end(), e.violations().begin(), e.violations().end());
  }
  if (grid) {
    try {
      c.stepper.quad.validate(*grid);
    } catch (const Error& e) {
      bad.push_back(e.what());
    }
    if (c.stepper.mode == RhsMode::kCubicConvolutionOracle && c.n > 128)
      bad.push_back("stepper.mode cubic_convolution_oracle is limited to n <= 128");
  }
  if (!(c.offset >= 0.0) || !std::isfinite(c.offset)) bad.push_back("front.offset must be finite and >= 0");
  if (!(c.sample_every >= 0.0) || !std::isfinite(c.sample_every))
    bad.push_back("diagnostics.sample_every must be finite and >= 0");
  if (c.diagnostics.r < 0) bad.push_back("diagnostics.r must be >= 0");
  for (double s : c.diagnostics.sobolev_s)
    if (!std::isfinite(s)) bad.push_back("diagnostics.sobolev_s entries must be finite");
  if (!std::isfinite(c.diagnostics.scaling_s)) bad.push_back("diagnostics.scaling_s must be finite");
  if (!c.decay_window.empty() &&
      (c.decay_window.size() != 2 || !(c.decay_window[0] >= 1.0) || !(c.decay_window[1] > c.decay_window[0])))
    bad.push_back("diagnostics.decay_window must be [t1, t2] with 1 <= t1 < t2");
  for (double xi : c.phase_xi)
    if (!(xi > 0.0) || !std::isfinite(xi)) bad.push_back("diagnostics.phase_xi entries must be positive");
  if (c.out_dir.empty()) bad.push_back("output.dir must not be empty");
}

json to_json(const RunConfig& c) {
  json j;
  j["name"] = c.name;
  j["experiment"] = c.experiment;
  j["params"] = {{"alpha", c.alpha}, {"theta", c.theta}};
  j["grid"] = {{"n", c.n}, {"length", c.length}};
  j["initial"] = {{"family", c.initial.family},
                  {"amplitude", c.initial.amplitude},
                  {"width", c.initial.width},
                  {"center", c.initial.center ? json(*c.initial.center) : json(nullptr)},
                  {"wavenumber", c.initial.wavenumber},
                  {"kmax", c.initial.kmax},
                  {"path", c.initial.path}};
  j["stepper"] = {{"mode", std::string(to_string(c.stepper.mode))},
                  {"dt", c.stepper.dt},
                  {"t_end", c.stepper.t_end},
                  {"checkpoint_every", c.stepper.checkpoint_every},
                  {"slope_guard", c.stepper.slope_guard}};
  const auto& q = c.stepper.quad;
  j["quadrature"] = {{"inner_cutoff", q.inner_cutoff}, {"growth_ratio", q.growth_ratio},
                     {"direct_images", q.direct_images}, {"tolerance", q.tolerance},
                     {"gl_order", q.gl_order},         {"panel_width", q.panel_width}};
  j["front"] = {{"offset", c.offset}};
  j["diagnostics"] = {{"sample_every", c.sample_every},
                      {"sobolev_s", c.diagnostics.sobolev_s},
                      {"r", c.diagnostics.r},
                      {"scaling_s", c.diagnostics.scaling_s},
                      {"lp_energies", c.diagnostics.lp_energies},
                      {"decay_window", c.decay_window},
                      {"phase_xi", c.phase_xi}};
  j["seed"] = c.seed;
  j["output"] = {{"dir", c.out_dir}};
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError({std::string("config is not valid JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ValidationError({"config must be a JSON object"});

  RunConfig c;
  Reader r;
  r.section(doc, nullptr, "",
            {"name", "experiment", "params", "grid", "initial", "stepper", "quadrature", "front", "diagnostics",
             "seed", "output"});
  r.string(&doc, "name", "name", c.name);
  r.string(&doc, "experiment", "experiment", c.experiment);
  r.u64(&doc, "seed", "seed", c.seed);

  const json* p = r.section(doc, "params", "params", {"alpha", "theta"});
  r.number(p, "alpha", "params.alpha", c.alpha);
  r.number(p, "theta", "params.theta", c.theta);

  const json* g = r.section(doc, "grid", "grid", {"n", "length"});
  r.integer(g, "n", "grid.n", c.n);
  r.number(g, "length", "grid.length", c.length);

  const json* ic =
      r.section(doc, "initial", "initial", {"family", "amplitude", "width", "center", "wavenumber", "kmax", "path"});
  r.string(ic, "family", "initial.family", c.initial.family);
  r.number(ic, "amplitude", "initial.amplitude", c.initial.amplitude);
  r.number(ic, "width", "initial.width", c.initial.width);
  if (ic != nullptr && ic->contains("center") && !(*ic)["center"].is_null()) {
    double v = 0.0;
    r.number(ic, "center", "initial.center", v);
    c.initial.center = v;
  }
  r.number(ic, "wavenumber", "initial.wavenumber", c.initial.wavenumber);
  r.integer(ic, "kmax", "initial.kmax", c.initial.kmax);
  r.string(ic, "path", "initial.path", c.initial.path);

  const json* st = r.section(doc, "stepper", "stepper", {"mode", "dt", "t_end", "checkpoint_every", "slope_guard"});
  std::string mode(to_string(c.stepper.mode));
  r.string(st, "mode", "stepper.mode", mode);
  try {
    c.stepper.mode = rhs_mode_from_string(mode);
  } catch (const Error&) {
    r.bad.push_back("stepper.mode must be one of contour, cubic_spectral, cubic_convolution_oracle, linear");
  }
  r.number(st, "dt", "stepper.dt", c.stepper.dt);
  r.number(st, "t_end", "stepper.t_end", c.stepper.t_end);
  r.integer(st, "checkpoint_every", "stepper.checkpoint_every", c.stepper.checkpoint_every);
  r.number(st, "slope_guard", "stepper.slope_guard", c.stepper.slope_guard);

  auto& q = c.stepper.quad;
  const json* qd = r.section(doc, "quadrature", "quadrature",
                             {"inner_cutoff", "growth_ratio", "direct_images", "tolerance", "gl_order", "panel_width"});
  r.number(qd, "inner_cutoff", "quadrature.inner_cutoff", q.inner_cutoff);
  r.number(qd, "growth_ratio", "quadrature.growth_ratio", q.growth_ratio);
  r.integer(qd, "direct_images", "quadrature.direct_images", q.direct_images);
  r.number(qd, "tolerance", "quadrature.tolerance", q.tolerance);
  r.integer(qd, "gl_order", "quadrature.gl_order", q.gl_order);
  r.number(qd, "panel_width", "quadrature.panel_width", q.panel_width);

  const json* fr = r.section(doc, "front", "front", {"offset"});
  r.number(fr, "offset", "front.offset", c.offset);

  const json* dg = r.section(doc, "diagnostics", "diagnostics",
                             {"sample_every", "sobolev_s", "r", "scaling_s", "lp_energies", "decay_window", "phase_xi"});
  r.number(dg, "sample_every", "diagnostics.sample_every", c.sample_every);
  r.numbers(dg, "sobolev_s", "diagnostics.sobolev_s", c.diagnostics.sobolev_s);
  r.integer(dg, "r", "diagnostics.r", c.diagnostics.r);
  r.number(dg, "scaling_s", "diagnostics.scaling_s", c.diagnostics.scaling_s);
  r.boolean(dg, "lp_energies", "diagnostics.lp_energies", c.diagnostics.lp_energies);
  r.numbers(dg, "decay_window", "diagnostics.decay_window", c.decay_window);
  r.numbers(dg, "phase_xi", "diagnostics.phase_xi", c.phase_xi);

  const json* out = r.section(doc, "output", "output", {"dir"});
  r.string(out, "dir", "output.dir", c.out_dir);

  check_semantics(c, r.bad);
  if (!r.bad.empty()) throw ValidationError(std::move(r.bad));
  return c;
}

std::string emit_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, body] : presets::kPresets) out.emplace_back(name);
  return out;
}

RunConfig preset(const std::string& name) {
  for (const auto& [n, body] : presets::kPresets)
    if (n == name) return parse_config(std::string(body));
  std::string known;
  for (const auto& n : preset_names()) known += " " + n;
  throw InvalidInput("unknown preset '" + name + "'; known:" + known);
}

std::string config_hash(const RunConfig& cfg) {
  json j = to_json(cfg);
  j.erase("output");
  const std::string canon = j.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json convention_flags() {
  return {{"sign", "omega=-theta*A*xi|xi|^(1-alpha)"},
          {"beta", "beta1=beta2=beta3,(int psi)^2"},
          {"x_center", "midpoint"}};
}

}  // namespace gsqg
