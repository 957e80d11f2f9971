// Acceptance report: one PASS/FAIL line per criterion 1..10.
//
//   acceptance [--out DIR] [--report]
//
// Exit status is 0 when every criterion passes, 1 otherwise. With --report
// the status is 0 whenever the report itself completed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gsqg/cli.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/evolve.hpp"
#include "gsqg/parallel.hpp"
#include "json.hpp"

using namespace gsqg;
using nlohmann::json;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Line {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& note) {
    passed = passed && ok;
    notes.push_back((ok ? "" : "!") + note);
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Report {
 public:
  void criterion(int id, const std::string& title, double budget_s, const std::function<void(Line&)>& body) {
    Line line;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(line);
    } catch (const std::exception& e) {
      line.require(false, std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    line.require(secs < budget_s, fmt("%.1fs", secs) + fmt(" < %gs", budget_s));
    std::string notes;
    for (const auto& n : line.notes) notes += (notes.empty() ? "" : "; ") + n;
    std::printf("%s %2d %-22s %s\n", line.passed ? "PASS" : "FAIL", id, title.c_str(), notes.c_str());
    std::fflush(stdout);
    failed_ += line.passed ? 0 : 1;
  }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

void verify_checks(Line& line, const std::string& group, const std::vector<std::string>& names) {
  VerifyOptions opts;
  opts.groups = {group};
  const auto results = verify_suite(opts);
  for (const auto& want : names) {
    bool found = false;
    for (const auto& r : results) {
      if (r.name != group + "." + want) continue;
      found = true;
      line.require(r.passed, want + fmt(" %.3g", r.measured) + (r.minimum ? " >= " : " <= ") + fmt("%g", r.threshold));
    }
    if (!found) line.require(false, want + " missing");
  }
}

json run_preset(const std::string& name, const fs::path& out) {
  RunConfig cfg = preset(name);
  cfg.out_dir = (out / name).string();
  return run_experiment(cfg);
}

double max_diff(const FrontState& a, const FrontState& b) {
  double m = 0.0;
  for (int j = 0; j < a.grid().size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  fs::path out = fs::temp_directory_path() / "gsqg_acceptance";
  bool report_only = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--report")) {
      report_only = true;
    } else if (!std::strcmp(argv[i], "--out") && i + 1 < argc) {
      out = argv[++i];
    } else {
      std::fprintf(stderr, "usage: acceptance [--out DIR] [--report]\n");
      return 2;
    }
  }
  fs::remove_all(out);
  fs::create_directories(out);
  set_thread_count(1);

  Report rep;
  rep.criterion(1, "constants", 1, [](Line& l) { verify_checks(l, "constants", {"A", "c1", "Aprime", "Cprime"}); });
  rep.criterion(2, "symbol oracle", 30, [](Line& l) { verify_checks(l, "symbols", {"t1_relation", "t1_zero"}); });
  rep.criterion(3, "resonance", 5, [](Line& l) {
    verify_checks(l, "symbols", {"resonance_zero", "resonance_ratio", "quotient_order"});
  });
  rep.criterion(4, "cubic equivalence", 60, [](Line& l) { verify_checks(l, "rhs", {"cubic_equivalence", "cubic_K"}); });
  rep.criterion(5, "series consistency", 60, [](Line& l) { verify_checks(l, "rhs", {"series_order"}); });

  rep.criterion(6, "conservation", 300, [&](Line& l) {
    const json s = run_preset("conservation", out);
    const double drift = s["l2"]["drift"], mean = s["mean_drift"], growth = s["h4"]["growth"];
    l.require(drift <= 1e-8, fmt("l2 drift %.2e <= 1e-8", drift));
    l.require(mean <= 1e-12, fmt("mean drift %.2e <= 1e-12", mean));
    l.require(growth <= 0.05, fmt("H4 growth %.2e <= 0.05", growth));
  });

  json decay;
  rep.criterion(7, "dispersive decay", 1200, [&](Line& l) {
    decay = run_preset("decay", out);
    const auto& d = decay["decay"];
    if (d["slope"].is_null()) {
      l.require(false, "no decay fit: " + d.value("error", std::string()));
    } else {
      const double slope = d["slope"];
      l.require(slope >= -0.65 && slope <= -0.35, fmt("slope %.4f in [-0.65, -0.35]", slope) +
                                                     fmt(" over [%g, ", d["window"][0].get<double>()) +
                                                     fmt("%g]", d["window"][1].get<double>()));
    }
    const double ratio = decay["max_slope"]["ratio"];
    l.require(ratio <= 1.1, fmt("max|phi_x| / initial %.4f <= 1.1", ratio));
  });

  rep.criterion(8, "velocity identities", 600, [](Line& l) {
    verify_checks(l, "contourfield", {"scaleid", "kinematic"});
  });

  rep.criterion(9, "integrator quality", 300, [&](Line& l) {
    const Params p(1.5);
    const Grid g(64, 2 * pi);
    const auto s0 = FrontState::from_function(
        g, [](double x) { return 0.1 * (std::cos(x) + 0.5 * std::sin(2 * x) - 0.3 * std::cos(3 * x + 1)); });
    auto go = [&](double dt) {
      StepperConfig c;
      c.dt = dt;
      c.t_end = 2.0;
      return run(s0, c, p);
    };
    const auto ref = go(2.0 / 256);
    const double e1 = max_diff(go(0.25), ref), e2 = max_diff(go(0.125), ref), e3 = max_diff(go(0.0625), ref);
    const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));
    l.require(order >= 3.8, fmt("order %.2f >= 3.8", order));

    StepperConfig lin;
    lin.mode = RhsMode::kLinear;
    lin.dt = 0.3;
    lin.t_end = 50.0;
    const auto c = FrontState::from_function(g, [](double x) { return 0.1 * std::cos(3 * x); });
    const auto end = run(c, lin, p);
    const double shift = p.A() * std::pow(3.0, 2 - p.alpha()) * 50.0;
    const auto exact = FrontState::from_function(g, [&](double x) { return 0.1 * std::cos(3 * x + shift); });
    const double lin_err = max_diff(end, exact);
    l.require(lin_err <= 1e-12, fmt("linear error %.1e <= 1e-12", lin_err));

    RunConfig cfg;
    cfg.name = "determinism";
    cfg.alpha = 1.4;
    cfg.n = 64;
    cfg.length = 20.0;
    cfg.initial.family = "random";
    cfg.initial.amplitude = 0.02;
    cfg.initial.kmax = 6;
    cfg.seed = 42;
    cfg.stepper.mode = RhsMode::kContour;
    cfg.stepper.dt = 0.05;
    cfg.stepper.t_end = 0.5;
    cfg.stepper.checkpoint_every = 5;
    cfg.sample_every = 0.1;
    const char* runs[] = {"t1a", "t1b", "t4"};
    for (const char* r : runs) {
      set_thread_count(r[1] == '4' ? 4 : 1);
      cfg.out_dir = (out / "determinism" / r).string();
      run_experiment(cfg);
    }
    set_thread_count(1);
    bool same = true;
    for (const char* f : {"diagnostics.ndjson", "summary.json", "checkpoints/step_00000005.ckpt",
                          "checkpoints/step_00000010.ckpt"}) {
      const auto a = slurp(out / "determinism/t1a" / f);
      same = same && !a.empty() && a == slurp(out / "determinism/t1b" / f) && a == slurp(out / "determinism/t4" / f);
    }
    l.require(same, same ? "byte-identical over 2 runs and threads {1,4}" : "outputs differ");
  });

  rep.criterion(10, "scattering phase", 1200, [&](Line& l) {
    if (decay.is_null()) decay = run_preset("decay", out);
    const auto& sc = decay["scattering"];
    std::string ratios;
    for (const auto& r : sc["ratio"]) ratios += (ratios.empty() ? "" : ", ") + (r.is_null() ? "inf" : fmt("%.3g", r));
    const bool ok = !sc["max_ratio"].is_null() && sc["max_ratio"].get<double>() <= 0.5;
    l.require(ok, "var(v)/var(h) at xi {0.25, 0.5, 1} = [" + ratios + "], max <= 0.5");
  });

  std::printf("%d of 10 criteria failed\n", rep.failed());
  return report_only || rep.failed() == 0 ? 0 : 1;
}
