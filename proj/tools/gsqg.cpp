// gsqg: run experiments, verify the symbol and identity checks, inspect checkpoints.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gsqg/cli.hpp"
#include "gsqg/diagnostics.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/parallel.hpp"

using namespace gsqg;

namespace {

int fail(const Error& e) {
  std::fprintf(stderr, "gsqg: %s: %s\n", e.kind(), e.what());
  if (auto* v = dynamic_cast<const ValidationError*>(&e))
    for (const auto& s : v->violations()) std::fprintf(stderr, "  - %s\n", s.c_str());
  return static_cast<int>(e.exit_code());
}

int set_threads(int flag) {
  int n = flag;
  if (n <= 0) {
    if (const char* env = std::getenv("GSQG_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1) throw InvalidInput("GSQG_THREADS must be a positive integer");
      n = static_cast<int>(v);
    }
  }
  if (n > 0) set_thread_count(n);
  return thread_count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GSQG front-equation simulator"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: GSQG_THREADS or 1)")->check(CLI::PositiveNumber);

  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config document or a preset");
  std::string config_path, preset_name, out_dir;
  std::optional<std::uint64_t> seed;
  auto* cfg_opt = run_cmd->add_option("--config", config_path, "JSON config document");
  run_cmd->add_option("--preset", preset_name, "shipped preset: conservation, decay, kinematic, resonance-probe")
      ->excludes(cfg_opt);
  run_cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
  run_cmd->add_option("--seed", seed, "seed for randomized initial fields");
  run_cmd->fallthrough();

  auto* verify_cmd = app.add_subcommand("verify", "run the constant, symbol, rhs and identity checks");
  std::vector<std::string> groups;
  verify_cmd->add_option("groups", groups, "subset: constants symbols rhs contourfield");
  verify_cmd->fallthrough();

  auto* inspect_cmd = app.add_subcommand("inspect-checkpoint", "print a checkpoint header as JSON");
  std::string ckpt_path;
  inspect_cmd->add_option("path", ckpt_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  try {
    set_threads(threads);
    if (*run_cmd) {
      if (config_path.empty() && preset_name.empty()) throw InvalidInput("run needs --config or --preset");
      RunConfig cfg = preset_name.empty() ? parse_config(slurp(config_path)) : preset(preset_name);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (seed) cfg.seed = *seed;
      const auto summary = run_experiment(cfg);
      std::printf("%s: %s, summary in %s/summary.json\n", cfg.name.c_str(), summary["status"].get<std::string>().c_str(),
                  cfg.out_dir.c_str());
      return 0;
    }
    if (*verify_cmd) {
      VerifyOptions opts;
      opts.groups = groups;
      const auto results = verify_suite(opts);
      int failed = 0;
      for (const auto& r : results) {
        std::printf("%s %-28s measured %-24s %s %-10g %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    format_number(r.measured).c_str(), r.minimum ? ">=" : "<=", r.threshold, r.detail.c_str());
        failed += r.passed ? 0 : 1;
      }
      std::printf("%zu checks, %d failed\n", results.size(), failed);
      return failed == 0 ? 0 : static_cast<int>(ExitCode::kAccuracy);
    }
    if (*inspect_cmd) {
      const Checkpoint ck = read_checkpoint(ckpt_path);
      nlohmann::json j = {{"alpha", ck.params.alpha()},
                          {"theta", ck.params.theta()},
                          {"n", ck.state.grid().size()},
                          {"length", ck.state.grid().length()},
                          {"time", ck.state.time()},
                          {"flags", ck.flags},
                          {"l2_norm", sobolev_norm(ck.state, 0.0)},
                          {"max_slope", sup_derivative_norms(ck.state, 1)[1]}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gsqg: %s\n", e.what());
    return static_cast<int>(ExitCode::kNumerical);
  }
  return 0;
}
