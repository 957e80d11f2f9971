#pragma once

// Experiment orchestration: run configuration documents, the shipped presets,
// experiment execution with its output files, and the batch verification
// suite behind `gsqg verify`.
//
// Output directory layout of run_experiment:
//
//   config.json          the fully defaulted configuration
//   diagnostics.ndjson   header line, then one record per sample
//   checkpoints/*.ckpt   every stepper.checkpoint_every steps
//   summary.json         fitted quantities and convention flags
//   failure.json         only when the run failed

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsqg/diagnostics.hpp"
#include "gsqg/evolve.hpp"

namespace gsqg {

inline constexpr int kFormatVersion = 1;

struct InitialCondition {
  std::string family = "gaussian";  ///< gaussian | cosine | random | file
  double amplitude = 1e-3;
  double width = 2.0;            ///< gaussian: a exp(-((x - center) / width)^2)
  std::optional<double> center;  ///< gaussian; unset means L/2
  double wavenumber = 1.0;       ///< cosine: a cos(k x), k L / 2 pi integer
  int kmax = 8;                  ///< random: modes 1..kmax, seeded by RunConfig::seed
  std::string path;              ///< file: a checkpoint or whitespace separated samples

  bool operator==(const InitialCondition&) const = default;
};

struct RunConfig {
  std::string name = "custom";
  std::string experiment = "evolve";  ///< evolve | kinematic | resonance-probe
  double alpha = 1.5;
  double theta = -1.0;
  int n = 256;
  double length = 6.283185307179586;
  InitialCondition initial;
  StepperConfig stepper;
  double offset = 0.0;  ///< front offset h; 0 selects FrontGeometry::default_offset
  double sample_every = 1.0;
  DiagnosticsConfig diagnostics;
  std::vector<double> decay_window;  ///< {t1, t2}; empty selects [2, min(t_end, 0.3 t_wrap)]
  std::vector<double> phase_xi{0.25, 0.5, 1.0};
  std::uint64_t seed = 0;
  std::string out_dir = "gsqg-out";

  bool operator==(const RunConfig&) const = default;
};

/// Throws ValidationError listing every problem: malformed JSON, unknown
/// keys, wrong types and violated constraints.
RunConfig parse_config(const std::string& text);
/// Pretty-printed JSON with every field present; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

std::vector<std::string> preset_names();
/// Throws InvalidInput for unknown names.
RunConfig preset(const std::string& name);

/// FNV-1a 64 of the canonical config without the output directory, as hex.
std::string config_hash(const RunConfig& cfg);

/// sign, beta and x-centering conventions.
nlohmann::json convention_flags();

FrontState initial_state(const RunConfig& cfg);

/// The summary document. On failure failure.json is written and the error
/// rethrown.
nlohmann::json run_experiment(const RunConfig& cfg);

/// Group velocity based wrap time of the initial packet: L / (2 v_g(xi_peak))
/// with v_g = (2 - alpha) A |xi|^{1 - alpha} and xi_peak maximizing |xi c_k|.
double wrap_time(const FrontState& state, const Params& params);

struct CheckResult {
  std::string name;  ///< group.check
  double measured;
  double threshold;
  bool minimum;  ///< threshold is a lower bound
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> groups;        ///< empty runs all: constants, symbols, rhs, contourfield
  std::map<std::string, double> tamper;   ///< added to the measured value of the named check
};

std::vector<std::string> verify_groups();
/// Throws InvalidInput for an unknown group.
std::vector<CheckResult> verify_suite(const VerifyOptions& opts = {});

}  // namespace gsqg
