#pragma once

// Time integration of phi_t = L[phi] + N[phi].
//
// The linear part is solved exactly: phi_hat(t + dt) = e^{i omega dt} phi_hat(t)
// with omega from linear_frequency(). The nonlinear part is advanced with
// classical RK4 on h_hat = e^{-i omega t} phi_hat (integrating factor), using
// the step's start as the phase reference so only half and full step phases
// are ever formed.

#include <cstdint>
#include <functional>
#include <string>

#include "gsqg/constants.hpp"
#include "gsqg/rhs.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg {

struct StepperConfig {
  double dt = 0.0;  ///< 0 selects default_dt() from the initial state
  double t_end = 0.0;
  RhsMode mode = RhsMode::kCubicSpectral;
  QuadratureSpec quad;
  int checkpoint_every = 0;  ///< steps; 0 disables checkpoints
  double slope_guard = 0.5;  ///< abort when max|phi_x| exceeds this

  /// Throws ValidationError listing every violated constraint.
  void validate() const;
  bool operator==(const StepperConfig&) const = default;
};

/// min(0.5, 1 / (10 ||phi||_{W^{1,inf}} xi_max^{3-alpha}))
double default_dt(const FrontState& state, const Params& params);

/// Exact linear flow over dt (any sign).
FrontState propagate_linear(const FrontState& state, double dt, const Params& params);

struct HState {
  Grid grid;
  Spectrum h;
  double time;
};
HState to_hstate(const FrontState& state, const Params& params);
FrontState from_hstate(const HState& h, const Params& params);

/// max|phi_x| on the grid.
double max_slope(const FrontState& state);

/// One integrating-factor RK4 step of size dt (negative dt integrates backwards).
/// Throws BlowupError if the input slope exceeds slope_guard and
/// NumericalError if the result is not finite.
FrontState step(const FrontState& state, double dt, const Params& params, RhsMode mode,
                const QuadratureSpec& quad = {}, double slope_guard = 0.5);
FrontState step(const FrontState& state, const StepperConfig& cfg, const Params& params);

struct RunSinks {
  /// Sample cadence in time; records go to the completed step nearest each
  /// multiple of sample_every. 0 samples every step. The initial and the
  /// final state are always sampled.
  double sample_every = 0.0;
  std::function<void(const FrontState&, std::int64_t step)> on_sample;
  std::function<void(const FrontState&, std::int64_t step)> on_checkpoint;
  /// Called after every step with the states at both ends.
  std::function<void(const FrontState& before, const FrontState& after)> on_step;
};

/// Integrates to cfg.t_end with a fixed step t_end / ceil(t_end / dt).
FrontState run(const FrontState& initial, const StepperConfig& cfg, const Params& params, const RunSinks& sinks = {});

// Checkpoint container: a text header terminated by a line "end", followed
// by the N samples as little-endian IEEE doubles.
//
//   gsqg-checkpoint 1
//   alpha <a>
//   theta <t>
//   n <N>
//   length <L>
//   time <t>
//   flags <space separated key=value>
//   end

struct Checkpoint {
  Params params;
  FrontState state;
  std::string flags;
};

void write_checkpoint(const std::string& path, const FrontState& state, const Params& params,
                      const std::string& flags);
std::string encode_checkpoint(const FrontState& state, const Params& params, const std::string& flags);
Checkpoint read_checkpoint(const std::string& path);
Checkpoint decode_checkpoint(const std::string& bytes);

}  // namespace gsqg
