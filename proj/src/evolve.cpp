#include "gsqg/evolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gsqg/errors.hpp"
#include "gsqg/kernels.hpp"

namespace gsqg {

void StepperConfig::validate() const {
  std::vector<std::string> bad;
  if (!(dt >= 0.0) || !std::isfinite(dt)) bad.push_back("stepper.dt must be finite and >= 0 (0 selects the default)");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) bad.push_back("stepper.t_end must be finite and >= 0");
  if (checkpoint_every < 0) bad.push_back("stepper.checkpoint_every must be >= 0");
  if (!(slope_guard > 0.0)) bad.push_back("stepper.slope_guard must be positive");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

double max_slope(const FrontState& state) {
  const auto d = derivative(state, 1);
  double m = 0.0;
  for (double v : d.values()) m = std::max(m, std::abs(v));
  return m;
}

double default_dt(const FrontState& state, const Params& params) {
  double sup = 0.0;
  for (double v : state.values()) sup = std::max(sup, std::abs(v));
  const double w1 = sup + max_slope(state);
  const double xi = state.grid().max_resolved_frequency();
  if (w1 == 0.0) return 0.5;
  return std::min(0.5, 1.0 / (10.0 * w1 * std::pow(xi, 3.0 - params.alpha())));
}

namespace {

// e^{i omega s} per slot, Nyquist zero.
Spectrum phases(const Grid& g, const Params& params, double s) {
  const auto w = linear_frequency(g, params);
  Spectrum e(g.size());
  for (int k = 0; k < g.size(); ++k) e[k] = std::polar(1.0, w[k] * s);
  e[g.nyquist_index()] = 0.0;
  return e;
}

Spectrum rotate(const Spectrum& in, const Spectrum& phase) {
  Spectrum out(in.size());
  kernels::rotate_complex(in, phase, out);
  return out;
}

void require_finite(const FrontState& s, const char* what) {
  for (double v : s.values())
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": non-finite values", s.time());
}

}  // namespace

FrontState propagate_linear(const FrontState& state, double dt, const Params& params) {
  if (dt == 0.0) return state;
  const Grid& g = state.grid();
  return FrontState::from_spectrum(g, rotate(state.spectrum(), phases(g, params, dt)), state.time() + dt);
}

HState to_hstate(const FrontState& state, const Params& params) {
  const Grid& g = state.grid();
  return {g, rotate(state.spectrum(), phases(g, params, -state.time())), state.time()};
}

FrontState from_hstate(const HState& h, const Params& params) {
  return FrontState::from_spectrum(h.grid, rotate(h.h, phases(h.grid, params, h.time)), h.time);
}

FrontState step(const FrontState& state, double dt, const Params& params, RhsMode mode, const QuadratureSpec& quad,
                double slope_guard) {
  require_finite(state, "step");
  const double slope = max_slope(state);
  if (slope > slope_guard) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "slope guard tripped: max|phi_x| = %.6g > %.6g at t = %.17g", slope, slope_guard,
                  state.time());
    throw BlowupError(buf, state.time(), slope);
  }
  if (mode == RhsMode::kLinear) return propagate_linear(state, dt, params);

  const Grid& g = state.grid();
  const Spectrum half = phases(g, params, 0.5 * dt);
  const Spectrum full = phases(g, params, dt);
  Spectrum u0 = state.spectrum();
  u0[g.nyquist_index()] = 0.0;
  auto n_of = [&](const Spectrum& u) { return nonlinear_spectrum(g, u, params, mode, quad); };

  const Spectrum k1 = n_of(u0);
  Spectrum tmp = u0;
  kernels::axpy_complex(0.5 * dt, k1, tmp);
  const Spectrum k2 = n_of(rotate(tmp, half));
  Spectrum u3 = rotate(u0, half);
  kernels::axpy_complex(0.5 * dt, k2, u3);
  const Spectrum k3 = n_of(u3);
  Spectrum u4 = rotate(u0, full);
  kernels::axpy_complex(dt, rotate(k3, half), u4);
  const Spectrum k4 = n_of(u4);

  tmp = u0;
  kernels::axpy_complex(dt / 6.0, k1, tmp);
  Spectrum out = rotate(tmp, full);
  Spectrum mid = k2;
  kernels::axpy_complex(1.0, k3, mid);
  kernels::axpy_complex(dt / 3.0, rotate(mid, half), out);
  kernels::axpy_complex(dt / 6.0, k4, out);

  FrontState next = FrontState::from_spectrum(g, out, state.time() + dt);
  require_finite(next, "step");
  return next;
}

FrontState step(const FrontState& state, const StepperConfig& cfg, const Params& params) {
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(state, params);
  return step(state, dt, params, cfg.mode, cfg.quad, cfg.slope_guard);
}

FrontState run(const FrontState& initial, const StepperConfig& cfg, const Params& params, const RunSinks& sinks) {
  cfg.validate();
  auto emit = [&](const FrontState& s, std::int64_t i) {
    if (sinks.on_sample) sinks.on_sample(s, i);
  };
  emit(initial, 0);
  if (cfg.t_end == 0.0) return initial;

  const double dt0 = cfg.dt > 0.0 ? cfg.dt : default_dt(initial, params);
  const auto n = static_cast<std::int64_t>(std::ceil(cfg.t_end / dt0 * (1.0 - 1e-12)));
  const double dt = cfg.t_end / static_cast<double>(n);
  const double t0 = initial.time();

  FrontState prev = initial;
  bool prev_emitted = true;
  std::int64_t next_sample = 1;
  for (std::int64_t i = 1; i <= n; ++i) {
    FrontState cur = [&] {
      try {
        return step(prev, dt, params, cfg.mode, cfg.quad, cfg.slope_guard);
      } catch (const AccuracyError& e) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " (at t = %.17g)", prev.time());
        throw AccuracyError(e.what() + std::string(buf), e.achieved());
      }
    }();
    // Times are set from the step count so they carry no accumulated round-off.
    cur = cur.with_time(i == n ? t0 + cfg.t_end : t0 + static_cast<double>(i) * dt);
    if (sinks.on_step) sinks.on_step(prev, cur);

    bool cur_emitted = false;
    if (sinks.sample_every <= 0.0) {
      emit(cur, i);
      cur_emitted = true;
    } else {
      const double eps = 1e-9 * dt;
      for (double target = t0 + next_sample * sinks.sample_every; target <= cur.time() + eps;
           target = t0 + (++next_sample) * sinks.sample_every) {
        if (target - prev.time() < cur.time() - target) {
          if (!prev_emitted) {
            emit(prev, i - 1);
            prev_emitted = true;
          }
        } else if (!cur_emitted) {
          emit(cur, i);
          cur_emitted = true;
        }
      }
      if (i == n && !cur_emitted) {
        emit(cur, i);
        cur_emitted = true;
      }
    }
    if (cfg.checkpoint_every > 0 && i % cfg.checkpoint_every == 0 && sinks.on_checkpoint) sinks.on_checkpoint(cur, i);
    prev = std::move(cur);
    prev_emitted = cur_emitted;
  }
  return prev;
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

}  // namespace

std::string encode_checkpoint(const FrontState& state, const Params& params, const std::string& flags) {
  if (flags.find('\n') != std::string::npos) throw InvalidInput("checkpoint flags must be a single line");
  const Grid& g = state.grid();
  std::string out = "gsqg-checkpoint 1\n";
  out += "alpha " + fmt17(params.alpha()) + "\n";
  out += "theta " + fmt17(params.theta()) + "\n";
  out += "n " + std::to_string(g.size()) + "\n";
  out += "length " + fmt17(g.length()) + "\n";
  out += "time " + fmt17(state.time()) + "\n";
  out += "flags " + flags + "\n";
  out += "end\n";
  const std::size_t head = out.size();
  out.resize(head + 8 * static_cast<std::size_t>(g.size()));
  for (int j = 0; j < g.size(); ++j) {
    const std::uint64_t bits = to_le(std::bit_cast<std::uint64_t>(state[j]));
    std::memcpy(out.data() + head + 8 * static_cast<std::size_t>(j), &bits, 8);
  }
  return out;
}

void write_checkpoint(const std::string& path, const FrontState& state, const Params& params,
                      const std::string& flags) {
  const std::string bytes = encode_checkpoint(state, params, flags);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidInput("cannot open checkpoint for writing: " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw InvalidInput("failed writing checkpoint: " + path);
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  std::size_t pos = 0;
  auto line = [&]() {
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string::npos) throw InvalidInput("checkpoint: truncated header");
    std::string l = bytes.substr(pos, nl - pos);
    pos = nl + 1;
    return l;
  };
  auto field = [&](const std::string& key) {
    const std::string l = line();
    if (l.rfind(key + " ", 0) != 0) throw InvalidInput("checkpoint: expected '" + key + "' line");
    return l.substr(key.size() + 1);
  };
  if (line() != "gsqg-checkpoint 1") throw InvalidInput("checkpoint: unknown format");
  auto num = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidInput("checkpoint: malformed number '" + s + "'");
    return v;
  };
  try {
    const double alpha = num(field("alpha"));
    const double theta = num(field("theta"));
    const int n = std::stoi(field("n"));
    const double length = num(field("length"));
    const double time = num(field("time"));
    std::string flags = field("flags");
    if (line() != "end") throw InvalidInput("checkpoint: missing 'end'");
    Grid g(n, length);
    if (bytes.size() - pos != 8 * static_cast<std::size_t>(n)) throw InvalidInput("checkpoint: payload size mismatch");
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) {
      std::uint64_t bits;
      std::memcpy(&bits, bytes.data() + pos + 8 * static_cast<std::size_t>(j), 8);
      v[j] = std::bit_cast<double>(to_le(bits));
    }
    return {Params(alpha, theta), FrontState(g, std::move(v), time), std::move(flags)};
  } catch (const std::logic_error&) {
    throw InvalidInput("checkpoint: malformed header");
  }
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open checkpoint: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return decode_checkpoint(ss.str());
}

}  // namespace gsqg
