#pragma once

// Measured functionals of a front profile: Sobolev and Z norms, sup norms of
// derivatives, the scaling vector field S = (2 - alpha) t d_t + x d_x,
// Littlewood-Paley energy shares and log-log decay fits.
//
// Spectral densities follow spectral.hpp: \hat f(xi_k) ~ (L / 2 pi) c_k.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gsqg/constants.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg {

/// Proof-bookkeeping exponents; reported, never used.
inline constexpr double kP0 = 1e-4;
inline constexpr double kP1 = 1e-6;

/// (L sum_k (1 + xi_k^2)^s |c_k|^2)^{1/2}; equals the discrete L2 norm at s = 0.
double sobolev_norm(const FrontState& state, double s);

/// max_k (|xi_k| + |xi_k|^{r+3}) (L / 2 pi) |c_k| over resolved modes.
double z_norm(const FrontState& state, int r);

/// max_j |d_x^j phi| for j = 0..j_max (spectral derivatives).
std::vector<double> sup_derivative_norms(const FrontState& state, int j_max);

/// (2 - alpha) t phi_t + x phi_x with x centered at the domain midpoint.
/// rhs_value must carry phi_t at the same time as state.
FrontState scaling_field(const FrontState& state, const FrontState& rhs_value, const Params& params);

struct DecayFit {
  double t1;
  double t2;
  double slope;     ///< of log y against log(t + 1)
  double intercept;
  double residual;  ///< root mean square of the log-log residuals
  int samples;
};

/// Least squares over the samples with t in [t1, t2]. Requires t1 >= 1,
/// t2 > t1 and at least 10 samples in the window.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& series, double t1, double t2);

struct DiagnosticsConfig {
  std::vector<double> sobolev_s{0.0, 2.0, 4.0};
  int r = 8;                    ///< Z-norm weight and sup_dx up to r + 1
  double scaling_s = 2.0;       ///< Sobolev index for ||S phi||
  bool lp_energies = true;

  bool operator==(const DiagnosticsConfig&) const = default;
};

struct DiagnosticsRecord {
  std::int64_t step = 0;
  double t = 0.0;
  double l2_norm = 0.0;
  double mean = 0.0;
  std::vector<std::pair<double, double>> sobolev;  ///< (s, ||phi||_{H^s})
  int r = 8;
  double z_norm = 0.0;
  std::vector<double> sup_dx;  ///< j = 0..r+1
  double scaling_field_hr = 0.0;
  std::vector<std::pair<int, double>> lp_energies;  ///< first entry is the low tail P_{<= low}
  double max_slope = 0.0;
  std::vector<std::pair<std::string, double>> extra;
};

inline constexpr const char* kDiagnosticsSchema = "gsqg.diagnostics/1";

/// rhs_value is phi_t at the state's time (used for S phi).
DiagnosticsRecord diagnostics_record(const FrontState& state, const FrontState& rhs_value, const Params& params,
                                     const DiagnosticsConfig& cfg, std::int64_t step = 0);

/// One flat JSON object on a single line, numbers with 17 significant digits.
/// Keys: schema, step, t, l2_norm, mean, sobolev_<s>, z_norm, z_r, sup_dx_<j>,
/// scaling_field_hr, lp_low, lp_<k>, max_slope, then the extra entries.
std::string to_ndjson(const DiagnosticsRecord& rec);

/// %.17g
std::string format_number(double v);

}  // namespace gsqg
