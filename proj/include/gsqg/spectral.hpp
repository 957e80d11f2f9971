#pragma once

// Periodic-grid Fourier substrate.
//
// A field on [0, L) sampled at x_j = j L / N is represented by coefficients
// c_k with phi(x_j) = sum_k c_k exp(i xi_k x_j), xi_k = 2 pi m_k / L and
// m_k in {-N/2+1, ..., N/2}. This is the discrete analogue of
// f(x) = \int \hat f(xi) e^{i xi x} d xi; the continuum density is
// \hat f(xi_k) ~ (L / 2 pi) c_k.
//
// Coefficients are stored in FFT order (k = 0..N-1, m_k = k for k <= N/2 and
// k - N otherwise). Index N/2 is the unpaired Nyquist mode; every multiplier
// in this module maps it to zero.

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace gsqg {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

class Grid {
 public:
  /// n_points must be even and >= 8, length positive and finite.
  Grid(int n_points, double length);

  int size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / n_; }
  double x(int j) const noexcept { return j * dx(); }
  /// Coordinate measured from the domain midpoint, in [-L/2, L/2).
  double centered_x(int j) const noexcept { return x(j) - 0.5 * length_; }

  int nyquist_index() const noexcept { return n_ / 2; }
  /// Signed integer wavenumber of storage slot k.
  int mode(int k) const noexcept { return k <= n_ / 2 ? k : k - n_; }
  /// Storage slot of signed mode m (|m| <= N/2).
  int index(int m) const noexcept { return m >= 0 ? m : m + n_; }
  double frequency(int k) const noexcept;
  /// Largest |xi| carried by a paired (non-Nyquist) mode.
  double max_resolved_frequency() const noexcept;

  bool operator==(const Grid& other) const noexcept = default;

 private:
  int n_;
  double length_;
};

/// Front profile phi(., t): real samples plus a lazily computed spectrum.
/// Values are immutable; copies share the spectrum cache.
class FrontState {
 public:
  FrontState(Grid grid, std::vector<double> values, double time = 0.0);

  static FrontState from_spectrum(const Grid& grid, std::span<const cplx> spectrum, double time = 0.0);
  static FrontState from_function(const Grid& grid, const std::function<double(double)>& f, double time = 0.0);

  const Grid& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  std::span<const double> values() const noexcept { return *values_; }
  double operator[](int j) const noexcept { return (*values_)[j]; }

  /// Spectrum consistent with values(); computed once, thread-safe.
  const Spectrum& spectrum() const;

  FrontState with_time(double t) const;

 private:
  struct Cache {
    std::once_flag once;
    Spectrum data;
  };
  Grid grid_;
  std::shared_ptr<const std::vector<double>> values_;
  double time_;
  std::shared_ptr<Cache> cache_;
};

/// Throws GridMismatch if the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

/// Coefficients c_k; throws InvalidInput on non-finite samples.
Spectrum transform_forward(const FrontState& state);
Spectrum transform_forward(std::span<const double> values);
/// Real samples from coefficients (imaginary residue discarded).
std::vector<double> transform_inverse(std::span<const cplx> spectrum);

// ---------------------------------------------------------------------------
// Fourier multipliers
// ---------------------------------------------------------------------------

/// Real symbol m(xi) sampled on the grid, Nyquist slot zeroed.
std::vector<double> sample_symbol(const Grid& grid, const std::function<double(double)>& symbol);

/// out_k = c_k * m_k
Spectrum apply_symbol(std::span<const cplx> spectrum, std::span<const double> symbol);
/// out_k = i * c_k * m_k
Spectrum apply_imag_symbol(std::span<const cplx> spectrum, std::span<const double> symbol);

/// |d_x|^s phi. The zero mode is mapped to 0 whenever s <= 0; for s < 0 this
/// is the convention for the otherwise singular symbol |xi|^s.
FrontState fractional_derivative(const FrontState& state, double s);
std::vector<double> fractional_symbol(const Grid& grid, double s);

/// d_x^j phi, spectral.
FrontState derivative(const FrontState& state, int order = 1);

// ---------------------------------------------------------------------------
// Littlewood-Paley decomposition
// ---------------------------------------------------------------------------

/// Base cutoff: 1 on |xi| <= 5/4, 0 on |xi| >= 8/5, smooth monotone blend
/// f(1-t)/(f(1-t)+f(t)), f(u) = exp(-1/u), t = (|xi| - 5/4)/(8/5 - 5/4).
double lp_psi(double xi);
/// psi_{<=k}(xi) = psi(xi / 2^k)
double lp_psi_le(double xi, int k);
/// psi_k(xi) = psi(xi / 2^k) - psi(xi / 2^{k-1})
double lp_psi_k(double xi, int k);
/// \int_R psi(xi) d xi
double lp_psi_integral();

struct LpRange {
  int low;   ///< P_{<= low} carries the zero mode and nothing else
  int high;  ///< psi_{<= high} = 1 on every resolved frequency
};
LpRange lp_range(const Grid& grid);

FrontState lp_project(const FrontState& state, int k);
FrontState lp_project_low(const FrontState& state, int k);
/// ||P_k phi||_{L2}
double lp_norm(const FrontState& state, int k);
/// (L sum_xi psi_k(xi) |c(xi)|^2)^{1/2}: block k's share of the L2 norm under
/// the partition of unity. The squared shares of the blocks low+1..high plus
/// the low tail sum to ||phi||_{L2}^2 exactly (the squared projection norms
/// do not, because neighbouring psi_k overlap).
double lp_energy(const FrontState& state, int k);
double lp_energy_low(const FrontState& state, int k);

// ---------------------------------------------------------------------------
// Dealiasing
// ---------------------------------------------------------------------------

/// Zero-pads coefficients of an N-grid into an M-grid (M >= N), dropping the
/// Nyquist slot.
Spectrum pad_spectrum(std::span<const cplx> spectrum, int m);
/// Keeps the modes |m| < N/2 of an M-grid spectrum.
Spectrum truncate_spectrum(std::span<const cplx> padded, int n);

/// Pointwise product a*b*c evaluated on a 2N grid and truncated back to the
/// resolved modes; exact for band-limited inputs (no aliasing into |m| < N/2).
FrontState dealias_product(const FrontState& a, const FrontState& b, const FrontState& c);

}  // namespace gsqg
