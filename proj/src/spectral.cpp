#include "gsqg/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/fft.hpp"
#include "gsqg/kernels.hpp"

namespace gsqg {

Grid::Grid(int n_points, double length) : n_(n_points), length_(length) {
  if (n_points < 8 || n_points % 2 != 0)
    throw InvalidInput("grid: n_points must be even and >= 8, got " + std::to_string(n_points));
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidInput("grid: length must be positive and finite");
}

double Grid::frequency(int k) const noexcept { return 2.0 * std::numbers::pi * mode(k) / length_; }

double Grid::max_resolved_frequency() const noexcept { return 2.0 * std::numbers::pi * (n_ / 2 - 1) / length_; }

FrontState::FrontState(Grid grid, std::vector<double> values, double time)
    : grid_(grid),
      values_(std::make_shared<const std::vector<double>>(std::move(values))),
      time_(time),
      cache_(std::make_shared<Cache>()) {
  if (static_cast<int>(values_->size()) != grid_.size())
    throw GridMismatch("front state: " + std::to_string(values_->size()) + " samples for a grid of " +
                       std::to_string(grid_.size()));
}

FrontState FrontState::from_spectrum(const Grid& grid, std::span<const cplx> spectrum, double time) {
  if (static_cast<int>(spectrum.size()) != grid.size()) throw GridMismatch("spectrum length does not match grid");
  return FrontState(grid, transform_inverse(spectrum), time);
}

FrontState FrontState::from_function(const Grid& grid, const std::function<double(double)>& f, double time) {
  std::vector<double> v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.x(j));
  return FrontState(grid, std::move(v), time);
}

const Spectrum& FrontState::spectrum() const {
  std::call_once(cache_->once, [this] { cache_->data = transform_forward(*values_); });
  return cache_->data;
}

FrontState FrontState::with_time(double t) const {
  FrontState copy = *this;
  copy.time_ = t;
  return copy;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw GridMismatch(std::string(where) + ": operands live on different grids");
}

Spectrum transform_forward(const FrontState& state) { return state.spectrum(); }

Spectrum transform_forward(std::span<const double> values) {
  Spectrum buf(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]))
      throw InvalidInput("transform_forward: non-finite sample at index " + std::to_string(j));
    buf[j] = cplx(values[j], 0.0);
  }
  Spectrum out(values.size());
  fft::forward(buf, out);
  return out;
}

std::vector<double> transform_inverse(std::span<const cplx> spectrum) {
  Spectrum buf(spectrum.size());
  fft::backward(spectrum, buf);
  std::vector<double> out(spectrum.size());
  for (std::size_t j = 0; j < spectrum.size(); ++j) out[j] = buf[j].real();
  return out;
}

std::vector<double> sample_symbol(const Grid& grid, const std::function<double(double)>& symbol) {
  std::vector<double> m(grid.size());
  for (int k = 0; k < grid.size(); ++k) m[k] = k == grid.nyquist_index() ? 0.0 : symbol(grid.frequency(k));
  return m;
}

Spectrum apply_symbol(std::span<const cplx> spectrum, std::span<const double> symbol) {
  Spectrum out(spectrum.size());
  kernels::scale_complex(spectrum, symbol, out);
  return out;
}

Spectrum apply_imag_symbol(std::span<const cplx> spectrum, std::span<const double> symbol) {
  Spectrum out(spectrum.size());
  kernels::scale_complex(spectrum, symbol, out);
  for (auto& v : out) v = cplx(-v.imag(), v.real());
  return out;
}

std::vector<double> fractional_symbol(const Grid& grid, double s) {
  return sample_symbol(grid, [s](double xi) {
    if (xi == 0.0) return s == 0.0 ? 1.0 : 0.0;
    return std::pow(std::abs(xi), s);
  });
}

FrontState fractional_derivative(const FrontState& state, double s) {
  if (!std::isfinite(s)) throw InvalidInput("fractional_derivative: non-finite order");
  std::vector<double> m = fractional_symbol(state.grid(), s);
  // s <= 0: the zero mode is mapped to 0 by convention.
  if (s <= 0.0) m[0] = 0.0;
  return FrontState::from_spectrum(state.grid(), apply_symbol(state.spectrum(), m), state.time());
}

FrontState derivative(const FrontState& state, int order) {
  if (order < 0) throw InvalidInput("derivative: negative order");
  const Grid& g = state.grid();
  Spectrum c = state.spectrum();
  for (int k = 0; k < g.size(); ++k) {
    if (k == g.nyquist_index() && order > 0) {
      c[k] = 0.0;
      continue;
    }
    const double xi = g.frequency(k);
    cplx f(1.0, 0.0);
    for (int p = 0; p < order; ++p) f *= cplx(0.0, xi);
    c[k] *= f;
  }
  return FrontState::from_spectrum(g, c, state.time());
}

// ---------------------------------------------------------------------------
// Littlewood-Paley
// ---------------------------------------------------------------------------

namespace {
double bump_f(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

double lp_psi(double xi) {
  const double a = std::abs(xi);
  constexpr double lo = 1.25, hi = 1.6;
  if (a <= lo) return 1.0;
  if (a >= hi) return 0.0;
  const double t = (a - lo) / (hi - lo);
  const double p = bump_f(1.0 - t), q = bump_f(t);
  return p / (p + q);
}

double lp_psi_le(double xi, int k) { return lp_psi(std::ldexp(xi, -k)); }

double lp_psi_k(double xi, int k) { return lp_psi(std::ldexp(xi, -k)) - lp_psi(std::ldexp(xi, -(k - 1))); }

double lp_psi_integral() {
  // The blend satisfies b(t) + b(1-t) = 1, so it integrates to half the
  // transition width.
  return 2.0 * (1.25 + 0.5 * (1.6 - 1.25));
}

LpRange lp_range(const Grid& grid) {
  const double xi1 = 2.0 * std::numbers::pi / grid.length();
  const double xmax = grid.max_resolved_frequency();
  int low = static_cast<int>(std::floor(std::log2(xi1 / 1.6)));
  while (lp_psi_le(xi1, low) != 0.0) --low;
  int high = static_cast<int>(std::ceil(std::log2(xmax / 1.25)));
  while (lp_psi_le(xmax, high) != 1.0) ++high;
  return {low, high};
}

namespace {
FrontState lp_apply(const FrontState& state, const std::function<double(double)>& psi) {
  const auto m = sample_symbol(state.grid(), psi);
  return FrontState::from_spectrum(state.grid(), apply_symbol(state.spectrum(), m), state.time());
}

double lp_share(const FrontState& state, const std::function<double(double)>& psi) {
  const Grid& g = state.grid();
  const Spectrum& c = state.spectrum();
  double sum = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    if (k == g.nyquist_index()) continue;
    sum += psi(g.frequency(k)) * std::norm(c[k]);
  }
  return std::sqrt(g.length() * sum);
}
}  // namespace

FrontState lp_project(const FrontState& state, int k) {
  return lp_apply(state, [k](double xi) { return lp_psi_k(xi, k); });
}

FrontState lp_project_low(const FrontState& state, int k) {
  return lp_apply(state, [k](double xi) { return lp_psi_le(xi, k); });
}

double lp_norm(const FrontState& state, int k) {
  const Grid& g = state.grid();
  const Spectrum& c = state.spectrum();
  double sum = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    if (j == g.nyquist_index()) continue;
    const double p = lp_psi_k(g.frequency(j), k);
    sum += p * p * std::norm(c[j]);
  }
  return std::sqrt(g.length() * sum);
}

double lp_energy(const FrontState& state, int k) {
  return lp_share(state, [k](double xi) { return lp_psi_k(xi, k); });
}

double lp_energy_low(const FrontState& state, int k) {
  return lp_share(state, [k](double xi) { return lp_psi_le(xi, k); });
}

// ---------------------------------------------------------------------------
// Dealiasing
// ---------------------------------------------------------------------------

Spectrum pad_spectrum(std::span<const cplx> spectrum, int m) {
  const int n = static_cast<int>(spectrum.size());
  if (m < n) throw InvalidInput("pad_spectrum: target grid smaller than source");
  Spectrum out(m, cplx(0.0, 0.0));
  out[0] = spectrum[0];
  for (int q = 1; q < n / 2; ++q) {
    out[q] = spectrum[q];
    out[m - q] = spectrum[n - q];
  }
  return out;
}

Spectrum truncate_spectrum(std::span<const cplx> padded, int n) {
  const int m = static_cast<int>(padded.size());
  if (m < n) throw InvalidInput("truncate_spectrum: target grid larger than source");
  Spectrum out(n, cplx(0.0, 0.0));
  out[0] = padded[0];
  for (int q = 1; q < n / 2; ++q) {
    out[q] = padded[q];
    out[n - q] = padded[m - q];
  }
  return out;
}

FrontState dealias_product(const FrontState& a, const FrontState& b, const FrontState& c) {
  require_same_grid(a.grid(), b.grid(), "dealias_product");
  require_same_grid(a.grid(), c.grid(), "dealias_product");
  const int n = a.grid().size();
  const int m = 2 * n;
  auto to_padded = [m](const FrontState& s) { return transform_inverse(pad_spectrum(s.spectrum(), m)); };
  const auto pa = to_padded(a), pb = to_padded(b), pc = to_padded(c);
  std::vector<double> prod(m);
  kernels::mul3(pa, pb, pc, prod);
  const Spectrum full = transform_forward(prod);
  return FrontState::from_spectrum(a.grid(), truncate_spectrum(full, n), a.time());
}

}  // namespace gsqg
