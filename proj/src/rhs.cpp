#include "gsqg/rhs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gsqg/errors.hpp"
#include "gsqg/fft.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/parallel.hpp"
#include "gsqg/quadrature.hpp"
#include "gsqg/symbols.hpp"

namespace gsqg {

std::string_view to_string(RhsMode mode) {
  switch (mode) {
    case RhsMode::kContour:
      return "contour";
    case RhsMode::kCubicSpectral:
      return "cubic_spectral";
    case RhsMode::kCubicConvolutionOracle:
      return "cubic_convolution_oracle";
    case RhsMode::kLinear:
      return "linear";
  }
  return "unknown";
}

RhsMode rhs_mode_from_string(std::string_view name) {
  for (RhsMode m : {RhsMode::kContour, RhsMode::kCubicSpectral, RhsMode::kCubicConvolutionOracle, RhsMode::kLinear})
    if (to_string(m) == name) return m;
  throw InvalidInput("unknown rhs mode '" + std::string(name) + "'");
}

void QuadratureSpec::validate(const Grid& grid) const {
  std::string bad;
  if (!(inner_cutoff > 0.0) || !(inner_cutoff < 0.5 * grid.length()))
    bad += " inner_cutoff must lie in (0, L/2);";
  if (!(growth_ratio > 1.0)) bad += " growth_ratio must exceed 1;";
  if (direct_images < 0) bad += " direct_images must be >= 0;";
  if (!(tolerance >= 1e-12)) bad += " tolerance must be >= 1e-12;";
  if (gl_order < 4 || gl_order > 64) bad += " gl_order must lie in [4, 64];";
  if (!(panel_width > 0.0)) bad += " panel_width must be positive;";
  if (!bad.empty()) throw InvalidInput("quadrature spec:" + bad);
}

std::vector<double> linear_frequency(const Grid& grid, const Params& params) {
  const double c = -params.theta() * params.A();
  const double e = 1.0 - params.alpha();
  return sample_symbol(grid, [c, e](double xi) { return xi == 0.0 ? 0.0 : c * xi * std::pow(std::abs(xi), e); });
}

FrontState linear_term(const FrontState& state, const Params& params) {
  const auto w = linear_frequency(state.grid(), params);
  return FrontState::from_spectrum(state.grid(), apply_imag_symbol(state.spectrum(), w), state.time());
}

// ---------------------------------------------------------------------------
// Contour integral
// ---------------------------------------------------------------------------

namespace detail {

std::vector<ContourNode> contour_nodes(const Grid& grid, const QuadratureSpec& q, int refine) {
  const double half = 0.5 * grid.length();
  const double width = std::ldexp(q.panel_width * grid.dx(), -refine);
  const double s1 = std::min(width, half);
  auto panels = quad::geometric_panels(q.inner_cutoff, s1, std::pow(q.growth_ratio, std::ldexp(1.0, -refine)));
  const auto body = quad::uniform_panels(s1, half, width);
  panels.insert(panels.end(), body.begin(), body.end());
  const int coarse_order = std::max(2, std::min(q.gl_order - 2, (2 * q.gl_order) / 3));
  const quad::GaussRule* rules[2] = {&quad::gauss_legendre(q.gl_order), &quad::gauss_legendre(coarse_order)};
  std::vector<ContourNode> nodes;
  for (int r = 0; r < 2; ++r) {
    for (const auto& p : panels) {
      const double mid = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
      for (std::size_t i = 0; i < rules[r]->nodes.size(); ++i) {
        const double s = mid + h * rules[r]->nodes[i];
        const double w = h * rules[r]->weights[i];
        // mirrored pair keeps the discrete rule exactly reflection-symmetric
        nodes.push_back({s, w, r});
        nodes.push_back({-s, w, r});
      }
    }
  }
  return nodes;
}

// Images |m| <= M are summed exactly; the binomial tail needs reach < (M + 1/2) L / 4.
int contour_images(const QuadratureSpec& q, double length, double reach) {
  int images = q.direct_images;
  while ((images + 0.5) * length < 4.0 * reach) ++images;
  return images;
}

}  // namespace detail

ContourResult contour_rhs_detailed(const FrontState& state, const Params& params, const QuadratureSpec& q) {
  const Grid& g = state.grid();
  q.validate(g);
  const int n = g.size();
  const double L = g.length();
  const Spectrum& c = state.spectrum();
  const double p = params.alpha() / 2.0 - 1.0;

  // Spectra of phi and phi_x, Nyquist removed.
  Spectrum phi_hat(c.begin(), c.end()), dphi_hat(n);
  phi_hat[g.nyquist_index()] = 0.0;
  for (int k = 0; k < n; ++k) dphi_hat[k] = cplx(0.0, g.frequency(k)) * phi_hat[k];
  double amp = 0.0;
  for (int k = 1; k < n; ++k) amp += std::abs(phi_hat[k]);
  const double delta_max = 2.0 * amp;  // bound on |phi(x) - phi(x+z)|

  const int images = detail::contour_images(q, L, delta_max);
  const double ratio = std::pow(delta_max / ((images + 0.5) * L), 2);
  int terms = 1;
  for (double r = ratio; r > 1e-18 && terms < 40; r *= ratio) ++terms;
  std::vector<double> binom(terms + 1);
  for (int t = 1; t <= terms; ++t) binom[t] = params.c(t);

  double max_dx = 0.0, max_dxx = 0.0;
  {
    const auto d1 = transform_inverse(dphi_hat);
    Spectrum d2h(n);
    for (int k = 0; k < n; ++k) d2h[k] = cplx(0.0, g.frequency(k)) * dphi_hat[k];
    const auto d2 = transform_inverse(d2h);
    for (int j = 0; j < n; ++j) {
      max_dx = std::max(max_dx, std::abs(d1[j]));
      max_dxx = std::max(max_dxx, std::abs(d2[j]));
    }
  }
  // Discarded core: |D K| <= max|phi_xx| |p| max|phi_x|^2 |z|^{alpha-1}.
  const double core = 2.0 * max_dxx * std::abs(p) * max_dx * max_dx * std::pow(q.inner_cutoff, params.alpha()) /
                      params.alpha();

  std::vector<double> fine(n), coarse(n);
  double err = 0.0, scale = 0.0;
  for (int refine = 0; refine < 3; ++refine) {
    const auto nodes = detail::contour_nodes(g, q, refine);
    constexpr std::size_t kChunk = 64;
    const std::size_t n_chunks = (nodes.size() + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> part_f(n_chunks), part_c(n_chunks);
    parallel_chunks(n_chunks, [&](std::size_t chunk) {
      std::vector<double> acc_f(n, 0.0), acc_c(n, 0.0);
      Spectrum packed(n), field(n);
      std::vector<double> series(terms + 1);
      const std::size_t end = std::min(nodes.size(), (chunk + 1) * kChunk);
      for (std::size_t i = chunk * kChunk; i < end; ++i) {
        const double s = nodes[i].s;
        // (1 - e^{i xi s}) = 2 sin^2(xi s/2) - i sin(xi s): Delta + i D in one transform.
        for (int k = 0; k < n; ++k) {
          const double th = g.frequency(k) * s;
          const double sh = std::sin(0.5 * th);
          const cplx f(2.0 * sh * sh, -std::sin(th));
          packed[k] = f * (phi_hat[k] + cplx(0.0, 1.0) * dphi_hat[k]);
        }
        fft::backward(packed, field);
        for (int t = 1; t <= terms; ++t)
          series[t] = -binom[t] * quad::lattice_tail(s, L, images + 1, 2.0 * t - 2.0 * p);
        auto& acc = nodes[i].rule == 0 ? acc_f : acc_c;
        const double w = nodes[i].w;
        for (int j = 0; j < n; ++j) {
          const double dlt = field[j].real(), dd = field[j].imag();
          const double d2 = dlt * dlt;
          double kern = 0.0;
          for (int m = -images; m <= images; ++m) {
            const double z = s + m * L;
            const double z2 = z * z;
            kern -= std::pow(z2, p) * std::expm1(p * std::log1p(d2 / z2));
          }
          double pw = d2, tail = 0.0;
          for (int t = 1; t <= terms; ++t) {
            tail += series[t] * pw;
            pw *= d2;
          }
          acc[j] += w * dd * (kern + tail);
        }
      }
      part_f[chunk] = std::move(acc_f);
      part_c[chunk] = std::move(acc_c);
    });
    std::fill(fine.begin(), fine.end(), 0.0);
    std::fill(coarse.begin(), coarse.end(), 0.0);
    for (std::size_t ch = 0; ch < n_chunks; ++ch)
      for (int j = 0; j < n; ++j) {
        fine[j] += part_f[ch][j];
        coarse[j] += part_c[ch][j];
      }
    err = 0.0;
    scale = 0.0;
    for (int j = 0; j < n; ++j) {
      err = std::max(err, std::abs(params.theta()) * std::abs(fine[j] - coarse[j]));
      scale = std::max(scale, std::abs(params.theta() * fine[j]));
    }
    err += std::abs(params.theta()) * core;
    if (err <= q.tolerance * scale || err <= 1e-300) break;
  }
  if (!(err <= q.tolerance * scale || err <= 1e-300))
    throw AccuracyError("contour_rhs: quadrature tolerance not reached", scale > 0 ? err / scale : err);

  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = -params.theta() * fine[j];
  return {FrontState(g, std::move(out), state.time()), err};
}

FrontState contour_rhs(const FrontState& state, const Params& params, const QuadratureSpec& quad) {
  return contour_rhs_detailed(state, params, quad).value;
}

// ---------------------------------------------------------------------------
// Cubic term
// ---------------------------------------------------------------------------

namespace {

// Coefficients of d_x{phi^2 D phi - phi D(phi^2) + D(phi^3)/3}, D = |d_x|^{3-alpha},
// products evaluated on a 2N grid.
Spectrum bracket_spectrum(const Grid& g, std::span<const cplx> c, double alpha) {
  const int n = g.size(), m = 2 * n;
  const double pexp = 3.0 - alpha;
  const Grid padded(m, g.length());
  const auto dsym = fractional_symbol(padded, pexp);
  const Spectrum P = pad_spectrum(c, m);
  const auto phi = transform_inverse(P);
  const auto dphi = transform_inverse(apply_symbol(P, dsym));
  std::vector<double> phi2(m), phi3(m), one(m, 1.0);
  kernels::mul3(phi, phi, one, phi2);
  kernels::mul3(phi2, phi, one, phi3);
  const auto dphi2 = transform_inverse(apply_symbol(transform_forward(phi2), dsym));
  std::vector<double> a(m), b(m), prod(m);
  kernels::mul3(phi2, dphi, one, a);
  kernels::mul3(phi, dphi2, one, b);
  for (int j = 0; j < m; ++j) prod[j] = a[j] - b[j];
  Spectrum s = transform_forward(prod);
  const Spectrum s3 = apply_symbol(transform_forward(phi3), dsym);
  for (int k = 0; k < m; ++k) s[k] += s3[k] / 3.0;
  Spectrum out = truncate_spectrum(s, n);
  for (int k = 0; k < n; ++k) out[k] *= cplx(0.0, g.frequency(k));
  out[g.nyquist_index()] = 0.0;
  return out;
}

Spectrum oracle_spectrum(const Grid& g, std::span<const cplx> c, const Params& params) {
  const int n = g.size();
  if (n > 128) throw InvalidInput("cubic_convolution_oracle: refuses grids above 128 points (O(N^3))");
  const int h = n / 2;
  Spectrum out(n, cplx(0.0, 0.0));
  const double dk = 2.0 * std::numbers::pi / g.length();
  for (int m = -h + 1; m < h; ++m) {
    cplx acc(0.0, 0.0);
    for (int m1 = -h + 1; m1 < h; ++m1) {
      const cplx c1 = c[g.index(m1)];
      if (c1 == 0.0) continue;
      for (int m2 = -h + 1; m2 < h; ++m2) {
        const int m3 = m - m1 - m2;
        if (m3 <= -h || m3 >= h) continue;
        const double t = t1_prime({m1 * dk, m2 * dk, m3 * dk}, params.alpha());
        acc += t * c1 * c[g.index(m2)] * c[g.index(m3)];
      }
    }
    out[g.index(m)] = cplx(0.0, params.theta() * params.A_prime() * m * dk) * acc;
  }
  return out;
}

}  // namespace

FrontState cubic_bracket(const FrontState& state, double alpha) {
  return FrontState::from_spectrum(state.grid(), bracket_spectrum(state.grid(), state.spectrum(), alpha),
                                   state.time());
}

FrontState cubic_spectral_rhs(const FrontState& state, const Params& params) {
  Spectrum s = bracket_spectrum(state.grid(), state.spectrum(), params.alpha());
  for (auto& v : s) v *= params.cubic_K();
  return FrontState::from_spectrum(state.grid(), s, state.time());
}

FrontState cubic_convolution_oracle(const FrontState& state, const Params& params) {
  return FrontState::from_spectrum(state.grid(), oracle_spectrum(state.grid(), state.spectrum(), params),
                                   state.time());
}

Spectrum nonlinear_spectrum(const Grid& grid, std::span<const cplx> spectrum, const Params& params, RhsMode mode,
                            const QuadratureSpec& quad) {
  switch (mode) {
    case RhsMode::kLinear:
      return Spectrum(grid.size(), cplx(0.0, 0.0));
    case RhsMode::kCubicSpectral: {
      Spectrum s = bracket_spectrum(grid, spectrum, params.alpha());
      for (auto& v : s) v *= params.cubic_K();
      return s;
    }
    case RhsMode::kCubicConvolutionOracle:
      return oracle_spectrum(grid, spectrum, params);
    case RhsMode::kContour: {
      const FrontState st = FrontState::from_spectrum(grid, spectrum);
      Spectrum s = contour_rhs(st, params, quad).spectrum();
      s[grid.nyquist_index()] = 0.0;
      return s;
    }
  }
  return {};
}

FrontState full_rhs(const FrontState& state, const Params& params, RhsMode mode, const QuadratureSpec& quad) {
  const Grid& g = state.grid();
  Spectrum n = nonlinear_spectrum(g, state.spectrum(), params, mode, quad);
  const auto w = linear_frequency(g, params);
  const Spectrum l = apply_imag_symbol(state.spectrum(), w);
  for (int k = 0; k < g.size(); ++k) n[k] += l[k];
  return FrontState::from_spectrum(g, n, state.time());
}

}  // namespace gsqg
