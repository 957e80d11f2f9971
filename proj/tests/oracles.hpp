#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gsqg/spectral.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Lanczos (g = 7, n = 9) with reflection; independent of std::tgamma.
inline double gamma(double z) {
  static const double c[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma(1.0 - z));
  z -= 1.0;
  double x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// c_k = (1/N) sum_j v_j e^{-2 pi i j k / N}, long-double accumulation.
inline std::vector<cplx> direct_dft(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double re = 0, im = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * k) % n) / n;
      re += v[j] * std::cos(ang);
      im += v[j] * std::sin(ang);
    }
    out[k] = cplx(static_cast<double>(re / n), static_cast<double>(im / n));
  }
  return out;
}

/// Real field with random coefficients on signed modes 1..kmax (zero mean).
inline std::vector<double> random_field(const gsqg::Grid& g, int kmax, std::uint64_t seed, double amp = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<cplx> c(g.size(), cplx(0, 0));
  for (int m = 1; m <= kmax; ++m) {
    const cplx z(nd(rng), nd(rng));
    c[g.index(m)] = amp * z / static_cast<double>(kmax);
    c[g.index(-m)] = std::conj(amp * z / static_cast<double>(kmax));
  }
  std::vector<double> v(g.size());
  for (int j = 0; j < g.size(); ++j) {
    cplx s = 0;
    for (int k = 0; k < g.size(); ++k)
      s += c[k] * std::polar(1.0, 2.0 * std::numbers::pi * g.mode(k) * j / g.size());
    v[j] = s.real();
  }
  return v;
}

/// Coefficients of a*b*c on modes |m| < N/2 by direct discrete convolution.
inline std::vector<cplx> direct_triple(const gsqg::Grid& g, const std::vector<cplx>& a, const std::vector<cplx>& b,
                                       const std::vector<cplx>& c) {
  const int n = g.size();
  std::vector<cplx> out(n, cplx(0, 0));
  for (int i = 0; i < n; ++i) {
    if (i == n / 2 || a[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == n / 2 || b[j] == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (k == n / 2 || c[k] == 0.0) continue;
        const int m = g.mode(i) + g.mode(j) + g.mode(k);
        if (std::abs(m) >= n / 2) continue;
        out[g.index(m)] += a[i] * b[j] * c[k];
      }
    }
  }
  return out;
}

inline double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / (den > 0 ? den : 1.0));
}

inline double rel_l2(std::span<const double> a, std::span<const double> b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / (den > 0 ? den : 1.0));
}

inline double max_abs(std::span<const double> a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace oracle
