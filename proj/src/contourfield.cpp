#include "gsqg/contourfield.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gsqg/errors.hpp"
#include "gsqg/fft.hpp"
#include "gsqg/parallel.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

double shear_velocity(double y, const Params& params) {
  if (y == 0.0) return 0.0;
  return params.theta() * params.C_prime() * std::pow(std::abs(y), params.alpha() - 1.0);
}

FrontGeometry::FrontGeometry(FrontState profile, double h, Params params)
    : profile_(std::move(profile)), h_(h), params_(params) {
  double lo = INFINITY;
  for (double v : profile_.values()) lo = std::min(lo, v);
  if (!std::isfinite(h_) || !(-h_ < lo)) throw InvalidInput("front geometry: offset h must satisfy -h < min phi");
}

double FrontGeometry::default_offset(const FrontState& profile) {
  double m = 0.0;
  for (double v : profile.values()) m = std::max(m, std::abs(v));
  return 2.0 * (1.0 + m);
}

namespace {

// Targets share the node set; shift(s, phi_s, dphi_s) fills phi(x_j + s) and
// phi_x(x_j + s) for every target j.
struct Targets {
  std::vector<double> y;
  std::vector<double> phi;    // phi(x_j)
  std::vector<double> phi_x;  // phi_x(x_j)
  std::vector<char> on_curve;
  std::function<void(double, std::vector<double>&, std::vector<double>&)> shift;
};

struct Sums {
  std::vector<double> u, v;
  double error;
};

Sums integrate_targets(const FrontGeometry& geom, const Targets& t, const QuadratureSpec& q) {
  const FrontState& prof = geom.profile();
  const Grid& g = prof.grid();
  q.validate(g);
  const Params& params = geom.params();
  const double L = g.length();
  const double p = params.alpha() / 2.0 - 1.0;
  const double h = geom.h();
  const std::size_t nt = t.y.size();

  double sup = 0.0;
  for (double v : prof.values()) sup = std::max(sup, std::abs(v));
  double reach = 0.0;
  for (std::size_t j = 0; j < nt; ++j) reach = std::max({reach, std::abs(t.y[j]) + sup, std::abs(t.y[j] + h)});
  const int images = detail::contour_images(q, L, reach);
  const double ratio = std::pow(reach / ((images + 0.5) * L), 2);
  int terms = 1;
  for (double r = ratio; r > 1e-18 && terms < 60; r *= ratio) ++terms;
  std::vector<double> binom(terms + 1, 1.0);
  for (int n = 1; n <= terms; ++n) binom[n] = params.c(n);

  // Discarded core [-delta, delta].
  const double delta = q.inner_cutoff;
  std::vector<double> core_u(nt), core_v(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const double hh = t.y[j] + h;
    if (t.on_curve[j]) {
      const double c = 2.0 * std::pow(delta, 2.0 * p + 1.0) / (2.0 * p + 1.0) * std::pow(1.0 + t.phi_x[j] * t.phi_x[j], p);
      core_u[j] = c - 2.0 * delta * std::pow(hh * hh, p);
      core_v[j] = t.phi_x[j] * c;
    } else {
      const double d2 = std::pow(t.y[j] - t.phi[j], 2);
      core_u[j] = 2.0 * delta * (std::pow(d2, p) - std::pow(hh * hh, p));
      core_v[j] = 2.0 * delta * t.phi_x[j] * std::pow(d2, p);
    }
  }

  std::vector<double> fu(nt), fv(nt), cu(nt), cv(nt);
  double err = 0.0;
  bool ok = false;
  for (int refine = 0; refine < 3 && !ok; ++refine) {
    const auto nodes = detail::contour_nodes(g, q, refine);
    constexpr std::size_t kChunk = 64;
    const std::size_t n_chunks = (nodes.size() + kChunk - 1) / kChunk;
    std::vector<std::array<std::vector<double>, 4>> parts(n_chunks);
    parallel_chunks(n_chunks, [&](std::size_t chunk) {
      std::array<std::vector<double>, 4> acc;
      for (auto& a : acc) a.assign(nt, 0.0);
      std::vector<double> ps(nt), dps(nt), lt(terms + 1);
      const std::size_t end = std::min(nodes.size(), (chunk + 1) * kChunk);
      for (std::size_t i = chunk * kChunk; i < end; ++i) {
        const double s = nodes[i].s, w = nodes[i].w;
        t.shift(s, ps, dps);
        for (int n = 0; n <= terms; ++n) lt[n] = quad::lattice_tail(s, L, images + 1, 2.0 * n - 2.0 * p);
        auto& au = acc[nodes[i].rule == 0 ? 0 : 2];
        auto& av = acc[nodes[i].rule == 0 ? 1 : 3];
        for (std::size_t j = 0; j < nt; ++j) {
          const double d2 = std::pow(t.y[j] - ps[j], 2);
          const double hh2 = std::pow(t.y[j] + h, 2);
          double ku = 0.0, kv = 0.0;
          for (int m = -images; m <= images; ++m) {
            const double z = s + m * L;
            const double z2 = z * z;
            const double a = std::pow(z2 + d2, p);
            ku += a - std::pow(z2 + hh2, p);
            kv += a;
          }
          double dp = 1.0, hp = 1.0;
          kv += lt[0];
          for (int n = 1; n <= terms; ++n) {
            dp *= d2;
            hp *= hh2;
            ku += binom[n] * (dp - hp) * lt[n];
            kv += binom[n] * dp * lt[n];
          }
          au[j] += w * ku;
          av[j] += w * dps[j] * kv;
        }
      }
      parts[chunk] = std::move(acc);
    });
    std::fill(fu.begin(), fu.end(), 0.0);
    std::fill(fv.begin(), fv.end(), 0.0);
    std::fill(cu.begin(), cu.end(), 0.0);
    std::fill(cv.begin(), cv.end(), 0.0);
    for (const auto& part : parts)
      for (std::size_t j = 0; j < nt; ++j) {
        fu[j] += part[0][j];
        fv[j] += part[1][j];
        cu[j] += part[2][j];
        cv[j] += part[3][j];
      }
    err = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      err = std::max({err, std::abs(fu[j] - cu[j]), std::abs(fv[j] - cv[j])});
      scale = std::max({scale, std::abs(fu[j]), std::abs(fv[j])});
    }
    err *= std::abs(params.theta());
    scale *= std::abs(params.theta());
    ok = err <= q.tolerance * scale || err <= 1e-300;
  }
  if (!ok) throw AccuracyError("perturbation velocity: quadrature tolerance not reached", err);

  Sums out{std::vector<double>(nt), std::vector<double>(nt), err};
  for (std::size_t j = 0; j < nt; ++j) {
    out.u[j] = -params.theta() * (fu[j] + core_u[j]);
    out.v[j] = -params.theta() * (fv[j] + core_v[j]);
  }
  return out;
}

Spectrum clean_spectrum(const FrontState& s) {
  Spectrum c = s.spectrum();
  c[s.grid().nyquist_index()] = 0.0;
  return c;
}

}  // namespace

PerturbationVelocity perturbation_velocity(const FrontGeometry& geom, double x, double y, const QuadratureSpec& quad) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw InvalidInput("perturbation_velocity: non-finite point");
  const Grid& g = geom.profile().grid();
  const Spectrum c = clean_spectrum(geom.profile());
  const int n = g.size();
  // c_k e^{i xi_k x}
  Spectrum cx(n);
  for (int k = 0; k < n; ++k) cx[k] = c[k] * std::polar(1.0, g.frequency(k) * x);
  auto eval = [&](double s, double& v, double& dv) {
    double a = 0.0, b = 0.0;
    for (int k = 0; k < n; ++k) {
      const cplx z = cx[k] * std::polar(1.0, g.frequency(k) * s);
      a += z.real();
      b -= g.frequency(k) * z.imag();
    }
    v = a;
    dv = b;
  };
  Targets t;
  double px, pxx;
  eval(0.0, px, pxx);
  const bool on = std::abs(y - px) <= quad.inner_cutoff;
  t.y = {on ? px : y};
  t.phi = {px};
  t.phi_x = {pxx};
  t.on_curve = {static_cast<char>(on)};
  t.shift = [&](double s, std::vector<double>& ps, std::vector<double>& dps) { eval(s, ps[0], dps[0]); };
  const auto r = integrate_targets(geom, t, quad);
  return {r.u[0], r.v[0], r.error};
}

CurveVelocity curve_velocity(const FrontGeometry& geom, const QuadratureSpec& quad) {
  const FrontState& prof = geom.profile();
  const Grid& g = prof.grid();
  const int n = g.size();
  const Spectrum c = clean_spectrum(prof);
  Spectrum packed0(n);
  for (int k = 0; k < n; ++k) packed0[k] = c[k] * (1.0 - g.frequency(k));  // phi_hat + i (i xi phi_hat)
  Targets t;
  t.y.resize(n);
  t.phi.resize(n);
  t.on_curve.assign(n, 1);
  const FrontState d = derivative(prof, 1);
  t.phi_x.assign(d.values().begin(), d.values().end());
  {
    Spectrum field(n);
    fft::backward(packed0, field);
    for (int j = 0; j < n; ++j) t.y[j] = t.phi[j] = field[j].real();
  }
  t.shift = [&](double s, std::vector<double>& ps, std::vector<double>& dps) {
    Spectrum packed(n), field(n);
    for (int k = 0; k < n; ++k) packed[k] = packed0[k] * std::polar(1.0, g.frequency(k) * s);
    fft::backward(packed, field);
    for (int j = 0; j < n; ++j) {
      ps[j] = field[j].real();
      dps[j] = field[j].imag();
    }
  };
  auto r = integrate_targets(geom, t, quad);
  return {std::move(r.u), std::move(r.v), r.error};
}

ScaleidResult scaleid_check(double c, double alpha, double tol) {
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("scaleid_check: c must be nonzero and finite");
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("scaleid_check: alpha must lie in (1,2)");
  if (!(tol > 0.0)) throw InvalidInput("scaleid_check: tol must be positive");
  c = std::abs(c);
  const double p = alpha / 2.0 - 1.0;
  const double rhs = scaleid_constant(alpha) * (1.0 - std::pow(c, alpha - 1.0));
  if (c == 1.0) return {0.0, rhs, std::abs(rhs), 0.0};
  const double c2 = c * c;
  auto f = [p, c2](double s) { return std::pow(s * s + 1.0, p) - std::pow(s * s + c2, p); };
  const double big = std::max(1.0, c);
  const double z = 4.0 * big;
  // \int_Z^inf: sum_n binom(p, n) (1 - c^{2n}) s^{2p - 2n}, |c| / s <= 1/4
  double tail = 0.0, cn = 1.0, coef = 1.0;
  for (int n = 1; n < 200; ++n) {
    coef *= (p - n + 1.0) / n;
    cn *= c2;
    const double e = 2.0 * p - 2.0 * n + 1.0;
    const double term = coef * (1.0 - cn) * std::pow(z, e) / (-e);
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
  }
  const auto& fine = quad::gauss_legendre(20);
  const auto& coarse = quad::gauss_legendre(12);
  double achieved = INFINITY;
  for (int level = 0; level < 6; ++level) {
    const double w = std::ldexp(0.25 * std::min(1.0, c), -level);
    auto panels = quad::uniform_panels(0.0, z, w);
    const auto est = quad::integrate_pair(panels, fine, coarse, f);
    const double lhs = est.value + tail;
    achieved = est.error;
    if (achieved <= tol * std::max(1.0, std::abs(lhs))) return {lhs, rhs, std::abs(lhs - rhs), achieved};
  }
  throw AccuracyError("scaleid_check: tolerance not reached", achieved);
}

double kinematic_residual(const FrontGeometry& geom, const FrontState& rhs_value, const QuadratureSpec& quad) {
  const FrontState& prof = geom.profile();
  require_same_grid(prof.grid(), rhs_value.grid(), "kinematic_residual");
  const auto vel = curve_velocity(geom, quad);
  const FrontState d = derivative(prof, 1);
  double res = 0.0;
  for (int j = 0; j < prof.grid().size(); ++j) {
    const double u = shear_velocity(prof[j] + geom.h(), geom.params()) + vel.u_star[j];
    res = std::max(res, std::abs(rhs_value[j] - (vel.v_star[j] - u * d[j])));
  }
  return res;
}

}  // namespace gsqg
