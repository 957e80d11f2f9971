#include "gsqg/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "gsqg/errors.hpp"

namespace gsqg::quad {

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  if (n < 1) throw InvalidInput("gauss_legendre: n must be positive");
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot) return *slot;
  auto rule = std::make_unique<GaussRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[n - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->nodes[n / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

std::vector<Panel> geometric_panels(double lo, double hi, double ratio) {
  std::vector<Panel> out;
  if (!(lo > 0.0) || !(hi > lo) || !(ratio > 1.0)) return out;
  double a = lo;
  while (a < hi) {
    const double b = std::min(hi, a * ratio);
    out.push_back({a, b});
    a = b;
  }
  return out;
}

std::vector<Panel> uniform_panels(double a, double b, double h) {
  std::vector<Panel> out;
  if (!(b > a)) return out;
  const int m = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  const double w = (b - a) / m;
  for (int i = 0; i < m; ++i) out.push_back({a + i * w, i + 1 == m ? b : a + (i + 1) * w});
  return out;
}

std::vector<Panel> tail_panels(double a, double stop, double ratio, double max_width) {
  std::vector<Panel> out;
  while (a < stop) {
    const double b = a + std::min(a * (ratio - 1.0), max_width);
    out.push_back({a, b});
    a = b;
  }
  return out;
}

double integrate(const std::vector<Panel>& panels, const GaussRule& rule, const std::function<double(double)>& f) {
  double total = 0.0;
  for (const auto& p : panels) {
    const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * s;
  }
  return total;
}

Estimate integrate_pair(const std::vector<Panel>& panels, const GaussRule& fine, const GaussRule& coarse,
                        const std::function<double(double)>& f) {
  const double v = integrate(panels, fine, f);
  const double c = integrate(panels, coarse, f);
  return {v, std::abs(v - c)};
}

namespace {
// sum_{m >= a} (m L + c)^{-q}, a L + c > 0
double one_sided(double c, double period, int a, double q) {
  double sum = 0.0;
  const int direct = 24;
  for (int m = a; m < a + direct; ++m) sum += std::pow(m * period + c, -q);
  const double x = (a + direct) * period + c;
  const double g = std::pow(x, -q);
  // Euler-Maclaurin in the summation index: d/dm = period * d/dx
  const double g1 = -q * period * g / x;
  const double g3 = -q * (q + 1) * (q + 2) * std::pow(period, 3) * g / (x * x * x);
  const double g5 = -q * (q + 1) * (q + 2) * (q + 3) * (q + 4) * std::pow(period, 5) * g / std::pow(x, 5);
  sum += x * g / (period * (q - 1.0)) + 0.5 * g - g1 / 12.0 + g3 / 720.0 - g5 / 30240.0;
  return sum;
}
}  // namespace

double lattice_tail(double s, double period, int first, double q) {
  return one_sided(s, period, first, q) + one_sided(-s, period, first, q);
}

}  // namespace gsqg::quad
