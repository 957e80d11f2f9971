#pragma once

// Gauss-Legendre rules and the panel helpers shared by the singular-integral
// evaluators (T_n symbols, contour right-hand side, off-front velocities).

#include <functional>
#include <vector>

namespace gsqg::quad {

struct GaussRule {
  std::vector<double> nodes;    ///< on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on P_n), cached per n.
const GaussRule& gauss_legendre(int n);

struct Panel {
  double a;
  double b;
};

/// Geometric panels covering [lo, hi] (lo > 0), widths growing by `ratio`
/// away from lo.
std::vector<Panel> geometric_panels(double lo, double hi, double ratio);
/// Panels covering [a, b] with width at most h.
std::vector<Panel> uniform_panels(double a, double b, double h);

/// sum over panels of the rule applied to f
double integrate(const std::vector<Panel>& panels, const GaussRule& rule, const std::function<double(double)>& f);

/// Two rules on the same panels; value from the finer, estimate |fine - coarse|.
struct Estimate {
  double value;
  double error;
};
Estimate integrate_pair(const std::vector<Panel>& panels, const GaussRule& fine, const GaussRule& coarse,
                        const std::function<double(double)>& f);

/// Panels from a > 0 up to at least `stop`, width a (ratio - 1) capped at
/// max_width. For slowly decaying, possibly oscillating integrands.
std::vector<Panel> tail_panels(double a, double stop, double ratio, double max_width);

/// sum_{m >= first} [(m L + s)^{-q} + (m L - s)^{-q}] for |s| <= L/2, first >= 1:
/// direct terms then an Euler-Maclaurin remainder. For 0 < q < 1 the sum
/// diverges and the Hurwitz-zeta continuation is returned; it differs from
/// the partial sums by an s-independent divergent constant.
double lattice_tail(double s, double period, int first, double q);

}  // namespace gsqg::quad
