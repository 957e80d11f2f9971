#pragma once

// Multilinear symbols and phases of the cubic interaction: the quadrature
// oracle for T_n, the closed form T1', the dispersion phase, the resonance
// expansion coefficient, the Z-norm weight and the modified-scattering phase.

#include <span>
#include <vector>

#include "gsqg/constants.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg {

struct CubicSymbolPoint {
  double eta1;
  double eta2;
  double eta3;
};

/// |e1|^p + |e2|^p + |e3|^p + |e1+e2+e3|^p - |e1+e2|^p - |e1+e3|^p - |e2+e3|^p,
/// p = 3 - alpha. Arguments are sorted before evaluation, so the value is
/// bit-identical under every permutation.
double t1_prime(const CubicSymbolPoint& p, double alpha);

struct TnResult {
  double value;
  double error_estimate;
  double imag_residual;  ///< zero by construction (conjugate-symmetric pairing)
};

/// T_n(eta) = \int_R prod_j (1 - e^{i eta_j z}) |z|^{alpha-1} sgn(z) / z^{2n+1} dz
/// for 2n+1 frequencies, n in {1, 2}. Throws AccuracyError if the
/// requested tolerance (absolute, scaled by 1 + |T_n|) cannot be certified.
TnResult tn_quadrature_detailed(std::span<const double> etas, int n, double alpha, double tol = 1e-10);
double tn_quadrature(std::span<const double> etas, int n, double alpha, double tol = 1e-10);

/// Phi(xi, eta1, eta2) with sigma(x) = x |x|^{1-alpha} (sigma(0) = 0):
/// sigma(xi - eta1 - eta2) + sigma(eta1) + sigma(eta2) - sigma(xi).
double phase_phi(double xi, double eta1, double eta2, double alpha);

/// Leading Taylor coefficient of T1'/Phi at (xi, xi/3, xi/3):
/// (3^{2-a} - 2^{3-a} + 1) / (3 - 3^{2-a}) * xi.
double resonance_ratio(double xi, double alpha);

/// |xi| + |xi|^{r+3}
double z_weight(double xi, int r);

/// varrho(t) = (t + 1)^{-0.49}
double rho_cutoff(double t);
/// beta(t) = -theta * A' * (\int psi)^2 * varrho(t)^2; the area of the cutoff
/// b = psi((eta1 - xi1)/varrho) psi((eta2 - xi2)/varrho) times A', with the
/// sign carried by theta (theta = -1 by default).
double scattering_beta(double t, const Params& params);

/// Accumulated modified-scattering phase Theta(xi, t), aligned with the grid's
/// storage order.
struct ScatteringPhase {
  explicit ScatteringPhase(const Grid& g) : grid(g), theta(g.size(), 0.0) {}
  Grid grid;
  std::vector<double> theta;
  double time = 0.0;
};

/// Left-endpoint update Theta += dt xi [b1 T1'(xi,xi,-xi) + b2 T1'(xi,-xi,xi)
/// + b3 T1'(-xi,xi,xi)] |\hat phi(xi)|^2 with b1 = b2 = b3 = scattering_beta(t)
/// and \hat phi = (L / 2 pi) c the continuum-normalized density.
ScatteringPhase scattering_phase_step(const ScatteringPhase& phase, std::span<const cplx> spectrum, double t,
                                      double dt, const Params& params);

}  // namespace gsqg
