#pragma once

// Velocity field of a front y = phi(x) split into the shifted planar shear
// (Theta C' |y + h|^{alpha-1}, 0) and the perturbation u* = (u*, v*):
//
//   u*(x, y) = -Theta \int [(x-x')^2 + (y-phi(x'))^2]^{-(2-a)/2} - [(x-x')^2 + (y+h)^2]^{-(2-a)/2} dx'
//   v*(x, y) = -Theta \int phi_x(x') [(x-x')^2 + (y-phi(x'))^2]^{-(2-a)/2} dx'
//
// with phi extended periodically. The integrals are folded onto one period
// like the contour term of rhs.hpp. In v* the far images decay too slowly to
// converge absolutely; their divergent part does not depend on x' and drops
// out against the zero mean of phi_x, so the tail is taken in the
// zeta-regularized sense (quad::lattice_tail with q < 1).

#include <vector>

#include "gsqg/constants.hpp"
#include "gsqg/rhs.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg {

/// Theta C' |y|^{alpha-1}
double shear_velocity(double y, const Params& params);

class FrontGeometry {
 public:
  /// Requires -h < min phi.
  FrontGeometry(FrontState profile, double h, Params params);

  const FrontState& profile() const noexcept { return profile_; }
  double h() const noexcept { return h_; }
  const Params& params() const noexcept { return params_; }

  /// The offset used by the presets: 2 (1 + max|phi|).
  static double default_offset(const FrontState& profile);

 private:
  FrontState profile_;
  double h_;
  Params params_;
};

struct PerturbationVelocity {
  double u_star;
  double v_star;
  double error_estimate;  ///< max of both components, absolute
};

/// u*, v* at an arbitrary point. Points within quad.inner_cutoff of the curve
/// are evaluated on the curve.
PerturbationVelocity perturbation_velocity(const FrontGeometry& geom, double x, double y,
                                           const QuadratureSpec& quad = {});

struct CurveVelocity {
  std::vector<double> u_star;  ///< at (x_j, phi(x_j))
  std::vector<double> v_star;
  double error_estimate;
};
CurveVelocity curve_velocity(const FrontGeometry& geom, const QuadratureSpec& quad = {});

struct ScaleidResult {
  double lhs;
  double rhs;
  double gap;
  double error_estimate;  ///< of the lhs quadrature
};

/// \int_0^inf (s^2 + 1)^{-(2-a)/2} - (s^2 + c^2)^{-(2-a)/2} ds against
/// sqrt(pi) Gamma((1-a)/2) / (2 Gamma(1-a/2)) (1 - |c|^{a-1}).
ScaleidResult scaleid_check(double c, double alpha, double tol = 1e-12);

/// max_j |phi_t - (v* - (Theta C' |phi + h|^{alpha-1} + u*) phi_x)| on the grid.
double kinematic_residual(const FrontGeometry& geom, const FrontState& rhs_value, const QuadratureSpec& quad = {});

}  // namespace gsqg
