#pragma once

// Right-hand side of the front equation in the form phi_t = L[phi] + N[phi]:
//
//   L[phi] = -theta A |d_x|^{1-alpha} phi_x          (multiplier i omega(xi),
//                                                     omega = -theta A xi |xi|^{1-alpha})
//   N[phi] = -theta \int_R [phi_x(x) - phi_x(x+z)]
//                 { |z|^{alpha-2} - (z^2 + (phi(x) - phi(x+z))^2)^{(alpha-2)/2} } dz
//
// N is available as the full contour integral, as its cubic truncation in
// physical space (dealiased products) and as the direct frequency-sum oracle
// of the cubic term.

#include <span>
#include <string_view>

#include "gsqg/constants.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg {

enum class RhsMode {
  kContour,
  kCubicSpectral,
  kCubicConvolutionOracle,
  kLinear,  ///< nonlinearity disabled
};

std::string_view to_string(RhsMode mode);
/// Accepts "contour", "cubic_spectral", "cubic_convolution_oracle", "linear".
RhsMode rhs_mode_from_string(std::string_view name);

/// Discretization of the z-integral of the contour term. The integral over R
/// is folded onto one period z in [-L/2, L/2) and summed over periodic images:
/// images |m| <= direct_images exactly, the rest through the binomial
/// expansion of the kernel and Euler-Maclaurin lattice sums.
struct QuadratureSpec {
  double inner_cutoff = 1e-10;  ///< delta: [-delta, delta] is discarded (bounded analytically)
  double growth_ratio = 1.5;    ///< geometric panel growth away from z = 0
  int direct_images = 1;
  double tolerance = 1e-10;     ///< relative to max|N|, per grid point
  int gl_order = 16;
  double panel_width = 2.0;     ///< uniform panel width in grid spacings

  /// Throws InvalidInput naming every violated constraint.
  void validate(const Grid& grid) const;
  bool operator==(const QuadratureSpec&) const = default;
};

namespace detail {
struct ContourNode {
  double s;
  double w;
  int rule;  ///< 0 fine, 1 coarse
};
/// Mirrored Gauss nodes on [-L/2, -delta] u [delta, L/2) for the fine rule
/// (gl_order) and the coarse comparison rule; refine halves the panels.
std::vector<ContourNode> contour_nodes(const Grid& grid, const QuadratureSpec& q, int refine);
int contour_images(const QuadratureSpec& q, double length, double reach);
}  // namespace detail

/// omega(xi) on the grid (Nyquist zero): phi_t = i omega phi for the linear flow.
std::vector<double> linear_frequency(const Grid& grid, const Params& params);
FrontState linear_term(const FrontState& state, const Params& params);

struct ContourResult {
  FrontState value;
  double error_estimate;  ///< max over grid points, absolute
};
ContourResult contour_rhs_detailed(const FrontState& state, const Params& params, const QuadratureSpec& quad = {});
FrontState contour_rhs(const FrontState& state, const Params& params, const QuadratureSpec& quad = {});

/// K d_x{phi^2 |d|^{3-a} phi - phi |d|^{3-a}(phi^2) + |d|^{3-a}(phi^3)/3}, K = Params::cubic_K().
FrontState cubic_spectral_rhs(const FrontState& state, const Params& params);

/// i theta A' xi sum_{eta1, eta2} T1'(eta1, eta2, xi - eta1 - eta2) c(eta1) c(eta2) c(xi - eta1 - eta2)
/// by direct summation over resolved modes. Refuses grids above 128 points.
FrontState cubic_convolution_oracle(const FrontState& state, const Params& params);

/// The bracket d_x{...} without the prefactor K (used by the calibration tool).
FrontState cubic_bracket(const FrontState& state, double alpha);

/// Coefficients of N[phi] for the given mode (zero for kLinear).
Spectrum nonlinear_spectrum(const Grid& grid, std::span<const cplx> spectrum, const Params& params, RhsMode mode,
                            const QuadratureSpec& quad = {});

/// L[phi] + N[phi]
FrontState full_rhs(const FrontState& state, const Params& params, RhsMode mode, const QuadratureSpec& quad = {});

}  // namespace gsqg
