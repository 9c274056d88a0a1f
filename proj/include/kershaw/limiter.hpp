#ifndef KERSHAW_LIMITER_HPP
#define KERSHAW_LIMITER_HPP

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kershaw/moments.hpp"

// The two per-cell limiters: the TVBM corrected minmod slope limiter (scalar
// and characteristic-field variants) and the realizability limiter, which
// damps the higher-order coefficients towards the (realizable) cell mean
// until every quadrature-node value lies in the cone.
//
// A cell polynomial is the k x (N+1) coefficient matrix U; row i holds the
// coefficients of the scaled Legendre basis function phi_i, so row 0 is the
// cell mean. Both limiters leave row 0 untouched.

namespace kershaw {

using CellPoly = Eigen::MatrixXd;  // k x (N+1)

struct MeanNotRealizableError : std::runtime_error {
  explicit MeanNotRealizableError(const std::string& what)
      : std::runtime_error(what) {}
};

struct LimiterConfig {
  /// TVB constant M (1/length^2); infinity disables the slope limiter.
  double tvb_M = 20.0;
  /// Limit in local characteristic fields instead of component-wise.
  bool characteristic = true;
  double psd_tol = kPsdTol;
  /// Offset used when verifying PSD just above the computed root.
  double theta_clamp_eps = 1e-12;
};

inline constexpr double kTvbInfinity =
    std::numeric_limits<double>::infinity();

/// Componentwise minmod: sign(a) min(|a|,|b|,|c|) where all signs agree,
/// else 0.
Eigen::VectorXd minmod(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c);

/// TVBM corrected minmod limiter in conserved variables. Components of the
/// slope with |u1| < M dz^2 are kept; where any component is limited, the
/// slope row becomes minmod(u1, forward mean difference, backward mean
/// difference) and all higher rows are zeroed. Returns the input unchanged
/// (bitwise) when no component is limited.
CellPoly tvbm_slope_limit(const CellPoly& U_prev, const CellPoly& U_curr,
                          const CellPoly& U_next, double M, double dz);

/// Flux Jacobian dF/du at a realizable state. Rows 0..N-1 are the exact
/// shift pattern e_{i+1}; the last row is the finite-difference gradient of
/// the closure (central, falling back to one-sided towards the cone).
/// fd_step <= 0 selects h_j = sqrt(eps) max(u0, |u_j|) per component.
Eigen::MatrixXd flux_jacobian(const MomentVec& u_mean, double fd_step = 0.0);

/// Slope limiting in the local characteristic fields of the flux Jacobian
/// at the current cell mean; falls back to tvbm_slope_limit whenever the
/// eigendecomposition is unusable (complex or clustered eigenvalues, or a
/// non-realizable mean).
CellPoly characteristic_limit(const CellPoly& U_prev, const CellPoly& U_curr,
                              const CellPoly& U_next, double M, double dz);

struct ThetaResult {
  double theta = 0.0;
  bool active = false;
  enum class Binding { none, first_poly, second_poly } binding = Binding::none;
};

/// Smallest theta in [0,1] such that theta u_mean + (1-theta) u_point is
/// realizable, computed as the largest root in [0,1] of the determinant
/// polynomials of the affine Hankel pencils (recovered by interpolation).
/// Returns theta = 0 when u_point is already realizable, theta = 1 when the
/// mean sits on the realizability boundary, and throws
/// MeanNotRealizableError when the mean itself fails the PSD test.
ThetaResult realizability_theta(const MomentVec& u_mean,
                                const MomentVec& u_point,
                                double psd_tol = kPsdTol,
                                double clamp_eps = 1e-12);

/// All real roots (not restricted to [0,1]) of the two determinant
/// polynomials, for diagnostics.
std::vector<double> theta_pencil_roots(const MomentVec& u_mean,
                                       const MomentVec& u_point);

/// Realizability-limit a cell polynomial at the given node set; phi_nodes
/// is the (n_nodes x k) matrix of basis values at the reference nodes.
/// Returns the damped polynomial (rows >= 1 scaled by 1 - theta_cell, row 0
/// untouched) and theta_cell = max over nodes of realizability_theta.
std::pair<CellPoly, double> apply_realizability_limiter(
    const CellPoly& U, const Eigen::MatrixXd& phi_nodes,
    const LimiterConfig& cfg = {});

}  // namespace kershaw

#endif
