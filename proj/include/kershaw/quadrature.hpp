#ifndef KERSHAW_QUADRATURE_HPP
#define KERSHAW_QUADRATURE_HPP

#include <Eigen/Dense>

// Quadrature rules and the scaled Legendre basis on the reference cell
// Ihat = (-1/2, 1/2). All weights are normalized to sum to 1 so that a rule
// applied to a cell average reproduces the cell mean.

namespace kershaw {

struct QuadratureRule {
  Eigen::VectorXd nodes;    // on (-1/2, 1/2)
  Eigen::VectorXd weights;  // sum to 1
  int size() const { return static_cast<int>(nodes.size()); }
  /// Endpoint weight of a Gauss-Lobatto rule, 1/(n(n-1)).
  double endpoint_weight() const { return weights(0); }
};

/// n-point Gauss-Lobatto rule on Ihat (n >= 2), exact for degree 2n-3.
/// Includes both endpoints -1/2 and 1/2.
QuadratureRule gauss_lobatto(int n);

/// n-point Gauss-Legendre rule on Ihat, exact for degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Scaled Legendre basis phi_i(zhat) = P_i(2 zhat):
/// phi_0 = 1, phi_1 = 2 zhat, phi_2 = (12 zhat^2 - 1)/2, ... with
/// int_Ihat phi_i phi_j = delta_ij / (2i+1).
double legendre_ref(int i, double zhat);

/// d/dzhat of legendre_ref.
double legendre_ref_deriv(int i, double zhat);

}  // namespace kershaw

#endif
