#ifndef KERSHAW_LINALG_HPP
#define KERSHAW_LINALG_HPP

#include <Eigen/Dense>
#include <vector>

// Small dense helpers shared by the realizability tests and the limiter
// root solves. All matrices here are tiny (order <= 8).

namespace kershaw::linalg {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Smallest eigenvalue of a symmetric matrix. Returns -inf for non-finite input.
double smallest_eigenvalue(const Mat& sym);

/// Positive semidefinite up to -tol * max(1, max|entry|).
bool is_psd(const Mat& sym, double tol);

/// Moore-Penrose pseudoinverse of a symmetric matrix via eigendecomposition.
/// Eigenvalues with |lambda| <= rel_cutoff * max|lambda| are treated as zero.
Mat pseudo_inverse(const Mat& sym, double rel_cutoff = 1e-12);

/// Coefficients (ascending degree) of the polynomial interpolating
/// (xs[i], ys[i]); xs must be distinct.
std::vector<double> fit_polynomial(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

/// Real roots of a polynomial with ascending coefficients, found as
/// companion-matrix eigenvalues. A root is kept as real when
/// |imag| < imag_tol * (1 + |real|).
std::vector<double> real_roots(const std::vector<double>& coeffs,
                               double imag_tol = 1e-8);

}  // namespace kershaw::linalg

#endif
