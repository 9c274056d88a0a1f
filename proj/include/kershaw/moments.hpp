#ifndef KERSHAW_MOMENTS_HPP
#define KERSHAW_MOMENTS_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

// Moment algebra for the monomial basis b_i(mu) = mu^i on mu in [-1,1]:
// Hankel realizability tests, the admissible interval [flow, fup] for the
// next moment, the Kershaw closure, and the flux/source of the resulting
// balance law
//
//     d/dt u + d/dz F(u) = s(u),   F(u) = (u_1, ..., u_N, K(u)),
//     s(u) = sigma_s (u_0 n_iso - u) + q - sigma_a u.
//
// A moment vector of order N is stored as an Eigen vector (u_0, ..., u_N).

namespace kershaw {

using MomentVec = Eigen::VectorXd;

/// Thrown when an operation requires a realizable moment vector but the
/// Hankel conditions fail beyond tolerance.
struct NotRealizableError : std::runtime_error {
  explicit NotRealizableError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Default relative tolerance for the positive-semidefiniteness tests.
inline constexpr double kPsdTol = 1e-10;

/// Density floor used when dividing by u_0 to form normalized moments.
inline constexpr double kVacuumFloor = 1e-300;

/// (1, mu, mu^2, ..., mu^order).
MomentVec basis_eval(double mu, int order);

/// Moments of the isotropic density with unit mass: n_iso[i] = <mu^i>/2,
/// i.e. 1/(i+1) for even i and exactly 0 for odd i.
MomentVec isotropic_moments(int order);

/// Moments of the atomic density sum_a w_a delta(mu - mu_a). Weights must be
/// positive and nodes inside [-1,1]; the result is realizable by
/// construction.
MomentVec atomic_moments(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& nodes, int order);

/// (1, u_1/u_0, ..., u_N/u_0) with |u_0| floored at kVacuumFloor.
MomentVec normalize_moments(const MomentVec& u);

/// Hankel matrices of u per parity of N. For N = 2k+1 the pair (A(k), B(k))
/// is filled and C is empty; for N = 2k it is (A(k), C(k)) with B empty.
struct HankelTriple {
  Eigen::MatrixXd A, B, C;
};
HankelTriple hankel(const MomentVec& u);

/// Hankel characterization of the realizable cone:
///   N = 2k+1:  A(k) >= B(k)  and  A(k) >= -B(k),
///   N = 2k:    A(k) >= 0     and  A(k-1) >= C(k),
/// each test as smallest eigenvalue >= -tol * max(1, max|entry|).
bool is_realizable(const MomentVec& u, double tol = kPsdTol);

/// min over the parity's PSD matrices of lambda_min / max(1, max|entry|);
/// negative outside the cone. Diagnostic companion of is_realizable.
double realizability_margin(const MomentVec& u);

/// Admissible interval for the next moment u_{N+1} given (u_0..u_N).
struct RealizabilityBounds {
  double lower;  // flow(u_0..u_N)
  double upper;  // fup(u_0..u_N)
};

/// flow/fup via Schur complements of the bordered Hankel matrices, with
/// pseudoinverses so boundary (singular) input is admissible. For N = 1 the
/// upper bound reduces to u_0. Throws NotRealizableError if u fails the
/// Hankel test at `tol`.
RealizabilityBounds realizability_bounds(const MomentVec& u,
                                         double tol = kPsdTol);

/// Kershaw closure: the next normalized moment is the fixed convex
/// combination  phi_{N+1} = zeta flow(phi) + (1-zeta) fup(phi)  with
/// zeta = (k+2)/(2k+3) for N = 2k+1 and zeta = 1/2 for N = 2k, chosen so the
/// isotropic point is reproduced. Evaluated on normalized moments and
/// rescaled by u_0; degree-1 homogeneous.
double kershaw_closure(const MomentVec& u);

/// F(u) = (u_1, ..., u_N, kershaw_closure(u)).
Eigen::VectorXd flux(const MomentVec& u);

/// s(u) = sigma_s (u_0 n_iso - u) + q - sigma_a u. The scattering part has
/// an exactly zero zeroth component (mass conservation).
Eigen::VectorXd source(const MomentVec& u, double sigma_s, double sigma_a,
                       const Eigen::VectorXd& q_moments);

}  // namespace kershaw

#endif
