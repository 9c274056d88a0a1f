#ifndef KERSHAW_BENCHMARKS_HPP
#define KERSHAW_BENCHMARKS_HPP

#include <functional>
#include <string>

#include "kershaw/dg.hpp"

// Benchmark configurations, analytic references and error metrics:
//  - manufactured: advection of sin(z) along the Dirac ray on [-pi,pi],
//    periodic, tf = 0.2 pi; every moment component equals sin(z - t).
//  - plane source: smoothed Dirac initial mass on [-1.2, 1.2] in a pure
//    scattering medium, vacuum Dirichlet boundaries, tf = 1.
//  - source beam: piecewise medium on [0,3] with a near-Dirac inflow beam
//    at the left boundary, tf = 2.5.
//  - limiter reconstruction: projection of a realizable moment curve and
//    the convergence of its realizability-limited reconstruction.

namespace kershaw {

inline constexpr double kVacuumDensity = 0.5e-8;      // f_vac
inline constexpr double kPlaneSourceWidth = 3.2e-4;   // Gaussian sigma

TransportProblem manufactured_problem(int N, int nz);
TransportProblem plane_source_problem(int N, int nz);
TransportProblem source_beam_problem(int N, int nz);

/// Exact manufactured moments: every component is sin wrapped with the
/// domain period, advected at speed 1.
double manufactured_exact_density(double t, double z);
MomentVec manufactured_exact(double t, double z, int N);

/// Plane-source initial moments 2 (f_vac + g(z)) n_iso with the normalized
/// Gaussian g of width kPlaneSourceWidth.
MomentVec plane_source_ic(double z, int N);

/// Normalized moments of the inflow beam exp(-1e5 (mu-1)^2), computed with
/// the Gaussian moment recurrence.
MomentVec source_beam_inflow_moments(int N);

struct ErrorReport {
  double L1 = 0.0;
  double Linf = 0.0;
};

/// L1/Linf errors of the zeroth moment against a reference density,
/// accumulated with a 100-point Gauss-Lobatto rule per cell.
ErrorReport error_norms(const DGState& state,
                        const std::function<double(double)>& exact_u0);

/// nu with E1/E2 = (dz1/dz2)^nu.
double observed_order(double err1, double err2, double dz1, double dz2);

struct ReconstructionResult {
  ErrorReport errors;
  double theta_max = 0.0;
};

/// Projects the moment curve U(z) = (1-lambda(z)) U0 + lambda(z) U1,
/// lambda = (cos(pi z)+1)/2, onto the DG space on [-1,1], applies the
/// realizability limiter at the theorem's Gauss-Lobatto nodes, and reports
/// errors of the limited reconstruction plus the maximal theta.
ReconstructionResult limiter_reconstruction(double gamma, int nz, int k,
                                            int N);

}  // namespace kershaw

#endif
