#ifndef KERSHAW_DG_HPP
#define KERSHAW_DG_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "kershaw/grid.hpp"
#include "kershaw/limiter.hpp"
#include "kershaw/moments.hpp"
#include "kershaw/quadrature.hpp"

// Semidiscrete DG scheme for the moment system on a uniform grid: global
// Lax-Friedrichs coupling with viscosity constant 1, ghost-cell boundary
// conditions, SSP time stepping with both limiters applied at every stage,
// and the realizability CFL bound
//
//   dt < min( 1/sigma_max, dz w1 / (1 + dz w1 sigma_max) ),
//
// where w1 is the endpoint weight of the Gauss-Lobatto node rule.

namespace kershaw {

struct BoundarySpec {
  enum class Kind { periodic, dirichlet };
  Kind kind = Kind::periodic;
  MomentVec left, right;  // Dirichlet ghost moments

  static BoundarySpec periodic() { return {}; }
  static BoundarySpec dirichlet(MomentVec l, MomentVec r) {
    return {Kind::dirichlet, std::move(l), std::move(r)};
  }
};

/// Piecewise-constant physics resolved to per-cell values (fields are
/// required to lie in V_h^0, i.e. breakpoints align with cell interfaces).
struct PhysicsFields {
  std::vector<double> sigma_a, sigma_s;
  std::vector<Eigen::VectorXd> q;  // per-cell moment source

  static PhysicsFields zero(int nz, int N);
  double sigma_t_max() const;
};

struct DGState {
  Grid1D grid;
  int k = 1;
  int N = 1;
  std::vector<CellPoly> cells;  // each k x (N+1)

  MomentVec mean(int j) const { return cells[j].row(0).transpose(); }
  double total_mass() const;
};

/// Number of Gauss-Lobatto nodes used by the solver: the realizability
/// theorem's ceil((k+ks+1)/2) with a floor of 2 (both endpoints) and of k
/// (exact volume integration of polynomial fluxes).
int solver_node_count(int k, int ks = 0);

/// Basis tables at a node rule, shared by the RHS and the limiters.
struct DGTables {
  QuadratureRule rule;
  Eigen::MatrixXd phi;       // n_q x k, phi(q,i) = phi_i(node_q)
  Eigen::MatrixXd dphi;      // n_q x k
  Eigen::VectorXd phi_left;  // phi_i(-1/2) = (-1)^i
  Eigen::VectorXd phi_right;

  static DGTables make(int k, int n_q);
};

/// Per-cell L2 projection with k-point Gauss-Legendre quadrature
/// (exactness 2k-1); coefficient i carries the orthogonality factor 2i+1.
DGState project(const std::function<MomentVec(double)>& moments_of_z,
                const Grid1D& grid, int k, int N);

/// Global Lax-Friedrichs flux with C = 1.
Eigen::VectorXd lf_flux(const MomentVec& uL, const MomentVec& uR);

/// Ghost-cell polynomials: constants of the prescribed moments (Dirichlet)
/// or copies of the opposite end cells (periodic).
std::pair<CellPoly, CellPoly> ghost_cells(const DGState& state,
                                          const BoundarySpec& bc);

/// Rates dU/dt for all cells. Throws NotRealizableError with cell/node
/// diagnostics if the closure cannot be evaluated at a quadrature node.
std::vector<CellPoly> semidiscrete_rhs(const DGState& state,
                                       const BoundarySpec& bc,
                                       const PhysicsFields& physics,
                                       const DGTables& tables,
                                       int threads = 1);

/// Realizability CFL step (sigma_max = 0 degenerates to dz*w1).
double cfl_dt(double dz, double w1_hat, double sigma_t_max,
              double safety = 0.95);

/// SSP scheme as convex combinations of forward-Euler steps: stage s is
/// sum_m alpha y_m + dt sum_m beta L(y_m) with alpha,beta >= 0 and
/// sum alpha = 1. Supported: Euler, SSPRK(2,2), SSPRK(3,3), SSPRK(10,4).
struct SSPScheme {
  struct Term {
    int m;
    double alpha;
    double beta;
  };
  int order = 1;
  std::vector<std::vector<Term>> stages;

  static SSPScheme of_order(int order);
};

struct SolverConfig {
  int k = 4;
  int time_order = 0;  // 0: pick min(k,4) pairing
  std::optional<double> tvb_M;  // unset: problem default
  bool characteristic_limiter = true;
  double cfl_safety = 0.95;
  double psd_tol = kPsdTol;
  int threads = 1;
  bool track_wave_speeds = true;
  /// Test hook, called with 's'/'r' when a limiter pass starts.
  std::function<void(char)> limiter_probe;
};

struct TransportProblem {
  Grid1D grid;
  int N = 1;
  double tf = 0.0;
  BoundarySpec bc;
  PhysicsFields physics;
  std::function<MomentVec(double)> initial_moments;
  double tvb_M = 20.0;
  /// Skip the realizability limiter (log only) on cells whose mean is not
  /// realizable; needed when the prescribed solution leaves the cone.
  bool bypass_nonrealizable_mean = false;
};

struct StepDiag {
  int step;
  double t, dt, mass, min_margin;
};
struct ThetaEvent {
  double t, z, theta;
};
struct RunDiagnostics {
  std::vector<StepDiag> steps;
  std::vector<ThetaEvent> theta_events;
  double theta_max = 0.0;
  double max_abs_wave_speed = 0.0;
  long bypass_events = 0;
};

/// Context shared by all stages of a step.
struct StepContext {
  const BoundarySpec* bc;
  const PhysicsFields* physics;
  const DGTables* tables;
  LimiterConfig limiter;
  bool bypass_nonrealizable_mean = false;
  int threads = 1;
  double time = 0.0;  // for error messages
  std::function<void(char)> limiter_probe;
};

struct StepStats {
  std::vector<double> theta_per_cell;  // max over stages
  long bypass_events = 0;
};

/// One SSP step: both limiters are applied to every stage value (including
/// the incoming state) before the stage's rhs evaluation.
DGState ssp_step(const DGState& state, double dt, const SSPScheme& scheme,
                 const StepContext& ctx, StepStats* stats = nullptr);

struct RunResult {
  DGState state;
  RunDiagnostics diag;
};

/// Time loop with dt from the realizability CFL (capped by the linear
/// stability guideline dz/(2k-1)); the last step is truncated to hit tf.
RunResult run(const TransportProblem& problem, const SolverConfig& config);

}  // namespace kershaw

#endif
