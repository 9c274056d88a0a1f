#include "kershaw/benchmarks.hpp"

#include <cassert>
#include <cmath>

namespace kershaw {

namespace {

PhysicsFields constant_physics(int nz, int N, double sigma_a,
                               double sigma_s) {
  PhysicsFields p = PhysicsFields::zero(nz, N);
  std::fill(p.sigma_a.begin(), p.sigma_a.end(), sigma_a);
  std::fill(p.sigma_s.begin(), p.sigma_s.end(), sigma_s);
  return p;
}

}  // namespace

TransportProblem manufactured_problem(int N, int nz) {
  TransportProblem p;
  p.grid = {-M_PI, M_PI, nz};
  p.N = N;
  p.tf = 0.2 * M_PI;
  p.bc = BoundarySpec::periodic();
  p.physics = PhysicsFields::zero(nz, N);
  p.initial_moments = [N](double z) {
    return MomentVec::Constant(N + 1, std::sin(z)).eval();
  };
  p.tvb_M = 20.0;
  // sin changes sign, so cell means leave the cone; the closure stays
  // evaluable on the Dirac ray and the realizability limiter is skipped
  // (and logged) on those cells.
  p.bypass_nonrealizable_mean = true;
  return p;
}

MomentVec plane_source_ic(double z, int N) {
  const double s = kPlaneSourceWidth;
  const double g = std::exp(-z * z / (4.0 * s)) / (2.0 * std::sqrt(M_PI * s));
  return 2.0 * (kVacuumDensity + g) * isotropic_moments(N);
}

TransportProblem plane_source_problem(int N, int nz) {
  TransportProblem p;
  p.grid = {-1.2, 1.2, nz};
  p.N = N;
  p.tf = 1.0;
  const MomentVec vac = 2.0 * kVacuumDensity * isotropic_moments(N);
  p.bc = BoundarySpec::dirichlet(vac, vac);
  p.physics = constant_physics(nz, N, 0.0, 1.0);
  p.initial_moments = [N](double z) { return plane_source_ic(z, N); };
  p.tvb_M = kTvbInfinity;  // slope limiter disabled, realizability kept
  return p;
}

MomentVec source_beam_inflow_moments(int N) {
  const double a = 1e5;
  // G_n = int_{-2}^0 s^n exp(-a s^2) ds; the exp(-4a) boundary terms are
  // below double precision.
  std::vector<double> G(static_cast<size_t>(N) + 1);
  G[0] = 0.5 * std::sqrt(M_PI / a) * std::erf(2.0 * std::sqrt(a));
  if (N >= 1) G[1] = -(1.0 - std::exp(-4.0 * a)) / (2.0 * a);
  for (int n = 2; n <= N; ++n) {
    G[static_cast<size_t>(n)] =
        (n - 1) / (2.0 * a) * G[static_cast<size_t>(n - 2)];
  }
  // I_j = int mu^j exp(-a(mu-1)^2) dmu = sum_n C(j,n) G_n.
  MomentVec u(N + 1);
  for (int j = 0; j <= N; ++j) {
    double binom = 1.0;
    double sum = 0.0;
    for (int n = 0; n <= j; ++n) {
      sum += binom * G[static_cast<size_t>(n)];
      binom = binom * (j - n) / (n + 1.0);
    }
    u(j) = sum;
  }
  return (u / u(0)).eval();
}

TransportProblem source_beam_problem(int N, int nz) {
  TransportProblem p;
  p.grid = {0.0, 3.0, nz};
  p.N = N;
  p.tf = 2.5;
  const MomentVec vac = 2.0 * kVacuumDensity * isotropic_moments(N);
  p.bc = BoundarySpec::dirichlet(source_beam_inflow_moments(N), vac);
  p.physics = PhysicsFields::zero(nz, N);
  const MomentVec n_iso = isotropic_moments(N);
  for (int j = 0; j < nz; ++j) {
    const double z = p.grid.center(j);
    p.physics.sigma_a[static_cast<size_t>(j)] = (z <= 2.0) ? 1.0 : 0.0;
    p.physics.sigma_s[static_cast<size_t>(j)] =
        (z <= 1.0) ? 0.0 : ((z <= 2.0) ? 2.0 : 10.0);
    const double Q = (z >= 1.0 && z <= 1.5) ? 1.0 : 0.0;
    p.physics.q[static_cast<size_t>(j)] = 2.0 * Q * n_iso;
  }
  p.initial_moments = [vac](double) { return vac; };
  p.tvb_M = 20.0;
  return p;
}

double manufactured_exact_density(double t, double z) {
  double w = std::fmod(z - t + M_PI, 2.0 * M_PI);
  if (w < 0.0) w += 2.0 * M_PI;
  return std::sin(w - M_PI);
}

MomentVec manufactured_exact(double t, double z, int N) {
  return MomentVec::Constant(N + 1, manufactured_exact_density(t, z)).eval();
}

ErrorReport error_norms(const DGState& state,
                        const std::function<double(double)>& exact_u0) {
  static const QuadratureRule rule = gauss_lobatto(100);
  Eigen::MatrixXd phi(rule.size(), state.k);
  for (int q = 0; q < rule.size(); ++q)
    for (int i = 0; i < state.k; ++i)
      phi(q, i) = legendre_ref(i, rule.nodes(q));

  const double dz = state.grid.dz();
  ErrorReport r;
  for (int j = 0; j < state.grid.nz; ++j) {
    const Eigen::VectorXd u0 =
        phi * state.cells[static_cast<size_t>(j)].col(0);
    const double zc = state.grid.center(j);
    for (int q = 0; q < rule.size(); ++q) {
      const double e = std::abs(u0(q) - exact_u0(zc + dz * rule.nodes(q)));
      r.L1 += dz * rule.weights(q) * e;
      r.Linf = std::max(r.Linf, e);
    }
  }
  return r;
}

double observed_order(double err1, double err2, double dz1, double dz2) {
  return std::log(err1 / err2) / std::log(dz1 / dz2);
}

ReconstructionResult limiter_reconstruction(double gamma, int nz, int k,
                                            int N) {
  assert(N >= 2);
  const MomentVec n_iso = isotropic_moments(N);
  const MomentVec U0 =
      (1.0 - gamma) * basis_eval(1.0, N) + gamma * n_iso;
  const MomentVec U1 =
      1e-8 * ((1.0 - gamma) * basis_eval(-1.0, N) + gamma * n_iso).eval();
  auto curve = [&](double z) {
    const double lam = 0.5 * (std::cos(M_PI * z) + 1.0);
    return ((1.0 - lam) * U0 + lam * U1).eval();
  };

  const Grid1D grid{-1.0, 1.0, nz};
  DGState state = project(curve, grid, k, N);

  // Theorem-minimal Gauss-Lobatto node set (ks = 0).
  const int n_q = std::max(2, (k + 2) / 2);
  const DGTables tables = DGTables::make(k, n_q);
  ReconstructionResult res;
  for (int j = 0; j < nz; ++j) {
    auto [limited, theta] = apply_realizability_limiter(
        state.cells[static_cast<size_t>(j)], tables.phi);
    state.cells[static_cast<size_t>(j)] = std::move(limited);
    res.theta_max = std::max(res.theta_max, theta);
  }
  res.errors = error_norms(state, [&](double z) { return curve(z)(0); });
  return res;
}

}  // namespace kershaw
