#include "kershaw/dg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "kershaw/parallel.hpp"

namespace kershaw {

PhysicsFields PhysicsFields::zero(int nz, int N) {
  PhysicsFields p;
  p.sigma_a.assign(static_cast<size_t>(nz), 0.0);
  p.sigma_s.assign(static_cast<size_t>(nz), 0.0);
  p.q.assign(static_cast<size_t>(nz), Eigen::VectorXd::Zero(N + 1));
  return p;
}

double PhysicsFields::sigma_t_max() const {
  double m = 0.0;
  for (size_t j = 0; j < sigma_a.size(); ++j) {
    m = std::max(m, sigma_a[j] + sigma_s[j]);
  }
  return m;
}

double DGState::total_mass() const {
  double m = 0.0;
  const double dz = grid.dz();
  for (const CellPoly& c : cells) m += dz * c(0, 0);
  return m;
}

int solver_node_count(int k, int ks) {
  const int from_theorem = (k + ks + 1 + 1) / 2;  // ceil((k+ks+1)/2)
  return std::max({2, from_theorem, k});
}

DGTables DGTables::make(int k, int n_q) {
  DGTables t;
  t.rule = gauss_lobatto(n_q);
  t.phi.resize(n_q, k);
  t.dphi.resize(n_q, k);
  for (int q = 0; q < n_q; ++q) {
    for (int i = 0; i < k; ++i) {
      t.phi(q, i) = legendre_ref(i, t.rule.nodes(q));
      t.dphi(q, i) = legendre_ref_deriv(i, t.rule.nodes(q));
    }
  }
  t.phi_left.resize(k);
  t.phi_right.resize(k);
  for (int i = 0; i < k; ++i) {
    t.phi_left(i) = legendre_ref(i, -0.5);
    t.phi_right(i) = legendre_ref(i, 0.5);
  }
  return t;
}

DGState project(const std::function<MomentVec(double)>& moments_of_z,
                const Grid1D& grid, int k, int N) {
  DGState s;
  s.grid = grid;
  s.k = k;
  s.N = N;
  s.cells.assign(static_cast<size_t>(grid.nz), CellPoly::Zero(k, N + 1));
  const QuadratureRule gl = gauss_legendre(k);
  Eigen::MatrixXd phi(gl.size(), k);
  for (int q = 0; q < gl.size(); ++q)
    for (int i = 0; i < k; ++i) phi(q, i) = legendre_ref(i, gl.nodes(q));

  const double dz = grid.dz();
  for (int j = 0; j < grid.nz; ++j) {
    const double zc = grid.center(j);
    CellPoly& U = s.cells[static_cast<size_t>(j)];
    for (int q = 0; q < gl.size(); ++q) {
      const MomentVec f = moments_of_z(zc + dz * gl.nodes(q));
      for (int i = 0; i < k; ++i) {
        U.row(i) += (2 * i + 1) * gl.weights(q) * phi(q, i) * f.transpose();
      }
    }
  }
  return s;
}

Eigen::VectorXd lf_flux(const MomentVec& uL, const MomentVec& uR) {
  return 0.5 * (flux(uL) + flux(uR) - (uR - uL));
}

std::pair<CellPoly, CellPoly> ghost_cells(const DGState& state,
                                          const BoundarySpec& bc) {
  if (bc.kind == BoundarySpec::Kind::periodic) {
    return {state.cells.back(), state.cells.front()};
  }
  CellPoly gl = CellPoly::Zero(state.k, state.N + 1);
  CellPoly gr = CellPoly::Zero(state.k, state.N + 1);
  gl.row(0) = bc.left.transpose();
  gr.row(0) = bc.right.transpose();
  return {gl, gr};
}

namespace {

MomentVec trace(const CellPoly& U, const Eigen::VectorXd& phi_at) {
  return U.transpose() * phi_at;
}

}  // namespace

std::vector<CellPoly> semidiscrete_rhs(const DGState& state,
                                       const BoundarySpec& bc,
                                       const PhysicsFields& physics,
                                       const DGTables& tables, int threads) {
  const int nz = state.grid.nz;
  const int k = state.k;
  const int N = state.N;
  const double dz = state.grid.dz();
  const auto [ghost_l, ghost_r] = ghost_cells(state, bc);

  // Interface fluxes; index f = 0..nz, interface f sits at z_{f+1/2} with
  // cells f-1 (left) and f (right).
  std::vector<Eigen::VectorXd> fhat(static_cast<size_t>(nz) + 1);
  parallel_for(nz + 1, threads, [&](int f) {
    const CellPoly& left = (f == 0) ? ghost_l : state.cells[f - 1];
    const CellPoly& right = (f == nz) ? ghost_r : state.cells[f];
    fhat[f] = lf_flux(trace(left, tables.phi_right),
                      trace(right, tables.phi_left));
  });

  const MomentVec n_iso = isotropic_moments(N);
  std::vector<CellPoly> rates(static_cast<size_t>(nz));
  parallel_for(nz, threads, [&](int j) {
    const CellPoly& U = state.cells[static_cast<size_t>(j)];
    Eigen::MatrixXd vol = Eigen::MatrixXd::Zero(k, N + 1);
    Eigen::MatrixXd src = Eigen::MatrixXd::Zero(k, N + 1);
    for (int q = 0; q < tables.rule.size(); ++q) {
      const MomentVec uq = trace(U, tables.phi.row(q).transpose());
      Eigen::VectorXd Fq;
      try {
        Fq = flux(uq);
      } catch (const NotRealizableError& e) {
        std::ostringstream os;
        os << "semidiscrete_rhs: closure failed in cell " << j << " at node "
           << q << " (zhat=" << tables.rule.nodes(q) << "): " << e.what();
        throw NotRealizableError(os.str());
      }
      const Eigen::VectorXd sq =
          physics.sigma_s[static_cast<size_t>(j)] * (uq(0) * n_iso - uq) +
          physics.q[static_cast<size_t>(j)] -
          physics.sigma_a[static_cast<size_t>(j)] * uq;
      const double w = tables.rule.weights(q);
      for (int i = 0; i < k; ++i) {
        if (tables.dphi(q, i) != 0.0) {
          vol.row(i) += w * tables.dphi(q, i) * Fq.transpose();
        }
        src.row(i) += w * tables.phi(q, i) * sq.transpose();
      }
    }
    CellPoly R(k, N + 1);
    const Eigen::VectorXd& fl = fhat[static_cast<size_t>(j)];
    const Eigen::VectorXd& fr = fhat[static_cast<size_t>(j) + 1];
    for (int i = 0; i < k; ++i) {
      R.row(i) =
          (2 * i + 1) *
          ((fl.transpose() * tables.phi_left(i) -
            fr.transpose() * tables.phi_right(i) + vol.row(i)) /
               dz +
           src.row(i));
    }
    rates[static_cast<size_t>(j)] = std::move(R);
  });
  return rates;
}

double cfl_dt(double dz, double w1_hat, double sigma_t_max, double safety) {
  const double advective = dz * w1_hat;
  if (sigma_t_max <= 0.0) return safety * advective;
  return safety * std::min(1.0 / sigma_t_max,
                           advective / (1.0 + advective * sigma_t_max));
}

SSPScheme SSPScheme::of_order(int order) {
  SSPScheme s;
  s.order = order;
  using Terms = std::vector<Term>;
  switch (order) {
    case 1:
      s.stages = {Terms{{0, 1.0, 1.0}}};
      break;
    case 2:
      s.stages = {Terms{{0, 1.0, 1.0}}, Terms{{0, 0.5, 0.0}, {1, 0.5, 0.5}}};
      break;
    case 3:
      s.stages = {Terms{{0, 1.0, 1.0}},
                  Terms{{0, 0.75, 0.0}, {1, 0.25, 0.25}},
                  Terms{{0, 1.0 / 3.0, 0.0}, {2, 2.0 / 3.0, 2.0 / 3.0}}};
      break;
    case 4: {
      // SSPRK(10,4), SSP coefficient 6; internal Euler steps of size dt/6.
      for (int st = 1; st <= 5; ++st) {
        s.stages.push_back(Terms{{st - 1, 1.0, 1.0 / 6.0}});
      }
      s.stages.push_back(Terms{{0, 3.0 / 5.0, 0.0}, {5, 2.0 / 5.0, 0.0}});
      for (int st = 7; st <= 10; ++st) {
        s.stages.push_back(Terms{{st - 1, 1.0, 1.0 / 6.0}});
      }
      s.stages.push_back(Terms{
          {0, 1.0 / 25.0, 0.0}, {5, 9.0 / 25.0, 0.0}, {10, 3.0 / 5.0, 0.1}});
      break;
    }
    default:
      throw std::invalid_argument("SSPScheme::of_order: order must be 1..4");
  }
  return s;
}

namespace {

// Slope limiter then realizability limiter, in place. Records per-cell
// theta maxima and bypass events into stats when provided.
void apply_stage_limiters(DGState& s, const StepContext& ctx,
                          StepStats* stats) {
  const int nz = s.grid.nz;
  if (ctx.limiter_probe) ctx.limiter_probe('s');
  if (s.k >= 2 && !std::isinf(ctx.limiter.tvb_M)) {
    const auto [ghost_l, ghost_r] = ghost_cells(s, *ctx.bc);
    std::vector<CellPoly> out(static_cast<size_t>(nz));
    const double dz = s.grid.dz();
    parallel_for(nz, ctx.threads, [&](int j) {
      const CellPoly& prev = (j == 0) ? ghost_l : s.cells[j - 1];
      const CellPoly& next = (j == nz - 1) ? ghost_r : s.cells[j + 1];
      const CellPoly& cur = s.cells[static_cast<size_t>(j)];
      out[static_cast<size_t>(j)] =
          ctx.limiter.characteristic
              ? characteristic_limit(prev, cur, next, ctx.limiter.tvb_M, dz)
              : tvbm_slope_limit(prev, cur, next, ctx.limiter.tvb_M, dz);
    });
    s.cells = std::move(out);
  }

  if (ctx.limiter_probe) ctx.limiter_probe('r');
  std::vector<long> bypassed(static_cast<size_t>(nz), 0);
  std::vector<double> theta(static_cast<size_t>(nz), 0.0);
  parallel_for(nz, ctx.threads, [&](int j) {
    CellPoly& U = s.cells[static_cast<size_t>(j)];
    const MomentVec mean = U.row(0).transpose();
    if (!is_realizable(mean, ctx.limiter.psd_tol)) {
      if (ctx.bypass_nonrealizable_mean) {
        bypassed[static_cast<size_t>(j)] = 1;
        return;
      }
      std::ostringstream os;
      os << "cell mean not realizable in cell " << j << " (z="
         << s.grid.center(j) << ", t=" << ctx.time << ", margin="
         << realizability_margin(mean) << ")";
      throw MeanNotRealizableError(os.str());
    }
    auto [limited, th] =
        apply_realizability_limiter(U, ctx.tables->phi, ctx.limiter);
    theta[static_cast<size_t>(j)] = th;
    if (th > 0.0) U = std::move(limited);
  });
  if (stats) {
    for (int j = 0; j < nz; ++j) {
      stats->bypass_events += bypassed[static_cast<size_t>(j)];
      if (!stats->theta_per_cell.empty()) {
        stats->theta_per_cell[static_cast<size_t>(j)] = std::max(
            stats->theta_per_cell[static_cast<size_t>(j)],
            theta[static_cast<size_t>(j)]);
      }
    }
  }
}

}  // namespace

DGState ssp_step(const DGState& state, double dt, const SSPScheme& scheme,
                 const StepContext& ctx, StepStats* stats) {
  if (stats && stats->theta_per_cell.empty()) {
    stats->theta_per_cell.assign(static_cast<size_t>(state.grid.nz), 0.0);
  }
  std::vector<DGState> ys;
  ys.reserve(scheme.stages.size() + 1);
  ys.push_back(state);
  apply_stage_limiters(ys[0], ctx, stats);

  std::vector<std::vector<CellPoly>> ls(scheme.stages.size() + 1);
  auto rhs_of = [&](int m) -> const std::vector<CellPoly>& {
    if (ls[static_cast<size_t>(m)].empty()) {
      ls[static_cast<size_t>(m)] =
          semidiscrete_rhs(ys[static_cast<size_t>(m)], *ctx.bc, *ctx.physics,
                           *ctx.tables, ctx.threads);
    }
    return ls[static_cast<size_t>(m)];
  };

  const int nz = state.grid.nz;
  for (const auto& terms : scheme.stages) {
    DGState next = ys[0];  // shape carrier
    for (int j = 0; j < nz; ++j) {
      CellPoly acc = CellPoly::Zero(state.k, state.N + 1);
      for (const SSPScheme::Term& t : terms) {
        acc += t.alpha * ys[static_cast<size_t>(t.m)].cells[j];
        if (t.beta != 0.0) acc += dt * t.beta * rhs_of(t.m)[j];
      }
      next.cells[static_cast<size_t>(j)] = std::move(acc);
    }
    apply_stage_limiters(next, ctx, stats);
    ys.push_back(std::move(next));
  }
  return ys.back();
}

namespace {

double max_abs_eigenvalue(const Eigen::MatrixXd& J) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
  double m = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    m = std::max(m, std::abs(es.eigenvalues()(i)));
  }
  return m;
}

}  // namespace

RunResult run(const TransportProblem& problem, const SolverConfig& config) {
  const int k = config.k;
  const int N = problem.N;
  DGState state = project(problem.initial_moments, problem.grid, k, N);
  const DGTables tables = DGTables::make(k, solver_node_count(k));

  SolverConfig cfg = config;
  if (cfg.time_order == 0) cfg.time_order = std::min(k, 4);
  const SSPScheme scheme = SSPScheme::of_order(cfg.time_order);

  StepContext ctx;
  ctx.bc = &problem.bc;
  ctx.physics = &problem.physics;
  ctx.tables = &tables;
  ctx.limiter.tvb_M = cfg.tvb_M.value_or(problem.tvb_M);
  ctx.limiter.characteristic = cfg.characteristic_limiter;
  ctx.limiter.psd_tol = cfg.psd_tol;
  ctx.bypass_nonrealizable_mean = problem.bypass_nonrealizable_mean;
  ctx.threads = cfg.threads;
  ctx.limiter_probe = cfg.limiter_probe;

  const double dz = problem.grid.dz();
  const double sigma_max = problem.physics.sigma_t_max();
  double dt0 = cfl_dt(dz, tables.rule.endpoint_weight(), sigma_max,
                      cfg.cfl_safety);
  // Linear stability guideline; tighter than the realizability bound only
  // for k = 2.
  dt0 = std::min(dt0, cfg.cfl_safety * dz / (2.0 * k - 1.0));

  RunResult result;
  result.diag.steps.reserve(
      static_cast<size_t>(problem.tf / std::max(dt0, 1e-300)) + 2);

  double t = 0.0;
  int step = 0;
  while (t < problem.tf - 1e-14 * std::max(1.0, problem.tf)) {
    const double dt = std::min(dt0, problem.tf - t);
    ctx.time = t;
    StepStats stats;
    state = ssp_step(state, dt, scheme, ctx, &stats);
    t += dt;
    ++step;

    double min_margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < problem.grid.nz; ++j) {
      min_margin = std::min(min_margin, realizability_margin(state.mean(j)));
    }
    result.diag.steps.push_back({step, t, dt, state.total_mass(), min_margin});
    result.diag.bypass_events += stats.bypass_events;
    for (int j = 0; j < problem.grid.nz; ++j) {
      const double th = stats.theta_per_cell[static_cast<size_t>(j)];
      if (th > 0.0) {
        result.diag.theta_events.push_back({t, problem.grid.center(j), th});
        result.diag.theta_max = std::max(result.diag.theta_max, th);
      }
    }
    if (cfg.track_wave_speeds) {
      for (int j = 0; j < problem.grid.nz; ++j) {
        try {
          result.diag.max_abs_wave_speed =
              std::max(result.diag.max_abs_wave_speed,
                       max_abs_eigenvalue(flux_jacobian(state.mean(j))));
        } catch (const NotRealizableError&) {
          // Skip cells where the closure is not differentiable (bypass runs).
        }
      }
    }
  }
  result.state = std::move(state);
  return result;
}

}  // namespace kershaw
