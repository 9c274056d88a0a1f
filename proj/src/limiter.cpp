#include "kershaw/limiter.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "kershaw/linalg.hpp"

namespace kershaw {

using linalg::Mat;
using linalg::Vec;

Eigen::VectorXd minmod(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c) {
  assert(a.size() == b.size() && b.size() == c.size());
  Eigen::VectorXd r = Eigen::VectorXd::Zero(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double sa = (a(i) > 0) - (a(i) < 0);
    const double sb = (b(i) > 0) - (b(i) < 0);
    const double sc = (c(i) > 0) - (c(i) < 0);
    if (sa != 0.0 && sa == sb && sb == sc) {
      r(i) = sa * std::min({std::abs(a(i)), std::abs(b(i)), std::abs(c(i))});
    }
  }
  return r;
}

namespace {

// TVB-corrected minmod of the slope row against the neighbor mean
// differences; returns true when any component changed.
bool tvb_minmod_row(const Eigen::VectorXd& u1, const Eigen::VectorXd& fwd,
                    const Eigen::VectorXd& bwd, double threshold,
                    Eigen::VectorXd& out) {
  out = u1;
  bool changed = false;
  for (Eigen::Index c = 0; c < u1.size(); ++c) {
    if (std::abs(u1(c)) < threshold) continue;
    const double sa = (u1(c) > 0) - (u1(c) < 0);
    const double sb = (fwd(c) > 0) - (fwd(c) < 0);
    const double sc = (bwd(c) > 0) - (bwd(c) < 0);
    double m = 0.0;
    if (sa != 0.0 && sa == sb && sb == sc) {
      m = sa * std::min({std::abs(u1(c)), std::abs(fwd(c)), std::abs(bwd(c))});
    }
    if (m != u1(c)) {
      out(c) = m;
      changed = true;
    }
  }
  return changed;
}

CellPoly rebuild_limited(const CellPoly& U, const Eigen::VectorXd& slope) {
  CellPoly V = CellPoly::Zero(U.rows(), U.cols());
  V.row(0) = U.row(0);
  V.row(1) = slope.transpose();
  return V;
}

}  // namespace

CellPoly tvbm_slope_limit(const CellPoly& U_prev, const CellPoly& U_curr,
                          const CellPoly& U_next, double M, double dz) {
  if (U_curr.rows() < 2 || std::isinf(M)) return U_curr;
  const double threshold = M * dz * dz;
  const Eigen::VectorXd u1 = U_curr.row(1).transpose();
  const Eigen::VectorXd fwd = (U_next.row(0) - U_curr.row(0)).transpose();
  const Eigen::VectorXd bwd = (U_curr.row(0) - U_prev.row(0)).transpose();
  Eigen::VectorXd limited;
  if (!tvb_minmod_row(u1, fwd, bwd, threshold, limited)) return U_curr;
  return rebuild_limited(U_curr, limited);
}

Eigen::MatrixXd flux_jacobian(const MomentVec& u_mean, double fd_step) {
  const int N = static_cast<int>(u_mean.size()) - 1;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int i = 0; i < N; ++i) J(i, i + 1) = 1.0;

  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  double k0 = std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j <= N; ++j) {
    double h = fd_step > 0.0
                   ? fd_step
                   : sqrt_eps * std::max(u_mean(0), std::abs(u_mean(j)));
    if (h <= 0.0) h = sqrt_eps;
    MomentVec up = u_mean, um = u_mean;
    up(j) += h;
    um(j) -= h;
    double kp = 0.0, km = 0.0;
    bool okp = true, okm = true;
    try {
      kp = kershaw_closure(up);
    } catch (const NotRealizableError&) {
      okp = false;
    }
    try {
      km = kershaw_closure(um);
    } catch (const NotRealizableError&) {
      okm = false;
    }
    if (okp && okm) {
      J(N, j) = (kp - km) / (2.0 * h);
    } else if (okp || okm) {
      // One-sided towards the interior of the cone.
      if (std::isnan(k0)) k0 = kershaw_closure(u_mean);
      J(N, j) = okp ? (kp - k0) / h : (k0 - km) / h;
    }
  }
  return J;
}

CellPoly characteristic_limit(const CellPoly& U_prev, const CellPoly& U_curr,
                              const CellPoly& U_next, double M, double dz) {
  if (U_curr.rows() < 2 || std::isinf(M)) return U_curr;
  const double threshold = M * dz * dz;
  const Eigen::VectorXd u1 = U_curr.row(1).transpose();
  if ((u1.cwiseAbs().array() < threshold).all()) return U_curr;

  const Eigen::VectorXd fwd = (U_next.row(0) - U_curr.row(0)).transpose();
  const Eigen::VectorXd bwd = (U_curr.row(0) - U_prev.row(0)).transpose();

  try {
    const Eigen::MatrixXd J = flux_jacobian(U_curr.row(0).transpose());
    Eigen::EigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) {
      return tvbm_slope_limit(U_prev, U_curr, U_next, M, dz);
    }
    const auto lam = es.eigenvalues();
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      max_abs = std::max(max_abs, std::abs(lam(i)));
    std::vector<double> re(static_cast<size_t>(lam.size()));
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (std::abs(lam(i).imag()) > 1e-8 * (1.0 + std::abs(lam(i).real()))) {
        return tvbm_slope_limit(U_prev, U_curr, U_next, M, dz);
      }
      re[static_cast<size_t>(i)] = lam(i).real();
    }
    std::sort(re.begin(), re.end());
    for (size_t i = 0; i + 1 < re.size(); ++i) {
      if (re[i + 1] - re[i] < 1e-8 * (1.0 + max_abs)) {
        return tvbm_slope_limit(U_prev, U_curr, U_next, M, dz);
      }
    }

    const Eigen::MatrixXd R = es.eigenvectors().real();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(R);
    const Eigen::VectorXd v1 = lu.solve(u1);
    const Eigen::VectorXd vf = lu.solve(fwd);
    const Eigen::VectorXd vb = lu.solve(bwd);
    if (!v1.allFinite() || !vf.allFinite() || !vb.allFinite()) {
      return tvbm_slope_limit(U_prev, U_curr, U_next, M, dz);
    }

    Eigen::VectorXd vlim;
    if (!tvb_minmod_row(v1, vf, vb, threshold, vlim)) return U_curr;
    return rebuild_limited(U_curr, R * vlim);
  } catch (const NotRealizableError&) {
    return tvbm_slope_limit(U_prev, U_curr, U_next, M, dz);
  }
}

namespace {

// Affine-in-theta Hankel pencils whose determinant roots mark the cone
// boundary along the segment theta*u_mean + (1-theta)*u_point.
struct ThetaPencils {
  std::array<Mat, 2> at_mean;
  std::array<Mat, 2> at_point;
};

ThetaPencils build_pencils(const MomentVec& u_mean, const MomentVec& u_point) {
  const int N = static_cast<int>(u_mean.size()) - 1;
  const HankelTriple hm = hankel(u_mean);
  const HankelTriple hp = hankel(u_point);
  ThetaPencils p;
  if (N % 2 == 1) {
    p.at_mean = {hm.A - hm.B, hm.A + hm.B};
    p.at_point = {hp.A - hp.B, hp.A + hp.B};
  } else {
    const int k = N / 2;
    Mat dm, dp;
    if (k >= 1) {
      dm = hm.A.topLeftCorner(k, k) - hm.C;
      dp = hp.A.topLeftCorner(k, k) - hp.C;
    }
    p.at_mean = {hm.A, dm};
    p.at_point = {hp.A, dp};
  }
  return p;
}

// Determinant polynomial of one pencil, by evaluation at N+1 nodes in [0,1]
// and interpolation. Equispaced nodes; Chebyshev for higher orders.
std::vector<double> pencil_det_polynomial(const Mat& Hm, const Mat& Hp,
                                          int order) {
  const int n_samples = order + 1;
  std::vector<double> ts(static_cast<size_t>(n_samples));
  if (order < 6) {
    for (int j = 0; j < n_samples; ++j)
      ts[static_cast<size_t>(j)] = static_cast<double>(j) / order;
  } else {
    for (int j = 0; j < n_samples; ++j) {
      const double c = std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * n_samples));
      ts[static_cast<size_t>(j)] = 0.5 * (1.0 + c);
    }
  }
  std::vector<double> vals(static_cast<size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const double t = ts[static_cast<size_t>(j)];
    vals[static_cast<size_t>(j)] = (t * Hm + (1.0 - t) * Hp).determinant();
  }
  return linalg::fit_polynomial(ts, vals);
}

}  // namespace

std::vector<double> theta_pencil_roots(const MomentVec& u_mean,
                                       const MomentVec& u_point) {
  const int N = static_cast<int>(u_mean.size()) - 1;
  const ThetaPencils p = build_pencils(u_mean, u_point);
  std::vector<double> roots;
  for (int which = 0; which < 2; ++which) {
    if (p.at_mean[static_cast<size_t>(which)].size() == 0) continue;
    const auto poly =
        pencil_det_polynomial(p.at_mean[static_cast<size_t>(which)],
                              p.at_point[static_cast<size_t>(which)], N);
    for (double r : linalg::real_roots(poly)) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

ThetaResult realizability_theta(const MomentVec& u_mean,
                                const MomentVec& u_point, double psd_tol,
                                double clamp_eps) {
  if (!is_realizable(u_mean, psd_tol)) {
    std::ostringstream os;
    os << "realizability_theta: cell mean is not realizable (margin "
       << realizability_margin(u_mean) << ")";
    throw MeanNotRealizableError(os.str());
  }
  if (is_realizable(u_point, psd_tol)) return {0.0, false,
                                               ThetaResult::Binding::none};
  // A mean on the boundary cannot pull the point inside; limit to the mean.
  if (realizability_margin(u_mean) < psd_tol) {
    return {1.0, true, ThetaResult::Binding::none};
  }

  const int N = static_cast<int>(u_mean.size()) - 1;
  const ThetaPencils p = build_pencils(u_mean, u_point);
  double theta = -1.0;
  auto binding = ThetaResult::Binding::none;
  for (int which = 0; which < 2; ++which) {
    if (p.at_mean[static_cast<size_t>(which)].size() == 0) continue;
    const auto poly =
        pencil_det_polynomial(p.at_mean[static_cast<size_t>(which)],
                              p.at_point[static_cast<size_t>(which)], N);
    for (double r : linalg::real_roots(poly)) {
      if (r < -1e-10 || r > 1.0 + 1e-10) continue;
      const double rc = std::clamp(r, 0.0, 1.0);
      if (rc > theta) {
        theta = rc;
        binding = (which == 0) ? ThetaResult::Binding::first_poly
                               : ThetaResult::Binding::second_poly;
      }
    }
  }
  if (theta < 0.0) return {1.0, true, ThetaResult::Binding::none};

  const double tv = std::min(theta + clamp_eps, 1.0);
  const MomentVec probe = tv * u_mean + (1.0 - tv) * u_point;
  if (!is_realizable(probe, psd_tol)) {
    return {1.0, true, ThetaResult::Binding::none};
  }
  return {theta, theta > 0.0, binding};
}

std::pair<CellPoly, double> apply_realizability_limiter(
    const CellPoly& U, const Eigen::MatrixXd& phi_nodes,
    const LimiterConfig& cfg) {
  assert(phi_nodes.cols() == U.rows());
  const MomentVec mean = U.row(0).transpose();
  double theta_cell = 0.0;
  for (Eigen::Index q = 0; q < phi_nodes.rows(); ++q) {
    const MomentVec upt = U.transpose() * phi_nodes.row(q).transpose();
    const ThetaResult r =
        realizability_theta(mean, upt, cfg.psd_tol, cfg.theta_clamp_eps);
    theta_cell = std::max(theta_cell, r.theta);
    if (theta_cell >= 1.0) break;
  }
  CellPoly V = U;
  if (theta_cell > 0.0 && V.rows() > 1) {
    V.bottomRows(V.rows() - 1) *= (1.0 - theta_cell);
  }
  return {V, theta_cell};
}

}  // namespace kershaw
