#include "kershaw/moments.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "kershaw/linalg.hpp"

namespace kershaw {

using linalg::Mat;
using linalg::Vec;

MomentVec basis_eval(double mu, int order) {
  assert(order >= 0);
  MomentVec b(order + 1);
  double p = 1.0;
  for (int i = 0; i <= order; ++i) {
    b(i) = p;
    p *= mu;
  }
  return b;
}

MomentVec isotropic_moments(int order) {
  MomentVec n(order + 1);
  for (int i = 0; i <= order; ++i) n(i) = (i % 2 == 0) ? 1.0 / (i + 1) : 0.0;
  return n;
}

MomentVec atomic_moments(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& nodes, int order) {
  assert(weights.size() == nodes.size());
  MomentVec u = MomentVec::Zero(order + 1);
  for (Eigen::Index a = 0; a < weights.size(); ++a) {
    u += weights(a) * basis_eval(nodes(a), order);
  }
  return u;
}

MomentVec normalize_moments(const MomentVec& u) {
  double d = u(0);
  if (std::abs(d) < kVacuumFloor) d = (d < 0.0) ? -kVacuumFloor : kVacuumFloor;
  MomentVec phi = u / d;
  phi(0) = 1.0;
  return phi;
}

namespace {

// Hankel block (u_{i+j+shift})_{i,j=0}^{n-1}.
Mat hankel_block(const MomentVec& u, int n, int shift) {
  Mat H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = u(i + j + shift);
  return H;
}

}  // namespace

HankelTriple hankel(const MomentVec& u) {
  const int N = static_cast<int>(u.size()) - 1;
  assert(N >= 1);
  HankelTriple t;
  if (N % 2 == 1) {
    const int k = (N - 1) / 2;
    t.A = hankel_block(u, k + 1, 0);
    t.B = hankel_block(u, k + 1, 1);
  } else {
    const int k = N / 2;
    t.A = hankel_block(u, k + 1, 0);
    t.C = hankel_block(u, k, 2);  // indices from 1: entries u_{i+j}, i,j>=1
  }
  return t;
}

namespace {

// The PSD matrices whose nonnegativity characterizes the cone.
std::vector<Mat> realizability_matrices(const MomentVec& u) {
  const int N = static_cast<int>(u.size()) - 1;
  const HankelTriple t = hankel(u);
  if (N % 2 == 1) return {t.A - t.B, t.A + t.B};
  const int k = N / 2;
  if (k == 0) return {t.A};
  return {t.A, t.A.topLeftCorner(k, k) - t.C};
}

}  // namespace

bool is_realizable(const MomentVec& u, double tol) {
  if (!u.allFinite()) return false;
  for (const Mat& m : realizability_matrices(u)) {
    if (!linalg::is_psd(m, tol)) return false;
  }
  return true;
}

double realizability_margin(const MomentVec& u) {
  if (!u.allFinite()) return -std::numeric_limits<double>::infinity();
  double margin = std::numeric_limits<double>::infinity();
  for (const Mat& m : realizability_matrices(u)) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    margin = std::min(margin, linalg::smallest_eigenvalue(m) / scale);
  }
  return margin;
}

RealizabilityBounds realizability_bounds(const MomentVec& u, double tol) {
  const int N = static_cast<int>(u.size()) - 1;
  if (!is_realizable(u, tol)) {
    std::ostringstream os;
    os << "realizability_bounds: moment vector of order " << N
       << " is not realizable (margin " << realizability_margin(u) << ")";
    throw NotRealizableError(os.str());
  }

  RealizabilityBounds b{};
  if (N % 2 == 1) {
    const int k = (N - 1) / 2;
    // flow: Schur complement of the corner of A(k+1) >= 0.
    Mat A = hankel_block(u, k + 1, 0);
    Vec bp(k + 1);
    for (int i = 0; i <= k; ++i) bp(i) = u(k + 1 + i);
    b.lower = bp.dot(linalg::pseudo_inverse(A) * bp);
    // fup: Schur complement of the corner of A(k) - C(k+1) >= 0, whose
    // leading block has entries u_{i+j} - u_{i+j+2}, i,j = 0..k-1.
    if (N == 1) {
      b.upper = u(0);
    } else {
      Mat D(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) D(i, j) = u(i + j) - u(i + j + 2);
      Vec bm(k);
      for (int i = 0; i < k; ++i) bm(i) = u(k + i) - u(k + i + 2);
      b.upper = u(N - 1) - bm.dot(linalg::pseudo_inverse(D) * bm);
    }
  } else {
    const int k = N / 2;  // N >= 2 here
    Mat Am(k, k), Ap(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        Am(i, j) = u(i + j) - u(i + j + 1);
        Ap(i, j) = u(i + j) + u(i + j + 1);
      }
    }
    Vec bm(k), bp(k);
    for (int i = 0; i < k; ++i) {
      bm(i) = u(k + i) - u(k + i + 1);
      bp(i) = u(k + i) + u(k + i + 1);
    }
    b.upper = u(N) - bm.dot(linalg::pseudo_inverse(Am) * bm);
    b.lower = -u(N) + bp.dot(linalg::pseudo_inverse(Ap) * bp);
  }
  return b;
}

double kershaw_closure(const MomentVec& u) {
  const int N = static_cast<int>(u.size()) - 1;
  const MomentVec phi = normalize_moments(u);
  const RealizabilityBounds b = realizability_bounds(phi);

  double zeta;
  if (N % 2 == 1) {
    const int k = (N - 1) / 2;
    zeta = static_cast<double>(k + 2) / static_cast<double>(2 * k + 3);
  } else {
    zeta = 0.5;
  }
  double phi_next = zeta * b.lower + (1.0 - zeta) * b.upper;
  double u_next = u(0) * phi_next;

  MomentVec ext(N + 2);
  ext.head(N + 1) = u;
  ext(N + 1) = u_next;
  if (!is_realizable(ext)) {
    // Roundoff pushed the extension outside the cone; clamp just inside.
    const double eps = 1e-14 * (b.upper - b.lower);
    phi_next = std::clamp(phi_next, b.lower + eps, b.upper - eps);
    u_next = u(0) * phi_next;
  }
  return u_next;
}

Eigen::VectorXd flux(const MomentVec& u) {
  const int N = static_cast<int>(u.size()) - 1;
  Eigen::VectorXd F(N + 1);
  F.head(N) = u.tail(N);
  F(N) = kershaw_closure(u);
  return F;
}

Eigen::VectorXd source(const MomentVec& u, double sigma_s, double sigma_a,
                       const Eigen::VectorXd& q_moments) {
  assert(q_moments.size() == u.size());
  const int N = static_cast<int>(u.size()) - 1;
  return sigma_s * (u(0) * isotropic_moments(N) - u) + q_moments - sigma_a * u;
}

}  // namespace kershaw
