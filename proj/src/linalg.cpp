#include "kershaw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kershaw::linalg {

double smallest_eigenvalue(const Mat& sym) {
  if (!sym.allFinite()) return -std::numeric_limits<double>::infinity();
  if (sym.rows() == 1) return sym(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Mat& sym, double tol) {
  if (sym.size() == 0) return true;
  if (!sym.allFinite()) return false;
  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  return smallest_eigenvalue(sym) >= -tol * scale;
}

Mat pseudo_inverse(const Mat& sym, double rel_cutoff) {
  if (sym.size() == 0) return sym;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  const Vec& lam = es.eigenvalues();
  const double lmax = lam.cwiseAbs().maxCoeff();
  Vec inv = Vec::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) > rel_cutoff * lmax) inv(i) = 1.0 / lam(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<double> fit_polynomial(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Mat V(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      V(i, j) = p;
      p *= xs[static_cast<size_t>(i)];
    }
  }
  Vec rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = ys[static_cast<size_t>(i)];
  Vec c = V.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(c.data(), c.data() + c.size());
}

std::vector<double> real_roots(const std::vector<double>& coeffs,
                               double imag_tol) {
  // Trim negligible leading coefficients so near-degenerate fits do not
  // produce spurious huge roots.
  double cmax = 0.0;
  for (double c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return {};
  size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= 1e-13 * cmax) --deg;
  if (deg == 0) return {};
  if (deg == 1) return {-coeffs[0] / coeffs[1]};

  Mat comp = Mat::Zero(static_cast<Eigen::Index>(deg),
                       static_cast<Eigen::Index>(deg));
  for (size_t i = 0; i + 1 < deg; ++i) comp(static_cast<Eigen::Index>(i + 1),
                                            static_cast<Eigen::Index>(i)) = 1.0;
  for (size_t i = 0; i < deg; ++i) {
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
        -coeffs[i] / coeffs[deg];
  }
  Eigen::EigenSolver<Mat> es(comp);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) < imag_tol * (1.0 + std::abs(z.real()))) {
      roots.push_back(z.real());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace kershaw::linalg
