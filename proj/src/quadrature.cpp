#include "kershaw/quadrature.hpp"

#include <cassert>
#include <cmath>

namespace kershaw {

namespace {

// Legendre P_n(x) and P_{n-1}(x) on [-1,1] by the three-term recurrence.
void legendre_pair(int n, double x, double& pn, double& pn1) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    pn = 1.0;
    pn1 = 0.0;
    return;
  }
  for (int m = 1; m < n; ++m) {
    const double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pn1 = p0;
}

double legendre_deriv(int n, double x, double pn, double pn1) {
  if (n == 0) return 0.0;
  const double d = x * x - 1.0;
  if (std::abs(d) < 1e-14) {
    // P'_n(+-1) = (+-1)^{n-1} n(n+1)/2
    const double s = (x > 0) ? 1.0 : ((n - 1) % 2 == 0 ? 1.0 : -1.0);
    return s * 0.5 * n * (n + 1);
  }
  return n * (x * pn - pn1) / d;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  assert(n >= 1);
  Eigen::VectorXd x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev estimate.
    double xi = std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * n + 2.0));
    double pn = 0.0, pn1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, xi, pn, pn1);
      const double dp = legendre_deriv(n, xi, pn, pn1);
      const double dx = pn / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, xi, pn, pn1);
    const double dp = legendre_deriv(n, xi, pn, pn1);
    x(i) = xi;
    w(i) = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  // Scale [-1,1] -> Ihat; weights sum 2 -> 1.
  return {x / 2.0, w / 2.0};
}

QuadratureRule gauss_lobatto(int n) {
  assert(n >= 2);
  Eigen::VectorXd x(n), w(n);
  x(0) = -1.0;
  x(n - 1) = 1.0;
  const int m = n - 1;  // interior nodes are the roots of P'_{n-1}
  for (int i = 1; i < n - 1; ++i) {
    double xi = std::cos(M_PI * i / m);  // Chebyshev-Lobatto estimate
    for (int it = 0; it < 100; ++it) {
      double pm = 0.0, pm1 = 0.0;
      legendre_pair(m, xi, pm, pm1);
      const double dp = legendre_deriv(m, xi, pm, pm1);
      const double ddp =
          (2.0 * xi * dp - m * (m + 1) * pm) / (1.0 - xi * xi);
      const double dx = dp / ddp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x(n - 1 - i) = xi;
  }
  for (int i = 0; i < n; ++i) {
    double pm = 0.0, pm1 = 0.0;
    legendre_pair(m, x(i), pm, pm1);
    w(i) = 2.0 / (n * m * pm * pm);
  }
  return {x / 2.0, w / 2.0};
}

double legendre_ref(int i, double zhat) {
  double pn, pn1;
  legendre_pair(i, 2.0 * zhat, pn, pn1);
  return pn;
}

double legendre_ref_deriv(int i, double zhat) {
  const double x = 2.0 * zhat;
  double pn, pn1;
  legendre_pair(i, x, pn, pn1);
  return 2.0 * legendre_deriv(i, x, pn, pn1);
}

}  // namespace kershaw
