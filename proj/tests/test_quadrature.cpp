#include <doctest.h>

#include <cmath>

#include "kershaw/quadrature.hpp"

using namespace kershaw;

namespace {

// int_{-1/2}^{1/2} zhat^m dzhat
double monomial_integral(int m) {
  if (m % 2 == 1) return 0.0;
  return 1.0 / ((m + 1) * std::pow(2.0, m));
}

double apply(const QuadratureRule& q, int m) {
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    s += q.weights(i) * std::pow(q.nodes(i), m);
  }
  return s;
}

}  // namespace

TEST_CASE("two- and three-point Gauss-Lobatto rules") {
  const QuadratureRule q2 = gauss_lobatto(2);
  CHECK(q2.nodes(0) == doctest::Approx(-0.5));
  CHECK(q2.nodes(1) == doctest::Approx(0.5));
  CHECK(q2.weights(0) == doctest::Approx(0.5));
  CHECK(q2.weights(1) == doctest::Approx(0.5));

  const QuadratureRule q3 = gauss_lobatto(3);
  CHECK(q3.nodes(0) == doctest::Approx(-0.5));
  CHECK(q3.nodes(1) == doctest::Approx(0.0).epsilon(0).scale(1));
  CHECK(q3.nodes(2) == doctest::Approx(0.5));
  CHECK(q3.weights(0) == doctest::Approx(1.0 / 6.0));
  CHECK(q3.weights(1) == doctest::Approx(2.0 / 3.0));
  CHECK(q3.weights(2) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("Gauss-Lobatto exactness degree 2n-3 and normalization") {
  for (int n = 3; n <= 9; ++n) {
    const QuadratureRule q = gauss_lobatto(n);
    CHECK(q.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.endpoint_weight() == doctest::Approx(1.0 / (n * (n - 1))));
    CHECK(apply(q, 2) == doctest::Approx(monomial_integral(2)));
    for (int m = 0; m <= 2 * n - 3; ++m) {
      CHECK(apply(q, m) ==
            doctest::Approx(monomial_integral(m)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("Gauss-Legendre exactness degree 2n-1") {
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule q = gauss_legendre(n);
    CHECK(q.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    for (int m = 0; m <= 2 * n - 1; ++m) {
      CHECK(apply(q, m) ==
            doctest::Approx(monomial_integral(m)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("scaled Legendre basis values") {
  CHECK(legendre_ref(0, 0.3) == doctest::Approx(1.0));
  CHECK(legendre_ref(1, 0.5) == doctest::Approx(1.0));
  CHECK(legendre_ref(2, 0.0) == doctest::Approx(-0.5));
  CHECK(legendre_ref(1, -0.5) == doctest::Approx(-1.0));
  // phi_2 = (12 zhat^2 - 1)/2
  CHECK(legendre_ref(2, 0.25) == doctest::Approx((12 * 0.0625 - 1) / 2));
  CHECK(legendre_ref_deriv(1, 0.1) == doctest::Approx(2.0));
  CHECK(legendre_ref_deriv(2, 0.25) == doctest::Approx(12.0 * 0.25));
}

TEST_CASE("orthogonality of the scaled Legendre basis") {
  const QuadratureRule q = gauss_legendre(12);
  for (int i = 0; i <= 7; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int a = 0; a < q.size(); ++a) {
        s += q.weights(a) * legendre_ref(i, q.nodes(a)) *
             legendre_ref(j, q.nodes(a));
      }
      const double expect = (i == j) ? 1.0 / (2 * i + 1) : 0.0;
      CHECK(s == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("100-point Gauss-Lobatto rule used by the error norms") {
  const QuadratureRule q = gauss_lobatto(100);
  REQUIRE(q.size() == 100);
  CHECK(q.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(q.endpoint_weight() == doctest::Approx(1.0 / 9900.0));
  for (int i = 0; i < 50; ++i) {
    CHECK(q.nodes(i) == doctest::Approx(-q.nodes(99 - i)).epsilon(1e-13));
    CHECK(q.weights(i) == doctest::Approx(q.weights(99 - i)).epsilon(1e-13));
  }
  CHECK(apply(q, 8) == doctest::Approx(monomial_integral(8)).epsilon(1e-13));
}
