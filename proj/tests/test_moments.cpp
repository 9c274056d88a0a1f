#include <doctest.h>

#include <cmath>

#include "kershaw/moments.hpp"
#include "oracles.hpp"

using namespace kershaw;

namespace {

MomentVec vec(std::initializer_list<double> v) {
  MomentVec u(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) u(i++) = x;
  return u;
}

}  // namespace

TEST_CASE("monomial basis evaluation") {
  CHECK((basis_eval(0.0, 3) - vec({1, 0, 0, 0})).norm() == 0.0);
  CHECK((basis_eval(1.0, 2) - vec({1, 1, 1})).norm() == 0.0);
  CHECK((basis_eval(-0.5, 3) - vec({1, -0.5, 0.25, -0.125})).norm() <
        1e-16);
}

TEST_CASE("isotropic moments") {
  const MomentVec n = isotropic_moments(5);
  CHECK(n(0) == 1.0);
  CHECK(n(1) == 0.0);
  CHECK(n(2) == doctest::Approx(1.0 / 3.0));
  CHECK(n(3) == 0.0);
  CHECK(n(4) == doctest::Approx(1.0 / 5.0));
  CHECK(n(5) == 0.0);
}

TEST_CASE("Hankel matrices per parity") {
  SUBCASE("N=2") {
    const HankelTriple t = hankel(vec({1, 0, 1.0 / 3.0}));
    REQUIRE(t.A.rows() == 2);
    CHECK(t.A(0, 0) == 1.0);
    CHECK(t.A(0, 1) == 0.0);
    CHECK(t.A(1, 1) == doctest::Approx(1.0 / 3.0));
    REQUIRE(t.C.rows() == 1);
    CHECK(t.C(0, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(t.B.size() == 0);
  }
  SUBCASE("N=1") {
    const HankelTriple t = hankel(vec({1, 1}));
    REQUIRE(t.A.rows() == 1);
    CHECK(t.A(0, 0) == 1.0);
    CHECK(t.B(0, 0) == 1.0);
    CHECK(t.C.size() == 0);
  }
  SUBCASE("N=3") {
    const HankelTriple t = hankel(vec({2, 0, 2.0 / 3.0, 0}));
    REQUIRE(t.A.rows() == 2);
    CHECK(t.A(0, 0) == 2.0);
    CHECK(t.A(1, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(t.B(0, 0) == 0.0);
    CHECK(t.B(0, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(t.B(1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(t.B(1, 1) == 0.0);
  }
}

TEST_CASE("realizability test") {
  CHECK(is_realizable(vec({1, 0.5})));
  CHECK_FALSE(is_realizable(vec({1, 1.1})));
  CHECK(is_realizable(vec({1, 0, 1.0 / 3.0})));
  // Outside the second-order cone: u0 u2 - u1^2 = 0.2 - 0.64 < 0. This is
  // the vector the realizability limiter has to pull back to the mean.
  CHECK_FALSE(is_realizable(vec({1, 0.8, 0.2})));
  CHECK(is_realizable(vec({1, 1})));  // boundary atom
  CHECK_FALSE(is_realizable(vec({-1, -1})));
}

TEST_CASE("realizability margin sign") {
  CHECK(realizability_margin(vec({1, 0})) > 0.0);
  CHECK(realizability_margin(vec({1, 1})) == doctest::Approx(0.0).scale(1));
  CHECK(realizability_margin(vec({1, 1.5})) < 0.0);
}

TEST_CASE("bounds for the next moment") {
  SUBCASE("N=1 normalized") {
    const RealizabilityBounds b = realizability_bounds(vec({1, 0.5}));
    CHECK(b.lower == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("N=2 isotropic") {
    const RealizabilityBounds b =
        realizability_bounds(vec({1, 0, 1.0 / 3.0}));
    CHECK(b.lower == doctest::Approx(-2.0 / 9.0).epsilon(1e-13));
    CHECK(b.upper == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  }
  SUBCASE("boundary atom collapses the interval") {
    const RealizabilityBounds b = realizability_bounds(vec({1, 1}));
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("throws outside the cone") {
    CHECK_THROWS_AS(realizability_bounds(vec({1, 1.1})), NotRealizableError);
  }
}

TEST_CASE("Kershaw closure point values") {
  CHECK(kershaw_closure(vec({1, 0})) == doctest::Approx(1.0 / 3.0));
  CHECK(kershaw_closure(vec({1, 1})) == doctest::Approx(1.0).epsilon(1e-12));
  // K1: phi2 = (2/3) phi1^2 + 1/3
  CHECK(kershaw_closure(vec({1, 0.5})) == doctest::Approx(0.5));
  CHECK(kershaw_closure(vec({1, 0, 1.0 / 3.0})) ==
        doctest::Approx(0.0).scale(1));
}

TEST_CASE("flux") {
  CHECK((flux(vec({1, 0})) - vec({0, 1.0 / 3.0})).norm() < 1e-14);
  CHECK((flux(vec({1, 1})) - vec({1, 1})).norm() < 1e-12);
  CHECK((flux(vec({1, 0, 1.0 / 3.0})) - vec({0, 1.0 / 3.0, 0})).norm() <
        1e-14);
}

TEST_CASE("collision source") {
  const int N = 3;
  const MomentVec q0 = MomentVec::Zero(N + 1);
  SUBCASE("isotropic state is a scattering equilibrium") {
    const MomentVec u = 2.7 * isotropic_moments(N);
    CHECK(source(u, 1.3, 0.0, q0).norm() == doctest::Approx(0.0).scale(1));
  }
  SUBCASE("no collisions, no source") {
    const MomentVec u = vec({1, 0.3, 0.2, 0.1});
    CHECK(source(u, 0.0, 0.0, q0).norm() == 0.0);
  }
  SUBCASE("beam against isotropic scattering") {
    const Eigen::VectorXd s = source(vec({1, 1}), 1.0, 0.0,
                                     MomentVec::Zero(2));
    CHECK(s(0) == 0.0);
    CHECK(s(1) == doctest::Approx(-1.0));
  }
  SUBCASE("zeroth scattering component is exactly zero") {
    auto gen = oracle::rng(7);
    for (int i = 0; i < 50; ++i) {
      const MomentVec u = oracle::random_atomic(gen, N);
      CHECK(source(u, 2.5, 0.0, q0)(0) == 0.0);
    }
  }
}

TEST_CASE("atomic moments") {
  CHECK((atomic_moments(vec({1}), vec({1}), 2) - vec({1, 1, 1})).norm() ==
        0.0);
  CHECK((atomic_moments(vec({0.5, 0.5}), vec({-1, 1}), 3) -
         vec({1, 0, 1, 0}))
            .norm() == 0.0);
  CHECK((atomic_moments(vec({1}), vec({0}), 2) - vec({1, 0, 0})).norm() ==
        0.0);
}

TEST_CASE("atomic measures are realizable" *
          doctest::description("spec invariant, 1e4 seeded draws")) {
  auto gen = oracle::rng(12345);
  for (int N = 1; N <= 6; ++N) {
    for (int trial = 0; trial < 1700; ++trial) {
      const MomentVec u = oracle::random_atomic(gen, N);
      CAPTURE(N);
      CAPTURE(trial);
      REQUIRE(is_realizable(u, 1e-10));
    }
  }
}

TEST_CASE("bounds bracket the next moment of atomic measures") {
  auto gen = oracle::rng(99);
  for (int N = 1; N <= 5; ++N) {
    for (int trial = 0; trial < 400; ++trial) {
      const MomentVec ext = oracle::random_atomic(gen, N + 1);
      const MomentVec u = ext.head(N + 1);
      const double tol = 1e-9 * std::max(1.0, u(0));
      const RealizabilityBounds b = realizability_bounds(u);
      CAPTURE(N);
      REQUIRE(ext(N + 1) >= b.lower - tol);
      REQUIRE(ext(N + 1) <= b.upper + tol);
    }
  }
}

TEST_CASE("closure stays in the admissible interval and extends realizably") {
  auto gen = oracle::rng(4242);
  for (int N = 1; N <= 5; ++N) {
    for (int trial = 0; trial < 400; ++trial) {
      const MomentVec u = oracle::random_atomic(gen, N);
      const double c = kershaw_closure(u);
      const RealizabilityBounds b = realizability_bounds(u);
      const double tol = 1e-9 * std::max(1.0, u(0));
      CAPTURE(N);
      REQUIRE(c >= b.lower - tol);
      REQUIRE(c <= b.upper + tol);
      MomentVec ext(N + 2);
      ext.head(N + 1) = u;
      ext(N + 1) = c;
      REQUIRE(is_realizable(ext, 1e-9));
    }
  }
}

TEST_CASE("closure homogeneity of degree one") {
  auto gen = oracle::rng(31);
  std::uniform_real_distribution<double> logc(-6.0, 6.0);
  for (int N = 1; N <= 5; ++N) {
    for (int trial = 0; trial < 200; ++trial) {
      const MomentVec u = oracle::random_atomic(gen, N);
      const double c = std::pow(10.0, logc(gen));
      const double k1 = kershaw_closure((c * u).eval());
      const double k0 = kershaw_closure(u);
      CAPTURE(N);
      REQUIRE(std::abs(k1 - c * k0) <= 1e-10 * std::max(1.0, std::abs(c * k0)));
    }
  }
}

TEST_CASE("isotropic reproduction") {
  for (int N = 1; N <= 6; ++N) {
    for (double c : {0.5, 1.0, 3.0}) {
      // <mu^{N+1}>/2 = 1/(N+2) for odd N, 0 for even N.
      const double expect = (N % 2 == 1) ? c / (N + 2) : 0.0;
      const double got =
          kershaw_closure((c * isotropic_moments(N)).eval());
      CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, c));
    }
  }
}

TEST_CASE("Dirac reproduction at the cone vertices") {
  for (int N = 1; N <= 6; ++N) {
    for (double mu : {1.0, -1.0}) {
      const double expect = std::pow(mu, N + 1);
      const double got = kershaw_closure(basis_eval(mu, N));
      CAPTURE(N);
      CAPTURE(mu);
      CHECK(std::abs(got - expect) <= 1e-12);
    }
  }
}

TEST_CASE("normalization guards the vacuum") {
  const MomentVec u = vec({0, 0});
  const MomentVec phi = normalize_moments(u);
  CHECK(phi.allFinite());
  CHECK(phi(0) == 1.0);
}
