#include <doctest.h>

#include <cmath>

#include "besselext/specialfn.hpp"
#include "oracles.hpp"

using namespace besselext;
using specialfn::Complex;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEuler = 0.57721566490153286060651209008240243;
numerics::Tolerance tol;
}  // namespace

TEST_CASE("gamma function values and recurrence") {
  CHECK(specialfn::gamma_fn({1.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(specialfn::gamma_fn({0.5, 0.0}).real() ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  for (Complex z : {Complex(0.3, 0.0), Complex(1.7, 0.0), Complex(2.0, 1.0)}) {
    Complex ratio = specialfn::gamma_fn(z + 1.0) / specialfn::gamma_fn(z);
    CHECK(std::abs(ratio - z) < 1e-12 * std::abs(z));
  }
  CHECK_THROWS_AS(specialfn::gamma_fn({0.0, 0.0}), PoleError);
  CHECK_THROWS_AS(specialfn::gamma_fn({-3.0, 0.0}), PoleError);
  CHECK(std::abs(specialfn::rgamma({-2.0, 0.0})) == 0.0);
}

TEST_CASE("digamma and trigamma") {
  CHECK(specialfn::digamma({1.0, 0.0}).real() == doctest::Approx(-kEuler).epsilon(1e-14));
  CHECK(specialfn::digamma({2.0, 0.0}).real() == doctest::Approx(1.0 - kEuler).epsilon(1e-14));
  CHECK(specialfn::digamma({0.5, 0.0}).real() ==
        doctest::Approx(-kEuler - 2.0 * std::log(2.0)).epsilon(1e-14));
  // trigamma positive integer: psi'(1) = pi^2/6
  CHECK(specialfn::trigamma({1.0, 0.0}).real() ==
        doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
  // recurrence psi'(z) = psi'(z+1) + 1/z^2 at a complex point
  Complex z(0.5, 0.5);
  Complex lhs = specialfn::trigamma(z);
  Complex rhs = specialfn::trigamma(z + 1.0) + 1.0 / (z * z);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("hyp2f1 series, Gauss point, and connection formulas") {
  SUBCASE("empty series") {
    CHECK(specialfn::hyp2f1({{0.7, 0}, {0.2, 0}, {1.3, 0}, 0.0}, tol).real() == 1.0);
  }
  SUBCASE("value at xi = 1 via Gauss identity") {
    auto v = specialfn::hyp2f1({{0.5, 0}, {0.5, 0}, {2.0, 0}, 1.0}, tol);
    CHECK(v.real() == doctest::Approx(4.0 / kPi).epsilon(1e-13));
  }
  SUBCASE("series against the brute-force oracle") {
    auto mine = specialfn::hyp2f1({{0.3, 0}, {0.7, 0}, {1.1, 0}, 0.3}, tol);
    auto ref = oracles::hyp2f1_series({0.3, 0}, {0.7, 0}, {1.1, 0}, 0.3);
    CHECK(std::abs(mine - ref) < 5e-12 * std::abs(ref));
  }
  SUBCASE("generic connection against the oracle at xi = 0.7") {
    auto mine = specialfn::hyp2f1({{0.3, 0}, {0.7, 0}, {1.35, 0}, 0.7}, tol);
    auto ref = oracles::hyp2f1_series({0.3, 0}, {0.7, 0}, {1.35, 0}, 0.7, 20000);
    CHECK(std::abs(mine - ref) < 1e-10 * std::abs(ref));
  }
  SUBCASE("logarithmic connection m = 0 against the oracle") {
    // c = a + b exactly
    auto mine = specialfn::hyp2f1({{0.4, 0}, {0.9, 0}, {1.3, 0}, 0.7}, tol);
    auto ref = oracles::hyp2f1_series({0.4, 0}, {0.9, 0}, {1.3, 0}, 0.7, 40000);
    CHECK(std::abs(mine - ref) < 1e-9 * std::abs(ref));
  }
  SUBCASE("logarithmic connection m = 1 and m = 2 against the oracle") {
    auto m1 = specialfn::hyp2f1({{0.4, 0}, {0.9, 0}, {2.3, 0}, 0.7}, tol);
    auto r1 = oracles::hyp2f1_series({0.4, 0}, {0.9, 0}, {2.3, 0}, 0.7, 40000);
    CHECK(std::abs(m1 - r1) < 1e-10 * std::abs(r1));
    auto m2 = specialfn::hyp2f1({{0.4, 0}, {0.9, 0}, {3.3, 0}, 0.7}, tol);
    auto r2 = oracles::hyp2f1_series({0.4, 0}, {0.9, 0}, {3.3, 0}, 0.7, 40000);
    CHECK(std::abs(m2 - r2) < 1e-10 * std::abs(r2));
  }
  SUBCASE("negative integer c-a-b via the Euler transform") {
    auto mine = specialfn::hyp2f1({{0.8, 0}, {1.2, 0}, {1.0, 0}, 0.7}, tol);  // d = -1
    auto ref = oracles::hyp2f1_series({0.8, 0}, {1.2, 0}, {1.0, 0}, 0.7, 40000);
    CHECK(std::abs(mine - ref) < 1e-9 * std::abs(ref));
  }
  SUBCASE("conjugate parameter pair stays real") {
    auto v = specialfn::hyp2f1({{0.5, 1.3}, {0.5, -1.3}, {1.7, 0}, 0.8}, tol);
    CHECK(std::abs(v.imag()) < 1e-10 * std::abs(v));
  }
  SUBCASE("xi = 1 divergence raises") {
    CHECK_THROWS_AS(specialfn::hyp2f1({{0.8, 0}, {1.2, 0}, {1.5, 0}, 1.0}, tol),
                    DivergenceError);
  }
  SUBCASE("nonpositive integer gamma raises") {
    CHECK_THROWS_AS(specialfn::hyp2f1({{0.8, 0}, {1.2, 0}, {-1.0, 0}, 0.3}, tol),
                    ParameterError);
  }
  SUBCASE("terminating numerator wins over gamma poles") {
    CHECK(specialfn::hyp2f1({{0.0, 0}, {-0.5, 0}, {0.0, 0}, 0.4}, tol).real() == 1.0);
    CHECK(specialfn::hyp2f1({{1.0, 0}, {0.0, 0}, {2.0, 0}, 0.9}, tol).real() == 1.0);
  }
}

TEST_CASE("gauss_value_at_one") {
  CHECK(specialfn::gauss_value_at_one({1, 0}, {0, 0}, {2, 0}).real() ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(specialfn::gauss_value_at_one({0.5, 0}, {0.5, 0}, {2, 0}).real() ==
        doctest::Approx(4.0 / kPi).epsilon(1e-13));
  auto conj = specialfn::gauss_value_at_one({0.5, 0.9}, {0.5, -0.9}, {2.0, 0});
  CHECK(std::abs(conj.imag()) < 1e-12);
  CHECK_THROWS_AS(specialfn::gauss_value_at_one({1.0, 0}, {1.5, 0}, {2.0, 0}), DivergenceError);
}

TEST_CASE("bessel J0 zeros against the bisection oracle") {
  for (int k = 1; k <= 5; ++k) {
    CHECK(specialfn::bessel_j0_zero(k) ==
          doctest::Approx(oracles::j0_zero_bisection(k)).epsilon(1e-12));
  }
  double prev = 0.0;
  for (int k = 1; k <= 20; ++k) {
    double z = specialfn::bessel_j0_zero(k);
    CHECK(z > prev);
    prev = z;
  }
  CHECK_THROWS_AS(specialfn::bessel_j0_zero(0), ParameterError);
}
