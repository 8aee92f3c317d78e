#include <doctest.h>

#include <cmath>

#include "besselext/numerics.hpp"
#include "oracles.hpp"

using namespace besselext;
using numerics::Tolerance;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("integrate_ode reproduces closed-form solutions") {
  Tolerance tol;

  SUBCASE("u'' = 0, linear solution") {
    auto sol = numerics::integrate_ode<double>([](double) { return 0.0; }, 0.0, 1.0, 1.0, 0.7, tol);
    CHECK(sol.value == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(sol.derivative == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("u'' = -pi^2 u gives sin(pi x)") {
    auto sol = numerics::integrate_ode<double>([](double) { return -kPi * kPi; }, 0.0, 0.0, kPi,
                                               1.0, tol);
    CHECK(std::abs(sol.value) < 1e-10);
    CHECK(sol.derivative == doctest::Approx(-kPi).epsilon(1e-9));
    auto mid = sol.eval(0.5);
    CHECK(mid.first == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("u'' = u gives cosh/sinh") {
    // closed-form exponential oracle
    auto sol = numerics::integrate_ode<double>([](double) { return 1.0; }, 0.0, 1.0, 0.0, 1.0, tol);
    CHECK(sol.value == doctest::Approx(std::cosh(1.0)).epsilon(1e-11));
    CHECK(sol.derivative == doctest::Approx(std::sinh(1.0)).epsilon(1e-11));
  }

  SUBCASE("round trip a->b->a reproduces initial data") {
    auto coeff = [](double x) { return -30.0 + 4.0 * x; };
    auto fwd = numerics::integrate_ode<double>(coeff, 0.1, 0.3, -1.2, 0.9, tol);
    auto back = numerics::integrate_ode<double>(coeff, 0.9, fwd.value, fwd.derivative, 0.1, tol);
    CHECK(std::abs(back.value - 0.3) < 10.0 * 1e-8);
    CHECK(std::abs(back.derivative + 1.2) < 10.0 * 1e-8);
  }

  SUBCASE("complex scalar path") {
    std::complex<double> i(0.0, 1.0);
    auto sol = numerics::integrate_ode<std::complex<double>>(
        [i](double) { return i; }, 0.0, std::complex<double>(1.0, 0.0),
        std::complex<double>(0.0, 0.0), 1.0, tol);
    // u'' = i u, u = cosh(sqrt(i) x)
    std::complex<double> r = std::sqrt(i);
    CHECK(std::abs(sol.value - std::cosh(r)) < 1e-10);
  }

  SUBCASE("step-count exhaustion names the abscissa") {
    Tolerance starved = tol;
    starved.max_steps = 4;
    CHECK_THROWS_AS(numerics::integrate_ode<double>([](double x) { return 1.0 / (x * x); }, 0.01,
                                                    1.0, 0.0, 1.0, starved),
                    SingularityError);
  }
}

TEST_CASE("quad_singular handles endpoint singularities") {
  Tolerance tol;

  SUBCASE("plain unit integral") {
    auto r = numerics::quad_singular<double>([](double) { return 1.0; }, 0.0, 1.0, tol);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("x^{-1/2}") {
    auto r = numerics::quad_singular<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                             tol);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("log singularity") {
    auto r = numerics::quad_singular<double>([](double x) { return std::log(1.0 / x); }, 0.0, 1.0,
                                             tol);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("even symmetry equals twice the half interval") {
    auto f = [](double x) {
      return std::log(1.0 / (x * (1 - x))) * std::exp(-3.0 * (x - 0.5) * (x - 0.5));
    };
    auto whole = numerics::quad_singular<double>(f, 0.0, 1.0, tol);
    auto half = numerics::quad_singular<double>(f, 0.0, 0.5, tol);
    CHECK(whole.value == doctest::Approx(2.0 * half.value).epsilon(1e-10));
  }
  SUBCASE("non-convergence carries the last two levels") {
    CHECK_THROWS_AS(numerics::quad_singular<double>(
                        [](double x) { return std::sin(1.0 / x) / x; }, 0.0, 1.0, tol),
                    ConvergenceError);
  }
}

TEST_CASE("find_root brackets and polishes") {
  Tolerance tol;
  CHECK(numerics::find_root([](double x) { return x - 2.0; }, 0.0, 5.0, tol) ==
        doctest::Approx(2.0).epsilon(1e-14));
  // truncated J0 power series: first zero
  double j01 = numerics::find_root(
      [](double x) { return static_cast<double>(oracles::j0_series(x)); }, 2.0, 3.0, tol);
  CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-12));
  double r = numerics::find_root([](double x) { return std::cos(x); }, 1.0, 2.0, tol);
  CHECK(r == doctest::Approx(kPi / 2.0).epsilon(1e-13));
  CHECK(r >= 1.0);
  CHECK(r <= 2.0);
  CHECK_THROWS_AS(numerics::find_root([](double x) { return x + 10.0; }, 0.0, 1.0, tol),
                  BracketError);
}

TEST_CASE("limit_extrapolate against declared decay models") {
  Tolerance tol;

  SUBCASE("constant plus linear") {
    auto r = numerics::limit_extrapolate({1e-1, 1e-2, 1e-3, 1e-4}, {1.1, 1.01, 1.001, 1.0001},
                                         numerics::DecayModel::Algebraic, tol);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("half-power model on three samples") {
    std::vector<double> d = {1e-2, 1e-3, 1e-4};
    std::vector<double> v;
    for (double x : d) v.push_back(3.0 + 2.0 * std::sqrt(x));
    auto r = numerics::limit_extrapolate(d, v, numerics::DecayModel::Algebraic, tol);
    CHECK(std::abs(r.value - 3.0) < 1e-5);
  }
  SUBCASE("vanishing log sequence") {
    std::vector<double> d, v;
    for (int k = 0; k <= 8; ++k) {
      double dd = std::pow(2.0, -k) / 16.0;
      d.push_back(dd);
      v.push_back(std::sqrt(dd) * std::log(1.0 / dd));
    }
    auto r = numerics::limit_extrapolate(d, v, numerics::DecayModel::AlgebraicLog, tol);
    CHECK(std::abs(r.value) < 5e-3);
  }
  SUBCASE("model mismatch raises") {
    std::vector<double> d, v;
    for (int k = 0; k <= 8; ++k) {
      double dd = std::pow(2.0, -k) / 16.0;
      d.push_back(dd);
      v.push_back(std::sin(1.0 / dd));
    }
    CHECK_THROWS_AS(numerics::limit_extrapolate(d, v, numerics::DecayModel::Algebraic, tol),
                    ModelMismatchError);
  }
}
