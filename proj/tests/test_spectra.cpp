#include <doctest.h>

#include <cmath>

#include "besselext/boundary.hpp"
#include "besselext/spectra.hpp"
#include "oracles.hpp"

using namespace besselext;
using namespace besselext::spectra;
using extensions::ExtensionSpec;

namespace {
numerics::Tolerance tol;
constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace

TEST_CASE("free Dirichlet spectrum (n pi)^2") {
  BesselProblem pb(0, 1, 0.5, 0.5);
  auto sp = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 120.0, tol);
  REQUIRE(sp.eigenvalues.size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(sp.eigenvalues[n - 1].lambda ==
          doctest::Approx(n * n * kPi * kPi).epsilon(1e-10));
    CHECK(sp.eigenvalues[n - 1].multiplicity == 1);
  }
  // the determinant changes sign across each root
  double before = matching_determinant(pb, ExtensionSpec::friedrichs(), 9.0, tol).real();
  double after = matching_determinant(pb, ExtensionSpec::friedrichs(), 11.0, tol).real();
  CHECK(before * after < 0.0);
}

TEST_CASE("bessel ground state at s_a = 0") {
  BesselProblem pb(0, 1, 0.0, 0.5);
  auto sp = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 40.0, tol);
  REQUIRE(sp.eigenvalues.size() >= 2);
  double j1 = oracles::j0_zero_bisection(1), j2 = oracles::j0_zero_bisection(2);
  CHECK(sp.eigenvalues[0].lambda == doctest::Approx(j1 * j1).epsilon(1e-6));
  CHECK(sp.eigenvalues[1].lambda == doctest::Approx(j2 * j2).epsilon(1e-6));
  // sign change brackets j01^2 inside [5.7, 5.9]
  double d1 = matching_determinant(pb, ExtensionSpec::friedrichs(), 5.7, tol).real();
  double d2 = matching_determinant(pb, ExtensionSpec::friedrichs(), 5.9, tol).real();
  CHECK(d1 * d2 < 0.0);
}

TEST_CASE("krein spectrum of the free problem against independent oracles") {
  BesselProblem pb(0, 1, 0.5, 0.5);
  auto sp = eigenvalues(pb, ExtensionSpec::krein(), -1.0, 130.0, tol);
  REQUIRE(sp.eigenvalues.size() >= 3);
  CHECK(std::abs(sp.eigenvalues[0].lambda) < 1e-7);
  CHECK(sp.eigenvalues[0].multiplicity == 2);

  // secular equation: 2(1 - cos k) = k sin k, roots k = 2 pi n and tan(k/2) = k/2
  double x1 = oracles::tanx_eq_x_root(1);
  CHECK(sp.eigenvalues[1].lambda == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-6));
  CHECK(sp.eigenvalues[2].lambda == doctest::Approx(4.0 * x1 * x1).epsilon(1e-6));

  // dense finite-element discretization oracle (O(h^2) accurate)
  auto fem = oracles::fem_krein_free_eigenvalues(200, 4);
  CHECK(std::abs(fem[0]) < 1e-8);
  CHECK(std::abs(fem[1]) < 1e-8);
  CHECK(fem[2] == doctest::Approx(sp.eigenvalues[1].lambda).epsilon(2e-4));
  CHECK(fem[3] == doctest::Approx(sp.eigenvalues[2].lambda).epsilon(2e-4));
}

TEST_CASE("separated Neumann-type angles") {
  BesselProblem pb(0, 1, 0.5, 0.5);
  auto ext = ExtensionSpec::separated(kPi / 2.0, kPi / 2.0);
  auto sp = eigenvalues(pb, ext, -1.0, 50.0, tol);
  REQUIRE(sp.eigenvalues.size() >= 3);
  CHECK(std::abs(sp.eigenvalues[0].lambda) < 1e-8);
  CHECK(sp.eigenvalues[1].lambda == doctest::Approx(kPi * kPi).epsilon(1e-8));
  CHECK(sp.eigenvalues[2].lambda == doctest::Approx(4 * kPi * kPi).epsilon(1e-8));
}

TEST_CASE("coupled conditions: periodic and twisted") {
  BesselProblem pb(0, 1, 0.5, 0.5);

  SUBCASE("periodic: double eigenvalues detected") {
    auto sp = eigenvalues(pb, ExtensionSpec::coupled(0.0, {1, 0, 0, 1}), -1.0, 90.0, tol);
    REQUIRE(sp.eigenvalues.size() >= 2);
    CHECK(std::abs(sp.eigenvalues[0].lambda) < 1e-8);
    CHECK(sp.eigenvalues[0].multiplicity == 1);  // constant only
    CHECK(sp.eigenvalues[1].lambda == doctest::Approx(4 * kPi * kPi).epsilon(1e-7));
    CHECK(sp.eigenvalues[1].multiplicity == 2);
  }
  SUBCASE("complex phase: Floquet eigenvalues, real spectrum") {
    double phi = kPi / 3.0;
    auto sp = eigenvalues(pb, ExtensionSpec::coupled(phi, {1, 0, 0, 1}), 0.5, 60.0, tol);
    REQUIRE(sp.eigenvalues.size() >= 2);
    CHECK(sp.eigenvalues[0].lambda == doctest::Approx(phi * phi).epsilon(1e-6));
    double k2 = 2 * kPi - phi;
    CHECK(sp.eigenvalues[1].lambda == doctest::Approx(k2 * k2).epsilon(1e-6));
    for (auto& e : sp.eigenvalues) CHECK(e.residual < 1e-7);
  }
}

TEST_CASE("grid refinement stability") {
  BesselProblem pb(0, 1, 0.25, 0.7);
  auto full = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 200.0, tol);
  auto left = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 101.3, tol);
  auto right = eigenvalues(pb, ExtensionSpec::friedrichs(), 101.3, 200.0, tol);
  std::vector<double> merged;
  for (auto& e : left.eigenvalues) merged.push_back(e.lambda);
  for (auto& e : right.eigenvalues) merged.push_back(e.lambda);
  REQUIRE(merged.size() == full.eigenvalues.size());
  for (std::size_t i = 0; i < merged.size(); ++i)
    CHECK(merged[i] == doctest::Approx(full.eigenvalues[i].lambda).epsilon(1e-9));
}

TEST_CASE("eigenfunctions") {
  BesselProblem pb(0, 1, 0.5, 0.5);

  SUBCASE("Dirichlet modes are sqrt(2) sin(n pi x)") {
    auto efs = eigenfunction(pb, ExtensionSpec::friedrichs(), kPi * kPi, tol);
    REQUIRE(efs.size() == 1);
    double sgn = efs[0].eval(0.5) > 0 ? 1.0 : -1.0;
    for (double x : {0.2, 0.5, 0.8}) {
      CHECK(sgn * efs[0].eval(x) ==
            doctest::Approx(std::sqrt(2.0) * std::sin(kPi * x)).epsilon(1e-7));
    }
    CHECK(efs[0].residual < 1e-6);
  }
  SUBCASE("distinct eigenfunctions are orthogonal") {
    auto e1 = eigenfunction(pb, ExtensionSpec::friedrichs(), kPi * kPi, tol);
    auto e2 = eigenfunction(pb, ExtensionSpec::friedrichs(), 4 * kPi * kPi, tol);
    auto ip = numerics::quad_singular<double>(
        [&](double x) { return e1[0].eval(x) * e2[0].eval(x); }, 0.0, 1.0, tol);
    CHECK(std::abs(ip.value) < 1e-7);
  }
  SUBCASE("krein kernel pair spans {1, x}") {
    auto efs = eigenfunction(pb, ExtensionSpec::krein(), 0.0, tol);
    REQUIRE(efs.size() == 2);
    // project both onto the orthonormal kernel basis {1, sqrt(3)(2x-1)};
    // the residual orthogonal to the span must vanish
    auto ip = [&](auto f, auto g) {
      return numerics::quad_singular<double>([&](double x) { return f(x) * g(x); }, 0.0, 1.0, tol)
          .value;
    };
    auto one = [](double) { return 1.0; };
    auto leg = [](double x) { return std::sqrt(3.0) * (2.0 * x - 1.0); };
    for (auto& ef : efs) {
      double c1 = ip(ef.eval, one), c2 = ip(ef.eval, leg);
      double resid = ip(ef.eval, ef.eval) - c1 * c1 - c2 * c2;
      CHECK(std::abs(resid) < 1e-6);
    }
    // orthonormal pair
    CHECK(ip(efs[0].eval, efs[0].eval) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(ip(efs[0].eval, efs[1].eval)) < 1e-7);
  }
  SUBCASE("a-posteriori boundary conditions via boundary values") {
    BesselProblem pb2(0, 1, 0.0, 0.5);
    auto efs = eigenfunction(pb2, ExtensionSpec::friedrichs(), oracles::j0_zero_bisection(1) *
                                                                   oracles::j0_zero_bisection(1),
                             tol);
    REQUIRE(efs.size() == 1);
    solutions::FrameMember g;
    auto ev = efs[0].eval;
    g.eval = [ev](double x) {
      double h = 1e-6 * std::min(x, 1.0 - x);
      return std::pair<double, double>{ev(x), (ev(x + h) - ev(x - h)) / (2 * h)};
    };
    auto bd = boundary::boundary_values(pb2, g, tol);
    REQUIRE(bd.at_a.has_value());
    // Friedrichs: g~(a) = 0 (relative to the eigenfunction scale)
    CHECK(std::abs(bd.at_a->first) < 1e-6);
  }
  SUBCASE("non-eigenvalue input is rejected") {
    CHECK_THROWS_AS(eigenfunction(pb, ExtensionSpec::friedrichs(), 11.0, tol), ParameterError);
  }
}

TEST_CASE("limit-point shooting: one-singularity problems") {
  // s_a = 1.5 is limit point at a; Friedrichs needs only the b condition.
  // With s_b = 1/2 the solutions are x^{1/2} J_{3/2}-type; pin the ground
  // state by the determinant bracket instead of a closed form.
  BesselProblem pb(0, 1, 1.5, 0.5);
  auto sp = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 60.0, tol);
  REQUIRE(!sp.eigenvalues.empty());
  // j_{3/2,1} ~ 4.49340945790906 (the tan x = x root), lambda_1 = j^2
  double j = oracles::tanx_eq_x_root(1);
  CHECK(sp.eigenvalues[0].lambda == doctest::Approx(j * j).epsilon(1e-7));
}

TEST_CASE("constant potentials shift the free spectrum exactly") {
  // s = 1/2 both: tau = -d^2/dx^2 + c, so every eigenvalue moves by c
  BesselProblem p0(0, 1, 0.5, 0.5);
  BesselProblem pc(0, 1, 0.5, 0.5, PotentialSpec::constant_q(7.25));
  auto s0 = eigenvalues(p0, ExtensionSpec::friedrichs(), 0.0, 100.0, tol);
  auto sc = eigenvalues(pc, ExtensionSpec::friedrichs(), 7.25, 107.25, tol);
  REQUIRE(s0.eigenvalues.size() == sc.eigenvalues.size());
  for (std::size_t i = 0; i < s0.eigenvalues.size(); ++i)
    CHECK(sc.eigenvalues[i].lambda ==
          doctest::Approx(s0.eigenvalues[i].lambda + 7.25).epsilon(1e-9));
}

TEST_CASE("interval scaling moves eigenvalues by 1/L^2") {
  BesselProblem unit(0, 1, 0.25, 0.6);
  BesselProblem wide(-0.5, 1.5, 0.25, 0.6);
  auto su = eigenvalues(unit, ExtensionSpec::friedrichs(), 0.0, 60.0, tol);
  auto sw = eigenvalues(wide, ExtensionSpec::friedrichs(), 0.0, 15.0, tol);
  REQUIRE(su.eigenvalues.size() >= 2);
  REQUIRE(sw.eigenvalues.size() >= 2);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(sw.eigenvalues[i].lambda ==
          doctest::Approx(su.eigenvalues[i].lambda / 4.0).epsilon(1e-8));
}

TEST_CASE("parallel scan is deterministic") {
  BesselProblem pb(0, 1, 0.5, 0.5);
  auto s1 = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 120.0, tol, 1);
  auto s2 = eigenvalues(pb, ExtensionSpec::friedrichs(), 0.0, 120.0, tol, 2);
  REQUIRE(s1.eigenvalues.size() == s2.eigenvalues.size());
  for (std::size_t i = 0; i < s1.eigenvalues.size(); ++i)
    CHECK(s1.eigenvalues[i].lambda == s2.eigenvalues[i].lambda);
}
