#include <doctest.h>

#include <cmath>

#include "besselext/solutions.hpp"

using namespace besselext;
using namespace besselext::solutions;

namespace {
numerics::Tolerance tol;
}

TEST_CASE("local q=0 frames: closed forms and Wronskians") {
  SUBCASE("s = 1/2 at a: u = x-a, uhat = 1") {
    auto v = local_frame_q0(0.5, Endpoint::A, 0.37, 0.0, 1.0);
    CHECK(v.u == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(v.up == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.uhat == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.uhatp == doctest::Approx(0.0));
  }
  SUBCASE("s = 0 log branch has unit Wronskian analytically") {
    for (double x : {0.03, 0.2, 0.6}) {
      auto v = local_frame_q0(0.0, Endpoint::A, x, 0.0, 1.0);
      CHECK(v.uhat * v.up - v.uhatp * v.u == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("s = 0.25 Wronskian on a grid") {
    for (double x : {0.01, 0.1, 0.5, 0.9}) {
      auto v = local_frame_q0(0.25, Endpoint::A, x, 0.0, 1.0);
      CHECK(v.uhat * v.up - v.uhatp * v.u == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("endpoint b carries the leading minus sign") {
    auto v = local_frame_q0(0.3, Endpoint::B, 0.99, 0.0, 1.0);
    CHECK(v.u < 0.0);
    CHECK(v.uhat > 0.0);
    CHECK(v.uhat * v.up - v.uhatp * v.u == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("limit point endpoint has no nonprincipal") {
    CHECK_THROWS_AS(local_frame_q0(1.0, Endpoint::A, 0.5, 0.0, 1.0), FrameError);
  }
}

TEST_CASE("volterra frames against closed forms") {
  SUBCASE("q = 0, lambda = 0 returns the local frame") {
    BesselProblem pb(0.0, 1.0, 0.5, 0.5);
    auto fr = volterra_frame(pb, Endpoint::A, 0.0, tol);
    for (double x : {0.02, 0.1, 0.2}) {
      auto [u, up] = fr.u(x);
      CHECK(u == doctest::Approx(x).epsilon(1e-10));
      CHECK(up == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("constant q: principal is sinh(sqrt(c) x)/sqrt(c)") {
    BesselProblem pb(0.0, 1.0, 0.5, 0.5, PotentialSpec::constant_q(4.0));
    auto fr = volterra_frame(pb, Endpoint::A, 0.0, tol);
    for (double x : {0.05, 0.12, 0.24}) {
      auto [u, up] = fr.u(x);
      CHECK(std::abs(u - std::sinh(2 * x) / 2) < 1e-8);
      CHECK(std::abs(up - std::cosh(2 * x)) < 1e-8);
    }
  }
  SUBCASE("lambda = 4, q = 0: principal is sin(2 x)/2") {
    BesselProblem pb(0.0, 1.0, 0.5, 0.5);
    auto fr = volterra_frame(pb, Endpoint::A, 4.0, tol);
    for (double x : {0.05, 0.2}) {
      auto [u, up] = fr.u(x);
      CHECK(std::abs(u - std::sin(2 * x) / 2) < 1e-8);
      CHECK(std::abs(up - std::cos(2 * x)) < 1e-8);
    }
  }
  SUBCASE("validity collapse raises") {
    BesselProblem pb(0.0, 1.0, 0.25, 0.25, PotentialSpec::constant_q(4.0e7));
    CHECK_THROWS_AS(volterra_frame(pb, Endpoint::A, 0.0, tol), ConvergenceError);
  }
}

TEST_CASE("transport_frame carries members across the interval") {
  BesselProblem pb(0.0, 1.0, 0.5, 0.5);
  auto gf = global_frame_q0(pb, Endpoint::A, tol);

  SUBCASE("u = x - a transported to the right end") {
    auto [v, vp] = transport_frame(gf, pb, 0.0, Member::Principal, 0.9999, tol);
    CHECK(v == doctest::Approx(0.9999).epsilon(1e-10));
    CHECK(vp == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("Wronskian conservation along transport") {
    BesselProblem pb2(0.0, 1.0, 0.3, 0.6, PotentialSpec::constant_q(1.0));
    auto fr = volterra_frame(pb2, Endpoint::A, 2.5, tol);
    auto [u, up] = transport_frame(fr, pb2, 2.5, Member::Principal, 0.85, tol);
    auto [v, vp] = transport_frame(fr, pb2, 2.5, Member::Nonprincipal, 0.85, tol);
    CHECK(v * up - vp * u == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("two construction paths agree at the midpoint for s_a = 0") {
    BesselProblem pb3(0.0, 1.0, 0.0, 0.5);
    auto vf = volterra_frame(pb3, Endpoint::A, 0.0, tol);
    auto gf3 = global_frame_q0(pb3, Endpoint::A, tol);
    auto n1 = transport_frame(vf, pb3, 0.0, Member::Principal, 0.5, tol);
    auto n2 = gf3.u(0.5);
    CHECK(std::abs(n1.first - n2.first) < 1e-7 * std::abs(n2.first));
  }
}

TEST_CASE("global q=0 hypergeometric frames") {
  SUBCASE("s_a = s_b = 1/2: u_a is exactly x") {
    BesselProblem pb(0.0, 1.0, 0.5, 0.5);
    auto fr = global_frame_q0(pb, Endpoint::A, tol);
    auto [u, up] = fr.u(0.63);
    CHECK(u == doctest::Approx(0.63).epsilon(1e-13));
    CHECK(up == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("s_a = s_b = 0: imaginary sigma, real frame, small ODE residual") {
    BesselProblem pb(0.0, 1.0, 0.0, 0.0);
    auto fr = global_frame_q0(pb, Endpoint::A, tol);
    CHECK(ode_residual(pb, fr.u, 0.0, 0.1, 0.9) < 1e-7);
    CHECK(ode_residual(pb, fr.member(Member::Nonprincipal), 0.0, 0.1, 0.9) < 1e-6);
    for (double x : {0.2, 0.5, 0.8}) {
      auto [u, up] = fr.u(x);
      auto [v, vp] = fr.member(Member::Nonprincipal)(x);
      CHECK(v * up - vp * u == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("interior positivity of the principal solution") {
    BesselProblem pb(0.0, 1.0, 0.3, 0.6);
    auto fr = global_frame_q0(pb, Endpoint::A, tol);
    for (double x : {0.05, 0.3, 0.6, 0.95}) {
      auto [u, up] = fr.u(x);
      (void)up;
      CHECK(u > 0.0);
    }
  }
  SUBCASE("principality toward the endpoint") {
    BesselProblem pb(0.0, 1.0, 0.25, 0.4);
    auto fr = global_frame_q0(pb, Endpoint::A, tol);
    double r1 = fr.u(1e-3).first / fr.member(Member::Nonprincipal)(1e-3).first;
    double r2 = fr.u(1e-6).first / fr.member(Member::Nonprincipal)(1e-6).first;
    CHECK(std::abs(r2) < 0.1 * std::abs(r1));
  }
}

TEST_CASE("heun reduction identification") {
  SUBCASE("z = 0 collapses to the hypergeometric equation") {
    BesselProblem pb(0.0, 1.0, 0.4, 0.3);
    auto r = heun_reduction(pb, {0.0, 0.0});
    CHECK(std::abs(r.eps) == 0.0);
    CHECK(std::abs(r.nu) == 0.0);
    CHECK(r.identification_residual < 1e-12);
    CHECK(r.gamma.real() == doctest::Approx(1.8));
    CHECK(r.delta.real() == doctest::Approx(0.4));
  }
  SUBCASE("s_a = 1/2 zeroes the D coefficient") {
    BesselProblem pb(0.0, 1.0, 0.5, 0.3);
    auto r = heun_reduction(pb, {1.0, 0.0});
    CHECK(std::abs(r.D) < 1e-14);
  }
  SUBCASE("round trip to the normal-form targets") {
    BesselProblem pb(0.0, 1.0, 0.25, 0.65);
    for (std::complex<double> z : {std::complex<double>(2.5, 0.0), {0.3, 1.2}}) {
      auto r = heun_reduction(pb, z);
      CHECK(r.identification_residual < 1e-12);
    }
  }
}
