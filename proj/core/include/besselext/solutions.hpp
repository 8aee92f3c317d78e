#pragma once

// Normalized principal/nonprincipal solution frames of (tau - lambda)u = 0 at
// each endpoint: closed hypergeometric forms for q = 0 at lambda = 0, and a
// Volterra-regularized construction (exact local model + first correction at
// a seed offset, carried by the adaptive integrator) for bounded q and any
// real lambda.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "besselext/numerics.hpp"
#include "besselext/problem.hpp"

namespace besselext::solutions {

/// Closed-form local model values at one endpoint of the pure q=0 single
/// singularity operator; x-space values and derivatives, sign conventions of
/// the two-point frame catalog (principal at b carries a leading minus).
struct LocalFrameValue {
  double u = 0.0, up = 0.0;
  double uhat = 0.0, uhatp = 0.0;
  bool has_nonprincipal = false;
};

LocalFrameValue local_frame_q0(double s, Endpoint ep, double x, double a, double b);

struct FrameMember {
  std::function<std::pair<double, double>(double)> eval;  // (value, derivative) at x
  std::pair<double, double> operator()(double x) const { return eval(x); }
  bool valid() const { return static_cast<bool>(eval); }
};

enum class Member { Principal, Nonprincipal };

struct SolutionFrame {
  Endpoint endpoint = Endpoint::A;
  double lambda = 0.0;
  FrameMember u;                       // principal
  std::optional<FrameMember> u_hat;    // nonprincipal; absent at LP endpoints
  double valid_lo = 0.0, valid_hi = 0.0;

  const FrameMember& member(Member m) const {
    if (m == Member::Principal) return u;
    if (!u_hat) throw FrameError("SolutionFrame: nonprincipal member absent (limit point endpoint)");
    return *u_hat;
  }
};

/// Closed-form frame of tau u = 0 for q = 0 via Gauss hypergeometric
/// functions; nonprincipal requires s < 1 at the endpoint.
SolutionFrame global_frame_q0(const BesselProblem& problem, Endpoint ep,
                              const numerics::Tolerance& tol);

/// Volterra-regularized frame at spectral parameter lambda.
SolutionFrame volterra_frame(const BesselProblem& problem, Endpoint ep, double lambda,
                             const numerics::Tolerance& tol,
                             bool need_nonprincipal = true);

/// Carries a frame member from the edge of its validity interval to x_target
/// by the adaptive integrator.
std::pair<double, double> transport_frame(const SolutionFrame& frame, const BesselProblem& problem,
                                          double lambda, Member which, double x_target,
                                          const numerics::Tolerance& tol);

/// Max relative ODE residual of an evaluator over [lo,hi] by central
/// differences, relative to the (|V-lambda|+1)|u| scale.
double ode_residual(const BesselProblem& problem, const FrameMember& member, double lambda,
                    double lo, double hi, int n = 40);

// ---------------------------------------------------------------------------
// Confluent Heun reduction of tau_{s_a,s_b,q=0} u = z u on the unit-interval
// rescaling xi = (x-a)/(b-a).
// ---------------------------------------------------------------------------

struct HeunReduction {
  std::complex<double> gamma, delta, eps, mu, nu;  // Heun parameters
  std::complex<double> A, B, C, D, E;              // normal-form coefficients
  std::complex<double> A_target, D_target, E_target;
  double identification_residual = 0.0;  // max |coeff - target| incl. B, C vs 0
};

HeunReduction heun_reduction(const BesselProblem& problem, std::complex<double> z);

}  // namespace besselext::solutions
