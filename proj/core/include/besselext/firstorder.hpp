#pragma once

// Singular first-order expressions alpha_{s_a}, beta_{s_b}, alpha_{s_a,s_b},
// the smooth step functions, q-tilde, factorization residuals, and the
// endpoint decay probes.

#include <functional>

#include "besselext/numerics.hpp"
#include "besselext/problem.hpp"

namespace besselext::firstorder {

struct FirstOrderExpr {
  enum class Kind { AlphaAtA, BetaAtB, TwoPoint };

  Kind kind = Kind::AlphaAtA;
  double s_a = 0.0;
  double s_b = 0.0;  // two-point only
  double a = 0.0;
  double b = 1.0;
  double step_width = 0.125;  // epsilon, two-point only

  static FirstOrderExpr alpha(double s, double a, double b);
  static FirstOrderExpr beta(double s, double a, double b);
  static FirstOrderExpr two_point(double s_a, double s_b, double a, double b, double eps = -1.0);
};

enum class StepEdge { Left, Right };

/// Smooth step chi-tilde: 1 on the inner plateau next to the edge, 0 beyond
/// 2*eps, C-infinity mollifier quotient in between.
double smooth_step(double x, StepEdge edge, double a, double b, double eps);
double smooth_step_deriv(double x, StepEdge edge, double a, double b, double eps);

/// phi of the two-point expression and its analytic derivative.
double phi(const FirstOrderExpr& expr, double x);
double phi_deriv(const FirstOrderExpr& expr, double x);

/// (alpha f)(x) or, with adjoint=true, (alpha^+ f)(x); same for beta and the
/// two-point expression.
double apply(const FirstOrderExpr& expr, double f_value, double f_derivative, double x,
             bool adjoint = false);

/// q-tilde(x) = phi^2 - phi' - (s_a^2-1/4)/(x-a)^2 - (s_b^2-1/4)/(b-x)^2.
double qtilde(const FirstOrderExpr& expr, double x);

/// Twice-differentiable sample with analytic derivatives.
struct C2Fn {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
};

struct FactorizationResidual {
  double omega_max = 0.0;  // |omega_s f - alpha^+(alpha f)| / (1 + |omega f|), max over grid
  double tau_max = 0.0;    // same for tau = alpha^+ alpha + q - qtilde
};

FactorizationResidual factorization_residual(const BesselProblem& problem, const C2Fn& fn,
                                             const std::vector<double>& grid);

enum class DecayMode { Sqrt, SqrtLog, RightSqrt };
enum class DecayVerdict { Vanishes, FiniteNonzero, Diverges };

struct DecayResult {
  double limit = 0.0;
  double uncertainty = 0.0;
  DecayVerdict verdict = DecayVerdict::FiniteNonzero;
};

/// Estimates lim f(x)/w(x) toward the endpoint along a geometric ladder,
/// with w the mode's weight, and issues a verdict.
DecayResult decay_probe(const std::function<double(double)>& f, Endpoint ep, DecayMode mode,
                        double R, double a, double b, const numerics::Tolerance& tol);

/// Integrates `integrand` over [near+eps_k, far] for a shrinking ladder of
/// eps_k and reports whether the values settle (finite) or keep growing
/// beyond 10x between refinements (divergent).
bool integral_diverges_at(const std::function<double(double)>& integrand, Endpoint ep, double a,
                          double b, const numerics::Tolerance& tol);

}  // namespace besselext::firstorder
