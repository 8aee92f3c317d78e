#include "besselext/firstorder.hpp"

#include <algorithm>
#include <cmath>

namespace besselext::firstorder {

FirstOrderExpr FirstOrderExpr::alpha(double s, double a, double b) {
  if (!(a < b)) throw ParameterError("FirstOrderExpr: requires a < b");
  FirstOrderExpr e;
  e.kind = Kind::AlphaAtA;
  e.s_a = s;
  e.a = a;
  e.b = b;
  return e;
}

FirstOrderExpr FirstOrderExpr::beta(double s, double a, double b) {
  if (!(a < b)) throw ParameterError("FirstOrderExpr: requires a < b");
  FirstOrderExpr e;
  e.kind = Kind::BetaAtB;
  e.s_b = s;
  e.a = a;
  e.b = b;
  return e;
}

FirstOrderExpr FirstOrderExpr::two_point(double s_a, double s_b, double a, double b, double eps) {
  if (!(a < b)) throw ParameterError("FirstOrderExpr: requires a < b");
  if (eps < 0.0) eps = (b - a) / 8.0;
  if (!(eps > 0.0 && eps < 0.5 * (b - a)))
    throw ParameterError("FirstOrderExpr: step width must lie in (0,(b-a)/2)");
  FirstOrderExpr e;
  e.kind = Kind::TwoPoint;
  e.s_a = s_a;
  e.s_b = s_b;
  e.a = a;
  e.b = b;
  e.step_width = eps;
  return e;
}

namespace {

// mollifier building block B(t) = exp(-1/t) for t > 0, else 0
double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double bump_deriv(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

// S(t) = B(1-t) / (B(t) + B(1-t)): 1 at t<=0, 0 at t>=1, monotone decreasing
double shape(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  double u = bump(t), v = bump(1.0 - t);
  return v / (u + v);
}

double shape_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double u = bump(t), v = bump(1.0 - t);
  double up = bump_deriv(t), vp = -bump_deriv(1.0 - t);
  double den = (u + v) * (u + v);
  return (vp * u - v * up) / den;
}

}  // namespace

double smooth_step(double x, StepEdge edge, double a, double b, double eps) {
  if (edge == StepEdge::Left) {
    if (x <= a + eps) return 1.0;
    if (x >= a + 2.0 * eps) return 0.0;
    return shape((x - (a + eps)) / eps);
  }
  if (x >= b - eps) return 1.0;
  if (x <= b - 2.0 * eps) return 0.0;
  return shape(((b - eps) - x) / eps);
}

double smooth_step_deriv(double x, StepEdge edge, double a, double b, double eps) {
  if (edge == StepEdge::Left) {
    if (x <= a + eps || x >= a + 2.0 * eps) return 0.0;
    return shape_deriv((x - (a + eps)) / eps) / eps;
  }
  if (x >= b - eps || x <= b - 2.0 * eps) return 0.0;
  return -shape_deriv(((b - eps) - x) / eps) / eps;
}

double phi(const FirstOrderExpr& e, double x) {
  double eps = e.step_width;
  double ca = smooth_step(x, StepEdge::Left, e.a, e.b, eps);
  double cb = smooth_step(x, StepEdge::Right, e.a, e.b, eps);
  return -(e.s_a + 0.5) / (x - e.a) * ca + (e.s_b + 0.5) / (e.b - x) * cb;
}

double phi_deriv(const FirstOrderExpr& e, double x) {
  double eps = e.step_width;
  double ca = smooth_step(x, StepEdge::Left, e.a, e.b, eps);
  double cb = smooth_step(x, StepEdge::Right, e.a, e.b, eps);
  double cap = smooth_step_deriv(x, StepEdge::Left, e.a, e.b, eps);
  double cbp = smooth_step_deriv(x, StepEdge::Right, e.a, e.b, eps);
  double da = x - e.a, db = e.b - x;
  return -(e.s_a + 0.5) * (cap / da - ca / (da * da)) +
         (e.s_b + 0.5) * (cbp / db + cb / (db * db));
}

double apply(const FirstOrderExpr& e, double f_value, double f_derivative, double x,
             bool adjoint) {
  if (!(x > e.a && x < e.b))
    throw SingularityError("firstorder::apply: x must lie strictly inside (a,b)", x);
  switch (e.kind) {
    case FirstOrderExpr::Kind::AlphaAtA: {
      double c = (e.s_a + 0.5) / (x - e.a);
      return adjoint ? (-f_derivative - c * f_value) : (f_derivative - c * f_value);
    }
    case FirstOrderExpr::Kind::BetaAtB: {
      double c = (e.s_b + 0.5) / (e.b - x);
      return adjoint ? (-f_derivative + c * f_value) : (f_derivative + c * f_value);
    }
    case FirstOrderExpr::Kind::TwoPoint: {
      double p = phi(e, x);
      return adjoint ? (-f_derivative + p * f_value) : (f_derivative + p * f_value);
    }
  }
  return 0.0;
}

double qtilde(const FirstOrderExpr& e, double x) {
  if (e.kind != FirstOrderExpr::Kind::TwoPoint)
    throw ParameterError("qtilde: requires a two-point expression");
  double p = phi(e, x), pp = phi_deriv(e, x);
  double da = x - e.a, db = e.b - x;
  return p * p - pp - (e.s_a * e.s_a - 0.25) / (da * da) - (e.s_b * e.s_b - 0.25) / (db * db);
}

FactorizationResidual factorization_residual(const BesselProblem& problem, const C2Fn& fn,
                                             const std::vector<double>& grid) {
  FactorizationResidual out;
  auto two = FirstOrderExpr::two_point(problem.s_a, problem.s_b, problem.a, problem.b);
  for (double x : grid) {
    double f = fn.f(x), fp = fn.df(x), fpp = fn.d2f(x);
    double da = x - problem.a;

    // omega_{s_a} = alpha^+ alpha
    double omega = -fpp + (problem.s_a * problem.s_a - 0.25) / (da * da) * f;
    double c = (problem.s_a + 0.5) / da;
    double cp = -(problem.s_a + 0.5) / (da * da);
    double g = fp - c * f;
    double gp = fpp - cp * f - c * fp;
    double alpha_adj_g = -gp - c * g;
    out.omega_max =
        std::max(out.omega_max, std::abs(omega - alpha_adj_g) / (1.0 + std::abs(omega)));

    // tau = alpha^+_{s_a,s_b} alpha_{s_a,s_b} + q - qtilde
    double tau = -fpp + problem.potential(x) * f;
    double p = phi(two, x), pp2 = phi_deriv(two, x);
    double h = fp + p * f;
    double hp = fpp + pp2 * f + p * fp;
    double tau_fact = (-hp + p * h) + (problem.q.eval(x) - qtilde(two, x)) * f;
    out.tau_max = std::max(out.tau_max, std::abs(tau - tau_fact) / (1.0 + std::abs(tau)));
  }
  return out;
}

DecayResult decay_probe(const std::function<double(double)>& f, Endpoint ep, DecayMode mode,
                        double R, double a, double b, const numerics::Tolerance& tol) {
  double len = b - a;
  if (R <= 0.0) R = 4.0 * len;
  auto weight = [&](double d) {
    switch (mode) {
      case DecayMode::Sqrt:
      case DecayMode::RightSqrt:
        return std::sqrt(d);
      case DecayMode::SqrtLog:
        return std::sqrt(d * std::log(R / d));
    }
    return std::sqrt(d);
  };

  std::vector<double> deltas, ratios;
  for (int k = 0; k <= 8; ++k) {
    double d = len * std::pow(2.0, -k) / 16.0;
    double x = (ep == Endpoint::A) ? a + d : b - d;
    deltas.push_back(d);
    ratios.push_back(f(x) / weight(d));
  }

  // scale of f away from the probed endpoint, for the vanish threshold
  double far_scale = 0.0;
  for (double frac : {0.5, 0.65, 0.8}) {
    double x = (ep == Endpoint::A) ? a + frac * len : b - frac * len;
    far_scale = std::max(far_scale, std::abs(f(x)));
  }
  if (far_scale == 0.0) far_scale = 1.0;

  double vanish_tol = 1e-6 * far_scale;

  // monotone blow-up of the ratio ladder: no finite limit
  double g0 = std::abs(ratios.front()), g1 = std::abs(ratios.back());
  if (g1 > 2.5 * std::max(g0, 1e-300)) {
    bool accelerating = true;
    for (std::size_t i = 1; i < ratios.size(); ++i)
      if (std::abs(ratios[i]) < 1.02 * std::abs(ratios[i - 1])) accelerating = false;
    if (accelerating) return {g1, g1, DecayVerdict::Diverges};
  }

  // faster-than-algebraic decay (smooth cutoffs): the tail is already below
  // the vanish threshold, no extrapolation model applies
  if (std::abs(ratios.back()) < vanish_tol &&
      std::abs(ratios[ratios.size() - 2]) < vanish_tol &&
      std::abs(ratios.back()) <= std::abs(ratios[ratios.size() - 3]))
    return {ratios.back(), std::abs(ratios.back()), DecayVerdict::Vanishes};

  DecayResult out;
  if (mode == DecayMode::SqrtLog) {
    // the log weight leaves 1/sqrt(ln)-type tails; fit v = L + c w + d w^2
    // against w = 1/sqrt(ln(R/delta)) and read off the w -> 0 intercept
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      double w = 1.0 / std::sqrt(std::log(R / deltas[i]));
      double y = ratios[i];
      s0 += 1;
      s1 += w;
      s2 += w * w;
      s3 += w * w * w;
      s4 += w * w * w * w;
      t0 += y;
      t1 += y * w;
      t2 += y * w * w;
    }
    // solve the 3x3 normal equations by Cramer
    double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s3 * s2) + s2 * (s1 * s3 - s2 * s2);
    double detL = t0 * (s2 * s4 - s3 * s3) - s1 * (t1 * s4 - s3 * t2) + s2 * (t1 * s3 - s2 * t2);
    out.limit = detL / det;
    double rss = 0.0;
    double c1 = (s0 * (t1 * s4 - t2 * s3) - t0 * (s1 * s4 - s3 * s2) + s2 * (s1 * t2 - s2 * t1)) / det;
    double c2 = (s0 * (s2 * t2 - s3 * t1) - s1 * (s1 * t2 - s3 * t0) + t0 * (s1 * s3 - s2 * s2)) / det;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      double w = 1.0 / std::sqrt(std::log(R / deltas[i]));
      double r = ratios[i] - (out.limit + c1 * w + c2 * w * w);
      rss += r * r;
    }
    out.uncertainty = std::sqrt(rss / deltas.size()) + 1e-14 * far_scale;
  } else {
    try {
      auto est = numerics::limit_extrapolate(deltas, ratios, numerics::DecayModel::Algebraic, tol);
      out.limit = est.value;
      out.uncertainty = est.uncertainty;
    } catch (const ModelMismatchError&) {
      if (std::abs(ratios.back()) < vanish_tol)
        return {ratios.back(), 0.0, DecayVerdict::Vanishes};
      throw;
    }
  }
  out.verdict = (std::abs(out.limit) < std::max(vanish_tol, 2.0 * out.uncertainty))
                    ? DecayVerdict::Vanishes
                    : DecayVerdict::FiniteNonzero;
  return out;
}

bool integral_diverges_at(const std::function<double(double)>& integrand, Endpoint ep, double a,
                          double b, const numerics::Tolerance& tol) {
  double len = b - a;
  double far = (ep == Endpoint::A) ? a + 0.5 * len : b - 0.5 * len;
  numerics::Tolerance loose = tol;
  loose.rel = std::max(tol.rel, 1e-8);
  std::vector<double> vals;
  for (int k = 1; k <= 4; ++k) {
    double eps = 0.5 * len * std::pow(10.0, -3 * k);
    double lo = (ep == Endpoint::A) ? a + eps : far;
    double hi = (ep == Endpoint::A) ? far : b - eps;
    vals.push_back(numerics::quad_singular<double>(integrand, lo, hi, loose).value);
  }
  // divergent if the window integrals keep growing beyond 10x per two
  // refinements (algebraic blow-up) ...
  int grow = 0;
  for (std::size_t i = 2; i < vals.size(); ++i)
    if (std::abs(vals[i]) > 10.0 * std::abs(vals[i - 2])) ++grow;
  if (grow >= 1 && std::abs(vals.back()) > 10.0 * std::abs(vals.front())) return true;
  // ... or if the increments never shrink (logarithmic blow-up); convergent
  // integrals have vanishing increments under the epsilon-ladder
  double inc_first = std::abs(vals[1] - vals[0]);
  double inc_last = std::abs(vals.back() - vals[vals.size() - 2]);
  double scale = std::abs(vals.back()) + 1e-300;
  return inc_last > 0.8 * inc_first && inc_first > 0.02 * scale;
}

}  // namespace besselext::firstorder
