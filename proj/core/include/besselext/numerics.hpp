#pragma once

// Shared numerical kernel: adaptive RK5(4) integration with dense output,
// tanh-sinh quadrature for endpoint-singular integrands, Brent root finding,
// and Richardson/Aitken limit extrapolation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "besselext/errors.hpp"

namespace besselext::numerics {

struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;
  long max_steps = 200000;

  void validate() const {
    if (!(rel > 0.0) || !(abs > 0.0) || max_steps < 1)
      throw ParameterError("Tolerance: rel > 0, abs > 0, max_steps >= 1 required");
  }
};

/// Sample grid strictly inside an open interval.
template <typename T>
struct Grid {
  std::vector<double> points;
  std::vector<T> values;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }

}  // namespace detail

// ---------------------------------------------------------------------------
// integrate_ode: u'' = c(x) u, state (u, u'), Dormand-Prince 5(4) pair with
// PI step control and the standard 4th-order continuous extension.
// ---------------------------------------------------------------------------

template <typename Scalar>
struct OdeStepRecord {
  double x0 = 0, h = 0;
  // Hairer's contd5 coefficients per component (u, u').
  Scalar r1[2], r2[2], r3[2], r4[2], r5[2];
};

template <typename Scalar>
class OdeSolution {
public:
  double x_begin = 0, x_end = 0;
  Scalar value{}, derivative{};
  long steps = 0;

  std::pair<Scalar, Scalar> eval(double x) const {
    if (records_.empty()) return {value, derivative};
    double lo = std::min(x_begin, x_end), hi = std::max(x_begin, x_end);
    x = std::clamp(x, lo, hi);
    // binary search over monotone step starts
    std::size_t i = locate(x);
    const auto& r = records_[i];
    double th = (x - r.x0) / r.h;
    Scalar out[2];
    for (int c = 0; c < 2; ++c) {
      double th1 = 1.0 - th;
      out[c] = r.r1[c] + th * (r.r2[c] + th1 * (r.r3[c] + th * (r.r4[c] + th1 * r.r5[c])));
    }
    return {out[0], out[1]};
  }

  void add_record(const OdeStepRecord<Scalar>& rec) { records_.push_back(rec); }
  bool has_dense() const { return !records_.empty(); }

private:
  std::vector<OdeStepRecord<Scalar>> records_;

  std::size_t locate(double x) const {
    bool fwd = x_end >= x_begin;
    std::size_t lo = 0, hi = records_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      const auto& r = records_[mid];
      double xe = r.x0 + r.h;
      bool after = fwd ? (x > xe) : (x < xe);
      if (after)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }
};

template <typename Scalar>
OdeSolution<Scalar> integrate_ode(const std::function<Scalar(double)>& coeff, double x0,
                                  Scalar y0, Scalar dy0, double x1, const Tolerance& tol,
                                  bool keep_dense = true) {
  tol.validate();
  OdeSolution<Scalar> sol;
  sol.x_begin = x0;
  sol.x_end = x1;
  if (x0 == x1) {
    sol.value = y0;
    sol.derivative = dy0;
    return sol;
  }

  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                      a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static const double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                      d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                      d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  const double dir = (x1 > x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  double x = x0;
  Scalar y[2] = {y0, dy0};

  auto rhs = [&coeff](double xx, const Scalar* s, Scalar* f) {
    f[0] = s[1];
    f[1] = coeff(xx) * s[0];
  };

  Scalar k1[2];
  rhs(x, y, k1);

  double h = dir * std::min(span, std::max(span * 1e-4, 1e-8 * span + 1e-14));
  double err_prev = 1.0;
  long nstep = 0;

  while (dir * (x1 - x) > 0) {
    if (++nstep > tol.max_steps)
      throw SingularityError("integrate_ode: stiffness/singularity too close, step budget exhausted", x);
    if (dir * (x + h - x1) > 0) h = x1 - x;

    Scalar k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2], y1[2];
    for (int c = 0; c < 2; ++c) yt[c] = y[c] + h * (a21 * k1[c]);
    rhs(x + c2 * h, yt, k2);
    for (int c = 0; c < 2; ++c) yt[c] = y[c] + h * (a31 * k1[c] + a32 * k2[c]);
    rhs(x + c3 * h, yt, k3);
    for (int c = 0; c < 2; ++c) yt[c] = y[c] + h * (a41 * k1[c] + a42 * k2[c] + a43 * k3[c]);
    rhs(x + c4 * h, yt, k4);
    for (int c = 0; c < 2; ++c)
      yt[c] = y[c] + h * (a51 * k1[c] + a52 * k2[c] + a53 * k3[c] + a54 * k4[c]);
    rhs(x + c5 * h, yt, k5);
    for (int c = 0; c < 2; ++c)
      yt[c] = y[c] + h * (a61 * k1[c] + a62 * k2[c] + a63 * k3[c] + a64 * k4[c] + a65 * k5[c]);
    rhs(x + h, yt, k6);
    for (int c = 0; c < 2; ++c)
      y1[c] = y[c] + h * (a71 * k1[c] + a73 * k3[c] + a74 * k4[c] + a75 * k5[c] + a76 * k6[c]);
    rhs(x + h, y1, k7);

    double err = 0.0;
    for (int c = 0; c < 2; ++c) {
      Scalar ec = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] + e7 * k7[c]);
      double sc = tol.abs + tol.rel * std::max(detail::magnitude(y[c]), detail::magnitude(y1[c]));
      double r = detail::magnitude(ec) / sc;
      err += r * r;
    }
    err = std::sqrt(err / 2.0);

    if (err <= 1.0) {
      if (keep_dense) {
        OdeStepRecord<Scalar> rec;
        rec.x0 = x;
        rec.h = h;
        for (int c = 0; c < 2; ++c) {
          Scalar ydiff = y1[c] - y[c];
          Scalar bspl = h * k1[c] - ydiff;
          rec.r1[c] = y[c];
          rec.r2[c] = ydiff;
          rec.r3[c] = bspl;
          rec.r4[c] = ydiff - h * k7[c] - bspl;
          rec.r5[c] = h * (d1 * k1[c] + d3 * k3[c] + d4 * k4[c] + d5 * k5[c] + d6 * k6[c] +
                           d7 * k7[c]);
        }
        sol.add_record(rec);
      }
      x += h;
      y[0] = y1[0];
      y[1] = y1[1];
      k1[0] = k7[0];  // FSAL
      k1[1] = k7[1];
      double fac = 0.9 * std::pow(std::max(err, 1e-32), -0.17) * std::pow(err_prev, 0.08);
      fac = std::clamp(fac, 0.2, 6.0);
      err_prev = std::max(err, 1e-4);
      h *= fac;
    } else {
      double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
      h *= fac;
      if (std::abs(h) < 64.0 * std::numeric_limits<double>::epsilon() * std::abs(x) + 1e-300)
        throw SingularityError("integrate_ode: stiffness/singularity too close, step underflow", x);
    }
  }

  sol.value = y[0];
  sol.derivative = y[1];
  sol.steps = nstep;
  return sol;
}

// ---------------------------------------------------------------------------
// quad_singular: tanh-sinh (double exponential) quadrature on (a,b). Levels
// are doubled until two successive levels agree within tol. Integrands may
// have integrable algebraic/logarithmic endpoint singularities.
// ---------------------------------------------------------------------------

template <typename Scalar>
struct QuadResult {
  Scalar value{};
  double error_estimate = 0.0;
  int levels = 0;
};

template <typename Scalar>
QuadResult<Scalar> quad_singular(const std::function<Scalar(double)>& f, double a, double b,
                                 const Tolerance& tol) {
  tol.validate();
  if (!(a < b)) throw ParameterError("quad_singular: requires a < b");
  const double half = 0.5 * (b - a);
  const double eps = std::numeric_limits<double>::epsilon();
  // abscissae are formed as endpoint +- distance, so the usable distance at
  // each endpoint is limited only by that endpoint's own ulp
  const double dmin_a = 8.0 * eps * std::abs(a) + 1e-305;
  const double dmin_b = 8.0 * eps * std::abs(b) + 1e-305;
  const double tmax = 6.115;
  const int max_level = 12;
  const double pi_half = 1.5707963267948966;

  // Evaluate weighted integrand at node t; returns w(t)*f(x(t)).
  auto node = [&](double t) -> Scalar {
    double u = pi_half * std::sinh(t);
    // distances to the endpoints: half*(1 -+ tanh u), computed stably
    double eu = std::exp(-2.0 * std::abs(u));
    double dnear = half * 2.0 * eu / (1.0 + eu);  // distance to nearer endpoint
    double w = pi_half * std::cosh(t);
    double sech = 2.0 * std::exp(-std::abs(u)) / (1.0 + std::exp(-2.0 * std::abs(u)));
    w *= half * sech * sech;
    if (dnear < (t >= 0 ? dmin_b : dmin_a) || w < 1e-300) return Scalar(0);
    double x;
    if (t >= 0)
      x = b - dnear;
    else
      x = a + dnear;
    Scalar v = f(x);
    double m = detail::magnitude(v);
    if (!std::isfinite(m)) {
      if (dnear < 1e-10 * (b - a)) return Scalar(0);  // deep in the de-weighted tail
      throw ParameterError("quad_singular: non-finite integrand away from the endpoint tail");
    }
    return w * v;
  };

  double h = 1.0;
  Scalar sum = node(0.0);
  {
    for (int k = 1;; ++k) {
      double t = k * h;
      if (t > tmax) break;
      sum += node(t) + node(-t);
    }
  }
  Scalar prev = sum * h;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    Scalar add(0);
    for (long k = 1;; k += 2) {
      double t = k * h;
      if (t > tmax) break;
      add += node(t) + node(-t);
    }
    sum += add;
    Scalar cur = sum * h;
    err = detail::magnitude(cur - prev);
    double scale = std::max(tol.abs, tol.rel * detail::magnitude(cur));
    if (level >= 2 && err <= scale) {
      return {cur, err, level};
    }
    prev = cur;
  }
  throw ConvergenceError("quad_singular: tanh-sinh level refinement did not converge",
                         detail::magnitude(prev), detail::magnitude(prev) + err);
}

inline QuadResult<double> quad_singular_real(const std::function<double(double)>& f, double a,
                                             double b, const Tolerance& tol) {
  return quad_singular<double>(f, a, b, tol);
}

// ---------------------------------------------------------------------------
// find_root: Brent's method on a sign-changing bracket.
// ---------------------------------------------------------------------------

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol);

// ---------------------------------------------------------------------------
// limit_extrapolate: iterated Aitken extrapolation of samples (delta_k, v_k)
// with delta_k -> 0 against an algebraic or algebraic-log decay model.
// ---------------------------------------------------------------------------

enum class DecayModel { Algebraic, AlgebraicLog };

struct LimitEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
  double fit_residual = 0.0;
};

LimitEstimate limit_extrapolate(std::vector<double> deltas, std::vector<double> values,
                                DecayModel model, const Tolerance& tol);

inline LimitEstimate limit_extrapolate(const Grid<double>& samples, DecayModel model,
                                       const Tolerance& tol) {
  return limit_extrapolate(samples.points, samples.values, model, tol);
}

}  // namespace besselext::numerics
