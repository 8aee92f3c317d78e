#include "besselext/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "besselext/firstorder.hpp"

namespace besselext::hardy {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_decay(const solutions::FrameMember& f, Endpoint ep, double a, double b,
                   const numerics::Tolerance& tol) {
  auto probe = firstorder::decay_probe([&f](double x) { return f(x).first; }, ep,
                                       firstorder::DecayMode::Sqrt, 0.0, a, b, tol);
  if (probe.verdict == firstorder::DecayVerdict::Diverges)
    throw AdmissibilityError("hardy_report: trial function fails the endpoint decay requirement");
}

double quad(const std::function<double(double)>& g, double lo, double hi,
            const numerics::Tolerance& tol, double* err) {
  auto r = numerics::quad_singular<double>(g, lo, hi, tol);
  if (err) *err += r.error_estimate;
  return r.value;
}

// Endpoint-robust integral over the full interval: tanh-sinh applied after a
// log substitution toward each endpoint. Near-critical exponents d^{-1+2eps}
// spread their mass over hundreds of decades in the distance d; in
// y = ln(d) that mass is a smooth, slowly varying strip.
double quad_log(const std::function<double(double)>& g, double a, double b,
                const numerics::Tolerance& tol, double* err) {
  const double mid = 0.5 * (a + b), len = mid - a;
  const double eps = std::numeric_limits<double>::epsilon();
  double dmin = std::max(1e-280 * len, 32.0 * eps * (std::abs(a) + std::abs(b)));
  double total = 0.0;
  for (bool left : {true, false}) {
    auto gy = [&](double y) {
      double d = std::exp(y);
      double x = left ? a + d : b - d;
      return g(x) * d;
    };
    auto r = numerics::quad_singular<double>(gy, std::log(dmin), std::log(len), tol);
    if (err) *err += r.error_estimate;
    total += r.value;
  }
  return total;
}

}  // namespace

HardyReport hardy_report(const solutions::FrameMember& f, HardyVariant variant, double a,
                         double b, const numerics::Tolerance& tol, double R) {
  const double L = b - a;
  if (R <= 0.0) R = 4.0 * L;
  numerics::Tolerance qt = tol;
  qt.rel = std::max(tol.rel, 1e-9);

  require_decay(f, Endpoint::A, a, b, qt);
  if (variant != HardyVariant::HalflineB11) require_decay(f, Endpoint::B, a, b, qt);

  HardyReport rep;
  rep.variant = variant;
  double err = 0.0;

  auto fp2 = [&f](double x) {
    double d = f(x).second;
    return d * d;
  };
  auto f2 = [&f](double x) {
    double v = f(x).first;
    return v * v;
  };

  double denom = 0.0;
  switch (variant) {
    case HardyVariant::Power12:
    case HardyVariant::HalflineB11: {
      rep.constant = 0.25;
      rep.lhs = quad_log(fp2, a, b, qt, &err);
      denom = quad_log([&](double x) { return f2(x) / ((x - a) * (x - a)); }, a, b, qt, &err);
      break;
    }
    case HardyVariant::Distance13: {
      rep.constant = 0.25;
      rep.lhs = quad_log(fp2, a, b, qt, &err);
      // the distance weight has a kink at the midpoint, which is exactly
      // where quad_log splits
      denom = quad_log(
          [&](double x) {
            double d = std::min(x - a, b - x);
            return f2(x) / (d * d);
          },
          a, b, qt, &err);
      break;
    }
    case HardyVariant::Sine14: {
      rep.constant = kPi * kPi / (4.0 * L * L);
      rep.lhs = quad_log(fp2, a, b, qt, &err);
      denom = quad_log(
                  [&](double x) {
                    double s = std::sin(kPi * (x - a) / L);
                    return f2(x) / (s * s);
                  },
                  a, b, qt, &err) +
              quad_log(f2, a, b, qt, &err);
      break;
    }
    case HardyVariant::LogRefinedB1: {
      rep.constant = 0.25;
      rep.lhs = quad_log(fp2, a, b, qt, &err);
      denom = quad_log([&](double x) { return f2(x) / ((x - a) * (x - a)); }, a, b, qt, &err) +
              quad_log(
                  [&](double x) {
                    double d = x - a, lg = std::log(R / d);
                    return f2(x) / (d * d * lg * lg);
                  },
                  a, b, qt, &err);
      break;
    }
  }
  rep.rhs = rep.constant * denom;
  rep.ratio = (denom != 0.0) ? rep.lhs / denom : std::numeric_limits<double>::infinity();
  double slack = err + qt.abs + qt.rel * (std::abs(rep.lhs) + std::abs(rep.rhs)) +
                 1e-9 * (std::abs(rep.lhs) + std::abs(rep.rhs));
  rep.satisfied = rep.lhs >= rep.rhs - slack;
  return rep;
}

LogRefinedReport log_refined_check(const solutions::FrameMember& f, double a, double b, double r0,
                                   double r1, double s, double R, const numerics::Tolerance& tol) {
  if (!(a < r0 && r0 < r1 && r1 <= b && b < R))
    throw ParameterError("log_refined_check: requires a < r0 < r1 <= b < R");
  numerics::Tolerance qt = tol;
  qt.rel = std::max(tol.rel, 1e-10);
  double err = 0.0;

  auto val = [&f](double x) { return f(x).first; };
  auto der = [&f](double x) { return f(x).second; };
  auto alpha_f = [&](double x) {
    return der(x) - (s + 0.5) / (x - a) * val(x);
  };

  double int_alpha2 = quad([&](double x) { return alpha_f(x) * alpha_f(x); }, r0, r1, qt, &err);
  double int_fp2 = quad([&](double x) { return der(x) * der(x); }, r0, r1, qt, &err);
  double int_f2d2 = quad(
      [&](double x) {
        double d = x - a;
        return val(x) * val(x) / (d * d);
      },
      r0, r1, qt, &err);
  double int_f2d2log = quad(
      [&](double x) {
        double d = x - a, lg = std::log(R / d);
        return val(x) * val(x) / (d * d * lg * lg);
      },
      r0, r1, qt, &err);

  auto bterm = [&](double x) { return val(x) * val(x) / (x - a); };
  auto bterm_log = [&](double x) {
    double d = x - a;
    return val(x) * val(x) / (2.0 * d * std::log(R / d));
  };
  double jump_d = bterm(r1) - bterm(r0);          // [f^2/(x-a)]
  double jump_log = bterm_log(r1) - bterm_log(r0);  // [f^2/(2(x-a)ln(R/(x-a)))]

  LogRefinedReport rep;
  // log-weight identity: weighted derivative of f/w, w = ((x-a) ln(R/(x-a)))^{1/2}
  rep.b3_lhs = quad(
      [&](double x) {
        double d = x - a, lg = std::log(R / d);
        double w2 = d * lg;
        double w = std::sqrt(w2);
        double gp = der(x) / w - val(x) * (lg - 1.0) / (2.0 * w * w2);
        return w2 * gp * gp;
      },
      r0, r1, qt, &err);
  rep.b3_rhs = int_fp2 - 0.25 * int_f2d2 - 0.25 * int_f2d2log - 0.5 * jump_d + jump_log;

  // first-order factorization identity
  rep.b4_lhs = int_alpha2;
  rep.b4_rhs = int_fp2 + (s * s - 0.25) * int_f2d2 - (s + 0.5) * jump_d;

  // refined inequality combining the two identities
  rep.b1_lhs = int_alpha2;
  rep.b1_rhs = s * s * int_f2d2 + 0.25 * int_f2d2log - s * jump_d - jump_log;

  double scale = std::abs(int_alpha2) + std::abs(int_fp2) + std::abs(int_f2d2) +
                 std::abs(jump_d) + 1.0;
  rep.tolerance = err + qt.abs + 1e-9 * scale;
  rep.b3_ok = std::abs(rep.b3_lhs - rep.b3_rhs) <= rep.tolerance;
  rep.b4_ok = std::abs(rep.b4_lhs - rep.b4_rhs) <= rep.tolerance;
  rep.b1_holds = rep.b1_lhs >= rep.b1_rhs - rep.tolerance;
  return rep;
}

namespace {

struct InnerIntegral {
  double value = 0.0;
  bool infinite = false;
};

InnerIntegral guarded_quad(const std::function<double(double)>& g, double lo, double hi,
                           const numerics::Tolerance& tol) {
  InnerIntegral out;
  try {
    out.value = numerics::quad_singular<double>(g, lo, hi, tol).value;
    if (!std::isfinite(out.value) || std::abs(out.value) > 1e12) out.infinite = true;
  } catch (const Error&) {
    out.infinite = true;
  }
  return out;
}

}  // namespace

MuckenhouptResult muckenhoupt(MuckKind kind, const std::function<double(double)>& u,
                              const std::function<double(double)>& v, double p, double a,
                              double b, const numerics::Tolerance& tol) {
  if (!(p >= 1.0)) throw ParameterError("muckenhoupt: requires p >= 1");
  MuckenhouptResult out;
  out.kind = kind;
  numerics::Tolerance qt = tol;
  qt.rel = std::max(tol.rel, 1e-8);
  const double pp = (p > 1.0) ? p / (p - 1.0) : std::numeric_limits<double>::infinity();

  auto dual_weight_integral = [&](double lo, double hi) -> InnerIntegral {
    if (p > 1.0)
      return guarded_quad([&](double x) { return std::pow(v(x), 1.0 - pp); }, lo, hi, qt);
    // p = 1: (int v^{1-p'})^{1/p'} -> ess sup 1/v, by log-spaced sampling
    InnerIntegral r;
    double m = 0.0;
    for (int i = 0; i <= 200; ++i) {
      double t = std::pow(10.0, -9.0 + 9.0 * i / 200.0);
      for (double x : {lo + (hi - lo) * t, hi - (hi - lo) * t}) {
        double w = 1.0 / v(x);
        if (!std::isfinite(w)) {
          r.infinite = true;
          return r;
        }
        m = std::max(m, w);
      }
    }
    r.value = m;
    return r;
  };

  auto phi = [&](double c) -> InnerIntegral {
    InnerIntegral one, two;
    if (kind == MuckKind::AForm) {
      one = guarded_quad(u, c, b, qt);
      two = dual_weight_integral(a, c);
    } else {
      one = guarded_quad(u, a, c, qt);
      two = dual_weight_integral(c, b);
    }
    InnerIntegral r;
    if (one.infinite || two.infinite) {
      r.infinite = true;
      return r;
    }
    double f1 = std::pow(std::max(one.value, 0.0), 1.0 / p);
    double f2 = (p > 1.0) ? std::pow(std::max(two.value, 0.0), 1.0 / pp) : two.value;
    r.value = f1 * f2;
    return r;
  };

  // logarithmic grid clustered toward both endpoints
  std::vector<double> cs;
  for (int i = 0; i < 48; ++i) {
    double t = std::pow(10.0, -24.0 + 23.7 * i / 47.0);
    cs.push_back(a + (b - a) * t);
    cs.push_back(b - (b - a) * t);
  }
  std::sort(cs.begin(), cs.end());

  double best = -1.0, best_c = cs.front();
  bool any_finite = false, any_infinite = false;
  for (double c : cs) {
    auto r = phi(c);
    if (r.infinite) {
      any_infinite = true;
      continue;
    }
    any_finite = true;
    if (r.value > best) {
      best = r.value;
      best_c = c;
    }
  }
  if (!any_finite) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  (void)any_infinite;

  // golden-section refinement on the log-transformed coordinate
  auto eta_of = [&](double c) { return std::log((c - a) / (b - c)); };
  auto c_of = [&](double eta) { return a + (b - a) / (1.0 + std::exp(-eta)); };
  double e0 = eta_of(best_c) - 0.7, e1 = eta_of(best_c) + 0.7;
  auto neg = [&](double eta) {
    auto r = phi(c_of(eta));
    return r.infinite ? -1e300 : -r.value;
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double cgs = e1 - gr * (e1 - e0), dgs = e0 + gr * (e1 - e0);
  double fc = neg(cgs), fd = neg(dgs);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      e1 = dgs;
      dgs = cgs;
      fd = fc;
      cgs = e1 - gr * (e1 - e0);
      fc = neg(cgs);
    } else {
      e0 = cgs;
      cgs = dgs;
      fc = fd;
      dgs = e0 + gr * (e1 - e0);
      fd = neg(dgs);
    }
  }
  double c_star = c_of(0.5 * (e0 + e1));
  auto r_star = phi(c_star);
  if (!r_star.infinite && r_star.value > best) {
    best = r_star.value;
    best_c = c_star;
  }

  out.value = best;
  out.sup_location = best_c;
  double factor = (p > 1.0) ? std::pow(p, 1.0 / p) * std::pow(pp, 1.0 / pp) : 1.0;
  out.bracket_lo = best;
  out.bracket_hi = factor * best;
  return out;
}

}  // namespace besselext::hardy
