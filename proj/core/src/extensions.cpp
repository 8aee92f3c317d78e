#include "besselext/extensions.hpp"

#include <cmath>

#include "besselext/boundary.hpp"
#include "besselext/firstorder.hpp"
#include "besselext/specialfn.hpp"
#include "besselext/spectra.hpp"

namespace besselext::extensions {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

using Complex = std::complex<double>;

Complex sigma_of(double sa, double sb) {
  return std::sqrt(Complex(sa * sa + sb * sb - 0.25, 0.0));
}

// Gamma(x + sigma) Gamma(x - sigma): real for sigma real or purely imaginary.
double gamma_pair(double x, Complex sigma) {
  Complex v = specialfn::gamma_fn(x + sigma) * specialfn::gamma_fn(x - sigma);
  return v.real();
}

// 1 / (Gamma(x+sigma) Gamma(x-sigma)); zero when either factor poles.
double rgamma_pair(double x, Complex sigma) {
  Complex v = specialfn::rgamma(x + sigma) * specialfn::rgamma(x - sigma);
  return v.real();
}

// psi(x + sigma) + psi(x - sigma)
double digamma_pair(double x, Complex sigma) {
  Complex v = specialfn::digamma(x + sigma) + specialfn::digamma(x - sigma);
  return v.real();
}

double angle_from_cot(double c) { return std::atan2(1.0, c); }  // in (0,pi)

}  // namespace

ProblemClassification classify(const BesselProblem& pb) {
  ProblemClassification out;
  out.at_a = pb.s_a < 1.0 ? EndpointClass::LimitCircle : EndpointClass::LimitPoint;
  out.at_b = pb.s_b < 1.0 ? EndpointClass::LimitCircle : EndpointClass::LimitPoint;
  out.deficiency = (out.at_a == EndpointClass::LimitCircle ? 1 : 0) +
                   (out.at_b == EndpointClass::LimitCircle ? 1 : 0);
  return out;
}

ExtensionSpec ExtensionSpec::separated(std::optional<double> alpha, std::optional<double> beta) {
  ExtensionSpec e;
  e.variant = Variant::Separated;
  e.alpha_angle = alpha;
  e.beta_angle = beta;
  return e;
}

ExtensionSpec ExtensionSpec::coupled(double phi, std::array<double, 4> R) {
  ExtensionSpec e;
  e.variant = Variant::Coupled;
  e.phi = phi;
  e.R = R;
  return e;
}

void ExtensionSpec::validate(const ProblemClassification& cls) const {
  auto angle_ok = [](double v) { return v >= 0.0 && v < kPi; };
  switch (variant) {
    case Variant::Separated: {
      bool lc_a = cls.at_a == EndpointClass::LimitCircle;
      bool lc_b = cls.at_b == EndpointClass::LimitCircle;
      if (alpha_angle.has_value() != lc_a)
        throw ParameterError("ExtensionSpec: separated angle at a must be present iff a is limit circle");
      if (beta_angle.has_value() != lc_b)
        throw ParameterError("ExtensionSpec: separated angle at b must be present iff b is limit circle");
      if ((alpha_angle && !angle_ok(*alpha_angle)) || (beta_angle && !angle_ok(*beta_angle)))
        throw ParameterError("ExtensionSpec: separated angles must lie in [0,pi)");
      break;
    }
    case Variant::Coupled: {
      if (cls.deficiency != 2)
        throw ParameterError("ExtensionSpec: coupled conditions require both endpoints limit circle");
      double det = R[0] * R[3] - R[1] * R[2];
      if (std::abs(det - 1.0) > 1e-9)
        throw ParameterError("ExtensionSpec: coupled matrix must have det(R) = 1");
      if (!(phi >= 0.0 && phi < 2.0 * kPi))
        throw ParameterError("ExtensionSpec: coupled phase must lie in [0,2pi)");
      break;
    }
    case Variant::Friedrichs:
    case Variant::KreinVonNeumann:
      break;
  }
}

ExtensionSpec friedrichs_spec(const BesselProblem& pb) {
  auto cls = classify(pb);
  return ExtensionSpec::separated(
      cls.at_a == EndpointClass::LimitCircle ? std::optional<double>(0.0) : std::nullopt,
      cls.at_b == EndpointClass::LimitCircle ? std::optional<double>(0.0) : std::nullopt);
}

double positivity_lower_bound(const BesselProblem& pb, const numerics::Tolerance& tol) {
  double qsup = pb.q.sup_bound(pb.a, pb.b);
  double lo = -qsup - 1.0;
  double weyl = kPi * kPi / (pb.length() * pb.length());
  auto fr = friedrichs_spec(pb);
  // scan upward until the first Friedrichs eigenvalue appears
  double hi = lo + 4.0 * weyl;
  for (int round = 0; round < 8; ++round) {
    auto sp = spectra::eigenvalues(pb, fr, lo, hi, tol);
    if (!sp.eigenvalues.empty()) return sp.eigenvalues.front().lambda;
    lo = hi;
    hi += 4.0 * weyl * (1 << round);
  }
  throw ConvergenceError("positivity_lower_bound: no Friedrichs eigenvalue located", lo, hi);
}

// ---------------------------------------------------------------------------
// Closed-form q = 0 Krein data
// ---------------------------------------------------------------------------

namespace {

// u-tilde_a(0,b), valid for all s_a >= 0, s_b in [0,1)
double entry_E12(double L, double sa, double sb) {
  Complex sig = sigma_of(sa, sb);
  return std::pow(L, sa + sb) * specialfn::gamma_fn(1.0 + 2.0 * sa).real() *
         specialfn::gamma_fn(1.0 + 2.0 * sb).real() * rgamma_pair(0.5 + sa + sb, sig);
}

// u-tilde'_a(0,b)
double entry_E22(double L, double sa, double sb) {
  Complex sig = sigma_of(sa, sb);
  if (sb > 0.0) {
    return std::pow(L, sa - sb) * specialfn::gamma_fn(2.0 + 2.0 * sa).real() *
           specialfn::gamma_fn(2.0 - 2.0 * sb).real() * rgamma_pair(1.5 + sa - sb, sig) /
           (4.0 * sb);
  }
  // s_b = 0 logarithmic branch
  double lt = std::log(1.0 / L);
  return std::pow(L, sa) * specialfn::gamma_fn(1.0 + 2.0 * sa).real() *
         rgamma_pair(0.5 + sa, sig) * (lt + 2.0 * kEulerGamma + digamma_pair(0.5 + sa, sig));
}

// uhat-tilde_a(0,b)
double entry_E11(double L, double sa, double sb) {
  Complex sig = sigma_of(sa, sb);
  if (sa > 0.0) {
    return std::pow(L, sb - sa) * specialfn::gamma_fn(2.0 - 2.0 * sa).real() *
           specialfn::gamma_fn(2.0 + 2.0 * sb).real() * rgamma_pair(1.5 - sa + sb, sig) /
           (4.0 * sa);
  }
  // s_a = 0: limit form; adds the digamma sum the nonprincipal log solution
  // inherits from the s_a -> 0 limit
  double lt = std::log(1.0 / L);
  return std::pow(L, sb) * specialfn::gamma_fn(1.0 + 2.0 * sb).real() *
         rgamma_pair(0.5 + sb, sig) * (lt + 2.0 * kEulerGamma + digamma_pair(0.5 + sb, sig));
}

// uhat-tilde'_a(0,b)
double entry_E21(double L, double sa, double sb) {
  Complex sig = sigma_of(sa, sb);
  double lt = std::log(1.0 / L);
  const double psi2 = 1.0 - kEulerGamma;  // psi(2)
  if (sa > 0.0 && sb > 0.0) {
    return std::pow(L, -sa - sb) * specialfn::gamma_fn(2.0 - 2.0 * sa).real() *
           specialfn::gamma_fn(2.0 - 2.0 * sb).real() * rgamma_pair(1.5 - sa - sb, sig) /
           (8.0 * sa * sb);
  }
  if (sa == 0.0 && sb > 0.0) {
    return std::pow(L, -sb) * specialfn::gamma_fn(2.0 - 2.0 * sb).real() *
           rgamma_pair(1.5 - sb, sig) / (4.0 * sb) *
           (lt - 2.0 * psi2 + digamma_pair(1.5 - sb, sig));
  }
  if (sa > 0.0 && sb == 0.0) {
    return std::pow(L, -sa) * specialfn::gamma_fn(2.0 - 2.0 * sa).real() *
           rgamma_pair(1.5 - sa, sig) / (4.0 * sa) *
           (lt - 2.0 * psi2 + digamma_pair(1.5 - sa, sig));
  }
  // s_a = s_b = 0: double logarithmic limit; trigamma enters
  Complex half_p = Complex(0.5, 0.5);  // (1+i)/2
  double G = (specialfn::gamma_fn(half_p) * specialfn::gamma_fn(std::conj(half_p))).real();
  double P = 2.0 * specialfn::digamma(half_p).real();
  double T = 2.0 * specialfn::trigamma(half_p).real();
  double brk = lt + 2.0 * kEulerGamma + P;
  return (brk * brk - T) / G;
}

}  // namespace

std::array<double, 4> krein_closed_form_entries_q0(const BesselProblem& pb) {
  if (!pb.q.is_zero())
    throw ParameterError("krein_closed_form_q0: formulas are for the q = 0 case");
  if (!(pb.s_a < 1.0 && pb.s_b < 1.0))
    throw ParameterError("krein_closed_form_entries_q0: requires both endpoints limit circle");
  double L = pb.length();
  return {entry_E11(L, pb.s_a, pb.s_b), entry_E12(L, pb.s_a, pb.s_b),
          entry_E21(L, pb.s_a, pb.s_b), entry_E22(L, pb.s_a, pb.s_b)};
}

KreinData krein_closed_form_q0(const BesselProblem& pb) {
  if (!pb.q.is_zero())
    throw ParameterError("krein_closed_form_q0: formulas are for the q = 0 case");
  auto cls = classify(pb);
  KreinData out;
  double L = pb.length(), sa = pb.s_a, sb = pb.s_b;

  if (cls.deficiency == 0) {
    out.mode = KreinData::Mode::Trivial;
    return out;
  }
  if (cls.deficiency == 2) {
    out.mode = KreinData::Mode::Matrix;
    out.R_K = krein_closed_form_entries_q0(pb);
    return out;
  }
  if (cls.at_a == EndpointClass::LimitCircle) {
    // LC at a, LP at b: cot(alpha_K) = -u-tilde'_b(0,a) / u-tilde_b(0,a)
    out.mode = KreinData::Mode::AngleAtA;
    Complex sig = sigma_of(sa, sb);
    if (sa > 0.0) {
      out.cot_value = specialfn::gamma_fn(2.0 - 2.0 * sa).real() *
                      gamma_pair(0.5 + sa + sb, sig) /
                      (specialfn::gamma_fn(1.0 + 2.0 * sa).real() *
                       gamma_pair(1.5 - sa + sb, sig)) *
                      (1.0 + 2.0 * sb) / (4.0 * sa * std::pow(L, 2.0 * sa));
    } else {
      out.cot_value = 2.0 * kEulerGamma + digamma_pair(0.5 + sb, sig) - std::log(L);
    }
    return out;
  }
  // LP at a, LC at b: cot(beta_K) = -u-tilde'_a(0,b) / u-tilde_a(0,b)
  out.mode = KreinData::Mode::AngleAtB;
  Complex sig = sigma_of(sa, sb);
  if (sb > 0.0) {
    out.cot_value = specialfn::gamma_fn(2.0 - 2.0 * sb).real() * gamma_pair(0.5 + sa + sb, sig) /
                    (specialfn::gamma_fn(1.0 + 2.0 * sb).real() *
                     gamma_pair(1.5 + sa - sb, sig)) *
                    (-(1.0 + 2.0 * sa)) / (4.0 * sb * std::pow(L, 2.0 * sb));
  } else {
    out.cot_value = std::log(L) - 2.0 * kEulerGamma - digamma_pair(0.5 + sa, sig);
  }
  return out;
}

double principal_data_at_b_naive_q0(const BesselProblem& pb) {
  // untransformed (Gamma(-2 s_b)) form of u-tilde'_a(0,b); removable
  // singularity at s_b = 1/2
  if (!pb.q.is_zero()) throw ParameterError("principal_data_at_b_naive_q0: requires q = 0");
  double L = pb.length(), sa = pb.s_a, sb = pb.s_b;
  Complex sig = sigma_of(sa, sb);
  return -std::pow(L, sa - sb) * specialfn::gamma_fn(1.0 + 2.0 * sa).real() *
         specialfn::gamma_fn(Complex(-2.0 * sb, 0.0)).real() / gamma_pair(0.5 + sa - sb, sig);
}

// ---------------------------------------------------------------------------
// Numeric (frame transport) Krein path
// ---------------------------------------------------------------------------

std::pair<ExtensionSpec, KreinData> krein_spec(const BesselProblem& pb,
                                               const numerics::Tolerance& tol) {
  auto cls = classify(pb);
  double eps = positivity_lower_bound(pb, tol);
  double floor = 1e-8 / (pb.length() * pb.length());
  if (!(eps > floor))
    throw UnavailableError("krein_spec: Krein construction unavailable, T_min lower bound <= 0");

  KreinData kd;
  if (cls.deficiency == 0) {
    kd.mode = KreinData::Mode::Trivial;
    return {ExtensionSpec::separated(std::nullopt, std::nullopt), kd};
  }

  double mid = 0.5 * (pb.a + pb.b);
  if (cls.deficiency == 2) {
    auto fa = solutions::volterra_frame(pb, Endpoint::A, 0.0, tol, true);
    auto fb = solutions::volterra_frame(pb, Endpoint::B, 0.0, tol, true);
    auto move_b = [&](solutions::Member m) {
      return solutions::transport_frame(fb, pb, 0.0, m, mid, tol);
    };
    auto [ubv, ubp] = move_b(solutions::Member::Principal);
    auto [vbv, vbp] = move_b(solutions::Member::Nonprincipal);
    auto data_at_b = [&](std::pair<double, double> g) {
      double gt = -(ubv * g.second - ubp * g.first);
      double gtp = vbv * g.second - vbp * g.first;
      return std::pair<double, double>{gt, gtp};
    };
    auto ua_mid = solutions::transport_frame(fa, pb, 0.0, solutions::Member::Principal, mid, tol);
    auto va_mid =
        solutions::transport_frame(fa, pb, 0.0, solutions::Member::Nonprincipal, mid, tol);
    auto col1 = data_at_b(va_mid);  // boundary data of u_hat_a at b
    auto col2 = data_at_b(ua_mid);  // boundary data of u_a at b
    kd.mode = KreinData::Mode::Matrix;
    kd.R_K = {col1.first, col2.first, col1.second, col2.second};
    return {ExtensionSpec::coupled(0.0, kd.R_K), kd};
  }

  if (cls.at_a == EndpointClass::LimitCircle) {
    // principal at b, data at a
    auto fb = solutions::volterra_frame(pb, Endpoint::B, 0.0, tol, false);
    auto fa = solutions::volterra_frame(pb, Endpoint::A, 0.0, tol, true);
    auto ub_mid = solutions::transport_frame(fb, pb, 0.0, solutions::Member::Principal, mid, tol);
    auto [uav, uap] = solutions::transport_frame(fa, pb, 0.0, solutions::Member::Principal, mid, tol);
    auto [vav, vap] =
        solutions::transport_frame(fa, pb, 0.0, solutions::Member::Nonprincipal, mid, tol);
    double gt = -(uav * ub_mid.second - uap * ub_mid.first);
    double gtp = vav * ub_mid.second - vap * ub_mid.first;
    kd.mode = KreinData::Mode::AngleAtA;
    kd.cot_value = -gtp / gt;
    return {ExtensionSpec::separated(angle_from_cot(kd.cot_value), std::nullopt), kd};
  }

  // LP at a, LC at b
  auto fa = solutions::volterra_frame(pb, Endpoint::A, 0.0, tol, false);
  auto fb = solutions::volterra_frame(pb, Endpoint::B, 0.0, tol, true);
  auto ua_mid = solutions::transport_frame(fa, pb, 0.0, solutions::Member::Principal, mid, tol);
  auto [ubv, ubp] = solutions::transport_frame(fb, pb, 0.0, solutions::Member::Principal, mid, tol);
  auto [vbv, vbp] =
      solutions::transport_frame(fb, pb, 0.0, solutions::Member::Nonprincipal, mid, tol);
  double gt = -(ubv * ua_mid.second - ubp * ua_mid.first);
  double gtp = vbv * ua_mid.second - vbp * ua_mid.first;
  kd.mode = KreinData::Mode::AngleAtB;
  kd.cot_value = -gtp / gt;
  return {ExtensionSpec::separated(std::nullopt, angle_from_cot(kd.cot_value)), kd};
}

double quadratic_form(const BesselProblem& pb, const solutions::FrameMember& f,
                      const numerics::Tolerance& tol) {
  // s = 1/2 removes the singular term at that endpoint; the one-singularity
  // factorizations omega = alpha^+ alpha (resp. eta = beta^+ beta) then give
  // the form without any q-tilde counterterm
  bool plain_a = pb.s_a == 0.5, plain_b = pb.s_b == 0.5;
  std::function<double(double, double, double)> first_order;
  std::function<double(double)> counter;
  if (plain_a && plain_b) {
    first_order = [](double, double, double fp) { return fp; };
    counter = [](double) { return 0.0; };
  } else if (plain_b) {
    auto expr = firstorder::FirstOrderExpr::alpha(pb.s_a, pb.a, pb.b);
    first_order = [expr](double x, double fv, double fp) {
      return firstorder::apply(expr, fv, fp, x);
    };
    counter = [](double) { return 0.0; };
  } else if (plain_a) {
    auto expr = firstorder::FirstOrderExpr::beta(pb.s_b, pb.a, pb.b);
    first_order = [expr](double x, double fv, double fp) {
      return firstorder::apply(expr, fv, fp, x);
    };
    counter = [](double) { return 0.0; };
  } else {
    auto expr = firstorder::FirstOrderExpr::two_point(pb.s_a, pb.s_b, pb.a, pb.b);
    first_order = [expr](double x, double fv, double fp) {
      return fp + firstorder::phi(expr, x) * fv;
    };
    counter = [expr](double x) { return firstorder::qtilde(expr, x); };
  }
  try {
    auto grad = numerics::quad_singular<double>(
        [&](double x) {
          auto [fv, fp] = f(x);
          double af = first_order(x, fv, fp);
          return af * af;
        },
        pb.a, pb.b, tol);
    auto lower = numerics::quad_singular<double>(
        [&](double x) {
          auto [fv, fp] = f(x);
          (void)fp;
          return (pb.q.eval(x) - counter(x)) * fv * fv;
        },
        pb.a, pb.b, tol);
    return grad.value + lower.value;
  } catch (const ConvergenceError&) {
    throw FormDomainError("quadratic_form: divergent integral, f outside the form domain");
  }
}

double sine_comparison_minimum(double* argmin) {
  auto f = [](double x) {
    double s = std::sin(x);
    return 1.0 / (s * s) + 1.0 - 1.0 / (x * x) - 1.0 / ((kPi - x) * (kPi - x));
  };
  double best_x = kPi / 2.0, best = f(best_x);
  for (int i = 1; i < 2048; ++i) {
    double x = kPi * i / 2048.0;
    double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  // golden-section refinement
  double lo = best_x - kPi / 2048.0, hi = best_x + kPi / 2048.0;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 120; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  double x = 0.5 * (lo + hi);
  if (argmin) *argmin = x;
  return f(x);
}

ExtensionSpec resolve(const BesselProblem& pb, const ExtensionSpec& spec,
                      const numerics::Tolerance& tol) {
  auto cls = classify(pb);
  switch (spec.variant) {
    case ExtensionSpec::Variant::Friedrichs:
      return friedrichs_spec(pb);
    case ExtensionSpec::Variant::KreinVonNeumann:
      return krein_spec(pb, tol).first;
    case ExtensionSpec::Variant::Separated:
    case ExtensionSpec::Variant::Coupled:
      spec.validate(cls);
      return spec;
  }
  throw ParameterError("resolve: unknown extension variant");
}

}  // namespace besselext::extensions
