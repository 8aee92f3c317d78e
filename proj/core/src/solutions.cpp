#include "besselext/solutions.hpp"

#include <algorithm>
#include <cmath>

#include "besselext/specialfn.hpp"

namespace besselext::solutions {

namespace {

constexpr double kSeedTol = 1e-10;

bool is_log_case(double s) { return std::abs(s) < 1e-13; }

// Pure q=0 single-singularity model at an endpoint, in distance coordinate d,
// endpoint-A orientation (both members positive). Derivatives are w.r.t. d.
struct LocalModel {
  double s;
  bool logc;
  explicit LocalModel(double s_) : s(s_), logc(is_log_case(s_)) {}

  double u(double d) const { return std::pow(d, 0.5 + s); }
  double up(double d) const { return (0.5 + s) * std::pow(d, s - 0.5); }
  double v(double d) const {
    return logc ? std::sqrt(d) * std::log(1.0 / d) : std::pow(d, 0.5 - s) / (2.0 * s);
  }
  double vp(double d) const {
    if (logc) return (0.5 * std::log(1.0 / d) - 1.0) / std::sqrt(d);
    return (0.5 - s) * std::pow(d, -0.5 - s) / (2.0 * s);
  }
};

// int_0^d t^beta dt and int_0^d t^j ln^k(1/t) dt
double power_moment(double beta, double d) { return std::pow(d, beta + 1.0) / (beta + 1.0); }

double log_moment(int j, int k, double d) {
  double p = j + 1.0, l = std::log(1.0 / d), dp = std::pow(d, p);
  if (k == 1) return dp * (l / p + 1.0 / (p * p));
  return dp * (l * l / p + 2.0 * l / (p * p) + 2.0 / (p * p * p));
}

// First Volterra correction coefficients at distance d for a linear potential
// model m(t) ~= m0 + m1 t: I1 = int v0 m w0, I2 = int u0 m w0.
struct SeedCorrection {
  double I1 = 0.0, I2 = 0.0;
};

SeedCorrection seed_correction(const LocalModel& loc, Member which, double m0, double m1,
                               double d) {
  SeedCorrection c;
  double s = loc.s;
  if (!loc.logc) {
    if (which == Member::Principal) {
      // v0*u0 = d/(2s), u0*u0 = d^{1+2s}
      c.I1 = (m0 * power_moment(1.0, d) + m1 * power_moment(2.0, d)) / (2.0 * s);
      c.I2 = m0 * power_moment(1.0 + 2.0 * s, d) + m1 * power_moment(2.0 + 2.0 * s, d);
    } else {
      // v0*v0 = d^{1-2s}/(4s^2), u0*v0 = d/(2s)
      c.I1 = (m0 * power_moment(1.0 - 2.0 * s, d) + m1 * power_moment(2.0 - 2.0 * s, d)) /
             (4.0 * s * s);
      c.I2 = (m0 * power_moment(1.0, d) + m1 * power_moment(2.0, d)) / (2.0 * s);
    }
  } else {
    if (which == Member::Principal) {
      // v0*u0 = d ln(1/d), u0*u0 = d
      c.I1 = m0 * log_moment(1, 1, d) + m1 * log_moment(2, 1, d);
      c.I2 = m0 * power_moment(1.0, d) + m1 * power_moment(2.0, d);
    } else {
      // v0*v0 = d ln^2(1/d), u0*v0 = d ln(1/d)
      c.I1 = m0 * log_moment(1, 2, d) + m1 * log_moment(2, 2, d);
      c.I2 = m0 * log_moment(1, 1, d) + m1 * log_moment(2, 1, d);
    }
  }
  return c;
}

struct SeedData {
  double a = 0.0;
  double d0 = 0.0;
  double m0 = 0.0, m1 = 0.0;
  double s = 0.0;
};

// value/derivative (w.r.t. x) of the seeded member at distance d <= d0
std::pair<double, double> seed_eval(const SeedData& sd, Member which, double d) {
  LocalModel loc(sd.s);
  auto c = seed_correction(loc, which, sd.m0, sd.m1, d);
  double w0 = (which == Member::Principal) ? loc.u(d) : loc.v(d);
  double w0p = (which == Member::Principal) ? loc.up(d) : loc.vp(d);
  double val = w0 + loc.u(d) * c.I1 - loc.v(d) * c.I2;
  double der = w0p + loc.up(d) * c.I1 - loc.vp(d) * c.I2;
  return {val, der};
}

BesselProblem mirrored(const BesselProblem& pb) {
  PotentialSpec q2;
  switch (pb.q.kind) {
    case PotentialSpec::Kind::Zero:
      q2 = PotentialSpec::zero();
      break;
    case PotentialSpec::Kind::Constant:
      q2 = PotentialSpec::constant_q(pb.q.constant);
      break;
    case PotentialSpec::Kind::Polynomial: {
      // q(a+b-x): binomial re-expansion keeps the polynomial exact
      double c0 = pb.a + pb.b;
      std::vector<double> out(pb.q.coeffs.size(), 0.0);
      for (std::size_t i = 0; i < pb.q.coeffs.size(); ++i) {
        double binom = 1.0;
        for (std::size_t k = 0; k <= i; ++k) {
          out[k] += pb.q.coeffs[i] * binom * std::pow(c0, double(i - k)) * ((k % 2) ? -1.0 : 1.0);
          binom = binom * double(i - k) / double(k + 1);
        }
      }
      q2 = PotentialSpec::polynomial(out);
      break;
    }
    case PotentialSpec::Kind::Callback: {
      double c0 = pb.a + pb.b;
      auto fn = pb.q.fn;
      q2 = PotentialSpec::callback([fn, c0](double x) { return fn(c0 - x); },
                                   pb.q.declared_bound);
      break;
    }
  }
  return BesselProblem(pb.a, pb.b, pb.s_b, pb.s_a, std::move(q2));
}

SolutionFrame mirror_frame_to_b(const SolutionFrame& fa, double a, double b) {
  SolutionFrame fb;
  fb.endpoint = Endpoint::B;
  fb.lambda = fa.lambda;
  const double mab = a + b;
  auto ue = fa.u.eval;
  fb.u.eval = [ue, mab](double x) {
    auto [v, vp] = ue(mab - x);
    return std::pair<double, double>{-v, vp};
  };
  if (fa.u_hat) {
    auto ve = fa.u_hat->eval;
    fb.u_hat = FrameMember{[ve, mab](double x) {
      auto [v, vp] = ve(mab - x);
      return std::pair<double, double>{v, -vp};
    }};
  }
  fb.valid_lo = mab - fa.valid_hi;
  fb.valid_hi = mab - fa.valid_lo;
  return fb;
}

// ---------------------------------------------------------------------------
// Volterra-regularized frame at endpoint A.
// ---------------------------------------------------------------------------

SolutionFrame volterra_frame_a(const BesselProblem& pb, double lambda,
                               const numerics::Tolerance& tol, bool need_np) {
  const double a = pb.a, L = pb.length();
  const double s = pb.s_a;
  const bool lp = s >= 1.0;
  LocalModel loc(s);

  auto m = [&pb, lambda](double x) { return pb.potential_without(Endpoint::A, x) - lambda; };
  auto msup = [&](double D) {
    double mx = 0.0;
    for (int i = 1; i <= 32; ++i) mx = std::max(mx, std::abs(m(a + D * i / 32.0)));
    return mx;
  };

  // validity interval: shrink while the Volterra contraction estimate is too
  // large; give up below (b-a)/64
  double Delta = L / 4.0;
  double cs = 0.5 + 1.0 / std::max(0.15, 2.0 - 2.0 * std::min(s, 1.0));
  double ms = msup(Delta);
  while (ms * Delta * Delta * cs > 1.25) {
    if (Delta <= L / 64.0 * 1.0000001) {
      if (ms * Delta * Delta * cs > 4.0)
        throw ConvergenceError(
            "volterra_frame: validity interval collapsed below (b-a)/64, ||q - lambda|| too large",
            ms * Delta * Delta * cs, Delta);
      break;
    }
    Delta = std::max(Delta * 0.5, L / 64.0);
    ms = msup(Delta);
  }

  // seed offset: dropped second Volterra term ~ m^2 d0^{4-2s}
  double expo = 4.0 - 2.0 * std::min(s, 0.999);
  double d0 = std::min(Delta / 8.0, std::pow(kSeedTol / std::max(ms * ms, 1.0), 1.0 / expo));
  d0 = std::max({d0, 1e-9 * L,
                 512.0 * std::numeric_limits<double>::epsilon() *
                     (std::abs(pb.a) + std::abs(pb.b) + L)});

  SeedData sd;
  sd.a = a;
  sd.d0 = d0;
  sd.s = s;
  sd.m0 = m(a + 1e-3 * d0);
  sd.m1 = (m(a + d0) - sd.m0) / d0;

  numerics::Tolerance otol = tol;
  otol.rel = std::min(tol.rel, 1e-11);

  auto coeff = [&pb, lambda](double x) { return pb.potential(x) - lambda; };

  auto build_member = [&](Member which) {
    auto [v0, v0p] = seed_eval(sd, which, d0);
    numerics::Tolerance mt = otol;
    double far = (which == Member::Principal) ? loc.u(Delta) : std::abs(loc.v(Delta));
    mt.abs = 1e-13 * std::max({std::abs(v0), far, 1e-30}) + 1e-300;
    auto sol = numerics::integrate_ode<double>(coeff, a + d0, v0, v0p, a + Delta, mt, true);
    auto shared = std::make_shared<numerics::OdeSolution<double>>(std::move(sol));
    SeedData sdc = sd;
    FrameMember mem;
    mem.eval = [shared, sdc, which](double x) {
      double d = x - sdc.a;
      if (d >= sdc.d0) return shared->eval(x);
      return seed_eval(sdc, which, d);
    };
    return mem;
  };

  SolutionFrame fr;
  fr.endpoint = Endpoint::A;
  fr.lambda = lambda;
  fr.valid_lo = a + d0;
  fr.valid_hi = a + Delta;
  fr.u = build_member(Member::Principal);

  if (need_np && !lp) {
    FrameMember vh = build_member(Member::Nonprincipal);
    // renormalize so W(u_hat, u) = 1 exactly at the outer edge
    double xw = a + Delta;
    auto [uu, uup] = fr.u.eval(xw);
    auto [vv, vvp] = vh.eval(xw);
    double W = vv * uup - vvp * uu;
    if (!(std::isfinite(W)) || std::abs(W) < 1e-8)
      throw ConvergenceError("volterra_frame: degenerate frame normalization", W, Delta);
    auto raw = vh.eval;
    double scale = 1.0 / W;
    fr.u_hat = FrameMember{[raw, scale](double x) {
      auto [v, vp] = raw(x);
      return std::pair<double, double>{scale * v, scale * vp};
    }};
  }
  return fr;
}

// ---------------------------------------------------------------------------
// Closed hypergeometric frame (q = 0, lambda = 0) at endpoint A.
// ---------------------------------------------------------------------------

struct HypFactor {
  // C * (x-a)^{p1} * (b-x)^{p2} * F(al, be; ga; (x-a)/(b-a))
  double C = 1.0, p1 = 0.0, p2 = 0.0;
  std::complex<double> al, be, ga;
  double a = 0.0, b = 1.0;
  numerics::Tolerance tol;

  std::pair<double, double> eval(double x) const {
    using specialfn::hyp2f1;
    double L = b - a, xi = (x - a) / L;
    std::complex<double> F = hyp2f1({al, be, ga, xi}, tol);
    std::complex<double> Fp = 0.0;
    if (std::abs(al) > 1e-13 && std::abs(be) > 1e-13)
      Fp = al * be / ga * hyp2f1({al + 1.0, be + 1.0, ga + 1.0, xi}, tol);
    double da = x - a, db = b - x;
    double P = std::pow(da, p1) * std::pow(db, p2);
    double val = C * P * F.real();
    double der = C * (P * (p1 / da - p2 / db) * F.real() + P * Fp.real() / L);
    return {val, der};
  }
};

SolutionFrame global_frame_a(const BesselProblem& pb, const numerics::Tolerance& tol) {
  if (!pb.q.is_zero()) throw ParameterError("global_frame_q0: requires q = 0");
  const double a = pb.a, b = pb.b, L = pb.length(), sa = pb.s_a, sb = pb.s_b;
  std::complex<double> sigma = std::sqrt(std::complex<double>(sa * sa + sb * sb - 0.25, 0.0));

  SolutionFrame fr;
  fr.endpoint = Endpoint::A;
  fr.lambda = 0.0;
  fr.valid_lo = a + 1e-12 * L;
  fr.valid_hi = b - 1e-12 * L;

  auto up = std::make_shared<HypFactor>();
  up->C = std::pow(L, sb - 0.5);
  up->p1 = 0.5 + sa;
  up->p2 = 0.5 - sb;
  up->al = 0.5 + sa - sb + sigma;
  up->be = 0.5 + sa - sb - sigma;
  up->ga = 1.0 + 2.0 * sa;
  up->a = a;
  up->b = b;
  up->tol = tol;
  fr.u.eval = [up](double x) { return up->eval(x); };

  if (sa >= 1.0) return fr;  // limit point: no nonprincipal in the catalog

  if (!is_log_case(sa)) {
    std::complex<double> ga2 = 1.0 - 2.0 * sa;
    std::complex<double> al2 = 0.5 - sa - sb + sigma;
    std::complex<double> be2 = 0.5 - sa - sb - sigma;
    bool gamma_pole = std::abs(ga2.real() - std::round(ga2.real())) < 1e-9 && ga2.real() < 0.5;
    bool terminating = std::abs(al2) < 1e-9 || std::abs(be2) < 1e-9;
    if (gamma_pole && !terminating) {
      // s_a = 1/2 with s_b != 1/2: hypergeometric form degenerates; the
      // Volterra construction pins the same canonical normalization
      auto vf = volterra_frame(pb, Endpoint::A, 0.0, tol, true);
      fr.u_hat = vf.u_hat;
      return fr;
    }
    auto vh = std::make_shared<HypFactor>();
    vh->C = std::pow(L, sb - 0.5) / (2.0 * sa);
    vh->p1 = 0.5 - sa;
    vh->p2 = 0.5 - sb;
    vh->al = al2;
    vh->be = be2;
    vh->ga = ga2;
    vh->a = a;
    vh->b = b;
    vh->tol = tol;
    fr.u_hat = FrameMember{[vh](double x) { return vh->eval(x); }};
    return fr;
  }

  // s_a = 0: exact canonical nonprincipal by reduction of order,
  //   u_hat = u(x) [ ln(1/(x-a)) - int_a^x (1-h)/( (t-a) h ) dt ],  h = u^2/(t-a),
  // whose boundary data at a are exactly (1,0).
  auto ueval = fr.u.eval;
  numerics::Tolerance qtol = tol;
  qtol.rel = std::max(tol.rel, 1e-11);
  fr.u_hat = FrameMember{[ueval, a, qtol](double x) {
    auto J = numerics::quad_singular<double>(
        [&](double t) {
          auto [ut, utp] = ueval(t);
          (void)utp;
          double d = t - a;
          double h = ut * ut / d;
          return (1.0 - h) / (d * h);
        },
        a, x, qtol);
    auto [u, upd] = ueval(x);
    double bracket = std::log(1.0 / (x - a)) - J.value;
    double val = u * bracket;
    double der = upd * bracket - 1.0 / u;
    return std::pair<double, double>{val, der};
  }};
  return fr;
}

}  // namespace

LocalFrameValue local_frame_q0(double s, Endpoint ep, double x, double a, double b) {
  if (s < 0.0) throw ParameterError("local_frame_q0: s >= 0 required");
  double d = (ep == Endpoint::A) ? x - a : b - x;
  if (!(d > 0.0 && x > a && x < b))
    throw SingularityError("local_frame_q0: x must lie strictly inside (a,b)", x);
  LocalModel loc(s);
  LocalFrameValue out;
  double sgn_d = (ep == Endpoint::A) ? 1.0 : -1.0;  // dd/dx
  double sgn_u = (ep == Endpoint::A) ? 1.0 : -1.0;  // principal carries a minus at b
  out.u = sgn_u * loc.u(d);
  out.up = sgn_u * sgn_d * loc.up(d);
  if (s < 1.0) {
    out.has_nonprincipal = true;
    out.uhat = loc.v(d);
    out.uhatp = sgn_d * loc.vp(d);
  } else {
    throw FrameError("local_frame_q0: nonprincipal member undefined at a limit point endpoint (s >= 1)");
  }
  return out;
}

SolutionFrame global_frame_q0(const BesselProblem& pb, Endpoint ep,
                              const numerics::Tolerance& tol) {
  if (ep == Endpoint::A) return global_frame_a(pb, tol);
  return mirror_frame_to_b(global_frame_a(mirrored(pb), tol), pb.a, pb.b);
}

SolutionFrame volterra_frame(const BesselProblem& pb, Endpoint ep, double lambda,
                             const numerics::Tolerance& tol, bool need_nonprincipal) {
  if (ep == Endpoint::A) return volterra_frame_a(pb, lambda, tol, need_nonprincipal);
  return mirror_frame_to_b(volterra_frame_a(mirrored(pb), lambda, tol, need_nonprincipal), pb.a,
                           pb.b);
}

std::pair<double, double> transport_frame(const SolutionFrame& frame, const BesselProblem& pb,
                                          double lambda, Member which, double x_target,
                                          const numerics::Tolerance& tol) {
  if (!(x_target > pb.a && x_target < pb.b))
    throw SingularityError("transport_frame: target must lie strictly inside (a,b)", x_target);
  const FrameMember& mem = frame.member(which);
  if (x_target >= frame.valid_lo && x_target <= frame.valid_hi) return mem(x_target);
  double x_from = (x_target < frame.valid_lo) ? frame.valid_lo : frame.valid_hi;
  auto [v, vp] = mem(x_from);
  numerics::Tolerance mt = tol;
  mt.rel = std::min(tol.rel, 1e-11);
  mt.abs = 1e-13 * (std::abs(v) + std::abs(vp) * pb.length()) + 1e-300;
  auto sol = numerics::integrate_ode<double>(
      [&pb, lambda](double x) { return pb.potential(x) - lambda; }, x_from, v, vp, x_target, mt,
      false);
  return {sol.value, sol.derivative};
}

double ode_residual(const BesselProblem& pb, const FrameMember& member, double lambda, double lo,
                    double hi, int n) {
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * i / (n + 1.0);
    double h = 1e-4 * std::min({x - pb.a, pb.b - x, 1.0});
    auto [vm, dm] = member(x - h);
    auto [v0, d0] = member(x);
    auto [vp, dp] = member(x + h);
    (void)vm;
    (void)vp;
    // second derivative from the derivative channel (first differences)
    double usec = (dp - dm) / (2.0 * h);
    double rhs = (pb.potential(x) - lambda) * v0;
    double scale =
        (std::abs(pb.potential(x) - lambda) + 1.0) * (std::abs(v0) + h * std::abs(d0)) + 1e-300;
    worst = std::max(worst, std::abs(usec - rhs) / scale);
  }
  return worst;
}

HeunReduction heun_reduction(const BesselProblem& pb, std::complex<double> z) {
  using C = std::complex<double>;
  HeunReduction r;
  double sa = pb.s_a, sb = pb.s_b, L = pb.length();
  C i(0.0, 1.0);
  r.gamma = 1.0 + 2.0 * sa;
  r.delta = 1.0 - 2.0 * sb;
  r.eps = 2.0 * i * (pb.a - pb.b) * std::sqrt(z);
  r.mu = 0.5 * (1.0 + 2.0 * sa) * (r.eps + 2.0 * sb - 1.0);
  r.nu = r.eps * (1.0 + sa - sb);

  r.A = -r.eps * r.eps / 4.0;
  r.B = r.mu + r.gamma * (r.delta - r.eps) / 2.0;
  r.C = r.nu - r.mu - r.delta * (r.eps + r.gamma) / 2.0;
  r.D = (2.0 - r.gamma) * r.gamma / 4.0;
  r.E = (2.0 - r.delta) * r.delta / 4.0;

  r.A_target = L * L * z;
  r.D_target = 0.25 - sa * sa;
  r.E_target = 0.25 - sb * sb;
  r.identification_residual =
      std::max({std::abs(r.A - r.A_target), std::abs(r.B), std::abs(r.C),
                std::abs(r.D - r.D_target), std::abs(r.E - r.E_target)});
  return r;
}

}  // namespace besselext::solutions
