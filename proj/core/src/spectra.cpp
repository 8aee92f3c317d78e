#include "besselext/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "besselext/boundary.hpp"
#include "besselext/solutions.hpp"

namespace besselext::spectra {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using Complex = std::complex<double>;
using extensions::EndpointClass;
using extensions::ExtensionSpec;
using solutions::Member;

struct Shot {
  double v = 0.0, vp = 0.0;
};

double wron(const Shot& f, const Shot& g) { return f.v * g.vp - f.vp * g.v; }

struct DetEval {
  Complex D;
  std::array<Complex, 4> M{};  // coupled matrix at the root, scaled
  double entry_norm = 0.0;
  bool coupled = false;
};

// One determinant evaluation: lambda-frames at both endpoints, transported to
// the midpoint, matched through the extension's boundary conditions.
DetEval eval_det(const BesselProblem& pb, const ExtensionSpec& ext, double lambda,
                 const numerics::Tolerance& tol) {
  auto cls = extensions::classify(pb);
  bool lc_a = cls.at_a == EndpointClass::LimitCircle;
  bool lc_b = cls.at_b == EndpointClass::LimitCircle;
  double mid = 0.5 * (pb.a + pb.b);

  auto fa = solutions::volterra_frame(pb, Endpoint::A, lambda, tol, lc_a);
  auto fb = solutions::volterra_frame(pb, Endpoint::B, lambda, tol, lc_b);

  auto move = [&](const solutions::SolutionFrame& fr, Member m) {
    auto [v, vp] = solutions::transport_frame(fr, pb, lambda, m, mid, tol);
    return Shot{v, vp};
  };

  Shot ua = move(fa, Member::Principal);
  Shot ub = move(fb, Member::Principal);
  Shot va, vb;
  if (lc_a) va = move(fa, Member::Nonprincipal);
  if (lc_b) vb = move(fb, Member::Nonprincipal);

  DetEval out;
  if (ext.variant == ExtensionSpec::Variant::Separated) {
    Shot chi;
    if (lc_a) {
      double al = ext.alpha_angle.value();
      chi.v = std::sin(al) * va.v - std::cos(al) * ua.v;
      chi.vp = std::sin(al) * va.vp - std::cos(al) * ua.vp;
    } else {
      chi = ua;
    }
    double s_chi = std::abs(chi.v) + std::abs(chi.vp) + 1e-300;
    if (lc_b) {
      double be = ext.beta_angle.value();
      double gt = -wron(ub, chi);
      double gtp = wron(vb, chi);
      double s_b = std::abs(ub.v) + std::abs(ub.vp) + std::abs(vb.v) + std::abs(vb.vp);
      out.D = (gt * std::cos(be) + gtp * std::sin(be)) / (s_chi * s_b);
    } else {
      double s_b = std::abs(ub.v) + std::abs(ub.vp);
      out.D = wron(ub, chi) / (s_chi * s_b);
    }
    out.entry_norm = std::abs(out.D);
    return out;
  }

  // coupled: boundary-data matrix of (theta, phi) = (u_hat_a, u_a) at b
  out.coupled = true;
  auto data_b = [&](const Shot& g) {
    return std::pair<double, double>{-wron(ub, g), wron(vb, g)};
  };
  auto c1 = data_b(va);
  auto c2 = data_b(ua);
  Complex eiphi = std::polar(1.0, ext.phi);
  // boundary data of (theta, phi) at a are the identity by construction
  out.M = {c1.first - eiphi * ext.R[0], c2.first - eiphi * ext.R[1],
           c1.second - eiphi * ext.R[2], c2.second - eiphi * ext.R[3]};
  double scale = std::abs(c1.first) + std::abs(c1.second) + std::abs(c2.first) +
                 std::abs(c2.second) + std::abs(ext.R[0]) + std::abs(ext.R[1]) +
                 std::abs(ext.R[2]) + std::abs(ext.R[3]) + 1e-300;
  for (auto& m : out.M) m /= scale;
  out.D = out.M[0] * out.M[3] - out.M[1] * out.M[2];
  out.entry_norm = std::max({std::abs(out.M[0]), std::abs(out.M[1]), std::abs(out.M[2]),
                             std::abs(out.M[3])});
  return out;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
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
  return 0.5 * (lo + hi);
}

}  // namespace

Complex matching_determinant(const BesselProblem& pb, const ExtensionSpec& ext, double lambda,
                             const numerics::Tolerance& tol) {
  auto resolved = extensions::resolve(pb, ext, tol);
  return eval_det(pb, resolved, lambda, tol).D;
}

Spectrum eigenvalues(const BesselProblem& pb, const ExtensionSpec& ext, double lo, double hi,
                     const numerics::Tolerance& tol, int jobs) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ParameterError("eigenvalues: search range must be finite with lo < hi");
  auto resolved = extensions::resolve(pb, ext, tol);

  Spectrum out;
  out.lambda_lo = lo;
  out.lambda_hi = hi;
  out.extension = resolved;

  double L = pb.length();
  double h0 = 0.25 * kPi * kPi / (L * L);  // Weyl-scale scan heuristic
  long n = std::max<long>(8, static_cast<long>(std::ceil((hi - lo) / h0)) + 1);
  n = std::min<long>(n, 200000);

  std::vector<double> grid(n + 1);
  for (long i = 0; i <= n; ++i) grid[i] = lo + (hi - lo) * double(i) / double(n);

  std::vector<DetEval> evals(grid.size());
  auto run_chunk = [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) evals[i] = eval_det(pb, resolved, grid[i], tol);
  };
  if (jobs > 1) {
    std::vector<std::future<void>> futs;
    std::size_t chunk = (grid.size() + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      std::size_t i0 = j * chunk, i1 = std::min(grid.size(), (j + 1) * chunk);
      if (i0 >= i1) break;
      futs.push_back(std::async(std::launch::async, run_chunk, i0, i1));
    }
    for (auto& f : futs) f.get();
  } else {
    run_chunk(0, grid.size());
  }

  bool complex_path = resolved.variant == ExtensionSpec::Variant::Coupled && resolved.phi != 0.0;
  double root_tol_abs = std::max(tol.abs, 1e-12 * (1.0 + std::abs(hi)));
  auto add_root = [&](double lam, int mult, double resid) {
    for (auto& e : out.eigenvalues)
      if (std::abs(e.lambda - lam) < 1e-8 * (1.0 + std::abs(lam))) {
        e.multiplicity = std::max(e.multiplicity, mult);
        return;
      }
    out.eigenvalues.push_back({lam, mult, resid});
  };
  auto entry_norm_at = [&](double lam) { return eval_det(pb, resolved, lam, tol).entry_norm; };
  auto probe_multiplicity = [&](double lam) {
    auto ev = eval_det(pb, resolved, lam, tol);
    if (ev.coupled && ev.entry_norm < std::sqrt(std::max(tol.rel, 1e-12))) return 2;
    return 1;
  };

  if (!complex_path) {
    // real path: bracket sign changes of Re D, polish with Brent
    numerics::Tolerance rt = tol;
    rt.abs = root_tol_abs;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      double f0 = evals[i].D.real(), f1 = evals[i + 1].D.real();
      if (f0 == 0.0) {
        add_root(grid[i], probe_multiplicity(grid[i]), 0.0);
        continue;
      }
      if (f0 * f1 < 0.0) {
        double lam = numerics::find_root(
            [&](double l) { return eval_det(pb, resolved, l, tol).D.real(); }, grid[i],
            grid[i + 1], rt);
        auto ev = eval_det(pb, resolved, lam, tol);
        int mult = ev.coupled && ev.entry_norm < std::sqrt(std::max(tol.rel, 1e-12)) ? 2 : 1;
        add_root(lam, mult, std::abs(ev.D));
      }
    }
    // touching (double) zeros: local minima of |D| that dip to ~zero without
    // a sign change; occurs for coupled kernels (Krein at lambda = 0)
    if (resolved.variant == ExtensionSpec::Variant::Coupled) {
      auto mag = [&](std::size_t i) { return std::abs(evals[i].D); };
      for (std::size_t i = 0; i < grid.size(); ++i) {
        bool is_min = (i == 0 || mag(i) <= mag(i - 1)) &&
                      (i + 1 >= grid.size() || mag(i) <= mag(i + 1));
        if (!is_min) continue;
        bool sign_change =
            (i > 0 && evals[i - 1].D.real() * evals[i].D.real() < 0.0) ||
            (i + 1 < grid.size() && evals[i].D.real() * evals[i + 1].D.real() < 0.0);
        if (sign_change) continue;  // already handled by bracketing
        double wlo = (i == 0) ? grid[0] : grid[i - 1];
        double whi = (i + 1 >= grid.size()) ? grid.back() : grid[i + 1];
        double lam = golden_min(
            [&](double l) { return std::abs(eval_det(pb, resolved, l, tol).D); }, wlo, whi, 90);
        auto ev = eval_det(pb, resolved, lam, tol);
        if (std::abs(ev.D) < 1e-9 && ev.entry_norm < std::sqrt(std::max(tol.rel, 1e-12)))
          add_root(lam, 2, std::abs(ev.D));
      }
    }
  } else {
    // complex path: |D|^2 minimization with a curvature certificate
    auto mag2 = [&](double l) {
      Complex d = eval_det(pb, resolved, l, tol).D;
      return std::norm(d);
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double m1 = std::norm(evals[i].D);
      bool is_min = (i == 0 || m1 <= std::norm(evals[i - 1].D)) &&
                    (i + 1 >= grid.size() || m1 <= std::norm(evals[i + 1].D));
      if (!is_min) continue;
      double wlo = (i == 0) ? grid[0] : grid[i - 1];
      double whi = (i + 1 >= grid.size()) ? grid.back() : grid[i + 1];
      double lam = golden_min(mag2, wlo, whi, 100);
      double dv = std::sqrt(mag2(lam));
      // curvature certificate: |D| rises on both sides of the minimum
      double dh = (grid[1] - grid[0]) * 1e-3;
      double side = std::min(std::sqrt(mag2(std::max(lo, lam - dh))),
                             std::sqrt(mag2(std::min(hi, lam + dh))));
      if (dv < 1e-7 && side > dv) add_root(lam, probe_multiplicity(lam), dv);
    }
  }
  (void)entry_norm_at;

  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const EigenvalueEntry& x, const EigenvalueEntry& y) { return x.lambda < y.lambda; });
  return out;
}

std::vector<Eigenfunction> eigenfunction(const BesselProblem& pb, const ExtensionSpec& ext,
                                         double lambda_k, const numerics::Tolerance& tol) {
  auto resolved = extensions::resolve(pb, ext, tol);
  if (resolved.variant == ExtensionSpec::Variant::Coupled && resolved.phi != 0.0)
    throw UnavailableError("eigenfunction: complex couplings (phi != 0) are not realized");
  auto ev = eval_det(pb, resolved, lambda_k, tol);
  if (std::abs(ev.D) > 1e-5)
    throw ParameterError("eigenfunction: lambda is not an eigenvalue (matching residual too large)");

  auto cls = extensions::classify(pb);
  bool lc_a = cls.at_a == EndpointClass::LimitCircle;
  bool lc_b = cls.at_b == EndpointClass::LimitCircle;

  auto fa = solutions::volterra_frame(pb, Endpoint::A, lambda_k, tol, lc_a);
  auto fb = solutions::volterra_frame(pb, Endpoint::B, lambda_k, tol, lc_b);

  // an eigenfunction given its combination coefficients in the a-frame;
  // everything the returned evaluator touches is captured by value
  auto realize = [&](double ca_hat, double ca) -> std::function<double(double)> {
    auto fa_u = fa.u;
    auto fa_hat = lc_a ? fa.member(Member::Nonprincipal) : solutions::FrameMember{};
    auto left = [fa_u, fa_hat, ca_hat, ca](double x) {
      auto [uv, up] = fa_u(x);
      double v = ca * uv, vp = ca * up;
      if (ca_hat != 0.0) {
        auto [hv, hp] = fa_hat(x);
        v += ca_hat * hv;
        vp += ca_hat * hp;
      }
      return std::pair<double, double>{v, vp};
    };
    double xa = fa.valid_hi, xb = fb.valid_lo;
    auto [v0, vp0] = left(xa);
    numerics::Tolerance mt = tol;
    mt.rel = std::min(tol.rel, 1e-11);
    mt.abs = 1e-13 * (std::abs(v0) + std::abs(vp0) * pb.length()) + 1e-300;
    auto sol = std::make_shared<numerics::OdeSolution<double>>(numerics::integrate_ode<double>(
        [&pb, lambda_k](double x) { return pb.potential(x) - lambda_k; }, xa, v0, vp0, xb, mt,
        true));
    // right tail: expand in the b-frame
    auto [wv, wp] = sol->eval(xb);
    Shot chi_b{wv, wp};
    double cb_hat = 0.0, cb = 0.0;
    if (lc_b) {
      auto [ubv, ubp] = fb.u(xb);
      auto [vbv, vbp] = fb.member(Member::Nonprincipal)(xb);
      cb_hat = -(ubv * chi_b.vp - ubp * chi_b.v);
      cb = vbv * chi_b.vp - vbp * chi_b.v;
    } else {
      auto [ubv, ubp] = fb.u(xb);
      cb = (std::abs(ubv) > std::abs(ubp)) ? chi_b.v / ubv : chi_b.vp / ubp;
    }
    auto fb_u = fb.u;
    auto fb_hat = lc_b ? fb.member(Member::Nonprincipal) : solutions::FrameMember{};
    return [left, sol, xa, xb, cb, cb_hat, fb_u, fb_hat, lc_b](double x) {
      if (x <= xa) return left(x).first;
      if (x >= xb) {
        double v = cb * fb_u(x).first;
        if (lc_b && cb_hat != 0.0) v += cb_hat * fb_hat(x).first;
        return v;
      }
      return sol->eval(x).first;
    };
  };

  std::vector<std::pair<double, double>> combos;
  if (resolved.variant == ExtensionSpec::Variant::Separated) {
    if (lc_a) {
      double al = resolved.alpha_angle.value();
      combos.push_back({std::sin(al), -std::cos(al)});
    } else {
      combos.push_back({0.0, 1.0});
    }
  } else {
    if (ev.entry_norm < std::sqrt(std::max(tol.rel, 1e-12))) {
      combos.push_back({1.0, 0.0});  // u_hat_a
      combos.push_back({0.0, 1.0});  // u_a
    } else {
      // null vector of the 2x2 matching matrix
      double r0 = std::abs(ev.M[0]) + std::abs(ev.M[1]);
      double r1 = std::abs(ev.M[2]) + std::abs(ev.M[3]);
      if (r0 >= r1)
        combos.push_back({ev.M[1].real(), -ev.M[0].real()});
      else
        combos.push_back({ev.M[3].real(), -ev.M[2].real()});
    }
  }

  numerics::Tolerance qt = tol;
  qt.rel = std::max(tol.rel, 1e-9);
  std::vector<Eigenfunction> out;
  std::vector<std::function<double(double)>> fns;
  for (auto [c1, c2] : combos) fns.push_back(realize(c1, c2));

  auto inner = [&](const std::function<double(double)>& f, const std::function<double(double)>& g) {
    return numerics::quad_singular<double>([&](double x) { return f(x) * g(x); }, pb.a, pb.b, qt)
        .value;
  };

  // orthonormalize (Gram-Schmidt for the multiplicity-2 pair)
  std::vector<std::function<double(double)>> ortho;
  for (auto& f : fns) {
    std::function<double(double)> g = f;
    if (!ortho.empty()) {
      auto p = ortho.front();
      double c = inner(p, g);
      g = [p, g, c](double x) { return g(x) - c * p(x); };
    }
    double nrm = std::sqrt(inner(g, g));
    if (!(nrm > 0.0)) throw ConvergenceError("eigenfunction: null normalization", nrm, 0.0);
    auto gn = [g, nrm](double x) { return g(x) / nrm; };
    ortho.push_back(gn);
  }

  for (auto& g : ortho) {
    Eigenfunction ef;
    ef.lambda = lambda_k;
    ef.eval = g;
    // ||(tau - lambda) u|| / ||u|| by dense-output second differences, RMS
    // over the interior against the equation's own scale
    double num = 0.0, den = 0.0;
    double L = pb.length();
    for (int i = 0; i < 60; ++i) {
      double x = pb.a + L * (0.05 + 0.9 * i / 59.0);
      double h = 6e-4 * std::min({L, x - pb.a, pb.b - x});
      double d2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
      double rhs = (pb.potential(x) - lambda_k) * g(x);
      double sc = (std::abs(pb.potential(x) - lambda_k) + 1.0) * std::abs(g(x));
      num += (d2 - rhs) * (d2 - rhs);
      den += sc * sc;
    }
    ef.residual = std::sqrt(num / (den + 1e-300));
    out.push_back(std::move(ef));
  }
  return out;
}

}  // namespace besselext::spectra
