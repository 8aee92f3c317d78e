#include "besselext/boundary.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace besselext::boundary {

namespace {

std::pair<double, double> endpoint_values(const BesselProblem& pb, Endpoint ep,
                                          const solutions::FrameMember& g,
                                          const solutions::SolutionFrame& frame,
                                          const numerics::Tolerance& tol) {
  const double L = pb.length();
  double s = pb.s_at(ep);
  std::vector<double> deltas, wu, wv;
  for (int k = 0; k <= 8; ++k) {
    double d = L * std::pow(2.0, -k) / 16.0;
    double x = (ep == Endpoint::A) ? pb.a + d : pb.b - d;
    auto [gv, gp] = g(x);
    auto [uv, up] = frame.u(x);
    auto [vv, vp] = frame.u_hat.value()(x);
    deltas.push_back(d);
    wu.push_back(uv * gp - up * gv);  // W(u, g)
    wv.push_back(vv * gp - vp * gv);  // W(u_hat, g)
  }
  auto model = (s == 0.0) ? numerics::DecayModel::AlgebraicLog : numerics::DecayModel::Algebraic;
  const char* name = (ep == Endpoint::A) ? "a" : "b";
  try {
    auto lu = numerics::limit_extrapolate(deltas, wu, model, tol);
    auto lv = numerics::limit_extrapolate(deltas, wv, model, tol);
    return {-lu.value, lv.value};
  } catch (const ModelMismatchError& e) {
    throw ModelMismatchError(std::string("boundary_values: Wronskian ladder at endpoint ") + name +
                                 " does not follow the decay model: " + e.what(),
                             e.residual());
  }
}

}  // namespace

BoundaryData boundary_values(const BesselProblem& pb, const solutions::FrameMember& g,
                             const solutions::SolutionFrame& frame_a,
                             const solutions::SolutionFrame& frame_b,
                             const numerics::Tolerance& tol) {
  BoundaryData out;
  if (pb.s_a < 1.0) out.at_a = endpoint_values(pb, Endpoint::A, g, frame_a, tol);
  if (pb.s_b < 1.0) out.at_b = endpoint_values(pb, Endpoint::B, g, frame_b, tol);
  return out;
}

BoundaryData boundary_values(const BesselProblem& pb, const solutions::FrameMember& g,
                             const numerics::Tolerance& tol) {
  solutions::SolutionFrame fa, fb;
  if (pb.s_a < 1.0) fa = solutions::volterra_frame(pb, Endpoint::A, 0.0, tol);
  if (pb.s_b < 1.0) fb = solutions::volterra_frame(pb, Endpoint::B, 0.0, tol);
  return boundary_values(pb, g, fa, fb, tol);
}

BoundaryData boundary_values_quotient(const BesselProblem& pb, const solutions::FrameMember& g,
                                      const numerics::Tolerance& tol) {
  BoundaryData out;
  const double L = pb.length();
  for (Endpoint ep : {Endpoint::A, Endpoint::B}) {
    double s = pb.s_at(ep);
    if (s >= 1.0) continue;
    std::vector<double> deltas, q1;
    auto uhat_ref = [&](double d) {
      return (s == 0.0) ? std::sqrt(d) * std::log(1.0 / d) : std::pow(d, 0.5 - s) / (2.0 * s);
    };
    for (int k = 0; k <= 8; ++k) {
      double d = L * std::pow(2.0, -k) / 16.0;
      double x = (ep == Endpoint::A) ? pb.a + d : pb.b - d;
      deltas.push_back(d);
      q1.push_back(g(x).first / uhat_ref(d));
    }
    auto model = (s == 0.0) ? numerics::DecayModel::AlgebraicLog : numerics::DecayModel::Algebraic;
    double gt = numerics::limit_extrapolate(deltas, q1, model, tol).value;

    std::vector<double> q2;
    double u_sign = (ep == Endpoint::A) ? 1.0 : -1.0;
    for (int k = 0; k <= 8; ++k) {
      double d = deltas[k];
      double x = (ep == Endpoint::A) ? pb.a + d : pb.b - d;
      q2.push_back((g(x).first - gt * uhat_ref(d)) / (u_sign * std::pow(d, 0.5 + s)));
    }
    double gtp = numerics::limit_extrapolate(deltas, q2, model, tol).value;
    if (ep == Endpoint::A)
      out.at_a = {gt, gtp};
    else
      out.at_b = {gt, gtp};
  }
  return out;
}

std::pair<double, double> solution_boundary_data(const solutions::SolutionFrame& frame,
                                                 double x_eval, double g_value, double g_deriv) {
  auto [uv, up] = frame.u(x_eval);
  auto [vv, vp] = frame.member(solutions::Member::Nonprincipal)(x_eval);
  double gt = -(uv * g_deriv - up * g_value);
  double gtp = vv * g_deriv - vp * g_value;
  return {gt, gtp};
}

BoundaryBasis boundary_basis(const BesselProblem& pb, double lambda, Endpoint ep,
                             const numerics::Tolerance& tol) {
  if (pb.s_at(ep) >= 1.0)
    throw FrameError("boundary_basis: endpoint is limit point (s >= 1), no boundary data exist");
  auto fr = solutions::volterra_frame(pb, ep, lambda, tol, true);
  BoundaryBasis out;
  out.theta = fr.member(solutions::Member::Nonprincipal);
  out.phi_sol = fr.u;
  out.valid_lo = fr.valid_lo;
  out.valid_hi = fr.valid_hi;
  return out;
}

}  // namespace besselext::boundary
