#pragma once

// BesselProblem: the differential expression
//   tau_{s_a,s_b} = -d^2/dx^2 + (s_a^2-1/4)/(x-a)^2 + (s_b^2-1/4)/(b-x)^2 + q(x)
// on a bounded interval (a,b), with s_a, s_b >= 0 and q essentially bounded.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "besselext/errors.hpp"

namespace besselext {

enum class Endpoint { A, B };

struct PotentialSpec {
  enum class Kind { Zero, Constant, Polynomial, Callback };

  Kind kind = Kind::Zero;
  double constant = 0.0;
  std::vector<double> coeffs;  // polynomial in x, c0 + c1 x + ...
  std::function<double(double)> fn;
  double declared_bound = 0.0;  // sup bound for callback potentials

  static PotentialSpec zero() { return {}; }
  static PotentialSpec constant_q(double c) {
    PotentialSpec p;
    p.kind = Kind::Constant;
    p.constant = c;
    return p;
  }
  static PotentialSpec polynomial(std::vector<double> c) {
    PotentialSpec p;
    p.kind = Kind::Polynomial;
    p.coeffs = std::move(c);
    return p;
  }
  static PotentialSpec callback(std::function<double(double)> f, double bound) {
    PotentialSpec p;
    p.kind = Kind::Callback;
    p.fn = std::move(f);
    p.declared_bound = bound;
    return p;
  }

  bool is_zero() const { return kind == Kind::Zero; }

  double eval(double x) const {
    switch (kind) {
      case Kind::Zero:
        return 0.0;
      case Kind::Constant:
        return constant;
      case Kind::Polynomial: {
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;  // Horner
        return v;
      }
      case Kind::Callback:
        return fn(x);
    }
    return 0.0;
  }

  double sup_bound(double a, double b) const {
    switch (kind) {
      case Kind::Zero:
        return 0.0;
      case Kind::Constant:
        return std::abs(constant);
      case Kind::Polynomial: {
        double m = 0.0;
        for (int i = 0; i <= 64; ++i) m = std::max(m, std::abs(eval(a + (b - a) * i / 64.0)));
        return m;
      }
      case Kind::Callback:
        return declared_bound;
    }
    return 0.0;
  }
};

struct BesselProblem {
  double a = 0.0;
  double b = 1.0;
  double s_a = 0.5;
  double s_b = 0.5;
  PotentialSpec q;

  BesselProblem() = default;
  BesselProblem(double a_, double b_, double sa, double sb, PotentialSpec q_ = {})
      : a(a_), b(b_), s_a(sa), s_b(sb), q(std::move(q_)) {
    validate();
  }

  void validate() const {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
      throw ParameterError("BesselProblem: requires a finite interval a < b");
    if (!(s_a >= 0.0) || !(s_b >= 0.0))
      throw ParameterError("BesselProblem: requires s_a, s_b >= 0");
    if (q.kind == PotentialSpec::Kind::Callback && !q.fn)
      throw ParameterError("BesselProblem: callback potential without a callable");
  }

  double length() const { return b - a; }

  /// Full potential V(x) of tau: inverse-square terms plus q.
  double potential(double x) const {
    double da = x - a, db = b - x;
    return (s_a * s_a - 0.25) / (da * da) + (s_b * s_b - 0.25) / (db * db) + q.eval(x);
  }

  /// Potential with the singular term at `ep` removed; bounded near ep.
  double potential_without(Endpoint ep, double x) const {
    double da = x - a, db = b - x;
    double v = q.eval(x);
    if (ep == Endpoint::A)
      return v + (s_b * s_b - 0.25) / (db * db);
    return v + (s_a * s_a - 0.25) / (da * da);
  }

  double s_at(Endpoint ep) const { return ep == Endpoint::A ? s_a : s_b; }
};

}  // namespace besselext
