#pragma once

// Numerical verification of the Hardy-type inequalities, the refined
// logarithmic identities/inequality, and the two-weight Muckenhoupt criteria.

#include <functional>

#include "besselext/numerics.hpp"
#include "besselext/solutions.hpp"

namespace besselext::hardy {

enum class HardyVariant { Power12, Distance13, Sine14, LogRefinedB1, HalflineB11 };

struct HardyReport {
  HardyVariant variant = HardyVariant::Power12;
  double lhs = 0.0;       // int |f'|^2 (the derivative side)
  double rhs = 0.0;       // constant * weighted integral(s)
  double ratio = 0.0;     // lhs / weighted integral(s)
  double constant = 0.0;  // the variant's sharp constant
  bool satisfied = false;
};

/// Evaluates both sides of the variant's inequality for a trial function
/// with derivative. Inadmissible trials (decay probe diverges at a required
/// endpoint) raise AdmissibilityError.
HardyReport hardy_report(const solutions::FrameMember& f, HardyVariant variant, double a,
                         double b, const numerics::Tolerance& tol, double R = 0.0);

struct LogRefinedReport {
  double b3_lhs = 0.0, b3_rhs = 0.0;
  double b4_lhs = 0.0, b4_rhs = 0.0;
  double b1_lhs = 0.0, b1_rhs = 0.0;
  bool b3_ok = false, b4_ok = false, b1_holds = false;
  double tolerance = 0.0;
};

/// The two weighted-derivative identities behind the refined logarithmic
/// inequality (all boundary terms included) and the inequality itself,
/// over [r0,r1] with a < r0 < r1 <= b < R.
LogRefinedReport log_refined_check(const solutions::FrameMember& f, double a, double b, double r0,
                                   double r1, double s, double R, const numerics::Tolerance& tol);

enum class MuckKind { AForm, BForm };

struct MuckenhouptResult {
  MuckKind kind = MuckKind::AForm;
  double value = 0.0;
  bool infinite = false;
  double bracket_lo = 0.0, bracket_hi = 0.0;  // [A, p^{1/p} p'^{1/p'} A]
  double sup_location = 0.0;
};

/// sup over c of the two-weight Muckenhoupt functional for weights u, v and
/// exponent p in [1,infinity).
MuckenhouptResult muckenhoupt(MuckKind kind, const std::function<double(double)>& u,
                              const std::function<double(double)>& v, double p, double a,
                              double b, const numerics::Tolerance& tol);

}  // namespace besselext::hardy
