#pragma once

// Endpoint classification, the catalog of self-adjoint extensions, Friedrichs
// and Krein-von Neumann constructions, closed-form Krein data for q = 0,
// positivity bounds, and the quadratic form.

#include <array>
#include <optional>

#include "besselext/numerics.hpp"
#include "besselext/problem.hpp"
#include "besselext/solutions.hpp"

namespace besselext::extensions {

enum class EndpointClass { LimitCircle, LimitPoint };

struct ProblemClassification {
  EndpointClass at_a = EndpointClass::LimitCircle;
  EndpointClass at_b = EndpointClass::LimitCircle;
  int deficiency = 2;
};

ProblemClassification classify(const BesselProblem& problem);

struct ExtensionSpec {
  enum class Variant { Separated, Coupled, Friedrichs, KreinVonNeumann };

  Variant variant = Variant::Friedrichs;
  std::optional<double> alpha_angle;  // [0,pi) at LC endpoint a
  std::optional<double> beta_angle;   // [0,pi) at LC endpoint b
  double phi = 0.0;                   // coupled phase in [0,2pi)
  std::array<double, 4> R{1.0, 0.0, 0.0, 1.0};  // row-major, det 1

  static ExtensionSpec separated(std::optional<double> alpha, std::optional<double> beta);
  static ExtensionSpec coupled(double phi, std::array<double, 4> R);
  static ExtensionSpec friedrichs() { return {}; }
  static ExtensionSpec krein() {
    ExtensionSpec e;
    e.variant = Variant::KreinVonNeumann;
    return e;
  }

  void validate(const ProblemClassification& cls) const;
};

/// Friedrichs extension: angle 0 at every LC endpoint, nothing at LP ones.
ExtensionSpec friedrichs_spec(const BesselProblem& problem);

/// Smallest eigenvalue of the Friedrichs extension (the best lower bound of
/// the form on the core); may be <= 0 for strongly negative q.
double positivity_lower_bound(const BesselProblem& problem, const numerics::Tolerance& tol);

struct KreinData {
  enum class Mode { AngleAtA, AngleAtB, Matrix, Trivial };
  Mode mode = Mode::Matrix;
  double cot_value = 0.0;
  std::array<double, 4> R_K{1.0, 0.0, 0.0, 1.0};

  double det() const { return R_K[0] * R_K[3] - R_K[1] * R_K[2]; }
};

/// Krein-von Neumann extension, frame-transport (numeric) path. Requires a
/// strictly positive lower bound; otherwise throws UnavailableError.
std::pair<ExtensionSpec, KreinData> krein_spec(const BesselProblem& problem,
                                               const numerics::Tolerance& tol);

/// Krein-von Neumann extension data for q = 0 from the explicit
/// Gamma/digamma/log formulas, all logarithmic s = 0 branches included and
/// the removable s = 1/2 cases evaluated through recurrence-transformed
/// (limit) forms.
KreinData krein_closed_form_q0(const BesselProblem& problem);

/// The four closed-form generalized boundary values behind the q=0 Krein
/// matrix: of the nonprincipal (E11, E21) and principal (E12, E22) solutions
/// at a, evaluated at b. Exposed for path-agreement checks.
std::array<double, 4> krein_closed_form_entries_q0(const BesselProblem& problem);

/// Naive principal-solution data u-tilde'_a(0,b) evaluated through the
/// untransformed Gamma(-2 s_b) formula; has removable singularities at
/// s_b = 1/2 (used by the limit-agreement checks only).
double principal_data_at_b_naive_q0(const BesselProblem& problem);

/// Q(f) = ||alpha_{s_a,s_b} f||^2 + (f, (q - qtilde) f).
double quadratic_form(const BesselProblem& problem, const solutions::FrameMember& f,
                      const numerics::Tolerance& tol);

/// Minimum of 1/sin^2(x) + 1 - x^{-2} - (pi-x)^{-2} over (0,pi); the
/// comparison function behind the c_0 positivity bound.
double sine_comparison_minimum(double* argmin = nullptr);

/// Resolves the named Friedrichs/Krein variants to concrete separated or
/// coupled boundary conditions; validates against the classification.
ExtensionSpec resolve(const BesselProblem& problem, const ExtensionSpec& spec,
                      const numerics::Tolerance& tol);

}  // namespace besselext::extensions
