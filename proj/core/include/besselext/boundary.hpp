#pragma once

// Generalized boundary values g-tilde, g-tilde' at limit-circle endpoints via
// Wronskian limits against the lambda=0 reference frames, and boundary-data
// bases at arbitrary real spectral parameter.

#include <optional>
#include <utility>

#include "besselext/numerics.hpp"
#include "besselext/problem.hpp"
#include "besselext/solutions.hpp"

namespace besselext::boundary {

struct BoundaryData {
  std::optional<std::pair<double, double>> at_a;  // (g~(a), g~'(a)), absent at LP
  std::optional<std::pair<double, double>> at_b;
};

/// Wronskian-limit boundary values of g against the provided lambda=0 frames.
/// Certified accuracy for solution-like g; degraded (extrapolated) otherwise.
BoundaryData boundary_values(const BesselProblem& problem, const solutions::FrameMember& g,
                             const solutions::SolutionFrame& frame_a,
                             const solutions::SolutionFrame& frame_b,
                             const numerics::Tolerance& tol);

/// Convenience overload that builds the lambda=0 reference frames itself.
BoundaryData boundary_values(const BesselProblem& problem, const solutions::FrameMember& g,
                             const numerics::Tolerance& tol);

/// Direct quotient boundary values against the reference power/log weights;
/// q = 0 cross-check path for the Wronskian-limit construction.
BoundaryData boundary_values_quotient(const BesselProblem& problem,
                                      const solutions::FrameMember& g,
                                      const numerics::Tolerance& tol);

/// Boundary data at frame.endpoint of a solution g of the same
/// (tau - lambda) u = 0 equation the frame solves: exact via constant
/// Wronskians, both sides evaluated at x_eval.
std::pair<double, double> solution_boundary_data(const solutions::SolutionFrame& frame,
                                                 double x_eval, double g_value, double g_deriv);

struct BoundaryBasis {
  solutions::FrameMember theta;    // boundary data (1,0) at the endpoint
  solutions::FrameMember phi_sol;  // boundary data (0,1)
  double valid_lo = 0.0, valid_hi = 0.0;
};

/// Solution pair at spectral parameter lambda realizing boundary data (1,0)
/// and (0,1) at a limit-circle endpoint.
BoundaryBasis boundary_basis(const BesselProblem& problem, double lambda, Endpoint ep,
                             const numerics::Tolerance& tol);

}  // namespace besselext::boundary
