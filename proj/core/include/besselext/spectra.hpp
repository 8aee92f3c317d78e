#pragma once

// Eigenvalue and eigenfunction computation for any ExtensionSpec via
// two-sided singularity-regularized shooting and a boundary-condition
// matching determinant evaluated at the interval midpoint.

#include <complex>
#include <functional>
#include <vector>

#include "besselext/extensions.hpp"
#include "besselext/numerics.hpp"
#include "besselext/problem.hpp"

namespace besselext::spectra {

struct EigenvalueEntry {
  double lambda = 0.0;
  int multiplicity = 1;
  double residual = 0.0;
};

struct Spectrum {
  std::vector<EigenvalueEntry> eigenvalues;  // sorted
  double lambda_lo = 0.0, lambda_hi = 0.0;
  extensions::ExtensionSpec extension;
};

/// Matching determinant D(lambda); real for separated and phi=0 coupled
/// conditions, complex for phi != 0. Zeros are the eigenvalues.
std::complex<double> matching_determinant(const BesselProblem& problem,
                                          const extensions::ExtensionSpec& ext, double lambda,
                                          const numerics::Tolerance& tol);

/// Scan + bracket + polish over [lo,hi]; multiplicity-2 roots detected by the
/// vanishing of all coupled-matrix entries. `jobs` parallelizes the scan.
Spectrum eigenvalues(const BesselProblem& problem, const extensions::ExtensionSpec& ext,
                     double lo, double hi, const numerics::Tolerance& tol, int jobs = 1);

struct Eigenfunction {
  double lambda = 0.0;
  double residual = 0.0;                   // relative ODE residual
  std::function<double(double)> eval;      // L2-normalized
};

/// Normalized eigenfunction(s) at an eigenvalue from the Spectrum; an
/// orthonormal pair for multiplicity 2. Real couplings only (phi = 0).
std::vector<Eigenfunction> eigenfunction(const BesselProblem& problem,
                                         const extensions::ExtensionSpec& ext, double lambda_k,
                                         const numerics::Tolerance& tol);

}  // namespace besselext::spectra
