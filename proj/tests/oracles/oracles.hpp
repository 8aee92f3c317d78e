#pragma once

// Test-only oracles, independent of the production code paths they validate:
// a long-double J0 series with bisection for its zeros, a brute-force 2F1
// series, symbolic power-polynomial integrals, the tan x = x secular roots of
// the free coupled Krein problem, and a P1 finite-element discretization of
// that problem with a dense Jacobi eigensolver.

#include <complex>
#include <vector>

namespace oracles {

/// J0(x) by long-double power series (adequate for x <= 16).
long double j0_series(long double x);

/// k-th positive zero of J0 by bisection on the series, k <= 5.
double j0_zero_bisection(int k);

/// Brute-force 2F1 power series in long double, |x| < 1.
std::complex<double> hyp2f1_series(std::complex<double> a, std::complex<double> b,
                                   std::complex<double> c, double x, int terms = 4000);

/// int_0^1 x^gamma * sum_i coeff[i] x^i dx, exact term-by-term.
double power_poly_integral(double gamma, const std::vector<double>& coeff);

/// k-th positive root of tan x = x (k >= 1) by bisection.
double tanx_eq_x_root(int k);

/// Eigenvalues of the free coupled Krein problem (-u'' = lambda u on (0,1),
/// u(1) = u(0) + u'(0), u'(1) = u'(0)) by a P1 finite-element discretization
/// of the form Q(u,v) = int u'v' - (u_N - u_0)(v_N - v_0); dense symmetric
/// generalized eigensolve via Cholesky + Jacobi. Returns the lowest `count`.
std::vector<double> fem_krein_free_eigenvalues(int n_cells, int count);

}  // namespace oracles
