#pragma once

// Special functions backing the closed-form solution and boundary-value
// formulas: Gamma, digamma/trigamma, the Gauss hypergeometric function on
// xi in [0,1] (power series plus 1-xi connection formulas, including the
// logarithmic integer cases), and zeros of the Bessel function J0.

#include <complex>

#include "besselext/errors.hpp"
#include "besselext/numerics.hpp"

namespace besselext::specialfn {

using Complex = std::complex<double>;

/// Gamma function, Lanczos approximation with reflection for Re z < 1/2.
/// Throws PoleError at nonpositive integers.
Complex gamma_fn(Complex z);

/// 1/Gamma(z); entire, returns 0 at the poles of Gamma.
Complex rgamma(Complex z);

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
Complex digamma(Complex z);

/// Trigamma psi'(z).
Complex trigamma(Complex z);

struct Hyp2F1Params {
  Complex alpha;
  Complex beta;
  Complex gamma_param;
  double xi = 0.0;  // in [0,1]
};

/// Gauss 2F1 on xi in [0,1]. Power series for xi <= 1/2, 1-xi connection
/// formulas (AS 15.3.6 / 15.3.10 / 15.3.11) for xi in (1/2,1), Gauss's
/// identity at xi = 1.
Complex hyp2f1(const Hyp2F1Params& p, const numerics::Tolerance& tol);

/// Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), AS 15.1.20.
Complex gauss_value_at_one(Complex alpha, Complex beta, Complex gamma_param);

/// Bessel functions of the first kind, order 0 and 1 (real argument >= 0).
double bessel_j0(double x);
double bessel_j1(double x);

/// k-th positive zero of J0, k >= 1, to ~1e-12.
double bessel_j0_zero(int k);

}  // namespace besselext::specialfn
