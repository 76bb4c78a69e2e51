#ifndef LATVAR_SPECIAL_HPP
#define LATVAR_SPECIAL_HPP

#include <complex>

namespace latvar {

// Bessel function of the first kind J_nu(x) for the orders used by the
// dimension range d in {1,2,3}: nu in {-1/2, 0, 1/2, 1, 3/2}.
// Half-integer orders use trigonometric closed forms; J0/J1 use the power
// series for small argument, Miller backward recurrence in the mid range and
// the Hankel asymptotic expansion for large argument.
double bessel_j(double nu, double x);

// Regularized small-argument form Gamma(nu+1) * (z/2)^{-nu} * J_nu(z),
// analytic at z = 0 with value 1. Stable for all z >= 0.
double bessel_j_normalized(double nu, double z);

// Approximate k-th positive zero of J_nu (k >= 1), McMahon expansion.
// Accurate enough for oscillation-aligned quadrature panels.
double bessel_zero(double nu, int k);

// Euler gamma function for complex argument (Lanczos approximation).
// Throws PoleAt if z is within 1e-12 of a nonpositive integer.
std::complex<double> complex_gamma(std::complex<double> z);

// Upper incomplete gamma Gamma(a, x) for real a (may be negative), x > 0.
double upper_incomplete_gamma(double a, double x);

// Carlson symmetric elliptic integrals.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
double carlson_rg(double x, double y, double z);

} // namespace latvar

#endif
