#pragma once

#include <gmpxx.h>

namespace met::semicircle {

// Density (1/2pi) sqrt(4 - x^2) on [-2,2], zero outside.
double density(double x);

// Closed-form CDF: 1/2 + x sqrt(4-x^2)/(4pi) + arcsin(x/2)/pi on [-2,2].
double cdf(double x);

// k-th moment: 0 for odd k, the Catalan number C(2m,m)/(m+1) for k = 2m.
mpz_class moment_exact(int k);
double moment(int k);

// E|X| = 8 / (3 pi).
double abs_moment();

}  // namespace met::semicircle
