#ifndef ELASCAT_SPECFUN_HPP
#define ELASCAT_SPECFUN_HPP

#include "elascat/core.hpp"

namespace elascat::specfun {

// Bessel functions of the first and second kind, orders 0 and 1, real
// argument.  Two regimes: ascending series (summed in extended precision)
// for x <= 8, asymptotic amplitude/phase Chebyshev expansions for x > 8.
// Target relative accuracy 1e-13 on (0, 200].
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);  // requires x > 0
double bessel_y1(double x);  // requires x > 0

struct HankelPair {
  Cx h0;  // H0^(1)(x)
  Cx h1;  // H1^(1)(x)
};

// H0^(1), H1^(1) at the same argument; x > 0.
HankelPair hankel_pair(double x);

// order must be 0 or 1; x > 0.
Cx hankel1(int order, double x);

}  // namespace elascat::specfun

#endif
