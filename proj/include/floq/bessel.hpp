#pragma once

namespace floq {

// Bessel function of the first kind, order zero. Absolute error below 1e-12
// for |x| <= 20 (power series in extended precision); Hankel asymptotic
// expansion beyond.
double bessel_j0(double x);

}  // namespace floq
