#pragma once

#include <array>
#include <complex>

#include "recoupling/euler.hpp"
#include "recoupling/spin.hpp"

namespace recoupling {

// Extended-precision policy for the exact (oracle-grade) evaluators.
//
// The alternating sums lose digits catastrophically at large J (about
// J*ln(2)/ln(10) digits in the worst corner, ~59 digits at 2J = 400), so every
// sum runs in multiprecision floats and is rounded to double once at the end.
// `digits` selects the starting working precision; when the observed
// cancellation eats to within ~16 digits of it, the evaluation transparently
// retries at double the precision (up to 400 digits).
//
// digits = 0 means "use default_precision()", which is 50 unless the
// RECOUPLING_PRECISION environment variable overrides it.
int default_precision();

// Supported starting levels; requests are rounded up to the next level.
inline constexpr int kPrecisionLevels[] = {30, 50, 100, 200, 400};

// d^J_{MM'}(beta): the real reduced rotation matrix element, evaluated from
// its finite alternating sum with log-factorial magnitudes and explicit sign
// tracking. |result| <= 1. Works for all beta in [0, pi] including the
// non-generic endpoints (the sum collapses there).
double wigner_small_d_exact(Spin j, HalfInt m, HalfInt mp, double beta, int digits = 0);

// D^J_{MM'}(g) = e^{-i alpha M} e^{-i gamma M'} d^J_{MM'}(beta).
std::complex<double> wigner_D_exact(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                    int digits = 0);

// chi^J(g) = sum_M D^J_{MM}(g). The imaginary part is a roundoff check: the
// character of a rotation is real.
std::complex<double> character_exact_sum(Spin j, const EulerRotation& g, int digits = 0);

// sin((J+1/2) theta) / sin(theta/2), with a 3-term series limit when
// |sin(theta/2)| < 1e-8 (covers both theta ~ 0 and theta ~ 2 pi).
double character_closed_form(Spin j, double theta);

// Wigner 3j symbol from the Racah single-sum form (Condon-Shortley sign).
// Selection-rule violations return 0 rather than throwing.
double threej_exact(Spin j1, Spin j2, Spin j3, HalfInt m1, HalfInt m2, HalfInt m3,
                    int digits = 0);

// (1/8pi^2) Int dalpha dgamma Int sin(beta) dbeta of
// D^{J1}_{M1 M1'} D^{J2}_{M2 M2'} D^{J3}_{M3 M3'}.
//
// `resolution` is the number of equally spaced alpha (and gamma) nodes and
// must be >= 4(J1+J2+J3) + 8; cos(beta) uses Gauss-Legendre with
// max(resolution/2, 2(J1+J2+J3) + 4) nodes. At these resolutions the
// quadrature is exact up to roundoff (the integrand is a trigonometric
// polynomial of known degree), and the result equals
// threej_exact(J,M) * threej_exact(J,M').
std::complex<double> haar_triple_integral(const std::array<Spin, 3>& j,
                                          const std::array<HalfInt, 3>& m,
                                          const std::array<HalfInt, 3>& mp, int resolution,
                                          int digits = 0);

// Smallest valid alpha/gamma resolution for the triple integral.
int haar_min_resolution(const std::array<Spin, 3>& j);

}  // namespace recoupling
