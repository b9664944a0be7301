#pragma once

#include <complex>
#include <utility>

#include "recoupling/euler.hpp"
#include "recoupling/spin.hpp"

namespace recoupling {

// Delta = (1 - xi^2)(xi^2 - x y) - (x - y)^2 / 4. Its sign separates the
// oscillatory (Delta > 0), suppressed (Delta < 0) and Airy transition regimes.
double discriminant(double x, double y, double xi2);

// Reduced parameters of a matrix element: x = M/J, y = M'/J, xi^2 = cos^2(beta/2).
struct ReducedParams {
  double x;
  double y;
  double xi2;
  double delta;

  // Throws NonGeneric when xi2 is not strictly inside (0,1), DomainError when
  // |x| or |y| reaches 1.
  ReducedParams(double x_, double y_, double xi2_);
};

enum class Region { Oscillatory, Suppressed, Transition };

struct RegionClass {
  Region region;
  double band;  // kappa * J^{-2/3}
};

const char* region_name(Region r);

// Oscillatory if Delta > band, Suppressed if Delta < -band, else Transition,
// with band = kappa * J^{-2/3} (the Airy width of a cubic saddle).
RegionClass classify_region(Spin j, const ReducedParams& p, double kappa = 1.0);

// Roots of u^2 - u [2(1-xi^2) + x - y] + (1-xi^2)(1+x)(1-y) = 0.
// Returned as (u+, u-): a conjugate pair (Im u+ = +sqrt(Delta)) when
// Delta >= 0, the two real roots (u+ >= u-) when Delta < 0.
std::pair<std::complex<double>, std::complex<double>> saddle_points(const ReducedParams& p);

// The exponent f(x, y, u) of the integral representation of D^J_{xJ,yJ}.
//
// Branch policy: principal logarithms for Im u >= 0; for Im u < 0 the value
// is Schwarz-reflected (f(conj u) = conj f(u), with the explicit
// -i alpha x - i gamma y phase kept fixed) so that f is purely imaginary at
// both complex saddles. Terms of the form w log(w) take their limit 0 when
// the coefficient vanishes with the argument; BranchPoint is thrown only when
// a log argument vanishes under a non-vanishing coefficient.
std::complex<double> action_f(const ReducedParams& p, std::complex<double> u, double alpha = 0.0,
                              double gamma = 0.0);

// d f / d u (same branch policy).
std::complex<double> action_f_du(const ReducedParams& p, std::complex<double> u);

// -d^2 f / d u^2 = 1/(1+x-u) + 1/(1-y-u) + 1/u + 1/(u-x+y).
std::complex<double> action_f_neg_d2u(const ReducedParams& p, std::complex<double> u);

// d^3 f / d u^3 (obtained by differentiating the expression above once).
std::complex<double> action_f_d3u(const ReducedParams& p, std::complex<double> u);

// The integrand prefactor K(x, y, u).
std::complex<double> action_prefactor_K(const ReducedParams& p, std::complex<double> u);

// The three phase angles of the oscillatory estimate, each computed as the
// principal argument of an explicitly constructed complex number (never by
// summing logarithms, which would drift by 2 pi). All lie in [0, pi] because
// the imaginary parts carry +sqrt(Delta). Requires Delta >= 0
// (NotOscillatory otherwise).
struct OscAngles {
  double phi;
  double psi;
  double omega;
};
OscAngles angles_oscillatory(const ReducedParams& p);

// Real counterparts for Delta < 0, taken as the real parts of the principal
// complex logs, i.e. ln(|numerator| / denominator). `domain_ok` reports
// whether all three numerators were positive (the regime in which the
// suppressed estimate is meaningful); non-positive numerators are reported
// through the flag rather than clamped. A numerator that vanishes outright
// throws LogDomain.
struct SuppressedAngles {
  double Phi;
  double Psi;
  double Omega;
  bool domain_ok;
};
SuppressedAngles angles_suppressed(const ReducedParams& p);

// Boundary diagnostic for the Euler-Maclaurin sum-to-integral step, diagonal
// case: Re f(x, x, 1-x) = x ln xi^2 + (1-x) ln(1-xi^2) + (1+x) ln(1+x)
// - (1-x) ln(1-x) - 2x ln(2x), the exponent governing the upper-endpoint
// terms. They are exponentially suppressed iff it is negative.
// Domain: 0 < x < 1, 0 < xi2 < 1.
struct EmReliability {
  double boundary_exponent;
  bool reliable;
};
EmReliability em_reliability(double x, double xi2);

// Location and value of the maximum of the boundary exponent over x.
double em_boundary_max_x(double xi2);
double em_boundary_max_value(double xi2);

// Conservative diagonal proxy for general (x, y): reliable iff the diagonal
// exponent is negative at both |x| and |y| (limits taken at 0 and 1).
bool em_reliable_pair(double x, double y, double xi2);

struct WignerEstimate {
  std::complex<double> value;
  RegionClass region;
  double amplitude;        // envelope prefactor, >= 0
  double phase;            // cosine argument (oscillatory region only)
  double decay_exponent;   // Xi = Phi + x Psi - y Omega (suppressed region only)
  bool em_reliable;
};

// Large-J estimate of D^J_{MM'}(g) in the oscillatory region:
//   e^{-i alpha M - i gamma M'} (pi J sqrt(Delta))^{-1/2}
//     * cos[(J + 1/2) phi + M psi - M' omega - pi/4].
WignerEstimate wigner_asym_oscillatory(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                       double kappa = 1.0);

// Suppressed-region estimate:
//   -(2 pi J)^{-1/2} (2 sqrt(Delta'))^{-1/2} e^{-i alpha M - i gamma M'}
//     e^{-Phi/2} e^{-J Xi},  Xi = Phi + x Psi - y Omega.
WignerEstimate wigner_asym_suppressed(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                      double kappa = 1.0);

// Transition (caustic) estimate from the cubic saddle at
// u0 = 1 - xi^2 + (x-y)/2:
//   sqrt(K(u0)) e^{J f(u0)} Ai(0) (2 / (J |f'''(u0)|))^{1/3},
// whose magnitude scales as J^{-1/3}.
WignerEstimate wigner_asym_transition(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                      double kappa = 1.0);

// Region dispatch.
WignerEstimate wigner_asym(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                           double kappa = 1.0);

// Ai(0) = 3^{-2/3} / Gamma(2/3).
double airy_at_zero();

}  // namespace recoupling
