#pragma once

#include <utility>

#include "recoupling/euler.hpp"
#include "recoupling/spin.hpp"

namespace recoupling {

// Rotation class angle theta, defined through
// cos(theta/2) = cos(beta/2) cos((alpha+gamma)/2). This is the classical
// relation between the Euler parameterization and the (theta, axis) one.
struct ClassAngle {
  double theta;  // in [0, 2 pi]
};

ClassAngle theta_of_euler(const EulerRotation& g);

// Large-J character estimate sin((J+1/2) theta)/sin(theta/2). It agrees with
// character_exact_sum to roundoff for every J: the stationary-phase value is
// exact for the character. No endpoint corrections are applied: the x = +-1
// boundary terms of the sum-to-integral step ride on the corner elements
// xi^{2J} e^{-+ i(alpha+gamma)J} and are exponentially small; the
// localization tests would expose any omission.
double character_asym(Spin j, const EulerRotation& g);

// The two stationary points x1 = -xi sin((alpha+gamma)/2)/sin(theta/2) and
// x2 = -x1 of the diagonal phase; both lie in (-1, 1). Throws Degenerate when
// sin(theta/2) < 1e-12 and NonGeneric for beta a multiple of pi.
std::pair<double, double> char_saddles(const EulerRotation& g);

}  // namespace recoupling
