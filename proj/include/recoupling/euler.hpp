#pragma once

#include <cmath>

#include "recoupling/errors.hpp"

namespace recoupling {

// Rotation in z-y-z Euler angles. beta is restricted to [0, pi]; alpha and
// gamma are free. xi = cos(beta/2) and eta = sin(beta/2) are cached because
// every formula downstream is written in terms of them.
struct EulerRotation {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double xi = 1.0;
  double eta = 0.0;

  EulerRotation() = default;
  EulerRotation(double a, double b, double g) : alpha(a), beta(b), gamma(g) {
    if (!(b >= -1e-12 && b <= M_PI + 1e-12))
      throw DomainError("EulerRotation: beta must lie in [0, pi]");
    if (b < 0.0) b = 0.0;
    if (b > M_PI) b = M_PI;
    beta = b;
    // Snap the two representable endpoints so generic() is exact there.
    if (b == 0.0) {
      xi = 1.0;
      eta = 0.0;
    } else if (b == M_PI) {
      xi = 0.0;
      eta = 1.0;
    } else {
      xi = std::cos(0.5 * b);
      eta = std::sin(0.5 * b);
    }
  }

  double xi2() const { return xi * xi; }

  // A matrix element is generic when 0 < xi^2 < 1, i.e. beta not a multiple
  // of pi. Non-generic rotations are handled by the exact evaluators only.
  bool generic() const {
    const double x2 = xi2();
    return x2 > 0.0 && x2 < 1.0;
  }
};

}  // namespace recoupling
