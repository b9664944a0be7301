#include "recoupling/asym_character.hpp"

#include <algorithm>
#include <cmath>

#include "recoupling/errors.hpp"
#include "recoupling/exact.hpp"

namespace recoupling {

ClassAngle theta_of_euler(const EulerRotation& g) {
  double c = g.xi * std::cos(0.5 * (g.alpha + g.gamma));
  c = std::min(1.0, std::max(-1.0, c));
  return {2.0 * std::acos(c)};
}

double character_asym(Spin j, const EulerRotation& g) {
  return character_closed_form(j, theta_of_euler(g).theta);
}

std::pair<double, double> char_saddles(const EulerRotation& g) {
  if (!g.generic()) throw NonGeneric("char_saddles: rotation not generic");
  const double theta = theta_of_euler(g).theta;
  const double s = std::sin(0.5 * theta);
  if (s < 1e-12) throw Degenerate("char_saddles: sin(theta/2) ~ 0");
  const double x1 = -g.xi * std::sin(0.5 * (g.alpha + g.gamma)) / s;
  return {x1, -x1};
}

}  // namespace recoupling
