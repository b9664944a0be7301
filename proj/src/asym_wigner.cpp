#include "recoupling/asym_wigner.hpp"

#include <cmath>

#include "recoupling/errors.hpp"

namespace recoupling {
namespace {

using Complex = std::complex<double>;

constexpr double kArgZero = 1e-14;

// w * Log(w) with the limit 0 as w -> 0 (the coefficient vanishes with the
// argument everywhere this is used).
Complex wlogw(Complex w) {
  if (std::abs(w) < kArgZero) return 0.0;
  return w * std::log(w);
}

double half_j(Spin j) { return j.value(); }

ReducedParams reduced_for(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g) {
  require_magnetic(j, m, mp);
  if (j.twice == 0) throw DomainError("asymptotics need J > 0");
  if (!g.generic()) throw NonGeneric("asymptotics need 0 < xi^2 < 1");
  const double jv = half_j(j);
  return ReducedParams(m.value() / jv, mp.value() / jv, g.xi2());
}

}  // namespace

double discriminant(double x, double y, double xi2) {
  if (!(xi2 > 0.0 && xi2 < 1.0)) throw NonGeneric("discriminant: xi^2 must lie in (0,1)");
  return (1.0 - xi2) * (xi2 - x * y) - 0.25 * (x - y) * (x - y);
}

ReducedParams::ReducedParams(double x_, double y_, double xi2_) : x(x_), y(y_), xi2(xi2_) {
  if (!(xi2 > 0.0 && xi2 < 1.0)) throw NonGeneric("ReducedParams: xi^2 must lie in (0,1)");
  if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0))
    throw DomainError("ReducedParams: |x| and |y| must be < 1");
  delta = discriminant(x, y, xi2);
}

const char* region_name(Region r) {
  switch (r) {
    case Region::Oscillatory: return "oscillatory";
    case Region::Suppressed: return "suppressed";
    default: return "transition";
  }
}

RegionClass classify_region(Spin j, const ReducedParams& p, double kappa) {
  if (j.twice == 0) throw DomainError("classify_region: J must be positive");
  if (!(kappa > 0.0)) throw DomainError("classify_region: kappa must be positive");
  const double band = kappa * std::pow(half_j(j), -2.0 / 3.0);
  Region r = Region::Transition;
  if (p.delta > band) r = Region::Oscillatory;
  else if (p.delta < -band) r = Region::Suppressed;
  return {r, band};
}

std::pair<Complex, Complex> saddle_points(const ReducedParams& p) {
  const double base = (1.0 - p.xi2) + 0.5 * (p.x - p.y);
  if (p.delta >= 0.0) {
    const double s = std::sqrt(p.delta);
    return {Complex(base, s), Complex(base, -s)};
  }
  const double s = std::sqrt(-p.delta);
  return {Complex(base + s, 0.0), Complex(base - s, 0.0)};
}

Complex action_f(const ReducedParams& p, Complex u, double alpha, double gamma) {
  if (u.imag() < 0.0) {
    // Schwarz reflection keeps f purely imaginary at both complex saddles;
    // the alpha/gamma phase is restored explicitly.
    Complex base = std::conj(action_f(p, std::conj(u), 0.0, 0.0));
    return base + Complex(0.0, -(alpha * p.x + gamma * p.y));
  }
  const double x = p.x, y = p.y;
  const double lxi = 0.5 * std::log(p.xi2);
  const double leta = 0.5 * std::log1p(-p.xi2);
  Complex f(0.0, -(alpha * x + gamma * y));
  f += Complex(0.0, M_PI) * u;
  f += (2.0 + x - y - 2.0 * u) * lxi + (2.0 * u - x + y) * leta;
  f += 0.5 * ((1.0 - x) * std::log(1.0 - x) + (1.0 + x) * std::log(1.0 + x) +
              (1.0 - y) * std::log(1.0 - y) + (1.0 + y) * std::log(1.0 + y));
  f -= wlogw(1.0 + x - u) + wlogw(1.0 - y - u) + wlogw(u) + wlogw(u - x + y);
  return f;
}

Complex action_f_du(const ReducedParams& p, Complex u) {
  if (u.imag() < 0.0) return std::conj(action_f_du(p, std::conj(u)));
  const Complex w1 = 1.0 + p.x - u;
  const Complex w2 = 1.0 - p.y - u;
  const Complex w3 = u;
  const Complex w4 = u - p.x + p.y;
  for (const Complex& w : {w1, w2, w3, w4})
    if (std::abs(w) < kArgZero) throw BranchPoint("action_f_du: logarithm branch point");
  return Complex(0.0, M_PI) - std::log(p.xi2) + std::log1p(-p.xi2) + std::log(w1) +
         std::log(w2) - std::log(w3) - std::log(w4);
}

Complex action_f_neg_d2u(const ReducedParams& p, Complex u) {
  return 1.0 / (1.0 + p.x - u) + 1.0 / (1.0 - p.y - u) + 1.0 / u + 1.0 / (u - p.x + p.y);
}

Complex action_f_d3u(const ReducedParams& p, Complex u) {
  const Complex w1 = 1.0 + p.x - u;
  const Complex w2 = 1.0 - p.y - u;
  return -(1.0 / (w1 * w1) + 1.0 / (w2 * w2) - 1.0 / (u * u) -
           1.0 / ((u - p.x + p.y) * (u - p.x + p.y)));
}

Complex action_prefactor_K(const ReducedParams& p, Complex u) {
  const double num = std::sqrt((1.0 - p.x * p.x) * (1.0 - p.y * p.y));
  return num / (u * (1.0 + p.x - u) * (1.0 - p.y - u) * (u - p.x + p.y));
}

OscAngles angles_oscillatory(const ReducedParams& p) {
  if (p.delta < 0.0) throw NotOscillatory("angles_oscillatory: Delta < 0");
  const double s = std::sqrt(p.delta);
  OscAngles a;
  a.phi = std::atan2(2.0 * s, 2.0 * p.xi2 - 1.0 - p.x * p.y);
  a.psi = std::atan2(s, 0.5 * (p.x + p.y) - p.x * p.xi2);
  a.omega = std::atan2(s, -0.5 * (p.x + p.y) + p.y * p.xi2);
  return a;
}

SuppressedAngles angles_suppressed(const ReducedParams& p) {
  if (p.delta >= 0.0) throw NotSuppressed("angles_suppressed: Delta >= 0");
  const double s = std::sqrt(-p.delta);
  const double x = p.x, y = p.y, xi2 = p.xi2;
  const double nphi = 2.0 * xi2 - 1.0 - x * y + 2.0 * s;
  const double npsi = 0.5 * (x + y) - x * xi2 + s;
  const double nom = -0.5 * (x + y) + y * xi2 + s;
  for (double n : {nphi, npsi, nom})
    if (std::abs(n) < kArgZero) throw LogDomain("angles_suppressed: log argument vanished");
  SuppressedAngles a;
  a.Phi = std::log(std::abs(nphi)) - 0.5 * std::log((1.0 - x * x) * (1.0 - y * y));
  a.Psi = std::log(std::abs(npsi)) - 0.5 * std::log(xi2 * (1.0 - xi2) * (1.0 - x * x));
  a.Omega = std::log(std::abs(nom)) - 0.5 * std::log(xi2 * (1.0 - xi2) * (1.0 - y * y));
  a.domain_ok = nphi > 0.0 && npsi > 0.0 && nom > 0.0;
  return a;
}

EmReliability em_reliability(double x, double xi2) {
  if (!(x > 0.0 && x < 1.0 && xi2 > 0.0 && xi2 < 1.0))
    throw DomainError("em_reliability: needs 0 < x < 1 and 0 < xi^2 < 1");
  const double e = x * std::log(xi2) + (1.0 - x) * std::log1p(-xi2) +
                   (1.0 + x) * std::log1p(x) - (1.0 - x) * std::log1p(-x) -
                   2.0 * x * std::log(2.0 * x);
  return {e, e < 0.0};
}

double em_boundary_max_x(double xi2) {
  if (!(xi2 > 0.0 && xi2 < 1.0)) throw DomainError("em_boundary_max_x: xi^2 in (0,1)");
  const double xi = std::sqrt(xi2);
  return xi / std::sqrt(4.0 - 3.0 * xi2);
}

double em_boundary_max_value(double xi2) {
  if (!(xi2 > 0.0 && xi2 < 1.0)) throw DomainError("em_boundary_max_value: xi^2 in (0,1)");
  const double xi = std::sqrt(xi2);
  const double r = xi + std::sqrt(4.0 - 3.0 * xi2);
  return std::log(r * r / 4.0);
}

bool em_reliable_pair(double x, double y, double xi2) {
  auto one = [xi2](double t) {
    t = std::abs(t);
    if (t < 1e-9) return true;             // exponent -> ln(1 - xi^2) < 0
    if (t > 1.0 - 1e-12) return xi2 < 1.0; // exponent -> ln xi^2 < 0
    return em_reliability(t, xi2).reliable;
  };
  return one(x) && one(y);
}

WignerEstimate wigner_asym_oscillatory(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                       double kappa) {
  const ReducedParams p = reduced_for(j, m, mp, g);
  const RegionClass rc = classify_region(j, p, kappa);
  if (rc.region != Region::Oscillatory)
    throw WrongRegion("wigner_asym_oscillatory: point not in the oscillatory region");
  const double jv = half_j(j);
  const OscAngles a = angles_oscillatory(p);
  const double amp = 1.0 / std::sqrt(M_PI * jv * std::sqrt(p.delta));
  const double phase =
      (jv + 0.5) * a.phi + m.value() * a.psi - mp.value() * a.omega - 0.25 * M_PI;
  WignerEstimate e;
  e.value = std::polar(1.0, -(g.alpha * m.value() + g.gamma * mp.value())) * (amp * std::cos(phase));
  e.region = rc;
  e.amplitude = amp;
  e.phase = phase;
  e.decay_exponent = 0.0;
  e.em_reliable = em_reliable_pair(p.x, p.y, p.xi2);
  return e;
}

WignerEstimate wigner_asym_suppressed(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                      double kappa) {
  const ReducedParams p = reduced_for(j, m, mp, g);
  const RegionClass rc = classify_region(j, p, kappa);
  if (rc.region != Region::Suppressed)
    throw WrongRegion("wigner_asym_suppressed: point not in the suppressed region");
  const double jv = half_j(j);
  const SuppressedAngles a = angles_suppressed(p);
  const double xi_exp = a.Phi + p.x * a.Psi - p.y * a.Omega;
  const double dprime = -p.delta;
  const double pref = 1.0 / std::sqrt(2.0 * M_PI * jv) / std::sqrt(2.0 * std::sqrt(dprime));
  const double mag = pref * std::exp(-0.5 * a.Phi) * std::exp(-jv * xi_exp);
  WignerEstimate e;
  e.value = -std::polar(1.0, -(g.alpha * m.value() + g.gamma * mp.value())) * mag;
  e.region = rc;
  e.amplitude = std::abs(mag);
  e.phase = 0.0;
  e.decay_exponent = xi_exp;
  e.em_reliable = em_reliable_pair(p.x, p.y, p.xi2);
  return e;
}

WignerEstimate wigner_asym_transition(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                      double kappa) {
  const ReducedParams p = reduced_for(j, m, mp, g);
  const RegionClass rc = classify_region(j, p, kappa);
  if (rc.region != Region::Transition)
    throw WrongRegion("wigner_asym_transition: point not in the transition band");
  const double jv = half_j(j);
  const double u0 = (1.0 - p.xi2) + 0.5 * (p.x - p.y);
  for (double w : {u0, 1.0 + p.x - u0, 1.0 - p.y - u0, u0 - p.x + p.y})
    if (std::abs(w) < kArgZero)
      throw BranchPoint("wigner_asym_transition: cubic saddle sits on a log singularity");
  const Complex f0 = action_f(p, u0, g.alpha, g.gamma);
  const Complex k0 = action_prefactor_K(p, u0);
  const double f3 = std::abs(action_f_d3u(p, u0));
  const Complex value = std::sqrt(k0) * std::exp(jv * f0) * airy_at_zero() *
                        std::cbrt(2.0 / (jv * f3));
  WignerEstimate e;
  e.value = value;
  e.region = rc;
  e.amplitude = std::abs(value);
  e.phase = 0.0;
  e.decay_exponent = 0.0;
  e.em_reliable = em_reliable_pair(p.x, p.y, p.xi2);
  return e;
}

WignerEstimate wigner_asym(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g, double kappa) {
  const ReducedParams p = reduced_for(j, m, mp, g);
  switch (classify_region(j, p, kappa).region) {
    case Region::Oscillatory: return wigner_asym_oscillatory(j, m, mp, g, kappa);
    case Region::Suppressed: return wigner_asym_suppressed(j, m, mp, g, kappa);
    default: return wigner_asym_transition(j, m, mp, g, kappa);
  }
}

double airy_at_zero() { return std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0); }

}  // namespace recoupling
