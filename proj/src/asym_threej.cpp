#include "recoupling/asym_threej.hpp"

#include <algorithm>
#include <cmath>

#include "recoupling/errors.hpp"
#include "recoupling/exact.hpp"

namespace recoupling {
namespace {

double spin_len(Spin j) { return j.value(); }

void check_selection(const std::array<Spin, 3>& j, const std::array<HalfInt, 3>& m) {
  if (m[0].twice + m[1].twice + m[2].twice != 0)
    throw SelectionRule("momentum triangle: Sum(M) != 0");
  if (!triangle_valid(j[0], j[1], j[2]))
    throw SelectionRule("momentum triangle: spin triangle inequality fails");
  for (std::size_t i = 0; i < 3; ++i)
    if (!magnetic_valid(j[i], m[i]))
      throw SelectionRule("momentum triangle: |M_i| > J_i or parity mismatch");
}

}  // namespace

MomentumTriangle triangle_from_quantum(const std::array<Spin, 3>& j,
                                       const std::array<HalfInt, 3>& m,
                                       LengthConvention lengths) {
  check_selection(j, m);
  const double shift = lengths == LengthConvention::SpinLengthPlusHalf ? 1.0 : 0.0;
  double p[3];
  for (std::size_t i = 0; i < 3; ++i) {
    // sqrt(|J|^2 - M^2) from exact twice-integers
    const double twol = j[i].twice + shift;
    const double t = 0.25 * (twol - m[i].twice) * (twol + m[i].twice);
    p[i] = std::sqrt(std::max(0.0, t));
  }

  const Vec3 n{0.0, 0.0, 1.0};
  MomentumTriangle t;
  t.n = n;

  // A nonzero perpendicular component is >= 1/2 for any valid (J, M), so an
  // absolute threshold separates M = +-J cleanly.
  constexpr double kZero = 1e-12;
  Vec3 q1, q2;
  if (p[0] < kZero || p[1] < kZero) {
    // Collinear closure: the in-plane components lie on a line.
    const double tol = 1e-9 * (1.0 + p[0] + p[1] + p[2]);
    double s;
    if (std::abs(p[2] - (p[0] + p[1])) <= tol) s = 1.0;
    else if (std::abs(p[2] - std::abs(p[0] - p[1])) <= tol) s = -1.0;
    else throw ClassicallyForbidden("perpendicular components cannot close");
    q1 = {p[0], 0.0, 0.0};
    q2 = {s * p[1], 0.0, 0.0};
  } else {
    double c12 = (p[2] * p[2] - p[0] * p[0] - p[1] * p[1]) / (2.0 * p[0] * p[1]);
    if (std::abs(c12) > 1.0 + 1e-9)
      throw ClassicallyForbidden("perpendicular components violate the triangle inequality");
    c12 = std::min(1.0, std::max(-1.0, c12));
    const double s12 = std::sqrt(std::max(0.0, 1.0 - c12 * c12));  // orientation: n.S >= 0
    q1 = {p[0], 0.0, 0.0};
    q2 = {p[1] * c12, p[1] * s12, 0.0};
  }
  const Vec3 q3 = -(q1 + q2);

  t.J[0] = q1 + Vec3{0.0, 0.0, m[0].value()};
  t.J[1] = q2 + Vec3{0.0, 0.0, m[1].value()};
  t.J[2] = q3 + Vec3{0.0, 0.0, m[2].value()};
  t.S = cross(t.J[0], t.J[1]);
  const double j_scale = std::max(1.0, spin_len(j[0]) * spin_len(j[1]));
  t.degenerate = dot(n, t.S) <= 1e-12 * j_scale;
  return t;
}

Vec3 area_vector(const MomentumTriangle& t) { return cross(t.J[0], t.J[1]); }

ThreeJAngles threej_angles_axis(const MomentumTriangle& t, Vec3 axis) {
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3 w = cross(axis, t.J[i]);
    const double ji = norm(t.J[i]);
    if (dot(w, w) < 1e-14 * std::max(1.0, ji * ji))
      throw DegenerateAxis("threej_angles: J_i parallel to the axis");
  }
  const double aS = dot(axis, t.S);
  if (t.degenerate || aS <= 0.0)
    throw ClassicallyForbidden("threej_angles: axis projection of the area vanished");
  ThreeJAngles out;
  for (std::size_t i = 0; i < 3; ++i) {
    const double ji = norm(t.J[i]);
    out.Phi[i] = std::atan2(ji * aS, dot(axis, cross(t.J[i], t.S)));
  }
  for (int jdx = 0; jdx < 2; ++jdx) {
    const Vec3& Jj = t.J[static_cast<std::size_t>(jdx)];
    const double re = dot(cross(axis, Jj), cross(axis, t.J[2]));
    const double im = dot(axis, cross(t.J[2], Jj));
    const double psi = std::atan2(im, re);
    (jdx == 0 ? out.Psi13 : out.Psi23) = psi;
  }
  return out;
}

ThreeJAngles threej_angles(const MomentumTriangle& t) { return threej_angles_axis(t, t.n); }

Vec3 pair_axis(const MomentumTriangle& tn, const MomentumTriangle& tk) {
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = norm(tn.J[i]), b = norm(tk.J[i]);
    if (std::abs(a - b) > 1e-9 * (1.0 + a + b))
      throw DomainError("pair_axis: triangles are not congruent");
  }
  if (tn.degenerate) throw ClassicallyForbidden("pair_axis: degenerate triangle");
  // Solve k . J_i = M'_i in the frame of tn; the out-of-plane component is
  // fixed by |k| = 1 with k . S >= 0 (the proper-rotation image of tk's axis).
  const Vec3 e1 = normalized(tn.J[0]);
  Vec3 e2 = tn.J[1] - dot(tn.J[1], e1) * e1;
  e2 = normalized(e2);
  const Vec3 s_hat = normalized(tn.S);
  const double mp1 = dot(tk.n, tk.J[0]);
  const double mp2 = dot(tk.n, tk.J[1]);
  const double a = mp1 / norm(tn.J[0]);
  const double j2e1 = dot(tn.J[1], e1);
  const double j2e2 = dot(tn.J[1], e2);
  const double b = (mp2 - a * j2e1) / j2e2;
  double c2 = 1.0 - a * a - b * b;
  if (c2 < -1e-9) throw ClassicallyForbidden("pair_axis: no real common axis");
  const double c = std::sqrt(std::max(0.0, c2));
  return a * e1 + b * e2 + c * s_hat;
}

std::pair<double, double> xi_saddles(const MomentumTriangle& tn, const MomentumTriangle& tk) {
  const Vec3 k = pair_axis(tn, tk);
  const double nk = dot(tn.n, k);
  const double s2 = dot(tn.S, tn.S);
  const double plus = 0.5 * (1.0 + nk);
  const double minus = plus - dot(tn.n, tn.S) * dot(k, tn.S) / s2;
  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  return {clamp01(plus), clamp01(minus)};
}

int threej_sign_convention(const std::array<Spin, 3>& j) {
  const int a = (j[0].twice + j[1].twice - j[2].twice) / 2;  // J1 + J2 - J3
  return a % 2 == 0 ? -1 : 1;
}

double threej_phase_sum(const std::array<Spin, 3>& j, const MomentumTriangle& t, Vec3 axis) {
  const ThreeJAngles a = threej_angles_axis(t, axis);
  double omega = 0.0;
  for (std::size_t i = 0; i < 3; ++i) omega += (spin_len(j[i]) + 0.5) * a.Phi[i];
  omega += dot(axis, t.J[0]) * a.Psi13 + dot(axis, t.J[1]) * a.Psi23;
  return omega;
}

double threej_asym(const std::array<Spin, 3>& j, const std::array<HalfInt, 3>& m,
                   LengthConvention lengths) {
  const MomentumTriangle t = triangle_from_quantum(j, m, lengths);
  if (t.degenerate)
    throw ClassicallyForbidden("threej_asym: configuration on the classical boundary");
  const double ns = dot(t.n, t.S);
  const double omega = threej_phase_sum(j, t, t.n);
  return threej_sign_convention(j) * std::cos(omega + 0.25 * M_PI) / std::sqrt(M_PI * ns);
}

PairCheck threej_pair_check(const std::array<Spin, 3>& j, const std::array<HalfInt, 3>& m,
                            const std::array<HalfInt, 3>& mp, PairMode mode, int resolution) {
  PairCheck out{};
  out.rhs = threej_exact(j[0], j[1], j[2], m[0], m[1], m[2]) *
            threej_exact(j[0], j[1], j[2], mp[0], mp[1], mp[2]);
  if (mode == PairMode::Quadrature) {
    if (resolution <= 0) resolution = haar_min_resolution(j);
    out.lhs = haar_triple_integral(j, m, mp, resolution).real();
    return out;
  }
  const MomentumTriangle tn = triangle_from_quantum(j, m);
  const MomentumTriangle tk = triangle_from_quantum(j, mp);
  if (tn.degenerate || tk.degenerate)
    throw ClassicallyForbidden("threej_pair_check: configuration on the classical boundary");
  const Vec3 k = pair_axis(tn, tk);
  const double ns = dot(tn.n, tn.S);
  const double ks = dot(k, tn.S);
  if (ks <= 0.0) throw ClassicallyForbidden("threej_pair_check: k projection of area vanished");
  const double omega_n = threej_phase_sum(j, tn, tn.n);
  const double omega_k = threej_phase_sum(j, tn, k);
  out.lhs = std::cos(omega_n + 0.25 * M_PI) * std::cos(omega_k + 0.25 * M_PI) /
            (M_PI * std::sqrt(ns * ks));
  return out;
}

}  // namespace recoupling
