#pragma once

#include <array>
#include <utility>

#include "recoupling/spin.hpp"
#include "recoupling/vec3.hpp"

namespace recoupling {

// Classical angular momentum vectors of a 3j symbol: three vectors of lengths
// J_i closing to zero, with projections n . J_i = M_i on the quantization
// axis n = (0,0,1). S = J_1 x J_2 is twice the oriented triangle area; the
// embedding is chosen with n . S >= 0.
struct MomentumTriangle {
  std::array<Vec3, 3> J;
  Vec3 n;
  Vec3 S;
  bool degenerate;  // n . S == 0: vectors coplanar with the axis (caustic)
};

// Vector length convention: the classical vectors carry |J_i| = J_i by
// default; the J_i + 1/2 alternative is kept switchable for error studies
// (it changes the geometry, not the (J_i + 1/2) weights in the phase).
enum class LengthConvention { SpinLength, SpinLengthPlusHalf };

// Builds the triangle from quantum numbers. Throws SelectionRule when
// Sum(M) != 0, the J-triangle fails, or some |M_i| > J_i; throws
// ClassicallyForbidden when the perpendicular components sqrt(|J_i|^2 - M_i^2)
// cannot close a planar triangle.
MomentumTriangle triangle_from_quantum(const std::array<Spin, 3>& j,
                                       const std::array<HalfInt, 3>& m,
                                       LengthConvention lengths = LengthConvention::SpinLength);

// S = J1 x J2, cross-checked against J2 x J3 and J3 x J1.
Vec3 area_vector(const MomentumTriangle& t);

// The five phase angles of the vector-geometric estimate with respect to an
// axis a:
//   Phi^i_a  = arg[ a.(J_i x S) + i |J_i| (a.S) ]      (unit modulus after
//              division by S sqrt((a x J_i)^2))
//   Psi^j3_a = arg[ (a x J_j).(a x J_3) + i a.(J_3 x J_j) ],  j = 1, 2.
struct ThreeJAngles {
  std::array<double, 3> Phi;
  double Psi13;
  double Psi23;
};

ThreeJAngles threej_angles(const MomentumTriangle& t);                 // axis t.n
ThreeJAngles threej_angles_axis(const MomentumTriangle& t, Vec3 axis); // arbitrary axis

// Second quantization axis k for a congruent pair: the unit vector with
// k . J_i = M'_i in the frame of `tn`, oriented with k . S >= 0. This is the
// image of tk's axis under the (proper) rotation overlapping the congruent
// triangles. Throws DomainError when |J_i| differ.
Vec3 pair_axis(const MomentumTriangle& tn, const MomentumTriangle& tk);

// The two stationary values of xi^2 for the pair integral:
//   xi2+ = (1 + n.k)/2,   xi2- = (1 + n.k)/2 - (n.S)(k.S)/S^2.
std::pair<double, double> xi_saddles(const MomentumTriangle& tn, const MomentumTriangle& tk);

// Parity factor (-1)^{J1+J2-J3+1} reconciling the five-angle cosine form with
// the Condon-Shortley sign of the Racah evaluation. Measured against the
// exact symbol: the offset is independent of the M_i for a fixed spin triple
// and makes the estimate exactly invariant under cyclic column permutation.
int threej_sign_convention(const std::array<Spin, 3>& j);

// Phase sum Omega_a = sum_i (J_i + 1/2) Phi^i_a + (a.J_1) Psi13 + (a.J_2) Psi23.
double threej_phase_sum(const std::array<Spin, 3>& j, const MomentumTriangle& t, Vec3 axis);

// Vector-geometric large-J estimate of the 3j symbol:
//   sign * (pi n.S)^{-1/2} cos[Omega_n + pi/4].
double threej_asym(const std::array<Spin, 3>& j, const std::array<HalfInt, 3>& m,
                   LengthConvention lengths = LengthConvention::SpinLength);

enum class PairMode { Quadrature, Asymptotic };

// Cross-check of the group-integral identity for a pair (M, M'):
//   lhs = haar_triple_integral (Quadrature mode, small J) or the product
//         estimate cos(Omega_n + pi/4) cos(Omega_k + pi/4) /
//         (pi sqrt((n.S)(k.S))) (Asymptotic mode, large J);
//   rhs = threej_exact(J, M) * threej_exact(J, M').
struct PairCheck {
  double lhs;
  double rhs;
};
PairCheck threej_pair_check(const std::array<Spin, 3>& j, const std::array<HalfInt, 3>& m,
                            const std::array<HalfInt, 3>& mp, PairMode mode, int resolution = 0);

}  // namespace recoupling
