#include "recoupling/exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "recoupling/errors.hpp"

namespace recoupling {
namespace {

namespace bmp = boost::multiprecision;
template <unsigned Digits>
using BinFloat = bmp::number<bmp::cpp_bin_float<Digits>, bmp::et_off>;

using R30 = BinFloat<30>;
using R50 = BinFloat<50>;
using R100 = BinFloat<100>;
using R200 = BinFloat<200>;
using R400 = BinFloat<400>;

constexpr int kNumLevels = 5;

int level_index(int digits) {
  for (int i = 0; i < kNumLevels; ++i)
    if (digits <= kPrecisionLevels[i]) return i;
  return kNumLevels - 1;
}

// ln(n!) table, grown on demand. One table per precision level per thread.
// Returned by value: growing the table for a later argument of the same
// expression may reallocate it.
template <class Real>
Real ln_factorial(int n) {
  thread_local std::vector<Real> table{Real(0), Real(0)};
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() + log(Real(static_cast<unsigned>(table.size()))));
  return table[static_cast<std::size_t>(n)];
}

template <class Real>
struct SumResult {
  double value = 0.0;
  double cancellation_digits = 0.0;
};

// Decimal digits lost to cancellation, from the binary exponents of the
// largest term and of the sum (frexp is ~200x cheaper than log10 here).
template <class Real>
double cancellation_of(const Real& max_abs, const Real& sum) {
  if (sum == 0) return 1e9;
  long emax = 0, esum = 0;
  frexp(max_abs, &emax);
  frexp(abs(sum), &esum);
  return std::max(0.0, 0.30102999566398120 * static_cast<double>(emax - esum));
}

// Alternating sum of the reduced rotation matrix element. The first term is
// assembled from log-factorials; successive terms follow from the exact
// rational ratio term(t+1)/term(t), so the per-term cost is a few
// multiprecision multiplies.
template <class Real>
SumResult<Real> small_d_sum(int twoj, int twom, int twomp, double beta) {
  const int jm = (twoj + twom) / 2;
  const int jmm = (twoj - twom) / 2;
  const int jmp = (twoj + twomp) / 2;
  const int jmmp = (twoj - twomp) / 2;
  const int d = (twom - twomp) / 2;  // M - M'
  const int tmin = std::max(0, d);
  const int tmax = std::min(jm, jmmp);
  if (tmax < tmin) return {0.0, 0.0};

  const Real half_beta = Real(beta) / 2;
  const Real xi = cos(half_beta);
  const Real eta = sin(half_beta);

  // Endpoint rotations collapse the sum to at most one term.
  if (eta == 0) return {twom == twomp ? 1.0 : 0.0, 0.0};
  if (xi == 0) {
    if (twomp != -twom) return {0.0, 0.0};
    return {(jm % 2 == 0) ? 1.0 : -1.0, 0.0};
  }

  const int a0 = twoj + d - 2 * tmin;  // xi exponent at tmin
  const int b0 = 2 * tmin - d;         // eta exponent at tmin

  Real lg = (ln_factorial<Real>(jm) + ln_factorial<Real>(jmm) + ln_factorial<Real>(jmp) +
             ln_factorial<Real>(jmmp)) /
            2;
  lg -= ln_factorial<Real>(jm - tmin) + ln_factorial<Real>(jmmp - tmin) +
        ln_factorial<Real>(tmin) + ln_factorial<Real>(tmin - d);

  Real term = (lg == 0 ? Real(1) : Real(exp(lg))) * pow(xi, a0) * pow(eta, b0);
  if (tmin % 2 != 0) term = -term;

  const Real ratio0 = (eta * eta) / (xi * xi);
  Real sum = term;
  Real max_abs = abs(term);
  for (int t = tmin + 1; t <= tmax; ++t) {
    const std::int64_t num =
        static_cast<std::int64_t>(jm - t + 1) * static_cast<std::int64_t>(jmmp - t + 1);
    const std::int64_t den = static_cast<std::int64_t>(t) * static_cast<std::int64_t>(t - d);
    term *= ratio0;
    term *= Real(-num);
    term /= Real(den);
    sum += term;
    Real a = abs(term);
    if (a > max_abs) max_abs = a;
  }

  return {static_cast<double>(sum), cancellation_of(max_abs, sum)};
}

// Whole-character kernel: shares the half-angle values and the term ratio
// across all diagonal elements, which matters because the localization test
// runs ~10^6 of these.
template <class Real>
struct CharResult {
  double re = 0.0, im = 0.0;
  double cancellation_digits = 0.0;
};

template <class Real>
CharResult<Real> character_sum(int twoj, double alpha_plus_gamma, double beta) {
  const Real half_beta = Real(beta) / 2;
  const Real xi = cos(half_beta);
  const Real eta = sin(half_beta);
  if (eta == 0) return {twoj + 1.0, 0.0, 0.0};
  if (xi == 0) {
    // Only d^J_{M,-M} survives; the diagonal keeps just M = 0 (integer J).
    if (twoj % 2 != 0) return {0.0, 0.0, 0.0};
    return {(twoj / 2) % 2 == 0 ? 1.0 : -1.0, 0.0, 0.0};
  }
  const Real ratio0 = (eta * eta) / (xi * xi);
  std::complex<double> acc = 0.0;
  double worst = 0.0;
  for (int twom = -twoj; twom <= twoj; twom += 2) {
    const int jm = (twoj + twom) / 2;
    const int jmm = (twoj - twom) / 2;
    const int tmax = std::min(jm, jmm);
    Real term = pow(xi, twoj);  // first term of the diagonal sum (t = 0)
    Real sum = term;
    Real max_abs = abs(term);
    for (int t = 1; t <= tmax; ++t) {
      const std::int64_t num =
          static_cast<std::int64_t>(jm - t + 1) * static_cast<std::int64_t>(jmm - t + 1);
      const std::int64_t den = static_cast<std::int64_t>(t) * static_cast<std::int64_t>(t);
      term *= ratio0;
      term *= Real(-num);
      term /= Real(den);
      sum += term;
      Real a = abs(term);
      if (a > max_abs) max_abs = a;
    }
    worst = std::max(worst, cancellation_of(max_abs, sum));
    const double phase = -0.5 * twom * alpha_plus_gamma;
    acc += std::polar(1.0, phase) * static_cast<double>(sum);
  }
  return {acc.real(), acc.imag(), worst};
}

// Racah single-sum 3j with the Condon-Shortley sign. All selection rules are
// checked by the caller; arguments here are twice-values of a valid symbol.
template <class Real>
SumResult<Real> racah_sum(int twoj1, int twoj2, int twoj3, int twom1, int twom2, int twom3) {
  const int a1 = (twoj1 + twoj2 - twoj3) / 2;
  const int a2 = (twoj1 - twoj2 + twoj3) / 2;
  const int a3 = (-twoj1 + twoj2 + twoj3) / 2;
  const int tot = (twoj1 + twoj2 + twoj3) / 2 + 1;

  const int jmm1 = (twoj1 - twom1) / 2;  // j1 - m1
  const int jm2 = (twoj2 + twom2) / 2;   // j2 + m2
  const int b1 = (twoj3 - twoj2 + twom1) / 2;
  const int b2 = (twoj3 - twoj1 - twom2) / 2;

  const int tmin = std::max({0, -b1, -b2});
  const int tmax = std::min({a1, jmm1, jm2});
  if (tmax < tmin) return {0.0, 0.0};

  Real lg = (ln_factorial<Real>(a1) + ln_factorial<Real>(a2) + ln_factorial<Real>(a3) -
             ln_factorial<Real>(tot)) /
            2;
  lg += (ln_factorial<Real>((twoj1 + twom1) / 2) + ln_factorial<Real>(jmm1) +
         ln_factorial<Real>(jm2) + ln_factorial<Real>((twoj2 - twom2) / 2) +
         ln_factorial<Real>((twoj3 + twom3) / 2) + ln_factorial<Real>((twoj3 - twom3) / 2)) /
        2;
  lg -= ln_factorial<Real>(tmin) + ln_factorial<Real>(a1 - tmin) +
        ln_factorial<Real>(jmm1 - tmin) + ln_factorial<Real>(jm2 - tmin) +
        ln_factorial<Real>(b1 + tmin) + ln_factorial<Real>(b2 + tmin);

  Real term = exp(lg);
  const int sign_exp = (twoj1 - twoj2 - twom3) / 2 + tmin;
  if (((sign_exp % 2) + 2) % 2 != 0) term = -term;

  Real sum = term;
  Real max_abs = abs(term);
  for (int t = tmin + 1; t <= tmax; ++t) {
    const std::int64_t num = static_cast<std::int64_t>(a1 - t + 1) *
                             static_cast<std::int64_t>(jmm1 - t + 1) *
                             static_cast<std::int64_t>(jm2 - t + 1);
    const std::int64_t den = static_cast<std::int64_t>(t) *
                             static_cast<std::int64_t>(b1 + t) *
                             static_cast<std::int64_t>(b2 + t);
    term *= Real(-num);
    term /= Real(den);
    sum += term;
    Real a = abs(term);
    if (a > max_abs) max_abs = a;
  }

  return {static_cast<double>(sum), cancellation_of(max_abs, sum)};
}

// Runs `kernel` at increasing precision until the observed cancellation
// leaves at least 16 clean digits (or the 400-digit cap is reached; beyond
// the cap the remaining absolute error is negligible against any spec'd
// tolerance).
template <class Kernel>
double with_escalation(int digits, Kernel&& kernel) {
  double value = 0.0;
  for (int i = level_index(digits); i < kNumLevels; ++i) {
    double canc = 0.0;
    switch (kPrecisionLevels[i]) {
      case 30: {
        auto r = kernel.template operator()<R30>();
        value = r.value;
        canc = r.cancellation_digits;
        break;
      }
      case 50: {
        auto r = kernel.template operator()<R50>();
        value = r.value;
        canc = r.cancellation_digits;
        break;
      }
      case 100: {
        auto r = kernel.template operator()<R100>();
        value = r.value;
        canc = r.cancellation_digits;
        break;
      }
      case 200: {
        auto r = kernel.template operator()<R200>();
        value = r.value;
        canc = r.cancellation_digits;
        break;
      }
      default: {
        auto r = kernel.template operator()<R400>();
        value = r.value;
        canc = r.cancellation_digits;
        break;
      }
    }
    if (canc <= kPrecisionLevels[i] - 16) return value;
  }
  return value;
}

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
// recurrence.
GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[static_cast<std::size_t>(i)] = -x;
    gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[static_cast<std::size_t>(i)] = w;
    gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return gl;
}

// (1/N) sum_a exp(-i alpha_a K) over the uniform grid alpha_a = 2 pi a / N.
// Exactly zero (to roundoff) unless K = 0 mod N.
std::complex<double> phase_average(int k, int n) {
  std::complex<double> s = 0.0;
  for (int a = 0; a < n; ++a) {
    const double ang = -2.0 * M_PI * a * static_cast<double>(k) / n;
    s += std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s / static_cast<double>(n);
}

}  // namespace

int default_precision() {
  static const int value = [] {
    if (const char* env = std::getenv("RECOUPLING_PRECISION")) {
      const int v = std::atoi(env);
      if (v >= 30 && v <= 400) return v;
    }
    return 50;
  }();
  return value;
}

double wigner_small_d_exact(Spin j, HalfInt m, HalfInt mp, double beta, int digits) {
  require_magnetic(j, m, mp);
  if (!(beta >= -1e-12 && beta <= M_PI + 1e-12))
    throw DomainError("wigner_small_d_exact: beta must lie in [0, pi]");
  if (digits <= 0) digits = default_precision();
  const int twoj = j.twice, twom = m.twice, twomp = mp.twice;
  return with_escalation(digits, [&]<class Real>() {
    return small_d_sum<Real>(twoj, twom, twomp, beta);
  });
}

std::complex<double> wigner_D_exact(Spin j, HalfInt m, HalfInt mp, const EulerRotation& g,
                                    int digits) {
  const double d = wigner_small_d_exact(j, m, mp, g.beta, digits);
  const double phase = -(g.alpha * m.value() + g.gamma * mp.value());
  return std::polar(1.0, phase) * d;
}

std::complex<double> character_exact_sum(Spin j, const EulerRotation& g, int digits) {
  if (digits <= 0) digits = default_precision();
  const double apg = g.alpha + g.gamma;
  std::complex<double> value;
  for (int i = level_index(digits); i < kNumLevels; ++i) {
    double canc = 0.0;
    switch (kPrecisionLevels[i]) {
      case 30: {
        auto r = character_sum<R30>(j.twice, apg, g.beta);
        value = {r.re, r.im};
        canc = r.cancellation_digits;
        break;
      }
      case 50: {
        auto r = character_sum<R50>(j.twice, apg, g.beta);
        value = {r.re, r.im};
        canc = r.cancellation_digits;
        break;
      }
      case 100: {
        auto r = character_sum<R100>(j.twice, apg, g.beta);
        value = {r.re, r.im};
        canc = r.cancellation_digits;
        break;
      }
      case 200: {
        auto r = character_sum<R200>(j.twice, apg, g.beta);
        value = {r.re, r.im};
        canc = r.cancellation_digits;
        break;
      }
      default: {
        auto r = character_sum<R400>(j.twice, apg, g.beta);
        value = {r.re, r.im};
        canc = r.cancellation_digits;
        break;
      }
    }
    if (canc <= kPrecisionLevels[i] - 16) break;
  }
  return value;
}

double character_closed_form(Spin j, double theta) {
  const double a = 0.5 * (j.twice + 1);  // J + 1/2
  const double s = std::sin(0.5 * theta);
  if (std::abs(s) >= 1e-4) return std::sin(a * theta) / s;
  // Near a multiple of 2 pi the direct numerator sin(a theta) carries the
  // absolute error of a large argument, which the small denominator
  // amplifies. Reduce first: with d = theta - 2 pi m both sines have small
  // arguments and the ratio's sensitivity to d cancels at leading order.
  const double m = std::round(theta / (2.0 * M_PI));
  const double d = theta - 2.0 * M_PI * m;
  const long long mi = static_cast<long long>(m);
  const double sign = (static_cast<long long>(j.twice) * mi) % 2 != 0 ? -1.0 : 1.0;
  const double sd = std::sin(0.5 * d);
  if (std::abs(sd) >= 1e-8) return sign * std::sin(a * d) / sd;
  // Series limit: chi = (-1)^{2J m} * 2a * sinc3(a d) / sinc3(d/2).
  auto sinc3 = [](double z) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  };
  return sign * 2.0 * a * sinc3(a * d) / sinc3(0.5 * d);
}

double threej_exact(Spin j1, Spin j2, Spin j3, HalfInt m1, HalfInt m2, HalfInt m3, int digits) {
  if (m1.twice + m2.twice + m3.twice != 0) return 0.0;
  if (!triangle_valid(j1, j2, j3)) return 0.0;
  if (!magnetic_valid(j1, m1) || !magnetic_valid(j2, m2) || !magnetic_valid(j3, m3)) return 0.0;
  if (digits <= 0) digits = default_precision();
  return with_escalation(digits, [&]<class Real>() {
    return racah_sum<Real>(j1.twice, j2.twice, j3.twice, m1.twice, m2.twice, m3.twice);
  });
}

int haar_min_resolution(const std::array<Spin, 3>& j) {
  return 2 * (j[0].twice + j[1].twice + j[2].twice) + 8;
}

std::complex<double> haar_triple_integral(const std::array<Spin, 3>& j,
                                          const std::array<HalfInt, 3>& m,
                                          const std::array<HalfInt, 3>& mp, int resolution,
                                          int digits) {
  for (int i = 0; i < 3; ++i) require_magnetic(j[static_cast<std::size_t>(i)],
                                               m[static_cast<std::size_t>(i)],
                                               mp[static_cast<std::size_t>(i)]);
  if (resolution < haar_min_resolution(j))
    throw ResolutionTooLow("haar_triple_integral: resolution below 4(J1+J2+J3)+8");

  const int twom_sum = m[0].twice + m[1].twice + m[2].twice;
  const int twomp_sum = mp[0].twice + mp[1].twice + mp[2].twice;
  // Half-integer total projection: e^{-i alpha Sum(M)} has period 4 pi and
  // its group average vanishes identically.
  if (twom_sum % 2 != 0 || twomp_sum % 2 != 0) return 0.0;

  // The integrand factorizes: alpha and gamma enter only through the total
  // phases, beta only through the product of the three reduced elements.
  const std::complex<double> fa = phase_average(twom_sum / 2, resolution);
  const std::complex<double> fg = phase_average(twomp_sum / 2, resolution);

  const int sum2j = j[0].twice + j[1].twice + j[2].twice;
  const int nbeta = std::max(resolution / 2, sum2j + 4);
  const GaussLegendre gl = gauss_legendre(nbeta);
  double fb = 0.0;
  for (int q = 0; q < nbeta; ++q) {
    const double c = gl.nodes[static_cast<std::size_t>(q)];
    const double beta = std::acos(std::min(1.0, std::max(-1.0, c)));
    double prod = gl.weights[static_cast<std::size_t>(q)];
    for (std::size_t i = 0; i < 3; ++i)
      prod *= wigner_small_d_exact(j[i], m[i], mp[i], beta, digits);
    fb += prod;
  }
  return fa * fg * (0.5 * fb);
}

}  // namespace recoupling
