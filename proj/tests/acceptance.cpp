// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails. Optional argv[1] is the CLI binary path, used by the determinism
// criterion; without it the library-level determinism check still runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "recoupling/asym_character.hpp"
#include "recoupling/asym_threej.hpp"
#include "recoupling/asym_wigner.hpp"
#include "recoupling/errors.hpp"
#include "recoupling/exact.hpp"
#include "recoupling/sweep.hpp"

using namespace recoupling;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] %d. %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Timer {
  Clock::time_point t0 = Clock::now();
  double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_character_localization() {
  Timer t;
  SweepSpec spec;
  spec.quantity = Quantity::Character;
  for (int twoj = 1; twoj <= 100; ++twoj) spec.j_values.push_back(Spin(twoj));
  spec.samples = 100;
  spec.mode = SweepMode::Compare;
  spec.seed = 20240817;
  const ErrorReport rep = run_sweep(spec);
  bool ok = rep.summary.max_envelope_rel_err <= 1e-10;
  for (const auto& r : rep.records)
    if (!r.error.empty()) ok = false;
  const double secs = t.seconds();
  const bool in_time = secs <= 30.0;
  report(1, "character localization, J <= 50, 100 rotations", ok && in_time,
         fmt("max |asym-exact|/(2J+1) = %.3e (tol 1e-10), runtime %s 30 s",
             rep.summary.max_envelope_rel_err, in_time ? "<=" : ">"),
         secs);
}

// ---------------------------------------------------------------- criterion 2
void criterion_oscillatory_convergence() {
  Timer t;
  SweepSpec spec;
  spec.quantity = Quantity::DMatrix;
  for (int twoj : {40, 80, 160, 320}) spec.j_values.push_back(Spin(twoj));
  spec.samples = 50;
  spec.mode = SweepMode::Compare;
  spec.seed = 4242;
  // Delta >= 0.2 keeps every ladder point outside the Airy band even at
  // J = 20 (band = J^{-2/3} ~ 0.136): the set Delta >= 0.2 hugs the origin
  // in (x, y), where magnetic-number rounding can move Delta by at most
  // ~0.04. (Delta tops out at 0.25, so the filter cannot be much tighter.)
  spec.delta_min = 0.2;
  spec.region = Region::Oscillatory;
  spec.require_reliable = true;
  const ErrorReport rep = run_sweep(spec);
  bool point_bound = true;
  double worst_c = 0.0;
  int clean = 0;
  for (const auto& r : rep.records) {
    if (!r.error.empty()) continue;
    ++clean;
    const double c = r.envelope_rel_err * (r.twoj1 / 2.0);
    worst_c = std::max(worst_c, c);
    if (c > 5.0) point_bound = false;
  }
  const double expo = rep.summary.convergence_exponent.value_or(0.0);
  const bool ok = point_bound && expo <= -0.7 && clean >= 4 * 50;
  const double secs = t.seconds();
  report(2, "oscillatory estimate convergence, J in {20,40,80,160}", ok && secs <= 120.0,
         fmt("fitted exponent %.3f (tol <= -0.7), worst |err| * J / amplitude = %.2f (tol 5), "
             "%d points",
             expo, worst_c, clean),
         secs);
}

// ---------------------------------------------------------------- criterion 3
void criterion_suppressed_decay() {
  Timer t;
  SampleRng rng(777);
  const std::vector<int> twojs{40, 80, 120, 160, 200};  // J = 20 .. 100
  int tested = 0, sign_pos = 0;
  double worst_rel = 0.0, worst_model_rel = 0.0;
  while (tested < 20) {
    const double x = rng.uniform(-0.9, 0.9);
    const double y = rng.uniform(-0.9, 0.9);
    const double xi2 = rng.uniform(0.05, 0.95);
    double delta;
    try {
      delta = discriminant(x, y, xi2);
    } catch (const Error&) {
      continue;
    }
    if (delta > -0.16) continue;  // keeps Delta <= -0.05 with the band at J = 20
    if (!em_reliable_pair(x, y, xi2)) continue;
    SuppressedAngles ang{};
    try {
      ang = angles_suppressed(ReducedParams(x, y, xi2));
    } catch (const Error&) {
      continue;
    }
    const double xi_exp = ang.Phi + x * ang.Psi - y * ang.Omega;
    if (xi_exp < 0.15) continue;

    const double beta = 2.0 * std::acos(std::sqrt(xi2));
    const EulerRotation g(0.0, beta, 0.0);
    std::vector<double> js, lnd, lnest;
    bool usable = true;
    double xi_recorded = xi_exp;
    for (int twoj : twojs) {
      const Spin j(twoj);
      auto nearest = [&](double target) {
        int tv = static_cast<int>(std::llround(target * twoj));
        if (((tv - twoj) % 2 + 2) % 2 != 0) tv += target * twoj >= tv ? 1 : -1;
        return std::min(twoj - 2, std::max(-(twoj - 2), tv));
      };
      const HalfInt m(nearest(x)), mp(nearest(y));
      try {
        const WignerEstimate e = wigner_asym_suppressed(j, m, mp, g);
        const double ex = wigner_small_d_exact(j, m, mp, beta);
        if (ex == 0.0) {
          usable = false;
          break;
        }
        js.push_back(j.value());
        lnd.push_back(std::log(std::abs(ex)));
        lnest.push_back(std::log(std::abs(e.value)));
        if (twoj == 200) xi_recorded = e.decay_exponent;
      } catch (const Error&) {
        usable = false;
        break;
      }
    }
    if (!usable) continue;
    const double slope = lsq_slope(js, lnd);
    const double model_slope = lsq_slope(js, lnest);
    worst_rel = std::max(worst_rel, std::abs(slope + xi_recorded) / xi_recorded);
    worst_model_rel =
        std::max(worst_model_rel, std::abs(slope - model_slope) / std::abs(model_slope));
    if (xi_recorded > 0) ++sign_pos;
    ++tested;
  }
  const bool ok = tested == 20 && worst_rel <= 0.10 && worst_model_rel <= 0.10;
  report(3, "suppressed-region decay exponent", ok,
         fmt("20 points: max |slope + Xi|/Xi = %.3f, max slope mismatch vs estimate = %.3f "
             "(tol 0.10); sign(Xi) = +1 on %d/20 reliable points (open question: e^{-J Xi} "
             "decays, so Xi > 0 where the formula applies)",
             worst_rel, worst_model_rel, sign_pos),
         t.seconds());
}

// ---------------------------------------------------------------- criterion 4
void criterion_airy_transition() {
  Timer t;
  bool ok = true;
  std::string detail;
  double worst_fit_lo = 0, worst_fit_hi = -1, worst_ratio = 1.0;
  for (int k = 5; k <= 14; ++k) {
    const double x = k / 20.0;
    const double beta = 2.0 * std::acos(x);
    const EulerRotation g(0.0, beta, 0.0);
    std::vector<double> lnj, lnd;
    for (int twoj : {40, 80, 160, 320}) {
      const Spin j(twoj);
      const HalfInt m(twoj * k / 20);
      const double ex = wigner_small_d_exact(j, m, m, beta);
      const WignerEstimate e = wigner_asym_transition(j, m, m, g);
      const double ratio = std::abs(ex) / e.amplitude;
      worst_ratio = std::max({worst_ratio, ratio, 1.0 / ratio});
      if (ratio > 2.0 || ratio < 0.5) ok = false;
      lnj.push_back(std::log(j.value()));
      lnd.push_back(std::log(std::abs(ex)));
    }
    const double fit = lsq_slope(lnj, lnd);
    if (k == 5) worst_fit_lo = worst_fit_hi = fit;
    worst_fit_lo = std::min(worst_fit_lo, fit);
    worst_fit_hi = std::max(worst_fit_hi, fit);
    if (fit < -0.45 || fit > -0.20) ok = false;
  }
  report(4, "Airy transition scaling on 10 caustic points", ok,
         fmt("fitted |d| exponents in [%.3f, %.3f] (tol [-0.45, -0.20], target -1/3), worst "
             "estimate/oracle magnitude factor %.2f (tol 2)",
             worst_fit_lo, worst_fit_hi, worst_ratio),
         t.seconds());
}

// ---------------------------------------------------------------- criterion 5
void criterion_threej_asym() {
  Timer t;
  SampleRng rng(31337);
  std::vector<double> errs, errs2;
  int made = 0;
  while (made < 200) {
    const int twoj1 = rng.uniform_int(80, 400);
    const int twoj2 = rng.uniform_int(80, 400);
    const int lo = std::max(80, std::abs(twoj1 - twoj2));
    const int hi = std::min(400, twoj1 + twoj2);
    if (lo > hi) continue;
    const int twoj3 = rng.uniform_int(lo, hi);
    if ((twoj1 + twoj2 + twoj3) % 2 != 0) continue;
    const int twom1 = -twoj1 + 2 * rng.uniform_int(1, twoj1 - 1);
    const int twom2 = -twoj2 + 2 * rng.uniform_int(1, twoj2 - 1);
    const int twom3 = -twom1 - twom2;
    if (std::abs(twom3) >= twoj3 || (twom3 - twoj3) % 2 != 0) continue;
    const std::array<Spin, 3> j{Spin(twoj1), Spin(twoj2), Spin(twoj3)};
    const std::array<HalfInt, 3> m{HalfInt(twom1), HalfInt(twom2), HalfInt(twom3)};
    try {
      const MomentumTriangle tr = triangle_from_quantum(j, m);
      if (dot(tr.n, tr.S) < 0.12 * j[0].value() * j[1].value()) continue;
      const double env = 1.0 / std::sqrt(M_PI * dot(tr.n, tr.S));
      const double err =
          std::abs(threej_asym(j, m) - threej_exact(j[0], j[1], j[2], m[0], m[1], m[2])) / env;
      const std::array<Spin, 3> j2{Spin(2 * twoj1), Spin(2 * twoj2), Spin(2 * twoj3)};
      const std::array<HalfInt, 3> m2{HalfInt(2 * twom1), HalfInt(2 * twom2),
                                      HalfInt(2 * twom3)};
      const MomentumTriangle tr2 = triangle_from_quantum(j2, m2);
      const double env2 = 1.0 / std::sqrt(M_PI * dot(tr2.n, tr2.S));
      const double err2 =
          std::abs(threej_asym(j2, m2) - threej_exact(j2[0], j2[1], j2[2], m2[0], m2[1], m2[2])) /
          env2;
      errs.push_back(err);
      errs2.push_back(err2);
      ++made;
    } catch (const Error&) {
      continue;
    }
  }
  std::vector<double> sorted = errs;
  std::sort(sorted.begin(), sorted.end());
  const double p90 = sorted[static_cast<std::size_t>(0.9 * sorted.size())];
  // per-configuration errors carry an oscillatory phase, so the doubling
  // trend is read off the medians (monotone improvement within noise)
  std::vector<double> sorted2 = errs2;
  std::sort(sorted2.begin(), sorted2.end());
  const double med = sorted[sorted.size() / 2];
  const double med2 = sorted2[sorted2.size() / 2];
  const bool ok = p90 <= 0.1 && med2 <= 0.9 * med;
  report(5, "vector-geometry 3j estimate, 200 configurations", ok,
         fmt("envelope-relative error p90 = %.4f (tol 0.1); median %.4f -> %.4f under doubling "
             "(ratio %.2f, tol <= 0.9)",
             p90, med, med2, med2 / med),
         t.seconds());
}

// ---------------------------------------------------------------- criterion 6
void criterion_haar_cross_check() {
  Timer t;
  double worst = 0.0;
  long checked = 0;
  for (int twoj1 = 0; twoj1 <= 12; ++twoj1)
    for (int twoj2 = 0; twoj2 <= 12 - twoj1; ++twoj2)
      for (int twoj3 = std::abs(twoj1 - twoj2); twoj3 <= 12 - twoj1 - twoj2; ++twoj3) {
        if ((twoj1 + twoj2 + twoj3) % 2 != 0) continue;
        if (!triangle_valid(Spin(twoj1), Spin(twoj2), Spin(twoj3))) continue;
        const std::array<Spin, 3> j{Spin(twoj1), Spin(twoj2), Spin(twoj3)};
        const int res = haar_min_resolution(j);
        std::vector<std::array<int, 3>> valid_m;
        for (int a = -twoj1; a <= twoj1; a += 2)
          for (int b = -twoj2; b <= twoj2; b += 2) {
            const int c = -a - b;
            if (std::abs(c) <= twoj3 && (c - twoj3) % 2 == 0) valid_m.push_back({a, b, c});
          }
        for (const auto& ma : valid_m)
          for (const auto& mb : valid_m) {
            const std::array<HalfInt, 3> m{HalfInt(ma[0]), HalfInt(ma[1]), HalfInt(ma[2])};
            const std::array<HalfInt, 3> mp{HalfInt(mb[0]), HalfInt(mb[1]), HalfInt(mb[2])};
            const double lhs = haar_triple_integral(j, m, mp, res).real();
            const double rhs = threej_exact(j[0], j[1], j[2], m[0], m[1], m[2]) *
                               threej_exact(j[0], j[1], j[2], mp[0], mp[1], mp[2]);
            worst = std::max(worst, std::abs(lhs - rhs));
            ++checked;
          }
      }
  const double secs = t.seconds();
  const bool ok = worst <= 1e-9 && secs <= 60.0;
  report(6, "group-integral cross-check, all Sum(J) <= 6", ok,
         fmt("%ld pairs, max |integral - 3j product| = %.2e (tol 1e-9)", checked, worst), secs);
}

// ---------------------------------------------------------------- criterion 7
void criterion_identity_suite() {
  Timer t;
  SampleRng rng(2718);
  bool ok = true;
  std::string fail;

  // Wigner-level identities at 150 oscillatory points.
  double w_quad = 0, w_abs = 0, w_ref = 0, w_hess = 0, w_k = 0, w_ratio = 0;
  for (int rep = 0; rep < 150; ++rep) {
    double x, y, xi2;
    do {
      x = rng.uniform(-0.95, 0.95);
      y = rng.uniform(-0.95, 0.95);
      xi2 = rng.uniform(0.02, 0.98);
    } while (discriminant(x, y, xi2) < 1e-3);
    const ReducedParams p(x, y, xi2);
    const auto [up, um] = saddle_points(p);
    const double s = std::sqrt(p.delta);
    const double den = (1 - x * x) * (1 - y * y) * xi2 * (1 - xi2);
    const OscAngles ang = angles_oscillatory(p);
    int sgn = +1;
    for (std::complex<double> u : {up, um}) {
      w_quad = std::max(w_quad, std::abs(u * u - u * (2 * (1 - xi2) + x - y) +
                                         (1 - xi2) * (1 + x) * (1 - y)));
      w_abs = std::max(w_abs, std::abs(std::norm(u) - (1 - xi2) * (1 + x) * (1 - y)));
      w_abs = std::max(w_abs, std::abs(std::norm(1.0 + x - u) - xi2 * (1 + x) * (1 + y)));
      w_ref = std::max(w_ref, std::abs(action_f(p, u).real()));
      const std::complex<double> hess = action_f_neg_d2u(p, u);
      const std::complex<double> ch =
          (4.0 * p.delta + std::complex<double>(0, sgn * 2.0) * s * (1 + x * y - 2 * xi2)) / den;
      w_hess = std::max(w_hess, std::abs(hess - ch) / std::abs(hess));
      const std::complex<double> K = action_prefactor_K(p, u);
      const std::complex<double> num(2 * xi2 - 1 - x * y, sgn * 2.0 * s);
      const std::complex<double> cK =
          -std::sqrt((1 - x * x) * (1 - y * y)) * num * num /
          (xi2 * (1 - xi2) * std::pow(1 - x * x, 2) * std::pow(1 - y * y, 2));
      w_k = std::max(w_k, std::abs(K - cK) / std::abs(K));
      const std::complex<double> ratio = K / hess;
      const std::complex<double> cr =
          std::polar(1.0, sgn * ang.phi) / (std::complex<double>(0, sgn * 2.0) * s);
      w_ratio = std::max(w_ratio, std::abs(ratio - cr) / std::abs(ratio));
      sgn = -1;
    }
  }
  if (w_quad > 1e-12 || w_abs > 1e-12 || w_ref > 1e-10) ok = false;
  if (w_hess > 1e-10 || w_k > 1e-10 || w_ratio > 1e-10) ok = false;

  // 3j pair identities at 100 random configurations.
  double w_jd = 0, w_kpm = 0, w_station = 0;
  int made = 0;
  while (made < 100) {
    const int twoj1 = rng.uniform_int(40, 200);
    const int twoj2 = rng.uniform_int(40, 200);
    const int lo = std::max(40, std::abs(twoj1 - twoj2));
    const int hi = std::min(400, twoj1 + twoj2);
    if (lo > hi) continue;
    const int twoj3 = rng.uniform_int(lo, hi);
    if ((twoj1 + twoj2 + twoj3) % 2 != 0) continue;
    auto draw_m = [&](int tja, int tjb) -> std::array<int, 3> {
      const int a = -tja + 2 * rng.uniform_int(1, tja - 1);
      const int b = -tjb + 2 * rng.uniform_int(1, tjb - 1);
      return {a, b, -a - b};
    };
    const auto ma = draw_m(twoj1, twoj2);
    const auto mb = draw_m(twoj1, twoj2);
    if (std::abs(ma[2]) >= twoj3 || (ma[2] - twoj3) % 2 != 0) continue;
    if (std::abs(mb[2]) >= twoj3 || (mb[2] - twoj3) % 2 != 0) continue;
    const std::array<Spin, 3> j{Spin(twoj1), Spin(twoj2), Spin(twoj3)};
    const std::array<HalfInt, 3> m{HalfInt(ma[0]), HalfInt(ma[1]), HalfInt(ma[2])};
    const std::array<HalfInt, 3> mp{HalfInt(mb[0]), HalfInt(mb[1]), HalfInt(mb[2])};
    try {
      const MomentumTriangle tn = triangle_from_quantum(j, m);
      const MomentumTriangle tk = triangle_from_quantum(j, mp);
      const double scale = j[0].value() * j[1].value();
      if (dot(tn.n, tn.S) < 0.12 * scale || dot(tk.n, tk.S) < 0.12 * scale) continue;
      const Vec3 k = pair_axis(tn, tk);
      const Vec3 n = tn.n, S = tn.S;
      const double S2 = dot(S, S), nS = dot(n, S), kS = dot(k, S);
      const auto [xi2p, xi2m] = xi_saddles(tn, tk);
      if (xi2p > 1 - 1e-8 || xi2p < 1e-8 || xi2m > 1 - 1e-8 || xi2m < 1e-8) continue;
      for (int root = 0; root < 2; ++root) {
        const double xi2 = root == 0 ? xi2p : xi2m;
        double eps[3], station = 0, num = 0;
        for (int i = 0; i < 3; ++i) {
          const double ji = norm(tn.J[i]);
          const double xi_ = dot(n, tn.J[i]) / ji, yi = dot(k, tn.J[i]) / ji;
          const double d = discriminant(xi_, yi, xi2);
          const double v = root == 0
                               ? dot(tn.J[i], cross(n, k))
                               : dot(tn.J[i], kS * cross(S, n) + nS * cross(S, k)) / S2;
          w_jd = std::max(w_jd, std::abs(ji * ji * d - 0.25 * v * v) /
                                    std::max(1e-12, std::abs(ji * ji * d)));
          eps[i] = v >= 0 ? 1 : -1;
          station += eps[i] * ji * std::sqrt(std::max(0.0, d));
        }
        w_station = std::max(w_station, std::abs(station) / (3 * j[2].value()));
        for (int a = 0; a < 3; ++a) {
          const int b = (a + 1) % 3, c = (a + 2) % 3;
          const double jb = norm(tn.J[b]), jc = norm(tn.J[c]), ja = norm(tn.J[a]);
          const double db = discriminant(dot(n, tn.J[b]) / jb, dot(k, tn.J[b]) / jb, xi2);
          const double dc = discriminant(dot(n, tn.J[c]) / jc, dot(k, tn.J[c]) / jc, xi2);
          num += eps[b] * eps[c] * jb * std::sqrt(std::max(0.0, db)) * jc *
                 std::sqrt(std::max(0.0, dc)) *
                 ((2 * xi2 - 1) * ja * ja - dot(n, tn.J[a]) * dot(k, tn.J[a]));
        }
        const double kpm = -16 * M_PI * M_PI * num / (xi2 * (1 - xi2));
        const double want = (root == 0 ? 1.0 : -1.0) * 16 * M_PI * M_PI * nS * kS;
        w_kpm = std::max(w_kpm, std::abs(kpm - want) / std::abs(want));
      }
      ++made;
    } catch (const Error&) {
      continue;
    }
  }
  if (w_jd > 1e-10 || w_kpm > 1e-8 || w_station > 1e-10) ok = false;

  report(7, "closed-form identity suite", ok,
         fmt("saddle quadratic %.1e, |u|^2 %.1e, Re f %.1e, Hessian %.1e, prefactor %.1e, "
             "ratio %.1e, 3j J^2*Delta %.1e, stationarity %.1e, K+- %.1e",
             w_quad, w_abs, w_ref, w_hess, w_k, w_ratio, w_jd, w_station, w_kpm),
         t.seconds());
}

// ---------------------------------------------------------------- criterion 8
void criterion_gradient_checks() {
  Timer t;
  SampleRng rng(1618);
  double w_du = 0;
  for (int rep = 0; rep < 25; ++rep) {
    double x, y, xi2;
    do {
      x = rng.uniform(-0.9, 0.9);
      y = rng.uniform(-0.9, 0.9);
      xi2 = rng.uniform(0.05, 0.95);
    } while (discriminant(x, y, xi2) < 1e-3);
    const ReducedParams p(x, y, xi2);
    const double ulo = std::max(0.0, x - y), uhi = std::min(1.0 + x, 1.0 - y);
    const double u = ulo + (uhi - ulo) * rng.uniform(0.15, 0.85);
    const double h = 1e-6;
    const std::complex<double> fd = (action_f(p, u + h) - action_f(p, u - h)) / (2 * h);
    w_du = std::max(w_du, std::abs(fd - action_f_du(p, u)));
  }

  double w_dxi = 0;
  int made = 0;
  while (made < 25) {
    const int twoj1 = rng.uniform_int(40, 160);
    const int twoj2 = rng.uniform_int(40, 160);
    const int lo = std::max(40, std::abs(twoj1 - twoj2));
    const int hi = twoj1 + twoj2;
    if (lo > hi) continue;
    const int twoj3 = rng.uniform_int(lo, hi);
    double J[3] = {twoj1 / 2.0, twoj2 / 2.0, twoj3 / 2.0};
    double xs[3], ys[3], sg[3];
    for (int i = 0; i < 3; ++i) {
      xs[i] = rng.uniform(-0.8, 0.8);
      ys[i] = rng.uniform(-0.8, 0.8);
      sg[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    const double xi2 = rng.uniform(0.15, 0.85);
    bool fine = true;
    for (int i = 0; i < 3; ++i)
      if (discriminant(xs[i], ys[i], xi2) < 0.05 ||
          discriminant(xs[i], ys[i], xi2 + 2e-6) < 0.0 ||
          discriminant(xs[i], ys[i], xi2 - 2e-6) < 0.0)
        fine = false;
    if (!fine) continue;
    auto phase_sum = [&](double q) {
      double tot = 0;
      for (int i = 0; i < 3; ++i) {
        const OscAngles a = angles_oscillatory(ReducedParams(xs[i], ys[i], q));
        tot += sg[i] * J[i] * (a.phi + xs[i] * a.psi - ys[i] * a.omega);
      }
      return tot;
    };
    const double h = 1e-6;
    const double fd = (phase_sum(xi2 + h) - phase_sum(xi2 - h)) / (2 * h);
    double closed = 0;
    for (int i = 0; i < 3; ++i)
      closed -= sg[i] * J[i] * std::sqrt(discriminant(xs[i], ys[i], xi2));
    closed /= xi2 * (1 - xi2);
    w_dxi = std::max(w_dxi, std::abs(fd - closed));
    ++made;
  }
  const bool ok = w_du <= 1e-6 && w_dxi <= 1e-5;
  report(8, "gradient checks against central differences", ok,
         fmt("d f/d u max |analytic - FD| = %.2e (tol 1e-6); d/d xi^2 of the signed 3j phase "
             "sum max diff = %.2e (tol 1e-5)",
             w_du, w_dxi),
         t.seconds());
}

// ---------------------------------------------------------------- criterion 9
void criterion_determinism(const char* cli_path) {
  Timer t;
  SweepSpec spec;
  spec.quantity = Quantity::DMatrix;
  for (int twoj : {40, 80}) spec.j_values.push_back(Spin(twoj));
  spec.samples = 10;
  spec.seed = 555;
  const std::string a = run_sweep(spec).serialize();
  const std::string b = run_sweep(spec).serialize();
  bool ok = (a == b) && !a.empty();
  std::string detail = fmt("library reports byte-identical: %s", a == b ? "yes" : "NO");
  if (cli_path != nullptr) {
    const std::string base = "/tmp/recoupling_det_";
    const std::string cmd1 = std::string(cli_path) +
                             " sweep --quantity character --twoj 9 20 41 --samples 7 --seed 99 "
                             "--json --out " +
                             base + "a.json";
    const std::string cmd2 = std::string(cli_path) +
                             " sweep --quantity character --twoj 9 20 41 --samples 7 --seed 99 "
                             "--json --out " +
                             base + "b.json";
    const bool ran = std::system(cmd1.c_str()) == 0 && std::system(cmd2.c_str()) == 0;
    std::ifstream fa(base + "a.json"), fb(base + "b.json");
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    const bool same = ran && sa.str() == sb.str() && !sa.str().empty();
    ok = ok && same;
    detail += fmt("; CLI runs byte-identical: %s", same ? "yes" : "NO");
  }
  report(9, "deterministic reports for identical spec + seed", ok, detail, t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  criterion_character_localization();
  criterion_oscillatory_convergence();
  criterion_suppressed_decay();
  criterion_airy_transition();
  criterion_threej_asym();
  criterion_haar_cross_check();
  criterion_identity_suite();
  criterion_gradient_checks();
  criterion_determinism(cli);
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
