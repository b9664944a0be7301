#include "recoupling/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "recoupling/asym_character.hpp"
#include "recoupling/asym_threej.hpp"
#include "recoupling/errors.hpp"
#include "recoupling/exact.hpp"

namespace recoupling {
namespace {

using nlohmann::json;

// splitmix64: tiny, deterministic on every platform.
std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

// Nearest twice-value with the parity of twoj, clamped strictly inside
// (-twoj, twoj).
int nearest_magnetic_twice(double target, int twoj) {
  long long t = std::llround(target);
  if (((t - twoj) % 2 + 2) % 2 != 0) t += (target >= static_cast<double>(t)) ? 1 : -1;
  const long long lim = twoj - 2;
  if (t > lim) t = lim;
  if (t < -lim) t = -lim;
  return static_cast<int>(t);
}

void run_parallel(std::size_t n, const std::function<void(std::size_t)>& task) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  workers = std::min<unsigned>(workers, 16);
  if (n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        task(i);
      }
    });
  for (auto& th : pool) th.join();
}

struct DMatrixTarget {
  double x, y, xi2;
};

// Rejection-samples a reduced-parameter target honoring the configured filters.
DMatrixTarget draw_dmatrix_target(SampleRng& rng, const SweepSpec& spec) {
  for (int tries = 0; tries < 100000; ++tries) {
    DMatrixTarget t{};
    if (spec.region && *spec.region == Region::Transition) {
      // Caustic construction: x = y, xi = x gives Delta = 0 exactly.
      t.x = t.y = rng.uniform(0.25, 0.7);
      t.xi2 = t.x * t.x;
    } else {
      t.x = rng.uniform(-0.9, 0.9);
      t.y = rng.uniform(-0.9, 0.9);
      t.xi2 = rng.uniform(0.05, 0.95);
    }
    const double delta = discriminant(t.x, t.y, t.xi2);
    const bool on_caustic = spec.region && *spec.region == Region::Transition;
    if (spec.region) {
      if (*spec.region == Region::Oscillatory && !(delta >= spec.delta_min)) continue;
      if (*spec.region == Region::Suppressed && !(delta <= -spec.delta_min)) continue;
    }
    // The caustic diagonal has a positive boundary exponent almost
    // everywhere, so the reliability filter would empty the transition set.
    if (spec.require_reliable && !on_caustic && !em_reliable_pair(t.x, t.y, t.xi2)) continue;
    if (spec.region && *spec.region == Region::Suppressed) {
      // Keep only points where the suppressed angles are in-domain and the
      // decay rate is large enough to measure.
      try {
        ReducedParams p(t.x, t.y, t.xi2);
        SuppressedAngles a = angles_suppressed(p);
        if (a.Phi + t.x * a.Psi - t.y * a.Omega < 0.15) continue;
      } catch (const Error&) {
        continue;
      }
    }
    return t;
  }
  throw ConfigError("run_sweep: could not sample a point satisfying the filters");
}

struct ThreeJBase {
  std::array<int, 3> twoj;
  std::array<int, 3> twom;
};

ThreeJBase draw_threej_base(SampleRng& rng, int twoj_scale) {
  for (int tries = 0; tries < 200000; ++tries) {
    ThreeJBase b{};
    b.twoj[0] = rng.uniform_int(twoj_scale, 2 * twoj_scale);
    b.twoj[1] = rng.uniform_int(twoj_scale, 2 * twoj_scale);
    const int lo = std::abs(b.twoj[0] - b.twoj[1]);
    const int hi = b.twoj[0] + b.twoj[1];
    b.twoj[2] = rng.uniform_int(lo, hi);
    if ((b.twoj[0] + b.twoj[1] + b.twoj[2]) % 2 != 0) continue;
    for (int i = 0; i < 2; ++i) {
      const int tj = b.twoj[static_cast<std::size_t>(i)];
      const int m = nearest_magnetic_twice(rng.uniform(-0.8, 0.8) * tj, tj);
      b.twom[static_cast<std::size_t>(i)] = m;
    }
    b.twom[2] = -b.twom[0] - b.twom[1];
    if (std::abs(b.twom[2]) > b.twoj[2] - 2 || (b.twom[2] - b.twoj[2]) % 2 != 0) continue;
    // Interior margin: a healthy projected area keeps the point away from
    // the classical boundary.
    try {
      const std::array<Spin, 3> j{Spin(b.twoj[0]), Spin(b.twoj[1]), Spin(b.twoj[2])};
      const std::array<HalfInt, 3> m{HalfInt(b.twom[0]), HalfInt(b.twom[1]), HalfInt(b.twom[2])};
      const MomentumTriangle t = triangle_from_quantum(j, m);
      const double ns = dot(t.n, t.S);
      if (ns < 0.15 * Spin(b.twoj[0]).value() * Spin(b.twoj[1]).value()) continue;
      return b;
    } catch (const Error&) {
      continue;
    }
  }
  throw ConfigError("run_sweep: could not sample a 3j configuration");
}

void summarize(ErrorReport& rep) {
  double mx = 0.0, mean = 0.0;
  int n = 0;
  std::vector<double> lnj, lnerr;
  // Per-J mean over clean rows, in j order.
  for (std::size_t ji = 0; ji < rep.spec.j_values.size(); ++ji) {
    double s = 0.0;
    int c = 0;
    for (const auto& r : rep.records) {
      if (!r.error.empty()) continue;
      if (r.twoj1 != rep.spec.j_values[ji].twice && rep.spec.quantity != Quantity::ThreeJ)
        continue;
      if (rep.spec.quantity == Quantity::ThreeJ) {
        // ThreeJ rows carry the scale ladder index in `index` modulo J count.
        if (static_cast<std::size_t>(r.index) % rep.spec.j_values.size() != ji) continue;
      }
      if (!std::isfinite(r.envelope_rel_err)) continue;
      s += r.envelope_rel_err;
      c += 1;
      mean += r.envelope_rel_err;
      n += 1;
      mx = std::max(mx, r.envelope_rel_err);
    }
    if (c > 0) {
      lnj.push_back(std::log(rep.spec.j_values[ji].value()));
      lnerr.push_back(std::log(std::max(s / c, 1e-300)));
    }
  }
  rep.summary.max_envelope_rel_err = mx;
  rep.summary.mean_envelope_rel_err = n > 0 ? mean / n : 0.0;
  if (lnj.size() >= 2) rep.summary.convergence_exponent = lsq_slope(lnj, lnerr);
}

}  // namespace

std::uint64_t SampleRng::next_u64() { return splitmix64(state_); }

double SampleRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int SampleRng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

EulerRotation SampleRng::haar_rotation() {
  for (;;) {
    const double alpha = uniform(0.0, 2.0 * M_PI);
    const double gamma = uniform(0.0, 2.0 * M_PI);
    const double c = uniform(-1.0, 1.0);
    const EulerRotation g(alpha, std::acos(c), gamma);
    const double x2 = g.xi2();
    if (x2 > 1e-6 && x2 < 1.0 - 1e-6) return g;
  }
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::DMatrix: return "dmatrix";
    case Quantity::Character: return "character";
    default: return "threej";
  }
}

const char* mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::Exact: return "exact";
    case SweepMode::Asym: return "asym";
    default: return "compare";
  }
}

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double d = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / d;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ErrorReport run_sweep(const SweepSpec& spec) {
  if (spec.j_values.empty()) throw ConfigError("run_sweep: empty J grid");
  for (std::size_t i = 1; i < spec.j_values.size(); ++i)
    if (spec.j_values[i].twice <= spec.j_values[i - 1].twice)
      throw ConfigError("run_sweep: J values must be strictly ascending");
  if (spec.samples <= 0) throw ConfigError("run_sweep: samples must be positive");
  if (!(spec.kappa > 0.0)) throw ConfigError("run_sweep: kappa must be positive");

  ErrorReport rep;
  rep.spec = spec;
  SampleRng rng(spec.seed);
  std::vector<SweepRecord> recs;

  if (spec.quantity == Quantity::Character) {
    std::vector<EulerRotation> rotations;
    for (int s = 0; s < spec.samples; ++s) rotations.push_back(rng.haar_rotation());
    for (const Spin j : spec.j_values)
      for (int s = 0; s < spec.samples; ++s) {
        SweepRecord r;
        r.index = static_cast<int>(recs.size());
        r.twoj1 = j.twice;
        const EulerRotation& g = rotations[static_cast<std::size_t>(s)];
        r.alpha = g.alpha;
        r.beta = g.beta;
        r.gamma = g.gamma;
        r.xi2 = g.xi2();
        r.region = "-";
        r.em_reliable = true;
        recs.push_back(r);
      }
    run_parallel(recs.size(), [&](std::size_t i) {
      SweepRecord& r = recs[i];
      try {
        const Spin j(r.twoj1);
        const EulerRotation g(r.alpha, r.beta, r.gamma);
        r.amplitude = j.twice + 1.0;
        if (spec.mode != SweepMode::Asym)
          r.exact = character_exact_sum(j, g, spec.precision).real();
        if (spec.mode != SweepMode::Exact) r.estimate = character_asym(j, g);
        if (spec.mode == SweepMode::Compare) {
          r.abs_err = std::abs(r.exact - r.estimate);
          r.envelope_rel_err = r.abs_err / r.amplitude;
        }
      } catch (const Error& e) {
        r.error = e.what();
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    });
  } else if (spec.quantity == Quantity::DMatrix) {
    std::vector<DMatrixTarget> targets;
    for (int s = 0; s < spec.samples; ++s) targets.push_back(draw_dmatrix_target(rng, spec));
    for (const Spin j : spec.j_values)
      for (int s = 0; s < spec.samples; ++s) {
        const DMatrixTarget& t = targets[static_cast<std::size_t>(s)];
        SweepRecord r;
        r.index = static_cast<int>(recs.size());
        r.twoj1 = j.twice;
        r.twom = nearest_magnetic_twice(t.x * j.twice, j.twice);
        r.twomp = nearest_magnetic_twice(t.y * j.twice, j.twice);
        r.xi2 = t.xi2;
        r.beta = 2.0 * std::acos(std::sqrt(t.xi2));
        recs.push_back(r);
      }
    run_parallel(recs.size(), [&](std::size_t i) {
      SweepRecord& r = recs[i];
      try {
        const Spin j(r.twoj1);
        const HalfInt m(r.twom), mp(r.twomp);
        const EulerRotation g(0.0, r.beta, 0.0);
        r.x = m.value() / j.value();
        r.y = mp.value() / j.value();
        r.delta = discriminant(r.x, r.y, r.xi2);
        const ReducedParams p(r.x, r.y, r.xi2);
        r.region = region_name(classify_region(j, p, spec.kappa).region);
        r.em_reliable = em_reliable_pair(r.x, r.y, r.xi2);
        if (spec.mode != SweepMode::Asym)
          r.exact = wigner_small_d_exact(j, m, mp, g.beta, spec.precision);
        if (spec.mode != SweepMode::Exact) {
          const WignerEstimate e = wigner_asym(j, m, mp, g, spec.kappa);
          // The cubic-saddle construction pins only the magnitude of the
          // transition estimate; record that as the estimate there.
          r.estimate = e.region.region == Region::Transition ? e.amplitude : e.value.real();
          r.amplitude = e.amplitude;
        }
        if (spec.mode == SweepMode::Compare) {
          r.abs_err = std::abs(r.exact - r.estimate);
          r.envelope_rel_err = r.amplitude > 0 ? r.abs_err / r.amplitude : 0.0;
        }
      } catch (const Error& e) {
        r.error = e.what();
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    });
  } else {
    std::vector<ThreeJBase> bases;
    const int twoj0 = spec.j_values.front().twice;
    for (int s = 0; s < spec.samples; ++s) bases.push_back(draw_threej_base(rng, twoj0));
    for (int s = 0; s < spec.samples; ++s)
      for (std::size_t ji = 0; ji < spec.j_values.size(); ++ji) {
        const int scale = static_cast<int>(
            std::llround(spec.j_values[ji].value() / spec.j_values.front().value()));
        const ThreeJBase& b = bases[static_cast<std::size_t>(s)];
        SweepRecord r;
        r.index = static_cast<int>(ji);  // ladder index, see summarize()
        r.twoj1 = b.twoj[0] * scale;
        r.twoj2 = b.twoj[1] * scale;
        r.twoj3 = b.twoj[2] * scale;
        r.twom = b.twom[0] * scale;
        r.twom2 = b.twom[1] * scale;
        r.twom3 = b.twom[2] * scale;
        recs.push_back(r);
      }
    run_parallel(recs.size(), [&](std::size_t i) {
      SweepRecord& r = recs[i];
      try {
        const std::array<Spin, 3> j{Spin(r.twoj1), Spin(r.twoj2), Spin(r.twoj3)};
        const std::array<HalfInt, 3> m{HalfInt(r.twom), HalfInt(r.twom2), HalfInt(r.twom3)};
        const MomentumTriangle t = triangle_from_quantum(j, m);
        r.region = "oscillatory";
        const double ns = dot(t.n, t.S);
        r.amplitude = 1.0 / std::sqrt(M_PI * ns);
        if (spec.mode != SweepMode::Asym)
          r.exact = threej_exact(j[0], j[1], j[2], m[0], m[1], m[2], spec.precision);
        if (spec.mode != SweepMode::Exact) r.estimate = threej_asym(j, m);
        if (spec.mode == SweepMode::Compare) {
          r.abs_err = std::abs(r.exact - r.estimate);
          r.envelope_rel_err = r.abs_err / r.amplitude;
        }
        r.em_reliable = true;
      } catch (const Error& e) {
        r.error = e.what();
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    });
  }

  rep.records = std::move(recs);
  summarize(rep);
  return rep;
}

std::string ErrorReport::to_csv() const {
  std::ostringstream out;
  out << "index,twoj1,twoj2,twoj3,twom,twom2,twom3,twomp,alpha,beta,gamma,x,y,xi2,delta,"
         "region,em_reliable,exact,estimate,amplitude,abs_err,envelope_rel_err,error\n";
  for (const auto& r : records) {
    out << r.index << ',' << r.twoj1 << ',' << r.twoj2 << ',' << r.twoj3 << ',' << r.twom << ','
        << r.twom2 << ',' << r.twom3 << ',' << r.twomp << ',' << format_double(r.alpha) << ','
        << format_double(r.beta) << ',' << format_double(r.gamma) << ',' << format_double(r.x)
        << ',' << format_double(r.y) << ',' << format_double(r.xi2) << ','
        << format_double(r.delta) << ',' << r.region << ',' << (r.em_reliable ? 1 : 0) << ','
        << format_double(r.exact) << ',' << format_double(r.estimate) << ','
        << format_double(r.amplitude) << ',' << format_double(r.abs_err) << ','
        << format_double(r.envelope_rel_err) << ',' << r.error << '\n';
  }
  const auto& s = summary;
  out << "# summary max_envelope_rel_err=" << format_double(s.max_envelope_rel_err)
      << " mean_envelope_rel_err=" << format_double(s.mean_envelope_rel_err)
      << " convergence_exponent="
      << (s.convergence_exponent ? format_double(*s.convergence_exponent) : "none") << '\n';
  return out.str();
}

std::string ErrorReport::to_json() const {
  json doc;
  json jspec;
  jspec["quantity"] = quantity_name(spec.quantity);
  jspec["mode"] = mode_name(spec.mode);
  json jv = json::array();
  for (Spin j : spec.j_values) jv.push_back(j.twice);
  jspec["twoj_values"] = jv;
  jspec["samples"] = spec.samples;
  jspec["kappa"] = spec.kappa;
  jspec["seed"] = spec.seed;
  jspec["precision"] = spec.precision == 0 ? default_precision() : spec.precision;
  jspec["delta_min"] = spec.delta_min;
  jspec["region_filter"] = spec.region ? region_name(*spec.region) : "any";
  jspec["require_reliable"] = spec.require_reliable;
  doc["spec"] = jspec;
  json recs = json::array();
  for (const auto& r : records) {
    json jr;
    jr["index"] = r.index;
    jr["twoj1"] = r.twoj1;
    jr["twoj2"] = r.twoj2;
    jr["twoj3"] = r.twoj3;
    jr["twom"] = r.twom;
    jr["twom2"] = r.twom2;
    jr["twom3"] = r.twom3;
    jr["twomp"] = r.twomp;
    jr["alpha"] = finite_or_null(r.alpha);
    jr["beta"] = finite_or_null(r.beta);
    jr["gamma"] = finite_or_null(r.gamma);
    jr["x"] = finite_or_null(r.x);
    jr["y"] = finite_or_null(r.y);
    jr["xi2"] = finite_or_null(r.xi2);
    jr["delta"] = finite_or_null(r.delta);
    jr["region"] = r.region;
    jr["em_reliable"] = r.em_reliable;
    jr["exact"] = finite_or_null(r.exact);
    jr["estimate"] = finite_or_null(r.estimate);
    jr["amplitude"] = finite_or_null(r.amplitude);
    jr["abs_err"] = finite_or_null(r.abs_err);
    jr["envelope_rel_err"] = finite_or_null(r.envelope_rel_err);
    jr["error"] = r.error;
    recs.push_back(jr);
  }
  doc["records"] = recs;
  json jsum;
  jsum["max_envelope_rel_err"] = finite_or_null(summary.max_envelope_rel_err);
  jsum["mean_envelope_rel_err"] = finite_or_null(summary.mean_envelope_rel_err);
  jsum["convergence_exponent"] =
      summary.convergence_exponent ? json(*summary.convergence_exponent) : json(nullptr);
  doc["summary"] = jsum;
  return doc.dump(2) + "\n";
}

std::string ErrorReport::serialize() const {
  return spec.format == OutputFormat::Json ? to_json() : to_csv();
}

RegionMapTable region_map(Spin j, const std::vector<double>& xi2_grid,
                          const std::vector<double>& x_grid, std::optional<double> y_fixed,
                          double kappa) {
  if (xi2_grid.empty() || x_grid.empty()) throw ConfigError("region_map: empty grid");
  for (double v : xi2_grid)
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("region_map: xi^2 grid outside (0,1)");
  for (double v : x_grid)
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("region_map: x grid outside (0,1)");
  if (y_fixed && !(std::abs(*y_fixed) < 1.0)) throw ConfigError("region_map: |y| must be < 1");
  RegionMapTable table;
  for (double xi2 : xi2_grid)
    for (double x : x_grid) {
      RegionMapCell c{};
      c.x = x;
      c.xi2 = xi2;
      c.y = y_fixed ? *y_fixed : x;
      c.delta = discriminant(x, c.y, xi2);
      const ReducedParams p(x, c.y, xi2);
      c.region = region_name(classify_region(j, p, kappa).region);
      const EmReliability r = em_reliability(x, xi2);
      c.em_reliable = r.reliable;
      c.boundary_exponent = r.boundary_exponent;
      table.cells.push_back(c);
    }
  return table;
}

std::string RegionMapTable::to_csv() const {
  std::ostringstream out;
  out << "x,xi2,y,delta,region,em_reliable,boundary_exponent\n";
  for (const auto& c : cells)
    out << format_double(c.x) << ',' << format_double(c.xi2) << ',' << format_double(c.y) << ','
        << format_double(c.delta) << ',' << c.region << ',' << (c.em_reliable ? 1 : 0) << ','
        << format_double(c.boundary_exponent) << '\n';
  return out.str();
}

std::string RegionMapTable::to_json() const {
  json rows = json::array();
  for (const auto& c : cells) {
    json r;
    r["x"] = c.x;
    r["xi2"] = c.xi2;
    r["y"] = c.y;
    r["delta"] = c.delta;
    r["region"] = c.region;
    r["em_reliable"] = c.em_reliable;
    r["boundary_exponent"] = c.boundary_exponent;
    rows.push_back(r);
  }
  json doc;
  doc["cells"] = rows;
  return doc.dump(2) + "\n";
}

XiSurfaceTable xi_surface(double xi2, const std::vector<double>& x_grid,
                          const std::vector<double>& y_grid,
                          const std::vector<Spin>& with_oracle_j) {
  if (!(xi2 > 0.0 && xi2 < 1.0)) throw ConfigError("xi_surface: xi^2 outside (0,1)");
  if (x_grid.empty() || y_grid.empty()) throw ConfigError("xi_surface: empty grid");
  for (double v : x_grid)
    if (!(std::abs(v) < 1.0)) throw ConfigError("xi_surface: |x| must be < 1");
  for (double v : y_grid)
    if (!(std::abs(v) < 1.0)) throw ConfigError("xi_surface: |y| must be < 1");
  XiSurfaceTable table;
  for (double x : x_grid)
    for (double y : y_grid) {
      const double delta = discriminant(x, y, xi2);
      if (delta >= 0.0) continue;  // suppressed rows only
      XiSurfaceRow row{};
      row.x = x;
      row.y = y;
      row.delta_prime = -delta;
      try {
        const ReducedParams p(x, y, xi2);
        const SuppressedAngles a = angles_suppressed(p);
        row.Phi = a.Phi;
        row.Psi = a.Psi;
        row.Omega = a.Omega;
        row.Xi = a.Phi + x * a.Psi - y * a.Omega;
        row.sign_Xi = row.Xi > 0 ? 1 : (row.Xi < 0 ? -1 : 0);
        row.formula_domain_ok = a.domain_ok;
      } catch (const Error&) {
        row.Xi = std::numeric_limits<double>::quiet_NaN();
        row.formula_domain_ok = false;
      }
      row.em_reliable = em_reliable_pair(x, y, xi2);
      if (!with_oracle_j.empty()) {
        std::vector<double> js, lnd;
        const double beta = 2.0 * std::acos(std::sqrt(xi2));
        for (Spin j : with_oracle_j) {
          const int twom = nearest_magnetic_twice(x * j.twice, j.twice);
          const int twomp = nearest_magnetic_twice(y * j.twice, j.twice);
          const double d =
              wigner_small_d_exact(j, HalfInt(twom), HalfInt(twomp), beta);
          if (d == 0.0) continue;
          js.push_back(j.value());
          lnd.push_back(std::log(std::abs(d)));
        }
        if (js.size() >= 2) row.oracle_slope = lsq_slope(js, lnd);
      }
      table.rows.push_back(row);
    }
  return table;
}

std::string XiSurfaceTable::to_csv() const {
  std::ostringstream out;
  out << "x,y,delta_prime,Phi,Psi,Omega,Xi,sign_Xi,formula_domain_ok,em_reliable,oracle_slope\n";
  for (const auto& r : rows)
    out << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.delta_prime)
        << ',' << format_double(r.Phi) << ',' << format_double(r.Psi) << ','
        << format_double(r.Omega) << ',' << format_double(r.Xi) << ',' << r.sign_Xi << ','
        << (r.formula_domain_ok ? 1 : 0) << ',' << (r.em_reliable ? 1 : 0) << ','
        << (r.oracle_slope ? format_double(*r.oracle_slope) : "") << '\n';
  return out.str();
}

std::string XiSurfaceTable::to_json() const {
  json jrows = json::array();
  for (const auto& r : rows) {
    json jr;
    jr["x"] = r.x;
    jr["y"] = r.y;
    jr["delta_prime"] = r.delta_prime;
    jr["Phi"] = finite_or_null(r.Phi);
    jr["Psi"] = finite_or_null(r.Psi);
    jr["Omega"] = finite_or_null(r.Omega);
    jr["Xi"] = finite_or_null(r.Xi);
    jr["sign_Xi"] = r.sign_Xi;
    jr["formula_domain_ok"] = r.formula_domain_ok;
    jr["em_reliable"] = r.em_reliable;
    jr["oracle_slope"] = r.oracle_slope ? json(*r.oracle_slope) : json(nullptr);
    jrows.push_back(jr);
  }
  json doc;
  doc["rows"] = jrows;
  return doc.dump(2) + "\n";
}

}  // namespace recoupling
