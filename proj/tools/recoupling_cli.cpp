// Command-line front end: single evaluations, parameter sweeps, error and
// convergence reports, region maps, and machine-readable output.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure
// (non-generic input, classically forbidden geometry, ...) in single-point
// mode.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "recoupling/asym_character.hpp"
#include "recoupling/asym_threej.hpp"
#include "recoupling/asym_wigner.hpp"
#include "recoupling/errors.hpp"
#include "recoupling/exact.hpp"
#include "recoupling/sweep.hpp"

namespace rc = recoupling;
using nlohmann::json;

namespace {

struct GlobalOpts {
  bool json_out = false;
  bool csv_out = false;
  std::string out_path;
  double kappa = 1.0;
  int precision = 0;
  std::uint64_t seed = 1;
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw rc::ConfigError("cannot open output path: " + g.out_path);
  f << text;
}

// "lo:hi:n" -> n equally spaced values in [lo, hi].
std::vector<double> parse_grid(const std::string& s) {
  double lo = 0, hi = 0;
  int n = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
    throw rc::ConfigError("bad grid spec (want lo:hi:n): " + s);
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0));
  return g;
}

std::vector<rc::Spin> parse_spins(const std::vector<int>& twojs) {
  std::vector<rc::Spin> out;
  for (int t : twojs) out.emplace_back(t);
  return out;
}

std::string render_record(const GlobalOpts& g,
                          const std::vector<std::pair<std::string, json>>& kv) {
  if (g.json_out) {
    json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::string header, row;
  for (std::size_t i = 0; i < kv.size(); ++i) {
    header += kv[i].first;
    const json& v = kv[i].second;
    if (v.is_number_float()) row += rc::format_double(v.get<double>());
    else if (v.is_null()) row += "";
    else if (v.is_string()) row += v.get<std::string>();
    else row += v.dump();
    if (i + 1 < kv.size()) {
      header += ',';
      row += ',';
    }
  }
  return header + "\n" + row + "\n";
}

rc::SweepMode parse_mode(const std::string& m) {
  if (m == "exact") return rc::SweepMode::Exact;
  if (m == "asym") return rc::SweepMode::Asym;
  if (m == "compare") return rc::SweepMode::Compare;
  throw rc::ConfigError("bad mode: " + m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(2) recoupling quantities: exact evaluation and large-J estimates"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_flag("--json", g.json_out, "emit JSON");
  app.add_flag("--csv", g.csv_out, "emit CSV (default)");
  app.add_option("--out", g.out_path, "write output to PATH instead of stdout");
  app.add_option("--kappa", g.kappa, "transition band constant (band = kappa J^(-2/3))");
  app.add_option("--precision", g.precision, "starting working precision in decimal digits");
  app.add_option("--seed", g.seed, "random seed for sweeps");

  auto* dm = app.add_subcommand("dmatrix", "single Wigner matrix element")->fallthrough();
  int dm_twoj = 0, dm_twom = 0, dm_twomp = 0;
  double dm_alpha = 0, dm_beta = 0, dm_gamma = 0;
  std::string dm_mode = "compare";
  dm->add_option("--twoj", dm_twoj, "2J")->required();
  dm->add_option("--twom", dm_twom, "2M")->required();
  dm->add_option("--twomp", dm_twomp, "2M'")->required();
  dm->add_option("--alpha", dm_alpha, "Euler alpha");
  dm->add_option("--beta", dm_beta, "Euler beta in [0, pi]")->required();
  dm->add_option("--gamma", dm_gamma, "Euler gamma");
  dm->add_option("--mode", dm_mode, "exact | asym | compare");

  auto* ch = app.add_subcommand("char", "character of a group element")->fallthrough();
  int ch_twoj = 0;
  double ch_alpha = 0, ch_beta = 0, ch_gamma = 0;
  std::string ch_mode = "compare";
  ch->add_option("--twoj", ch_twoj, "2J")->required();
  ch->add_option("--alpha", ch_alpha, "Euler alpha");
  ch->add_option("--beta", ch_beta, "Euler beta in [0, pi]")->required();
  ch->add_option("--gamma", ch_gamma, "Euler gamma");
  ch->add_option("--mode", ch_mode, "exact | asym | compare");

  auto* tj = app.add_subcommand("threej", "single 3j symbol")->fallthrough();
  std::vector<int> tj_twoj, tj_twom;
  std::string tj_mode = "compare", tj_lengths = "j";
  tj->add_option("--twoj", tj_twoj, "2J1 2J2 2J3")->expected(3)->required();
  tj->add_option("--twom", tj_twom, "2M1 2M2 2M3")->expected(3)->required();
  tj->add_option("--mode", tj_mode, "exact | asym | compare");
  tj->add_option("--lengths", tj_lengths,
                 "vector length convention for the estimate: j | j-plus-half");

  auto* sw = app.add_subcommand("sweep", "error/convergence sweep")->fallthrough();
  std::string sw_quantity = "dmatrix", sw_mode = "compare", sw_region = "oscillatory";
  std::vector<int> sw_twoj;
  int sw_samples = 20;
  double sw_delta_min = 0.05;
  bool sw_no_reliable = false;
  sw->add_option("--quantity", sw_quantity, "dmatrix | character | threej");
  sw->add_option("--twoj", sw_twoj, "list of 2J values (ascending)")->required();
  sw->add_option("--samples", sw_samples, "sample points per J");
  sw->add_option("--mode", sw_mode, "exact | asym | compare");
  sw->add_option("--region", sw_region, "oscillatory | suppressed | transition | any");
  sw->add_option("--delta-min", sw_delta_min, "minimum |Delta| for sampled points");
  sw->add_flag("--no-require-reliable", sw_no_reliable,
               "sample points regardless of the EM reliability diagnostic");

  auto* rm = app.add_subcommand("region-map", "region and EM-reliability map")->fallthrough();
  int rm_twoj = 0;
  std::string rm_xi2 = "0.05:0.95:19", rm_x = "0.05:0.95:19";
  double rm_y = std::numeric_limits<double>::quiet_NaN();
  rm->add_option("--twoj", rm_twoj, "2J")->required();
  rm->add_option("--xi2-grid", rm_xi2, "xi^2 grid lo:hi:n");
  rm->add_option("--x-grid", rm_x, "x grid lo:hi:n");
  rm->add_option("--y", rm_y, "fixed y (default: diagonal y = x)");

  auto* xs = app.add_subcommand("xi-surface", "suppressed-region decay exponent survey")->fallthrough();
  double xs_xi2 = 0.2;
  std::string xs_x = "-0.9:0.9:37", xs_y = "-0.9:0.9:37";
  std::vector<int> xs_oracle;
  xs->add_option("--xi2", xs_xi2, "xi^2")->required();
  xs->add_option("--x-grid", xs_x, "x grid lo:hi:n");
  xs->add_option("--y-grid", xs_y, "y grid lo:hi:n");
  xs->add_option("--with-oracle", xs_oracle, "2J ladder for the measured decay slope");

  auto* hc = app.add_subcommand("haar-check", "group-integral cross-check of 3j products")->fallthrough();
  std::vector<int> hc_twoj, hc_twom, hc_twomp;
  int hc_res = 0;
  hc->add_option("--twoj", hc_twoj, "2J1 2J2 2J3")->expected(3)->required();
  hc->add_option("--twom", hc_twom, "2M1 2M2 2M3")->expected(3)->required();
  hc->add_option("--twomp", hc_twomp, "2M1' 2M2' 2M3'")->expected(3)->required();
  hc->add_option("--resolution", hc_res, "alpha/gamma grid size (default: minimum valid)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*dm) {
      const rc::Spin j(dm_twoj);
      const rc::HalfInt m(dm_twom), mp(dm_twomp);
      const rc::EulerRotation rot(dm_alpha, dm_beta, dm_gamma);
      const rc::SweepMode mode = parse_mode(dm_mode);
      std::vector<std::pair<std::string, json>> kv;
      kv.emplace_back("twoj", dm_twoj);
      kv.emplace_back("twom", dm_twom);
      kv.emplace_back("twomp", dm_twomp);
      kv.emplace_back("alpha", dm_alpha);
      kv.emplace_back("beta", dm_beta);
      kv.emplace_back("gamma", dm_gamma);
      std::complex<double> exact{};
      if (mode != rc::SweepMode::Asym) {
        exact = rc::wigner_D_exact(j, m, mp, rot, g.precision);
        kv.emplace_back("exact_re", exact.real());
        kv.emplace_back("exact_im", exact.imag());
      }
      if (mode != rc::SweepMode::Exact) {
        const rc::WignerEstimate e = rc::wigner_asym(j, m, mp, rot, g.kappa);
        kv.emplace_back("estimate_re", e.value.real());
        kv.emplace_back("estimate_im", e.value.imag());
        kv.emplace_back("region", rc::region_name(e.region.region));
        kv.emplace_back("amplitude", e.amplitude);
        kv.emplace_back("em_reliable", e.em_reliable);
        if (e.region.region == rc::Region::Suppressed)
          kv.emplace_back("decay_exponent", e.decay_exponent);
        if (mode == rc::SweepMode::Compare)
          kv.emplace_back("abs_err", std::abs(exact - e.value));
      }
      emit(g, render_record(g, kv));
    } else if (*ch) {
      const rc::Spin j(ch_twoj);
      const rc::EulerRotation rot(ch_alpha, ch_beta, ch_gamma);
      const rc::SweepMode mode = parse_mode(ch_mode);
      std::vector<std::pair<std::string, json>> kv;
      kv.emplace_back("twoj", ch_twoj);
      kv.emplace_back("alpha", ch_alpha);
      kv.emplace_back("beta", ch_beta);
      kv.emplace_back("gamma", ch_gamma);
      kv.emplace_back("theta", rc::theta_of_euler(rot).theta);
      std::complex<double> exact{};
      if (mode != rc::SweepMode::Asym) {
        exact = rc::character_exact_sum(j, rot, g.precision);
        kv.emplace_back("exact", exact.real());
        kv.emplace_back("exact_imag_residual", exact.imag());
      }
      if (mode != rc::SweepMode::Exact) kv.emplace_back("estimate", rc::character_asym(j, rot));
      if (mode == rc::SweepMode::Compare)
        kv.emplace_back("abs_err", std::abs(exact.real() - rc::character_asym(j, rot)));
      emit(g, render_record(g, kv));
    } else if (*tj) {
      const std::array<rc::Spin, 3> j{rc::Spin(tj_twoj[0]), rc::Spin(tj_twoj[1]),
                                      rc::Spin(tj_twoj[2])};
      const std::array<rc::HalfInt, 3> m{rc::HalfInt(tj_twom[0]), rc::HalfInt(tj_twom[1]),
                                         rc::HalfInt(tj_twom[2])};
      const rc::SweepMode mode = parse_mode(tj_mode);
      std::vector<std::pair<std::string, json>> kv;
      kv.emplace_back("twoj1", tj_twoj[0]);
      kv.emplace_back("twoj2", tj_twoj[1]);
      kv.emplace_back("twoj3", tj_twoj[2]);
      kv.emplace_back("twom1", tj_twom[0]);
      kv.emplace_back("twom2", tj_twom[1]);
      kv.emplace_back("twom3", tj_twom[2]);
      double exact = 0;
      if (mode != rc::SweepMode::Asym) {
        exact = rc::threej_exact(j[0], j[1], j[2], m[0], m[1], m[2], g.precision);
        kv.emplace_back("exact", exact);
      }
      if (mode != rc::SweepMode::Exact) {
        rc::LengthConvention lc;
        if (tj_lengths == "j") lc = rc::LengthConvention::SpinLength;
        else if (tj_lengths == "j-plus-half") lc = rc::LengthConvention::SpinLengthPlusHalf;
        else throw rc::ConfigError("bad --lengths: " + tj_lengths);
        const double est = rc::threej_asym(j, m, lc);
        kv.emplace_back("estimate", est);
        kv.emplace_back("lengths", tj_lengths);
        kv.emplace_back("sign_convention", rc::threej_sign_convention(j));
        if (mode == rc::SweepMode::Compare) kv.emplace_back("abs_err", std::abs(exact - est));
      }
      emit(g, render_record(g, kv));
    } else if (*sw) {
      rc::SweepSpec spec;
      if (sw_quantity == "dmatrix") spec.quantity = rc::Quantity::DMatrix;
      else if (sw_quantity == "character") spec.quantity = rc::Quantity::Character;
      else if (sw_quantity == "threej") spec.quantity = rc::Quantity::ThreeJ;
      else throw rc::ConfigError("bad quantity: " + sw_quantity);
      spec.j_values = parse_spins(sw_twoj);
      spec.samples = sw_samples;
      spec.mode = parse_mode(sw_mode);
      spec.kappa = g.kappa;
      spec.format = g.json_out ? rc::OutputFormat::Json : rc::OutputFormat::Csv;
      spec.seed = g.seed;
      spec.precision = g.precision;
      spec.delta_min = sw_delta_min;
      if (sw_region == "oscillatory") spec.region = rc::Region::Oscillatory;
      else if (sw_region == "suppressed") spec.region = rc::Region::Suppressed;
      else if (sw_region == "transition") spec.region = rc::Region::Transition;
      else if (sw_region == "any") spec.region.reset();
      else throw rc::ConfigError("bad region filter: " + sw_region);
      spec.require_reliable = !sw_no_reliable;
      emit(g, rc::run_sweep(spec).serialize());
    } else if (*rm) {
      std::optional<double> y;
      if (!std::isnan(rm_y)) y = rm_y;
      const rc::RegionMapTable t =
          rc::region_map(rc::Spin(rm_twoj), parse_grid(rm_xi2), parse_grid(rm_x), y, g.kappa);
      emit(g, g.json_out ? t.to_json() : t.to_csv());
    } else if (*xs) {
      const rc::XiSurfaceTable t =
          rc::xi_surface(xs_xi2, parse_grid(xs_x), parse_grid(xs_y), parse_spins(xs_oracle));
      emit(g, g.json_out ? t.to_json() : t.to_csv());
    } else if (*hc) {
      const std::array<rc::Spin, 3> j{rc::Spin(hc_twoj[0]), rc::Spin(hc_twoj[1]),
                                      rc::Spin(hc_twoj[2])};
      const std::array<rc::HalfInt, 3> m{rc::HalfInt(hc_twom[0]), rc::HalfInt(hc_twom[1]),
                                         rc::HalfInt(hc_twom[2])};
      const std::array<rc::HalfInt, 3> mp{rc::HalfInt(hc_twomp[0]), rc::HalfInt(hc_twomp[1]),
                                          rc::HalfInt(hc_twomp[2])};
      const int res = hc_res > 0 ? hc_res : rc::haar_min_resolution(j);
      const std::complex<double> integral = rc::haar_triple_integral(j, m, mp, res, g.precision);
      const double product = rc::threej_exact(j[0], j[1], j[2], m[0], m[1], m[2], g.precision) *
                             rc::threej_exact(j[0], j[1], j[2], mp[0], mp[1], mp[2], g.precision);
      std::vector<std::pair<std::string, json>> kv;
      kv.emplace_back("resolution", res);
      kv.emplace_back("integral_re", integral.real());
      kv.emplace_back("integral_im", integral.imag());
      kv.emplace_back("threej_product", product);
      kv.emplace_back("abs_err", std::abs(integral.real() - product));
      emit(g, render_record(g, kv));
    }
  } catch (const rc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rc::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
