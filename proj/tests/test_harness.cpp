#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recoupling/asym_wigner.hpp"
#include "recoupling/errors.hpp"
#include "recoupling/sweep.hpp"

using namespace recoupling;
using nlohmann::json;

namespace {

SweepSpec small_character_spec() {
  SweepSpec spec;
  spec.quantity = Quantity::Character;
  for (int t : {3, 10, 25, 40}) spec.j_values.push_back(Spin(t));
  spec.samples = 6;
  spec.mode = SweepMode::Compare;
  spec.seed = 99;
  return spec;
}

// Minimal structural validator for the subset of JSON Schema the shipped
// schema file uses (type / required / properties / items / enum).
bool validates(const json& schema, const json& value);

bool type_matches(const std::string& t, const json& v) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

bool validates(const json& schema, const json& value) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = type_matches(t.get<std::string>(), value);
    else
      for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), value);
    if (!ok) return false;
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"]) ok = ok || e == value;
    if (!ok) return false;
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!value.contains(k.get<std::string>())) return false;
    if (schema.contains("properties"))
      for (const auto& [k, sub] : schema["properties"].items())
        if (value.contains(k) && !validates(sub, value.at(k))) return false;
  }
  if (value.is_array() && schema.contains("items"))
    for (const auto& item : value)
      if (!validates(schema["items"], item)) return false;
  return true;
}

}  // namespace

TEST_CASE("run_sweep: deterministic byte-identical reports") {
  const SweepSpec spec = small_character_spec();
  const ErrorReport a = run_sweep(spec);
  const ErrorReport b = run_sweep(spec);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_json() == b.to_json());
  // a different seed gives a different report
  SweepSpec other = spec;
  other.seed = 100;
  CHECK(run_sweep(other).to_csv() != a.to_csv());
}

TEST_CASE("run_sweep: character localization at sweep level") {
  const ErrorReport rep = run_sweep(small_character_spec());
  CHECK(rep.records.size() == 24);
  for (const auto& r : rep.records) CHECK(r.error.empty());
  CHECK(rep.summary.max_envelope_rel_err <= 1e-10);
}

TEST_CASE("run_sweep: dmatrix convergence exponent") {
  SweepSpec spec;
  spec.quantity = Quantity::DMatrix;
  for (int t : {40, 80, 160}) spec.j_values.push_back(Spin(t));
  spec.samples = 12;
  spec.mode = SweepMode::Compare;
  spec.seed = 7;
  spec.delta_min = 0.2;  // outside the Airy band at every ladder J, drift included
  spec.region = Region::Oscillatory;
  spec.require_reliable = true;
  const ErrorReport rep = run_sweep(spec);
  REQUIRE(rep.summary.convergence_exponent.has_value());
  CHECK(*rep.summary.convergence_exponent <= -0.7);
  for (const auto& r : rep.records)
    if (r.error.empty()) CHECK(std::isfinite(r.envelope_rel_err));
}

TEST_CASE("run_sweep: config validation") {
  SweepSpec spec;
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);  // empty grid
  spec.j_values = {Spin(10), Spin(4)};
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);  // not ascending
  spec.j_values = {Spin(4), Spin(10)};
  spec.samples = 0;
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
  spec.samples = 2;
  spec.kappa = -1.0;
  CHECK_THROWS_AS(run_sweep(spec), ConfigError);
}

TEST_CASE("records recompute exactly after CSV round trip") {
  const ErrorReport rep = run_sweep(small_character_spec());
  std::istringstream csv(rep.to_csv());
  std::string line;
  std::getline(csv, line);  // header
  int checked = 0;
  while (std::getline(csv, line) && line[0] != '#') {
    // columns: ...,exact(17),estimate(18),amplitude(19),abs_err(20),...
    std::vector<std::string> cols;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    auto parse = [](const std::string& s) {
      double v = 0;
      std::from_chars(s.data(), s.data() + s.size(), v);
      return v;
    };
    const double exact = parse(cols[17]);
    const double estimate = parse(cols[18]);
    const double abs_err = parse(cols[20]);
    CHECK(std::abs(std::abs(exact - estimate) - abs_err) <= 1e-15);
    ++checked;
  }
  CHECK(checked == 24);
}

TEST_CASE("region_map: reliability structure") {
  std::vector<double> xi2_grid, x_grid;
  for (int i = 1; i <= 19; ++i) xi2_grid.push_back(i / 20.0);
  for (int i = 1; i <= 39; ++i) x_grid.push_back(i / 40.0);
  const RegionMapTable t = region_map(Spin(40), xi2_grid, x_grid, std::nullopt);
  CHECK(t.cells.size() == xi2_grid.size() * x_grid.size());
  for (const auto& c : t.cells) {
    CHECK(c.em_reliable == (c.boundary_exponent < 0.0));
    CHECK(c.delta == doctest::Approx(discriminant(c.x, c.y, c.xi2)));
  }
  // close enough to either edge the boundary terms are suppressed, at any xi^2
  for (double xi2 : xi2_grid) {
    CHECK(em_reliability(1e-7, xi2).reliable);
    CHECK(em_reliability(1.0 - 1e-9, xi2).reliable);
  }
  // the cell closest to the analytic maximum is unreliable
  const double xi2 = 0.25;
  const double xstar = em_boundary_max_x(xi2);
  double best = 1e9;
  const RegionMapCell* cell = nullptr;
  for (const auto& c : t.cells)
    if (c.xi2 == doctest::Approx(xi2) && std::abs(c.x - xstar) < best) {
      best = std::abs(c.x - xstar);
      cell = &c;
    }
  REQUIRE(cell != nullptr);
  CHECK_FALSE(cell->em_reliable);
  // Delta changes sign somewhere along the diagonal for mid xi^2
  bool pos = false, neg = false;
  for (const auto& c : t.cells)
    if (c.xi2 == doctest::Approx(0.5)) ((c.delta > 0) ? pos : neg) = true;
  CHECK(pos);
  CHECK(neg);
  CHECK_THROWS_AS(region_map(Spin(40), {}, x_grid, std::nullopt), ConfigError);
  CHECK_THROWS_AS(region_map(Spin(40), {1.5}, x_grid, std::nullopt), ConfigError);
}

TEST_CASE("xi_surface: suppressed rows and the sign of Xi") {
  std::vector<double> grid;
  for (int i = -9; i <= 9; ++i) grid.push_back(i / 10.0);
  const XiSurfaceTable t = xi_surface(0.2, grid, grid);
  CHECK(!t.rows.empty());
  int reliable_rows = 0;
  for (const auto& r : t.rows) {
    CHECK(r.delta_prime > 0.0);
    if (r.em_reliable && r.delta_prime >= 0.01) {
      ++reliable_rows;
      // the numerical survey: away from the caustic boundary layer, EM-reliable
      // rows all carry Xi > 0, i.e. e^{-J Xi} decays
      CHECK(r.sign_Xi == 1);
    }
  }
  CHECK(reliable_rows > 0);
  // Xi vanishes with Delta': the row closest to the caustic has a tiny Xi
  const XiSurfaceTable near = xi_surface(0.2, {0.46}, {0.46});  // Delta = -9e-4
  REQUIRE(near.rows.size() == 1);
  CHECK(std::abs(near.rows[0].Xi) < 0.02);
  CHECK_THROWS_AS(xi_surface(1.2, grid, grid), ConfigError);
  CHECK_THROWS_AS(xi_surface(0.2, {}, grid), ConfigError);

  // oracle slope column: ln|d| decreases at rate Xi on a reliable row
  const XiSurfaceTable withj =
      xi_surface(0.2, {0.9}, {0.9}, {Spin(40), Spin(80), Spin(120), Spin(160), Spin(200)});
  REQUIRE(withj.rows.size() == 1);
  REQUIRE(withj.rows[0].oracle_slope.has_value());
  CHECK(std::abs(*withj.rows[0].oracle_slope + withj.rows[0].Xi) < 0.1 * withj.rows[0].Xi);
}

TEST_CASE("JSON report validates against the shipped schema") {
  std::ifstream f(SCHEMA_PATH);
  REQUIRE(f.good());
  json schema;
  f >> schema;
  const ErrorReport rep = run_sweep(small_character_spec());
  const json doc = json::parse(rep.to_json());
  CHECK(validates(schema, doc));
  // sanity of the validator itself: a mutilated report fails
  json broken = doc;
  broken.erase("summary");
  CHECK_FALSE(validates(schema, broken));
}

TEST_CASE("CSV header is the documented stable schema") {
  const ErrorReport rep = run_sweep(small_character_spec());
  std::istringstream csv(rep.to_csv());
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "index,twoj1,twoj2,twoj3,twom,twom2,twom3,twomp,alpha,beta,gamma,x,y,xi2,delta,"
        "region,em_reliable,exact,estimate,amplitude,abs_err,envelope_rel_err,error");
}

TEST_CASE("haar rotation sampling is seeded and generic") {
  SampleRng a(123), b(123);
  for (int i = 0; i < 10; ++i) {
    const EulerRotation ga = a.haar_rotation();
    const EulerRotation gb = b.haar_rotation();
    CHECK(ga.alpha == gb.alpha);
    CHECK(ga.beta == gb.beta);
    CHECK(ga.gamma == gb.gamma);
    CHECK(ga.generic());
  }
}
