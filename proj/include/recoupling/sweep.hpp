#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recoupling/asym_wigner.hpp"
#include "recoupling/euler.hpp"
#include "recoupling/spin.hpp"

namespace recoupling {

// Deterministic xoshiro-free RNG: mt19937_64 with an explicit u64 -> [0,1)
// mapping so that identical seeds give identical streams on every platform.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64();
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);      // [lo, hi)
  int uniform_int(int lo, int hi);           // inclusive bounds

  // Haar-uniform rotation via the subgroup algorithm: alpha, gamma uniform on
  // [0, 2pi), cos(beta) uniform on [-1, 1]. Resamples until generic.
  EulerRotation haar_rotation();

 private:
  std::uint64_t state_;
};

enum class Quantity { DMatrix, Character, ThreeJ };
enum class SweepMode { Exact, Asym, Compare };
enum class OutputFormat { Csv, Json };

const char* quantity_name(Quantity q);
const char* mode_name(SweepMode m);

// One parameter sweep: random sample points (seeded, reused across every J so
// convergence fits are paired) evaluated per J value.
struct SweepSpec {
  Quantity quantity = Quantity::DMatrix;
  std::vector<Spin> j_values;          // ascending
  int samples = 20;                    // sample points per J
  SweepMode mode = SweepMode::Compare;
  double kappa = 1.0;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 1;
  int precision = 0;                   // 0 = default_precision()

  // Sample filters (DMatrix / ThreeJ): keep |Delta| >= delta_min in the
  // region selected by `region` (unset = oscillatory), require the
  // Euler-Maclaurin diagnostic when require_reliable.
  double delta_min = 0.05;
  std::optional<Region> region = Region::Oscillatory;
  bool require_reliable = true;
};

struct SweepRecord {
  int index = 0;
  int twoj1 = 0, twoj2 = 0, twoj3 = 0;  // dmatrix/character use twoj1 only
  int twom = 0, twomp = 0;              // threej: twom1..3 packed below
  int twom2 = 0, twom3 = 0;
  double alpha = 0, beta = 0, gamma = 0;
  double x = 0, y = 0, xi2 = 0, delta = 0;
  std::string region;
  bool em_reliable = false;
  double exact = 0;
  double estimate = 0;
  double amplitude = 0;
  double abs_err = 0;
  double envelope_rel_err = 0;
  std::string error;  // per-point failure, never aborts the sweep
};

struct SweepSummary {
  double max_envelope_rel_err = 0;
  double mean_envelope_rel_err = 0;
  // Least-squares slope of ln(mean envelope error at J) against ln J;
  // unset when fewer than two J values produced clean points.
  std::optional<double> convergence_exponent;
};

struct ErrorReport {
  SweepSpec spec;
  std::vector<SweepRecord> records;
  SweepSummary summary;

  std::string to_csv() const;
  std::string to_json() const;
  std::string serialize() const;  // per spec.format
};

ErrorReport run_sweep(const SweepSpec& spec);

// Region/reliability map over a (x, xi^2) grid at fixed J. y_fixed empty
// means the diagonal case y = x.
struct RegionMapCell {
  double x, xi2, y, delta;
  std::string region;
  bool em_reliable;
  double boundary_exponent;
};
struct RegionMapTable {
  std::vector<RegionMapCell> cells;
  std::string to_csv() const;
  std::string to_json() const;
};
RegionMapTable region_map(Spin j, const std::vector<double>& xi2_grid,
                          const std::vector<double>& x_grid, std::optional<double> y_fixed,
                          double kappa = 1.0);

// Suppressed-region survey of the decay exponent Xi = Phi + x Psi - y Omega
// over an (x, y) grid at fixed xi^2; rows are emitted only where Delta < 0.
// with_oracle_j non-empty adds the measured slope of ln|d_exact| over that
// J ladder (spins must be integers for exact M = xJ placement).
struct XiSurfaceRow {
  double x, y, delta_prime;
  double Phi, Psi, Omega, Xi;
  int sign_Xi;
  bool formula_domain_ok;
  bool em_reliable;
  std::optional<double> oracle_slope;
};
struct XiSurfaceTable {
  std::vector<XiSurfaceRow> rows;
  std::string to_csv() const;
  std::string to_json() const;
};
XiSurfaceTable xi_surface(double xi2, const std::vector<double>& x_grid,
                          const std::vector<double>& y_grid,
                          const std::vector<Spin>& with_oracle_j = {});

// Least-squares slope of y against x.
double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Shortest round-trip formatting (used everywhere so reports are
// byte-identical across runs and records recompute exactly).
std::string format_double(double v);

}  // namespace recoupling
