#pragma once

// Parameter sweeps over model, temperature and time, and threshold extraction.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwit/models.hpp"
#include "qwit/mub.hpp"
#include "qwit/states.hpp"
#include "qwit/witness.hpp"

namespace qwit {

enum class StateSource { Gibbs, Lindblad };

struct RotationSpec {
  RotationKind kind = RotationKind::LocalX;
  double h = 1.0;  // quench field
  int k = 0;       // quench period index
};

struct SweepAxis {
  std::string parameter;  // "beta", "time", or a ModelSpec field name
  std::vector<double> values;
};

/// Column names in output order.
inline const std::vector<std::string> kWitnessColumns = {
    "C1", "C2", "pearson_O", "pearson_Oprime", "maccone_lhs", "negativity"};

struct Scenario {
  std::string name = "scenario";
  ModelSpec model;
  StateSource source = StateSource::Gibbs;
  double beta = 1.0;       // Gibbs, when beta is not the sweep parameter
  double gamma = 0.0;      // Lindblad dephasing rate
  double dt = 0.01;        // Lindblad RK4 step
  std::optional<int> sites_a;  // default L/2
  RotationSpec rotation;
  SweepAxis sweep;
  std::vector<std::string> outputs = kWitnessColumns;
  std::uint64_t seed = 0;

  int sites_a_or_default() const { return sites_a.value_or(model.L / 2); }
  /// Throws InvalidArgument describing the first problem found.
  void validate() const;
};

struct SweepResult {
  std::string parameter;
  std::vector<double> values;
  std::vector<WitnessResult> rows;  // same order as values
};

struct Caps {
  Index full_dim = 4096;
  int spectrum_sites_full = 10;
  int spectrum_sites_sector = 12;
};

struct RunOptions {
  unsigned workers = 1;
  bool cap_override = false;
  Caps caps;
  /// Receives non-fatal warnings such as an overridden cap.
  std::function<void(const std::string&)> warn;
};

/// Sets the named ModelSpec field; throws InvalidArgument for unknown names.
void set_model_parameter(ModelSpec& spec, const std::string& name, double value);

/// Throws CapExceeded unless the scenario fits the desk-scale caps or
/// options.cap_override is set (then warns).
void check_caps(const Scenario& s, const RunOptions& options);

/// Rotation pair for the scenario's bipartition.
std::pair<MubRotation, MubRotation> scenario_rotations(const Scenario& s);

/// State and Hamiltonian preparation at one model point.
struct PreparedModel {
  ComplexMatrix hamiltonian;          // in `basis` when restricted, else full
  std::optional<SectorBasis> basis;   // Heisenberg sector or PXP constrained space
};
PreparedModel prepare_model(const ModelSpec& spec);

/// Gibbs state in the full register from a prepared model's spectrum.
DensityMatrix gibbs_state(const PreparedModel& model, const EigenDecomposition& spectrum,
                          double beta);

/// One WitnessResult per sweep point, in sweep order. Deterministic for a
/// given scenario regardless of options.workers.
SweepResult run_scenario(const Scenario& s, const RunOptions& options = {});

/// Runs f(i) for i in [0, n) on up to `workers` threads; rethrows the
/// exception of the lowest failing index.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& f);

// ---- I/O -----------------------------------------------------------------

/// With require_sweep = false a missing sweep becomes a single-point beta axis.
Scenario parse_scenario(const std::string& json_text, bool require_sweep = true);
Scenario load_scenario(const std::string& path, bool require_sweep = true);
std::string scenario_to_json(const Scenario& s);

/// `# key: value` metadata lines, then `<param>,<columns...>` and one row per
/// point, numbers as %.17g, empty fields for flagged values.
void write_csv(std::ostream& out, const Scenario& s, const SweepResult& r);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Header line `dim`, then dim^2 lines `re im` in row-major order.
DensityMatrix read_state_file(const std::string& path);

std::string witness_json(const WitnessResult& r);

// ---- thresholds ----------------------------------------------------------

struct ThresholdMap {
  std::vector<double> beta_grid;
  std::vector<double> h_grid;
  Eigen::MatrixXd c2_grid;  // rows: beta, cols: h
  Eigen::MatrixXd n_grid;
  double level = 1e-4;
  /// max |C2| over h with N < level; 0 when no such point.
  std::vector<double> c2_threshold_per_beta;
  /// Smallest beta from which on every grid point with N < level has
  /// |C2| <= kSeparableC2, so C2 > 0 detects exactly; empty if none.
  std::vector<std::optional<double>> beta_threshold_per_h;

  double mean_c2_threshold() const;
};

inline constexpr double kSeparableC2 = 1e-10;

/// Evaluates C2 and N on beta_grid x h_grid for the scenario's model with the
/// transverse field h swept. The scenario's sweep axis is ignored.
ThresholdMap threshold_map(const Scenario& base, const std::vector<double>& beta_grid,
                           const std::vector<double>& h_grid, double level = 1e-4,
                           const RunOptions& options = {});

struct ThresholdRequest {
  Scenario base;
  std::vector<double> beta_grid;
  std::vector<double> h_grid;
  double level = 1e-4;
};
ThresholdRequest parse_threshold_request(const std::string& json_text);
std::string threshold_map_json(const ThresholdMap& m);

}  // namespace qwit
