#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wn/control_schedule.hpp"
#include "wn/integrate.hpp"
#include "wn/propagator.hpp"

namespace wn {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Key-value document with [section] headers; preserves section and key
// order so that serialize/parse round-trips exactly.
struct ConfigDoc {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections;

  const std::string* find(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);
  // "section.key" or "section.key.i" with a 1-based comma-list index
  void set_path(const std::string& path, const std::string& value);
};

ConfigDoc parse_config_text(const std::string& text);
std::string serialize_config(const ConfigDoc& doc);

struct OutputConfig {
  std::string dir = "out";
  std::string gamma_csv = "gamma.csv";
  std::string state_csv = "state.csv";
  std::string report = "report.txt";
};

// Fully typed scenario: system, schedule, initial state, policy, outputs.
struct ScenarioConfig {
  int N = 2;
  std::vector<int> order;  // 0-based
  double horizon = 1.0;
  double step = 1e-3;
  Eigen::VectorXd drift;
  std::vector<ControlChannel> controls;
  Eigen::VectorXcd psi0;
  IntegrateOptions options;
  OutputConfig output;
  ConfigDoc doc;  // source document, kept for sweeps and round-trips
};

ScenarioConfig config_from_doc(const ConfigDoc& doc);
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

struct RunReport {
  std::string status = "ok";
  int N = 0;
  std::vector<int> order;
  double horizon = 0.0;
  double step = 0.0;
  Eigen::VectorXd final_gamma;
  Eigen::MatrixXcd final_unitary_gamma_route;
  Eigen::MatrixXcd final_unitary_oracle;
  double frobenius_discrepancy = 0.0;
  double state_error_phase_insensitive = 0.0;
  double min_abs_det_xi = 0.0;
  std::vector<ChartEvent> events;
  double wall_time_s = 0.0;

  std::string to_text() const;
};

struct RunResult {
  RunReport report;
  GammaTrajectory gamma_trajectory;
  UnitaryTrajectory oracle_trajectory;
  Eigen::VectorXcd psi0;
};

// Integrates the coordinate system and the direct propagator, compares the
// final elements and states. Throws ConfigError on inconsistent input and
// UnrecoverableSingularity when the chart policy cannot proceed.
RunResult run_scenario(const ScenarioConfig& cfg);

std::string gamma_csv_text(const GammaTrajectory& traj);
std::string state_csv_text(const GammaTrajectory& traj, const Eigen::VectorXcd& psi0);

// Writes gamma/state CSVs and the report under dir (created if absent);
// returns the report path.
std::string write_outputs(const ScenarioConfig& cfg, const RunResult& result,
                          const std::string& dir_override = "");

struct SweepParameter {
  std::string path;                 // ConfigDoc path
  std::vector<std::string> values;  // textual values, substituted verbatim
};

struct SweepRow {
  std::vector<std::string> values;
  std::string status;
  double frobenius_discrepancy = 0.0;
  double state_error = 0.0;
  double min_abs_det_xi = 0.0;
  size_t chart_switches = 0;
  double first_switch_time = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
  std::vector<std::string> param_names;
  std::vector<SweepRow> rows;

  std::string to_csv() const;
};

// Cross product over one or two swept parameters; failed rows record their
// status and the sweep continues.
SweepResult sweep_scenario(const ScenarioConfig& base,
                           const std::vector<SweepParameter>& params);

// Formats a double with enough digits to round-trip exactly.
std::string format_g17(double x);

}  // namespace wn
