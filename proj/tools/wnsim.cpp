// Scenario runner for product-of-exponentials coordinates on SU(N):
// integrates the coordinate system against its direct-propagator oracle,
// analyzes gate universality over sampled singular loci, and sweeps
// scalar config parameters.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wn/scenario.hpp"
#include "wn/state_analysis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSingular = 2;

std::string resolve_output_dir(const wn::ScenarioConfig& cfg,
                               const std::string& cli_override) {
  if (!cli_override.empty()) return cli_override;
  if (const char* env = std::getenv("WNSIM_OUTPUT_DIR")) {
    if (*env) return env;
  }
  return cfg.output.dir;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const wn::ScenarioConfig cfg = wn::load_scenario(config_path);
  const wn::RunResult result = wn::run_scenario(cfg);
  const std::string report_path =
      wn::write_outputs(cfg, result, resolve_output_dir(cfg, out_dir));
  std::cout << "report: " << report_path << "\n";
  std::cout << "frobenius_discrepancy: "
            << wn::format_g17(result.report.frobenius_discrepancy) << "\n";
  std::cout << "state_error_phase_insensitive: "
            << wn::format_g17(result.report.state_error_phase_insensitive) << "\n";
  std::cout << "chart_switches: " << result.report.events.size() << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& config_path, bool universality, unsigned seed,
                int samples, const std::string& out_dir,
                const std::string& out_file) {
  if (!universality) {
    throw wn::ConfigError("analyze requires --universality");
  }
  const wn::ScenarioConfig cfg = wn::load_scenario(config_path);
  const auto basis = wn::make_su_basis(cfg.N);
  const wn::QuantumState psi0{Eigen::VectorXcd(cfg.psi0)};

  const bool zyz_like =
      basis->dim_rep() == 2 && wn::is_repeated_pair_order(cfg.order);
  const wn::SingularSampler sampler =
      zyz_like ? wn::SingularSampler(wn::zyz_slice_sampler)
               : wn::SingularSampler(wn::det_bisection_sampler);
  const wn::IsotropyReport report = wn::universality_check(
      basis, cfg.order, psi0, sampler, samples, seed);

  namespace fs = std::filesystem;
  const fs::path dir = resolve_output_dir(cfg, out_dir);
  fs::create_directories(dir);
  const fs::path path = out_file.empty() ? dir / "universality.txt" : fs::path(out_file);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report.to_text();

  std::cout << report.to_text();
  std::cout << "report: " << path.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& params,
              const std::vector<std::string>& value_lists, const std::string& out_dir,
              const std::string& out_file) {
  if (params.size() != value_lists.size()) {
    throw wn::ConfigError("each --param needs a matching --values list");
  }
  const wn::ScenarioConfig cfg = wn::load_scenario(config_path);

  std::vector<wn::SweepParameter> specs;
  for (size_t k = 0; k < params.size(); ++k) {
    wn::SweepParameter spec;
    spec.path = params[k];
    std::string cur;
    for (char c : value_lists[k]) {
      if (c == ',') {
        spec.values.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    if (!cur.empty()) spec.values.push_back(cur);
    specs.push_back(std::move(spec));
  }

  const wn::SweepResult result = wn::sweep_scenario(cfg, specs);

  namespace fs = std::filesystem;
  const fs::path dir = resolve_output_dir(cfg, out_dir);
  fs::create_directories(dir);
  const fs::path path = out_file.empty() ? dir / "sweep.csv" : fs::path(out_file);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << result.to_csv();

  std::cout << result.to_csv();
  std::cout << "sweep: " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"product-of-exponentials coordinate simulator for SU(N)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned seed = 12345;
  int samples = 400;
  bool universality = false;
  std::string out_file;
  std::vector<std::string> params;
  std::vector<std::string> value_lists;

  CLI::App* run = app.add_subcommand("run", "integrate a scenario and compare routes");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--output-dir", out_dir, "output directory override");

  CLI::App* analyze = app.add_subcommand("analyze", "universality over the singular locus");
  analyze->add_option("config", config_path, "scenario config file")->required();
  analyze->add_flag("--universality", universality, "run the universality check");
  analyze->add_option("--seed", seed, "sampler seed");
  analyze->add_option("--samples", samples, "number of singular-locus samples");
  analyze->add_option("--output-dir", out_dir, "output directory override");
  analyze->add_option("--output", out_file, "report file path");

  CLI::App* sweep = app.add_subcommand("sweep", "grid over one or two scalar fields");
  sweep->add_option("config", config_path, "scenario config file")->required();
  sweep->add_option("--param", params, "config path, e.g. system.step or drift.a.3");
  sweep->add_option("--values", value_lists, "comma list of values for the parameter");
  sweep->add_option("--output-dir", out_dir, "output directory override");
  sweep->add_option("--output", out_file, "aggregate CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (analyze->parsed()) {
      return cmd_analyze(config_path, universality, seed, samples, out_dir, out_file);
    }
    if (sweep->parsed()) {
      return cmd_sweep(config_path, params, value_lists, out_dir, out_file);
    }
  } catch (const wn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wn::UnrecoverableSingularity& e) {
    std::cerr << "unrecoverable singularity: " << e.what() << "\n";
    return kExitSingular;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
