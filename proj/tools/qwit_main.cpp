// qwit: sweeps, threshold maps, theorem checks and one-off witnessing.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "qwit/errors.hpp"
#include "qwit/scenario.hpp"
#include "qwit/verify.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("qwit");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("QW_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::info);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qwit::InvalidArgument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    qwit::write_file_atomic(out_path, content);
    spdlog::info("wrote {}", out_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Entanglement witnessing for spin-chain states"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  unsigned workers = std::max(1U, std::thread::hardware_concurrency());
  std::optional<std::uint64_t> seed;
  bool cap_override = false;
  app.add_option("--config", config, "Scenario JSON");
  app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Override the scenario seed");
  app.add_flag("--cap-override", cap_override, "Run past the dimension caps");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  sweep->add_option("config", config, "Scenario JSON");

  auto* thresholds = app.add_subcommand("thresholds", "Compute a (beta, h) threshold map as JSON");
  thresholds->add_option("config", config, "Threshold JSON");

  int verify_seeds = 100;
  auto* verify = app.add_subcommand("verify", "Run the theorem and property suite");
  verify->add_option("--seeds", verify_seeds, "Random ensembles per flavor and size")
      ->check(CLI::PositiveNumber);

  std::string state_file;
  auto* witness = app.add_subcommand("witness", "Witness one density matrix from a state file");
  witness->add_option("state-file", state_file, "dim, then dim^2 lines 're im'")->required();
  witness->add_option("config", config, "Scenario JSON with model.L, bipartition and rotation");

  CLI11_PARSE(app, argc, argv);

  qwit::RunOptions options;
  options.workers = workers;
  options.cap_override = cap_override;
  options.warn = [](const std::string& msg) { spdlog::warn("{}", msg); };

  try {
    if (*sweep) {
      if (config.empty()) throw qwit::InvalidArgument("sweep needs a config file");
      qwit::Scenario s = qwit::load_scenario(config);
      if (seed) s.seed = *seed;
      spdlog::info("sweep '{}': {} points over {}", s.name, s.sweep.values.size(), s.sweep.parameter);
      const qwit::SweepResult r = qwit::run_scenario(s, options);
      std::ostringstream csv;
      qwit::write_csv(csv, s, r);
      emit(out, csv.str());
    } else if (*thresholds) {
      if (config.empty()) throw qwit::InvalidArgument("thresholds needs a config file");
      const qwit::ThresholdRequest req = qwit::parse_threshold_request(read_file(config));
      spdlog::info("threshold map: {} beta x {} h", req.beta_grid.size(), req.h_grid.size());
      const qwit::ThresholdMap m =
          qwit::threshold_map(req.base, req.beta_grid, req.h_grid, req.level, options);
      emit(out, qwit::threshold_map_json(m) + "\n");
    } else if (*verify) {
      qwit::VerifyOptions vo;
      vo.seeds = verify_seeds;
      if (seed) vo.base_seed = *seed;
      const auto results = qwit::run_verification(vo);
      int failed = 0;
      std::ostringstream report;
      for (const auto& c : results) {
        report << (c.passed ? "PASS " : "FAIL ") << c.name << "  (worst " << c.measured
               << ", tol " << c.tolerance << ")\n";
        if (!c.detail.empty()) report << "     " << c.detail << (c.detail.back() == '\n' ? "" : "\n");
        failed += c.passed ? 0 : 1;
      }
      report << results.size() - failed << "/" << results.size() << " checks passed\n";
      emit(out, report.str());
      return failed == 0 ? 0 : 1;
    } else if (*witness) {
      const qwit::DensityMatrix rho = qwit::read_state_file(state_file);
      qwit::Scenario s;
      if (!config.empty()) {
        s = qwit::load_scenario(config, false);
      } else {
        int sites = 0;
        while ((qwit::Index{1} << sites) < rho.dim()) ++sites;
        s.model.L = sites;
      }
      if ((qwit::Index{1} << s.model.L) != rho.dim()) {
        throw qwit::DimensionMismatch("state dimension " + std::to_string(rho.dim()) +
                                      " does not match 2^L with L = " + std::to_string(s.model.L));
      }
      const int la = s.sites_a_or_default();
      const auto part = qwit::Bipartition::qubits(la, s.model.L - la);
      const auto rotations = qwit::scenario_rotations(s);
      const auto r = qwit::evaluate_all(rho, part, qwit::subsystem_magnetization(la),
                                        qwit::subsystem_magnetization(s.model.L - la),
                                        rotations.first, rotations.second);
      emit(out, qwit::witness_json(r) + "\n");
    }
  } catch (const qwit::Error& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("unexpected failure: {}", e.what());
    return 3;
  }
  return 0;
}
