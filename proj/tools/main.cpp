#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lasertherm/config.hpp"
#include "lasertherm/errors.hpp"
#include "lasertherm/log.hpp"
#include "lasertherm/material.hpp"
#include "lasertherm/series.hpp"
#include "lasertherm/sim.hpp"

namespace {

std::vector<lts::ConfigOverride> collect_overrides(const std::vector<std::string>& sets,
                                                   const std::string& output_dir) {
  std::vector<lts::ConfigOverride> overrides;
  overrides.reserve(sets.size() + 1);
  for (const std::string& text : sets) {
    overrides.push_back(lts::parse_override(text));
  }
  if (!output_dir.empty()) {
    overrides.emplace_back("output.dir", output_dir);
  }
  return overrides;
}

int run_command(const std::string& config_path, const std::vector<std::string>& sets,
                const std::string& output_dir) {
  const auto config = lts::load_config(config_path, collect_overrides(sets, output_dir));
  const lts::RunResult result = lts::run(config);
  std::printf("%s\n", result.probe_csv.string().c_str());
  for (const auto& snapshot : result.snapshots) {
    std::printf("%s\n", snapshot.string().c_str());
  }
  return 0;
}

int validate_command(const std::string& config_path, const std::vector<std::string>& sets,
                     const std::string& output_dir) {
  const auto config = lts::load_config(config_path, collect_overrides(sets, output_dir));
  std::printf("OK: %s\n", config_path.c_str());
  std::printf("  mesh: %d x %d x %d elements over (%g, %g, %g) cm\n", config.mesh_dims.nx,
              config.mesh_dims.ny, config.mesh_dims.nz, config.extent.x(),
              config.extent.y(), config.extent.z());
  std::printf("  time: %d steps of %g s\n", config.step_count(), config.solver.dt);
  std::printf("  probes: %zu\n", config.probes.size());
  return 0;
}

int compare_command(const std::string& path_a, const std::string& path_b) {
  const auto series_a = lts::read_probe_csv(path_a);
  const auto series_b = lts::read_probe_csv(path_b);
  if (series_a.size() != series_b.size()) {
    throw lts::ConfigError("trace count mismatch: " + std::to_string(series_a.size()) +
                           " vs " + std::to_string(series_b.size()));
  }

  double sum = 0.0;
  for (size_t i = 0; i < series_a.size(); ++i) {
    const lts::ProbeSeries& a = series_a[i];
    const lts::ProbeSeries& b = series_b[i];

    double value = 0.0;
    if (a.times == b.times) {
      value = lts::rmse(a, b);
    } else {
      const double start = std::max(a.times.front(), b.times.front());
      const double stop = std::min(a.times.back(), b.times.back());
      if (!(start < stop)) {
        throw lts::ConfigError("traces '" + a.id + "' and '" + b.id +
                               "' have no overlapping time range");
      }
      std::vector<double> grid;
      lts::ProbeSeries a_overlap;
      a_overlap.id = a.id;
      for (size_t s = 0; s < a.times.size(); ++s) {
        if (a.times[s] >= start && a.times[s] <= stop) {
          a_overlap.times.push_back(a.times[s]);
          a_overlap.temperatures.push_back(a.temperatures[s]);
        }
      }
      value = lts::rmse(a_overlap, lts::resample(b, a_overlap.times));
    }
    std::printf("rmse %s vs %s: %.6g C\n", a.id.c_str(), b.id.c_str(), value);
    sum += value;
  }
  std::printf("mean rmse: %.6g C\n", sum / static_cast<double>(series_a.size()));
  return 0;
}

int preset_command(const std::string& tissue) {
  const lts::MaterialProperties m = lts::preset(tissue);
  std::printf("tissue: %s\n", tissue.c_str());
  std::printf("mu_a_per_cm: %g\n", m.absorption);
  std::printf("c_v_J_per_cm3C: %g\n", m.heat_capacity);
  std::printf("kappa_W_per_cmC: %g\n", m.conductivity);
  std::printf("h_W_per_cm2C: %g\n", m.heat_transfer);
  std::printf("t_ambient_C: %g\n", m.ambient);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-element thermal simulation of laser-irradiated soft tissue"};
  app.require_subcommand(1);

  std::string log_level = "info";
  app.add_option("--log-level", log_level, "debug, info, warn, error, off")
      ->capture_default_str();

  std::string run_config, run_output_dir;
  std::vector<std::string> run_sets;
  auto* run_cmd = app.add_subcommand("run", "Execute a simulation");
  run_cmd->add_option("config", run_config, "Config file")->required();
  run_cmd->add_option("--set", run_sets, "Override: section.key=value");
  run_cmd->add_option("--output-dir", run_output_dir, "Write outputs to this directory");

  std::string validate_config_path, validate_output_dir;
  std::vector<std::string> validate_sets;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config without running");
  validate_cmd->add_option("config", validate_config_path, "Config file")->required();
  validate_cmd->add_option("--set", validate_sets, "Override: section.key=value");
  validate_cmd->add_option("--output-dir", validate_output_dir,
                           "Directory override applied before validation");

  std::string compare_a, compare_b;
  auto* compare_cmd = app.add_subcommand("compare", "RMSE between two probe CSV files");
  compare_cmd->add_option("series_a", compare_a, "First CSV")->required();
  compare_cmd->add_option("series_b", compare_b, "Second CSV")->required();

  std::string preset_tissue;
  auto* preset_cmd = app.add_subcommand("preset", "Print a tissue property set");
  preset_cmd->add_option("tissue", preset_tissue, "agar or chicken")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    lts::log::set_level(lts::log::level_from_name(log_level));
    if (run_cmd->parsed()) return run_command(run_config, run_sets, run_output_dir);
    if (validate_cmd->parsed()) {
      return validate_command(validate_config_path, validate_sets, validate_output_dir);
    }
    if (compare_cmd->parsed()) return compare_command(compare_a, compare_b);
    if (preset_cmd->parsed()) return preset_command(preset_tissue);
  } catch (const lts::SolverError& e) {
    lts::log::error(e.what());
    return 2;
  } catch (const lts::IoError& e) {
    lts::log::error(e.what());
    return 3;
  } catch (const lts::ConfigError& e) {
    lts::log::error(e.what());
    return 1;
  } catch (const std::exception& e) {
    lts::log::error(e.what());
    return 1;
  }
  return 0;
}
