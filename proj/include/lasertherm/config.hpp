#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lasertherm/boundary.hpp"
#include "lasertherm/material.hpp"
#include "lasertherm/mesh.hpp"
#include "lasertherm/source.hpp"
#include "lasertherm/stepper.hpp"

namespace lts {

/// Surface probe position on the irradiated (z = 0) face.
struct Probe {
  std::string id;
  double x = 0.0;  // cm
  double y = 0.0;  // cm
};

enum class SnapshotFormat { Binary, Vtk };

struct OutputSettings {
  std::filesystem::path directory = ".";
  std::string probe_csv = "probes.csv";
  double snapshot_every = 0.0;  // s, 0 disables surface snapshots
  std::string snapshot_prefix = "surface";
  SnapshotFormat snapshot_format = SnapshotFormat::Binary;
};

/// Boundary setup as configured. The experiment preset covers all six face
/// sets (deep face heat sink, five natural-convection faces); explicit
/// per-face entries override preset faces individually.
struct BoundaryConfig {
  bool experiment_preset = false;
  std::map<std::string, FaceCondition> faces;
  std::optional<double> sink_temperature;  // preset sink, defaults to initial temperature
  bool scale_at_incidence_point = false;
};

struct SimulationConfig {
  GridDims mesh_dims;
  Vec3 extent = Vec3::Zero();        // cm
  std::optional<Vec3> origin;        // cm; default centers x/y with the surface at z = 0
  MaterialProperties material;
  BoundaryConfig boundary;
  LaserParams laser;
  SolverSettings solver;             // includes the time step
  double duration = 0.0;             // s
  double initial_temperature = 0.0;  // degC
  std::vector<Probe> probes;
  OutputSettings output;

  Vec3 resolved_origin() const {
    return origin ? *origin : Vec3(-0.5 * extent.x(), -0.5 * extent.y(), 0.0);
  }

  /// Number of time steps covering the duration: ceil(duration / dt), with
  /// a small tolerance so exact multiples do not round up.
  int step_count() const {
    return static_cast<int>(std::ceil(duration / solver.dt - 1e-9));
  }
};

/// "section.key" paths with replacement values, applied after parsing and
/// before validation.
using ConfigOverride = std::pair<std::string, std::string>;

/// Splits a command line "section.key=value" override. Throws
/// lts::ConfigError when the shape is wrong.
ConfigOverride parse_override(std::string_view text);

/// Parses and validates configuration text. `source_name` labels error
/// messages. Throws lts::ConfigError with section, key and line information
/// on any parse or validation failure.
SimulationConfig parse_config(std::string_view text, std::string_view source_name,
                              const std::vector<ConfigOverride>& overrides = {});

/// Reads a config file. Throws lts::IoError when the file cannot be read.
SimulationConfig load_config(const std::filesystem::path& path,
                             const std::vector<ConfigOverride>& overrides = {});

/// Re-checks every cross-field rule on an already-built config.
void validate_config(const SimulationConfig& config);

}  // namespace lts
