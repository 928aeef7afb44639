#include "lasertherm/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "lasertherm/errors.hpp"
#include "lasertherm/log.hpp"
#include "lasertherm/source.hpp"

namespace lts {

namespace {

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

BoundarySpec resolve_boundaries(const SimulationConfig& config, const Mesh& mesh) {
  BoundarySpec spec;
  if (config.boundary.experiment_preset) {
    const double sink =
        config.boundary.sink_temperature.value_or(config.initial_temperature);
    spec = experiment_boundaries(mesh, config.material, sink);
  }
  for (const auto& [name, condition] : config.boundary.faces) {
    spec.set(face_from_name(name), condition);
  }
  if (config.boundary.scale_at_incidence_point) {
    // Nearest top-surface node to the beam axis.
    int best = -1;
    double best_distance = std::numeric_limits<double>::infinity();
    const auto& xs = mesh.axis_coords(0);
    const auto& ys = mesh.axis_coords(1);
    for (int j = 0; j <= mesh.dims().ny; ++j) {
      for (int i = 0; i <= mesh.dims().nx; ++i) {
        const double dx = xs[static_cast<size_t>(i)] - config.laser.center[0];
        const double dy = ys[static_cast<size_t>(j)] - config.laser.center[1];
        const double distance = dx * dx + dy * dy;
        if (distance < best_distance) {
          best_distance = distance;
          best = mesh.node_index(i, j, 0);
        }
      }
    }
    spec.natural_reference_node = best;
  }
  return spec;
}

Eigen::VectorXd surface_temperatures(const Mesh& mesh, const Eigen::VectorXd& field) {
  const int nx = mesh.dims().nx + 1;
  const int ny = mesh.dims().ny + 1;
  Eigen::VectorXd surface(nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      surface(i + nx * j) = field(mesh.node_index(i, j, 0));
    }
  }
  return surface;
}

std::filesystem::path write_snapshot(const SimulationConfig& config, const Mesh& mesh,
                                     const Eigen::VectorXd& field, long step, double time) {
  const int nx = mesh.dims().nx + 1;
  const int ny = mesh.dims().ny + 1;
  const Eigen::VectorXd surface = surface_temperatures(mesh, field);

  char suffix[32];
  std::snprintf(suffix, sizeof(suffix), "_%06ld", step);
  const std::string stem = config.output.snapshot_prefix + suffix;

  if (config.output.snapshot_format == SnapshotFormat::Binary) {
    const auto data_path = config.output.directory / (stem + ".f64");
    {
      std::ofstream out(data_path, std::ios::binary);
      if (!out) throw IoError("cannot open snapshot file '" + data_path.string() + "'");
      out.write(reinterpret_cast<const char*>(surface.data()),
                static_cast<std::streamsize>(sizeof(double)) * surface.size());
      if (!out) throw IoError("failed writing snapshot '" + data_path.string() + "'");
    }
    const auto header_path = config.output.directory / (stem + ".hdr");
    std::ofstream hdr(header_path);
    if (!hdr) throw IoError("cannot open snapshot header '" + header_path.string() + "'");
    hdr << "lasertherm surface snapshot\n";
    hdr << "data: " << stem << ".f64\n";
    hdr << "time_s: " << format_number(time) << "\n";
    hdr << "grid_nodes: " << nx << " " << ny << "\n";
    hdr << "origin_cm: " << format_number(mesh.origin().x()) << " "
        << format_number(mesh.origin().y()) << "\n";
    hdr << "spacing_cm: " << format_number(mesh.spacing().x()) << " "
        << format_number(mesh.spacing().y()) << "\n";
    hdr << "layout: row-major, x fastest, float64 little-endian\n";
    if (!hdr) throw IoError("failed writing snapshot header '" + header_path.string() + "'");
    return data_path;
  }

  const auto path = config.output.directory / (stem + ".vtk");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open snapshot file '" + path.string() + "'");
  out << "# vtk DataFile Version 3.0\n";
  out << "surface temperature at t = " << format_number(time) << " s\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << nx << " " << ny << " 1\n";
  out << "ORIGIN " << format_number(mesh.origin().x()) << " "
      << format_number(mesh.origin().y()) << " 0\n";
  out << "SPACING " << format_number(mesh.spacing().x()) << " "
      << format_number(mesh.spacing().y()) << " 1\n";
  out << "POINT_DATA " << surface.size() << "\n";
  out << "SCALARS temperature_C double\n";
  out << "LOOKUP_TABLE default\n";
  for (Eigen::Index i = 0; i < surface.size(); ++i) {
    out << format_number(surface(i)) << "\n";
  }
  if (!out) throw IoError("failed writing snapshot '" + path.string() + "'");
  return path;
}

}  // namespace

RunResult run(const SimulationConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();

  const Mesh mesh = build_grid(config.mesh_dims, config.extent, config.resolved_origin());
  log::info("mesh: ", mesh.dims().nx, " x ", mesh.dims().ny, " x ", mesh.dims().nz,
            " elements (", mesh.node_count(), " nodes)");

  const BoundarySpec boundaries = resolve_boundaries(config, mesh);
  const DirichletSpec dirichlet = dirichlet_faces(boundaries);
  const SystemMatrices system = assemble(mesh, config.material, dirichlet);
  log::info("assembled system: ", system.free_nodes.size(), " free nodes, ",
            system.prescribed_nodes.size(), " prescribed");

  Eigen::VectorXd laser_load = Eigen::VectorXd::Zero(mesh.node_count());
  if (config.laser.power > 0.0) {
    const Eigen::VectorXd profile =
        heating_profile(mesh, config.laser, config.material.absorption);
    laser_load = (system.mass * profile) / config.material.heat_capacity;
  }

  const CrankNicolson stepper(system, config.solver);
  log::info("step operator factorized (dt = ", config.solver.dt, " s)");

  Eigen::VectorXd initial =
      Eigen::VectorXd::Constant(mesh.node_count(), config.initial_temperature);
  system.apply_prescribed(initial);
  Eigen::VectorXd load = boundary_load(mesh, boundaries, initial);
  if (laser_active(config.laser, 0.0)) load += laser_load;
  SimulationState state = stepper.init_state(initial, load);

  const double surface_z = mesh.origin().z();
  std::vector<LocatedPoint> probe_points;
  probe_points.reserve(config.probes.size());
  for (const Probe& probe : config.probes) {
    probe_points.push_back(locate(mesh, Vec3(probe.x, probe.y, surface_z)));
  }

  const int steps = config.step_count();
  RunResult result;
  result.probes.resize(config.probes.size());
  for (size_t p = 0; p < config.probes.size(); ++p) {
    result.probes[p].id = config.probes[p].id;
    result.probes[p].times.reserve(static_cast<size_t>(steps) + 1);
    result.probes[p].temperatures.reserve(static_cast<size_t>(steps) + 1);
  }

  std::error_code ec;
  std::filesystem::create_directories(config.output.directory, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + config.output.directory.string() +
                  "': " + ec.message());
  }

  const long snapshot_stride =
      config.output.snapshot_every > 0.0
          ? std::lround(config.output.snapshot_every / config.solver.dt)
          : 0;

  auto record = [&](const SimulationState& now) {
    for (size_t p = 0; p < probe_points.size(); ++p) {
      result.probes[p].times.push_back(now.time);
      result.probes[p].temperatures.push_back(
          sample_field(mesh, probe_points[p], now.temperatures));
    }
    if (snapshot_stride > 0 && now.step % snapshot_stride == 0) {
      result.snapshots.push_back(
          write_snapshot(config, mesh, now.temperatures, now.step, now.time));
    }
  };

  record(state);
  const int report_stride = std::max(steps / 10, 1);
  for (int n = 1; n <= steps; ++n) {
    const double t_next = static_cast<double>(n) * config.solver.dt;
    load = boundary_load(mesh, boundaries, state.temperatures);
    if (laser_active(config.laser, t_next)) load += laser_load;
    stepper.step(state, load);
    record(state);
    if (n % report_stride == 0) {
      log::debug("step ", n, "/", steps, " (t = ", state.time, " s)");
    }
  }

  result.probe_csv = config.output.directory / config.output.probe_csv;
  write_probe_csv(result.probe_csv, result.probes);

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log::info("run complete: ", steps, " steps in ", result.wall_seconds, " s, wrote ",
            result.probe_csv.string());
  return result;
}

void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<ProbeSeries>& series) {
  for (size_t s = 1; s < series.size(); ++s) {
    if (series[s].times != series[0].times) {
      throw std::invalid_argument("probe series must share one time grid");
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");

  out << "time_s";
  for (const ProbeSeries& trace : series) {
    out << "," << trace.id << "_C";
  }
  out << "\n";

  const size_t rows = series.empty() ? 0 : series[0].times.size();
  for (size_t row = 0; row < rows; ++row) {
    out << format_number(series[0].times[row]);
    for (const ProbeSeries& trace : series) {
      out << "," << format_number(trace.temperatures[row]);
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<ProbeSeries> read_probe_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) {
      // Trim spaces and a trailing carriage return.
      const auto begin = cell.find_first_not_of(" \t\r");
      const auto end = cell.find_last_not_of(" \t\r");
      cells.push_back(begin == std::string::npos
                          ? std::string()
                          : cell.substr(begin, end - begin + 1));
    }
    return cells;
  };

  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("'" + path.string() + "' is empty");
  }
  const auto header = split(line);
  if (header.size() < 2) {
    throw ConfigError("'" + path.string() + "' needs a time column and at least one trace");
  }

  std::vector<ProbeSeries> series(header.size() - 1);
  for (size_t s = 0; s < series.size(); ++s) {
    series[s].id = header[s + 1];
  }

  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ConfigError("'" + path.string() + "' line " + std::to_string(line_number) +
                        ": expected " + std::to_string(header.size()) + " columns, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> values;
    values.reserve(cells.size());
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw ConfigError("'" + path.string() + "' line " + std::to_string(line_number) +
                          ": not a number: '" + cell + "'");
      }
      values.push_back(value);
    }
    for (size_t s = 0; s < series.size(); ++s) {
      series[s].times.push_back(values[0]);
      series[s].temperatures.push_back(values[s + 1]);
    }
  }
  if (series[0].times.empty()) {
    throw ConfigError("'" + path.string() + "' contains no data rows");
  }
  return series;
}

}  // namespace lts
