#include "lasertherm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lasertherm/errors.hpp"

namespace lts {

namespace {

constexpr const char* kKnownSections[] = {"mesh",   "material", "boundary",
                                          "laser",  "time",     "solver",
                                          "initial", "probes",  "output"};

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

struct RawEntry {
  std::string key;
  std::string value;
  int line = 0;
  bool consumed = false;
};

struct RawSection {
  std::string name;
  int line = 0;
  std::vector<RawEntry> entries;
};

struct RawConfig {
  std::string source;
  std::vector<RawSection> sections;

  RawSection* find(std::string_view name) {
    for (auto& section : sections) {
      if (section.name == name) return &section;
    }
    return nullptr;
  }
};

RawConfig parse_ini(std::string_view text, std::string_view source_name) {
  RawConfig raw;
  raw.source = std::string(source_name);

  std::istringstream stream{std::string(text)};
  std::string line;
  int line_number = 0;
  RawSection* current = nullptr;

  while (std::getline(stream, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string content = trim(line);
    if (content.empty()) continue;

    if (content.front() == '[') {
      if (content.back() != ']') {
        throw ConfigError(raw.source + ":" + std::to_string(line_number) +
                          ": unterminated section header");
      }
      const std::string name = trim(content.substr(1, content.size() - 2));
      if (name.empty()) {
        throw ConfigError(raw.source + ":" + std::to_string(line_number) +
                          ": empty section name");
      }
      if (raw.find(name) != nullptr) {
        throw ConfigError(raw.source + ":" + std::to_string(line_number) +
                          ": duplicate section [" + name + "]");
      }
      raw.sections.push_back({name, line_number, {}});
      current = &raw.sections.back();
      continue;
    }

    const auto equals = content.find('=');
    if (equals == std::string::npos) {
      throw ConfigError(raw.source + ":" + std::to_string(line_number) +
                        ": expected 'key = value' or '[section]'");
    }
    if (current == nullptr) {
      throw ConfigError(raw.source + ":" + std::to_string(line_number) +
                        ": key outside of any section");
    }
    const std::string key = trim(content.substr(0, equals));
    const std::string value = trim(content.substr(equals + 1));
    if (key.empty()) {
      throw ConfigError(raw.source + ":" + std::to_string(line_number) + ": empty key");
    }
    for (const RawEntry& entry : current->entries) {
      if (entry.key == key) {
        throw ConfigError(raw.source + ":" + std::to_string(line_number) +
                          ": duplicate key '" + key + "' in [" + current->name +
                          "] (first on line " + std::to_string(entry.line) + ")");
      }
    }
    current->entries.push_back({key, value, line_number, false});
  }
  return raw;
}

void apply_overrides(RawConfig& raw, const std::vector<ConfigOverride>& overrides) {
  for (const auto& [path, value] : overrides) {
    const auto dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= path.size()) {
      throw ConfigError("override path '" + path + "' must look like section.key");
    }
    const std::string section_name = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);

    RawSection* section = raw.find(section_name);
    if (section == nullptr) {
      raw.sections.push_back({section_name, 0, {}});
      section = &raw.sections.back();
    }
    bool replaced = false;
    for (RawEntry& entry : section->entries) {
      if (entry.key == key) {
        entry.value = value;
        replaced = true;
        break;
      }
    }
    if (!replaced) section->entries.push_back({key, value, 0, false});
  }
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(where + "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, const std::string& where) {
  int value = 0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(where + "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, const std::string& where) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(where + "expected true or false, got '" + std::string(text) + "'");
}

class SectionReader {
 public:
  SectionReader(RawConfig& raw, std::string name)
      : raw_(&raw), name_(std::move(name)), section_(raw.find(name_)) {}

  bool present() const { return section_ != nullptr; }

  std::string context(const std::string& key) const {
    return raw_->source + ": [" + name_ + "] " + key + ": ";
  }

  std::optional<std::string> take(const std::string& key) {
    if (section_ == nullptr) return std::nullopt;
    for (RawEntry& entry : section_->entries) {
      if (entry.key == key) {
        entry.consumed = true;
        return entry.value;
      }
    }
    return std::nullopt;
  }

  std::string require(const std::string& key) {
    auto value = take(key);
    if (!value) throw ConfigError(context(key) + "required key is missing");
    return *value;
  }

  double number(const std::string& key) { return parse_double(require(key), context(key)); }

  double number_or(const std::string& key, double fallback) {
    auto value = take(key);
    return value ? parse_double(*value, context(key)) : fallback;
  }

  bool flag_or(const std::string& key, bool fallback) {
    auto value = take(key);
    return value ? parse_bool(*value, context(key)) : fallback;
  }

  std::string string_or(const std::string& key, std::string fallback) {
    auto value = take(key);
    return value ? *value : std::move(fallback);
  }

  std::vector<double> numbers(const std::string& key, const std::string& value,
                              size_t count) {
    const auto tokens = split_tokens(value);
    if (tokens.size() != count) {
      throw ConfigError(context(key) + "expected " + std::to_string(count) +
                        " numbers, got " + std::to_string(tokens.size()));
    }
    std::vector<double> values;
    values.reserve(count);
    for (const auto& token : tokens) values.push_back(parse_double(token, context(key)));
    return values;
  }

  /// Remaining unconsumed entries, for sections with free-form keys.
  std::vector<RawEntry*> remaining() {
    std::vector<RawEntry*> out;
    if (section_ == nullptr) return out;
    for (RawEntry& entry : section_->entries) {
      if (!entry.consumed) out.push_back(&entry);
    }
    return out;
  }

  void finish() {
    if (section_ == nullptr) return;
    for (const RawEntry& entry : section_->entries) {
      if (!entry.consumed) {
        throw ConfigError(raw_->source + ":" + std::to_string(entry.line) +
                          ": unknown key '" + entry.key + "' in [" + name_ + "]");
      }
    }
  }

 private:
  RawConfig* raw_;
  std::string name_;
  RawSection* section_;
};

SectionReader require_section(RawConfig& raw, const std::string& name) {
  SectionReader reader(raw, name);
  if (!reader.present()) {
    throw ConfigError(raw.source + ": missing required section [" + name + "]");
  }
  return reader;
}

FaceCondition parse_face_condition(const std::string& value, const std::string& where,
                                   const MaterialProperties& material,
                                   double initial_temperature) {
  const auto tokens = split_tokens(value);
  if (tokens.empty()) {
    throw ConfigError(where + "expected a boundary condition");
  }
  if (tokens[0] == "heat_sink") {
    if (tokens.size() == 1) return HeatSink{initial_temperature};
    if (tokens.size() == 2) return HeatSink{parse_double(tokens[1], where)};
    throw ConfigError(where + "heat_sink takes at most one temperature");
  }
  if (tokens[0] == "constant_flux") {
    if (tokens.size() != 2) {
      throw ConfigError(where + "constant_flux requires one flux value in W/cm^2");
    }
    return ConstantFlux{parse_double(tokens[1], where)};
  }
  if (tokens[0] == "convection") {
    if (tokens.size() != 2 || (tokens[1] != "constant" && tokens[1] != "natural")) {
      throw ConfigError(where + "convection requires a mode: constant or natural");
    }
    const auto mode =
        tokens[1] == "natural" ? ConvectionMode::Natural : ConvectionMode::Constant;
    return Convection{material.heat_transfer, material.ambient, mode};
  }
  throw ConfigError(where + "unknown condition '" + tokens[0] +
                    "' (expected heat_sink, constant_flux, convection)");
}

MaterialProperties build_material(SectionReader& reader) {
  MaterialProperties material;
  if (auto name = reader.take("preset")) {
    material = preset(*name);
  }
  if (auto water = reader.take("water_content")) {
    const double fraction = parse_double(*water, reader.context("water_content"));
    const double density = reader.number_or("density", 1.0);
    const MaterialProperties fitted = material_from_water_content(fraction, density);
    material.heat_capacity = fitted.heat_capacity;
    material.conductivity = fitted.conductivity;
  }
  if (auto value = reader.take("mu_a")) {
    material.absorption = parse_double(*value, reader.context("mu_a"));
  }
  if (auto value = reader.take("c_v")) {
    material.heat_capacity = parse_double(*value, reader.context("c_v"));
  }
  if (auto value = reader.take("kappa")) {
    material.conductivity = parse_double(*value, reader.context("kappa"));
  }
  if (auto value = reader.take("h")) {
    material.heat_transfer = parse_double(*value, reader.context("h"));
  }
  if (auto value = reader.take("t_ambient")) {
    material.ambient = parse_double(*value, reader.context("t_ambient"));
  }
  return material;
}

SimulationConfig build_config(RawConfig& raw) {
  for (const RawSection& section : raw.sections) {
    const bool known =
        std::any_of(std::begin(kKnownSections), std::end(kKnownSections),
                    [&](const char* name) { return section.name == name; });
    if (!known) {
      throw ConfigError(raw.source + ":" + std::to_string(section.line) +
                        ": unknown section [" + section.name + "]");
    }
  }

  SimulationConfig cfg;

  {
    SectionReader mesh = require_section(raw, "mesh");
    const std::string elements = mesh.require("elements");
    const auto tokens = split_tokens(elements);
    if (tokens.size() != 3) {
      throw ConfigError(mesh.context("elements") + "expected 3 integers");
    }
    cfg.mesh_dims.nx = parse_int(tokens[0], mesh.context("elements"));
    cfg.mesh_dims.ny = parse_int(tokens[1], mesh.context("elements"));
    cfg.mesh_dims.nz = parse_int(tokens[2], mesh.context("elements"));

    const auto extent = mesh.numbers("extent_cm", mesh.require("extent_cm"), 3);
    cfg.extent = Vec3(extent[0], extent[1], extent[2]);
    if (auto value = mesh.take("origin_cm")) {
      const auto origin = mesh.numbers("origin_cm", *value, 3);
      cfg.origin = Vec3(origin[0], origin[1], origin[2]);
    }
    mesh.finish();
  }

  {
    SectionReader initial = require_section(raw, "initial");
    cfg.initial_temperature = initial.number("temperature_c");
    initial.finish();
  }

  {
    SectionReader material = require_section(raw, "material");
    cfg.material = build_material(material);
    material.finish();
  }

  {
    SectionReader laser = require_section(raw, "laser");
    cfg.laser.power = laser.number("power_w");
    cfg.laser.waist = laser.number("waist_cm");
    cfg.laser.wavelength = laser.number_or("wavelength_cm", 10.6e-4);
    cfg.laser.focal_distance = laser.number_or("focal_distance_cm", 0.0);

    const Vec3 origin = cfg.resolved_origin();
    cfg.laser.center = {origin.x() + 0.5 * cfg.extent.x(),
                        origin.y() + 0.5 * cfg.extent.y()};
    if (auto value = laser.take("beam_center_cm")) {
      const auto center = laser.numbers("beam_center_cm", *value, 2);
      cfg.laser.center = {center[0], center[1]};
    }

    if (auto value = laser.take("schedule_s")) {
      const auto tokens = split_tokens(*value);
      if (tokens.size() % 2 != 0 || tokens.empty()) {
        throw ConfigError(laser.context("schedule_s") +
                          "expected an even number of on/off times");
      }
      for (size_t i = 0; i < tokens.size(); i += 2) {
        cfg.laser.schedule.emplace_back(
            parse_double(tokens[i], laser.context("schedule_s")),
            parse_double(tokens[i + 1], laser.context("schedule_s")));
      }
    }

    const std::string normalization = laser.string_or("normalization", "linear_width");
    if (normalization == "linear_width") {
      cfg.laser.normalization = GaussianNormalization::LinearWidth;
    } else if (normalization == "squared_width") {
      cfg.laser.normalization = GaussianNormalization::SquaredWidth;
    } else {
      throw ConfigError(laser.context("normalization") +
                        "expected linear_width or squared_width, got '" + normalization +
                        "'");
    }
    laser.finish();
  }

  {
    SectionReader time = require_section(raw, "time");
    cfg.solver.dt = time.number_or("dt_s", 0.05);
    cfg.duration = time.number("duration_s");
    time.finish();
  }

  {
    SectionReader solver(raw, "solver");
    const std::string method = solver.string_or("method", "direct");
    if (method == "direct") {
      cfg.solver.method = LinearSolverKind::Direct;
    } else if (method == "cg") {
      cfg.solver.method = LinearSolverKind::ConjugateGradient;
    } else {
      throw ConfigError(solver.context("method") + "expected direct or cg, got '" +
                        method + "'");
    }
    cfg.solver.tolerance = solver.number_or("tolerance", 1e-10);
    cfg.solver.max_iterations =
        static_cast<int>(solver.number_or("max_iterations", 5000));
    solver.finish();
  }

  {
    SectionReader boundary(raw, "boundary");
    if (!boundary.present()) {
      cfg.boundary.experiment_preset = true;
    } else {
      if (auto value = boundary.take("preset")) {
        if (*value != "experiment") {
          throw ConfigError(boundary.context("preset") +
                            "unknown boundary preset '" + *value + "'");
        }
        cfg.boundary.experiment_preset = true;
      }
      if (auto value = boundary.take("sink_temperature_c")) {
        cfg.boundary.sink_temperature =
            parse_double(*value, boundary.context("sink_temperature_c"));
      }
      cfg.boundary.scale_at_incidence_point =
          boundary.flag_or("scale_at_incidence_point", false);
      for (Face face : all_faces) {
        const std::string name(face_name(face));
        if (auto value = boundary.take(name)) {
          cfg.boundary.faces[name] = parse_face_condition(
              *value, boundary.context(name), cfg.material, cfg.initial_temperature);
        }
      }
      boundary.finish();
    }
  }

  {
    SectionReader probes(raw, "probes");
    for (RawEntry* entry : probes.remaining()) {
      entry->consumed = true;
      const auto position = probes.numbers(entry->key, entry->value, 2);
      cfg.probes.push_back({entry->key, position[0], position[1]});
    }
  }

  {
    SectionReader output(raw, "output");
    if (auto value = output.take("dir")) {
      cfg.output.directory = *value;
    }
    cfg.output.probe_csv = output.string_or("probe_csv", cfg.output.probe_csv);
    cfg.output.snapshot_every = output.number_or("snapshot_every_s", 0.0);
    cfg.output.snapshot_prefix =
        output.string_or("snapshot_prefix", cfg.output.snapshot_prefix);
    const std::string format = output.string_or("snapshot_format", "binary");
    if (format == "binary") {
      cfg.output.snapshot_format = SnapshotFormat::Binary;
    } else if (format == "vtk") {
      cfg.output.snapshot_format = SnapshotFormat::Vtk;
    } else {
      throw ConfigError(output.context("snapshot_format") +
                        "expected binary or vtk, got '" + format + "'");
    }
    output.finish();
  }

  validate_config(cfg);
  return cfg;
}

}  // namespace

ConfigOverride parse_override(std::string_view text) {
  const auto equals = text.find('=');
  if (equals == std::string_view::npos) {
    throw ConfigError("override '" + std::string(text) +
                      "' must look like section.key=value");
  }
  const std::string path = trim(text.substr(0, equals));
  const std::string value = trim(text.substr(equals + 1));
  const auto dot = path.find('.');
  if (path.empty() || dot == std::string::npos || dot == 0 || dot + 1 >= path.size()) {
    throw ConfigError("override '" + std::string(text) +
                      "' must look like section.key=value");
  }
  return {path, value};
}

SimulationConfig parse_config(std::string_view text, std::string_view source_name,
                              const std::vector<ConfigOverride>& overrides) {
  RawConfig raw = parse_ini(text, source_name);
  apply_overrides(raw, overrides);
  return build_config(raw);
}

SimulationConfig load_config(const std::filesystem::path& path,
                             const std::vector<ConfigOverride>& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream content;
  content << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading config file '" + path.string() + "'");
  }
  return parse_config(content.str(), path.string(), overrides);
}

void validate_config(const SimulationConfig& config) {
  if (config.mesh_dims.nx < 1 || config.mesh_dims.ny < 1 || config.mesh_dims.nz < 1) {
    throw ConfigError("[mesh] elements: each axis needs at least 1 element");
  }
  for (int axis = 0; axis < 3; ++axis) {
    if (!(config.extent[axis] > 0.0) || !std::isfinite(config.extent[axis])) {
      throw ConfigError("[mesh] extent_cm: extents must be strictly positive");
    }
  }

  config.material.validate();

  if (!std::isfinite(config.initial_temperature)) {
    throw ConfigError("[initial] temperature_c: must be finite");
  }

  if (!(config.laser.power >= 0.0) || !std::isfinite(config.laser.power)) {
    throw ConfigError("[laser] power_w: must be non-negative");
  }
  if (!(config.laser.waist > 0.0)) {
    throw ConfigError("[laser] waist_cm: must be strictly positive");
  }
  if (!(config.laser.wavelength > 0.0)) {
    throw ConfigError("[laser] wavelength_cm: must be strictly positive");
  }
  if (!(config.laser.focal_distance >= 0.0)) {
    throw ConfigError("[laser] focal_distance_cm: must be non-negative");
  }
  double previous_off = -std::numeric_limits<double>::infinity();
  for (const auto& [on, off] : config.laser.schedule) {
    if (!(on < off)) {
      throw ConfigError("[laser] schedule_s: each interval needs on < off");
    }
    if (on < previous_off) {
      throw ConfigError("[laser] schedule_s: intervals must be sorted and disjoint");
    }
    previous_off = off;
  }

  if (!(config.solver.dt > 0.0)) {
    throw ConfigError("[time] dt_s: must be strictly positive");
  }
  if (!(config.duration > 0.0) || config.step_count() < 1) {
    throw ConfigError("[time] duration_s: must cover at least one time step");
  }
  if (!(config.solver.tolerance > 0.0)) {
    throw ConfigError("[solver] tolerance: must be strictly positive");
  }
  if (config.solver.max_iterations < 1) {
    throw ConfigError("[solver] max_iterations: must be at least 1");
  }

  if (!config.boundary.experiment_preset) {
    for (Face face : all_faces) {
      if (config.boundary.faces.find(std::string(face_name(face))) ==
          config.boundary.faces.end()) {
        throw ConfigError("[boundary] face set '" + std::string(face_name(face)) +
                          "' has no condition (set preset = experiment or assign all six "
                          "faces)");
      }
    }
  }

  const Vec3 origin = config.resolved_origin();
  for (const Probe& probe : config.probes) {
    const bool inside = probe.x >= origin.x() && probe.x <= origin.x() + config.extent.x() &&
                        probe.y >= origin.y() && probe.y <= origin.y() + config.extent.y();
    if (!inside) {
      std::ostringstream out;
      out << "[probes] " << probe.id << ": position (" << probe.x << ", " << probe.y
          << ") lies outside the top surface";
      throw ConfigError(out.str());
    }
  }

  if (!(config.output.snapshot_every >= 0.0)) {
    throw ConfigError("[output] snapshot_every_s: must be non-negative");
  }
  if (config.output.snapshot_every > 0.0) {
    const double ratio = config.output.snapshot_every / config.solver.dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
      throw ConfigError("[output] snapshot_every_s: must be a positive multiple of dt_s");
    }
  }
  if (config.output.probe_csv.empty()) {
    throw ConfigError("[output] probe_csv: must not be empty");
  }
  if (config.output.snapshot_prefix.empty()) {
    throw ConfigError("[output] snapshot_prefix: must not be empty");
  }
}

}  // namespace lts
