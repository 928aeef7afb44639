#pragma once

#include <filesystem>
#include <vector>

#include "lasertherm/config.hpp"
#include "lasertherm/series.hpp"

namespace lts {

struct RunResult {
  std::vector<ProbeSeries> probes;            // one per configured probe, every step
  std::filesystem::path probe_csv;            // written trace file
  std::vector<std::filesystem::path> snapshots;
  double wall_seconds = 0.0;
};

/// Runs the configured simulation end to end: builds the mesh, assembles the
/// system, integrates over time, samples probes every step and writes the
/// probe CSV (plus surface snapshots when enabled) under the output
/// directory. Deterministic with the direct solver: identical configs yield
/// byte-identical files.
RunResult run(const SimulationConfig& config);

/// Writes traces sharing one time grid as CSV: header time_s,<id>_C,...
void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<ProbeSeries>& series);

/// Reads a probe CSV in the same layout: first column time, one column per
/// trace, one header row. Column names become series ids.
std::vector<ProbeSeries> read_probe_csv(const std::filesystem::path& path);

}  // namespace lts
