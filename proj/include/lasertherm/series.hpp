#pragma once

#include <string>
#include <vector>

namespace lts {

/// One probe's temperature trace, temperatures[i] sampled at times[i].
struct ProbeSeries {
  std::string id;
  std::vector<double> times;         // s, strictly increasing
  std::vector<double> temperatures;  // degC
};

/// Root-mean-square difference of two traces on the same time grid.
/// Throws std::invalid_argument when the grids differ or are empty.
double rmse(const ProbeSeries& a, const ProbeSeries& b);

/// Linear interpolation of a trace onto new sample times. Throws
/// std::invalid_argument when a requested time falls outside the trace.
ProbeSeries resample(const ProbeSeries& series, const std::vector<double>& times);

}  // namespace lts
