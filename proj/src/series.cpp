#include "lasertherm/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lts {

namespace {

void require_consistent(const ProbeSeries& series) {
  if (series.times.size() != series.temperatures.size()) {
    throw std::invalid_argument("probe series '" + series.id +
                                "' has mismatched time and temperature counts");
  }
  for (size_t i = 1; i < series.times.size(); ++i) {
    if (!(series.times[i] > series.times[i - 1])) {
      throw std::invalid_argument("probe series '" + series.id +
                                  "' times must be strictly increasing");
    }
  }
}

}  // namespace

double rmse(const ProbeSeries& a, const ProbeSeries& b) {
  require_consistent(a);
  require_consistent(b);
  if (a.times.empty() || a.times.size() != b.times.size()) {
    throw std::invalid_argument("rmse requires two non-empty series of equal length");
  }
  double sum = 0.0;
  for (size_t i = 0; i < a.times.size(); ++i) {
    if (a.times[i] != b.times[i]) {
      throw std::invalid_argument("rmse requires identical sample times");
    }
    const double diff = a.temperatures[i] - b.temperatures[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / static_cast<double>(a.times.size()));
}

ProbeSeries resample(const ProbeSeries& series, const std::vector<double>& times) {
  require_consistent(series);
  if (series.times.size() < 2) {
    throw std::invalid_argument("resampling requires at least two samples");
  }

  ProbeSeries out;
  out.id = series.id;
  out.times = times;
  out.temperatures.reserve(times.size());
  for (double t : times) {
    if (t < series.times.front() || t > series.times.back()) {
      throw std::invalid_argument("resample time " + std::to_string(t) +
                                  " lies outside series '" + series.id + "'");
    }
    const auto upper = std::upper_bound(series.times.begin(), series.times.end(), t);
    const size_t hi = std::min(static_cast<size_t>(upper - series.times.begin()),
                               series.times.size() - 1);
    const size_t lo = hi - 1;
    const double alpha = (t - series.times[lo]) / (series.times[hi] - series.times[lo]);
    out.temperatures.push_back((1.0 - alpha) * series.temperatures[lo] +
                               alpha * series.temperatures[hi]);
  }
  return out;
}

}  // namespace lts
