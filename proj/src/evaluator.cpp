#include "gesturegate/evaluator.hpp"

#include <algorithm>
#include <cmath>

namespace gesturegate {

const char* statistic_kind_name(StatisticKind kind) {
  return kind == StatisticKind::dtw_distance ? "dtw_distance" : "hmm_per_symbol_loglik";
}

AcceptanceInterval calibrate(std::span<const double> statistics, StatisticKind kind,
                             double k_sigma) {
  if (statistics.size() < 2)
    throw InsufficientCalibration("calibration needs at least 2 statistics, got " +
                                  std::to_string(statistics.size()));
  if (!(k_sigma > 0.0)) throw Error("k_sigma must be positive");

  double sum = 0.0;
  for (double v : statistics) {
    if (!std::isfinite(v)) throw NumericalError("non-finite calibration statistic");
    sum += v;
  }
  const double n = static_cast<double>(statistics.size());
  const double mean = sum / n;

  double ss = 0.0;
  for (double v : statistics) ss += (v - mean) * (v - mean);
  const double std = std::sqrt(ss / (n - 1.0));

  return interval_from_moments(mean, std, kind, k_sigma);
}

AcceptanceInterval interval_from_moments(double mean, double std, StatisticKind kind,
                                         double k_sigma) {
  AcceptanceInterval interval;
  interval.kind = kind;
  interval.mean = mean;
  interval.std = std;
  interval.k_sigma = k_sigma;
  interval.lo = mean - k_sigma * std;
  interval.hi = mean + k_sigma * std;
  return interval;
}

AcceptanceInterval calibrate_range(std::span<const double> statistics, StatisticKind kind) {
  AcceptanceInterval interval = calibrate(statistics, kind, 1.0);
  interval.k_sigma = 0.0;
  interval.lo = *std::min_element(statistics.begin(), statistics.end());
  interval.hi = *std::max_element(statistics.begin(), statistics.end());
  return interval;
}

PhasePair segment_phases(const AngleSequence& angles, const ActivityDefinition& def) {
  const std::size_t T = angles.size();
  if (T < 4) throw TooShort("phase segmentation needs at least 4 frames, got " + std::to_string(T));

  const double start = angles.front().value(def.primary_plane);
  std::size_t split = 0;
  double best = -1.0;
  for (std::size_t t = 0; t < T; ++t) {
    const double displacement = std::abs(angles[t].value(def.primary_plane) - start);
    if (displacement > best) {
      best = displacement;
      split = t;
    }
  }

  if (split < 1 || split > T - 2)
    throw TooShort("phase split at frame " + std::to_string(split) +
                   " leaves a phase with fewer than 2 frames");

  PhasePair pair;
  pair.split_index = split;
  pair.phase1.assign(angles.begin(), angles.begin() + split + 1);
  pair.phase2.assign(angles.begin() + split, angles.end());
  return pair;
}

VectorSeries slice(const VectorSeries& series, std::size_t first, std::size_t last) {
  VectorSeries out(series.dim());
  for (std::size_t t = first; t <= last; ++t) out.push_back(series.vector(t));
  return out;
}

std::vector<double> slice(std::span<const double> track, std::size_t first, std::size_t last) {
  return std::vector<double>(track.begin() + first, track.begin() + last + 1);
}

const char* pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::mddtw_coords: return "mddtw_coords";
    case Pipeline::mddtw_angles: return "mddtw_angles";
    case Pipeline::hmm_coords: return "hmm_coords";
    case Pipeline::hmm_angles: return "hmm_angles";
  }
  return "mddtw_coords";
}

std::optional<Pipeline> pipeline_from_name(std::string_view name) {
  for (Pipeline p : {Pipeline::mddtw_coords, Pipeline::mddtw_angles, Pipeline::hmm_coords,
                     Pipeline::hmm_angles})
    if (name == pipeline_name(p)) return p;
  return std::nullopt;
}

bool pipeline_uses_hmm(Pipeline p) {
  return p == Pipeline::hmm_coords || p == Pipeline::hmm_angles;
}

bool pipeline_uses_angles(Pipeline p) {
  return p == Pipeline::mddtw_angles || p == Pipeline::hmm_angles;
}

Verdict evaluate_dtw(const VectorSeries& test, const DtwTemplate& tmpl,
                     const AcceptanceInterval& interval, const DtwOptions& opts) {
  if (interval.kind != StatisticKind::dtw_distance)
    throw Error("interval statistic kind does not match the DTW evaluator");
  Verdict verdict;
  verdict.statistic = mddtw_distance(test, tmpl.series, opts);
  verdict.interval = interval;
  verdict.accepted = interval.contains(verdict.statistic);
  return verdict;
}

Verdict evaluate_hmm(std::span<const int> test, const HmmModel& model,
                     const AcceptanceInterval& interval) {
  if (interval.kind != StatisticKind::hmm_per_symbol_loglik)
    throw Error("interval statistic kind does not match the HMM evaluator");
  Verdict verdict;
  verdict.statistic = forward(model, test).per_symbol;
  verdict.interval = interval;
  verdict.accepted = interval.contains(verdict.statistic);
  return verdict;
}

}  // namespace gesturegate
