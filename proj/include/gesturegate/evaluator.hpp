#pragma once

#include <span>
#include <string>

#include "gesturegate/hmm.hpp"
#include "gesturegate/kinematics.hpp"
#include "gesturegate/mddtw.hpp"
#include "gesturegate/quantizer.hpp"

namespace gesturegate {

enum class StatisticKind { dtw_distance, hmm_per_symbol_loglik };

const char* statistic_kind_name(StatisticKind kind);

/// Two-sided acceptance band [mean - k*std, mean + k*std] over a calibration
/// statistic. A statistic below lo is out-of-band just like one above hi.
struct AcceptanceInterval {
  StatisticKind kind = StatisticKind::dtw_distance;
  double mean = 0.0;
  double std = 0.0;
  double k_sigma = 2.0;
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double statistic) const { return lo <= statistic && statistic <= hi; }
};

/// Mean and sample standard deviation (n-1 denominator) of the calibration
/// statistics; needs at least two finite values.
AcceptanceInterval calibrate(std::span<const double> statistics, StatisticKind kind,
                             double k_sigma = 2.0);

AcceptanceInterval interval_from_moments(double mean, double std, StatisticKind kind,
                                         double k_sigma);

/// Non-parametric band spanning the calibration statistics: [min, max], with
/// mean and std still recorded for reporting. k_sigma is stored as 0 to mark
/// the band as range-based.
AcceptanceInterval calibrate_range(std::span<const double> statistics, StatisticKind kind);

/// The two movement phases of a repetition: limb moving away from the body
/// ([0..split]) and limb returning ([split..T-1]); the split frame is shared.
struct PhasePair {
  std::size_t split_index = 0;
  AngleSequence phase1;
  AngleSequence phase2;
};

/// Splits at the frame where the primary-plane angle is farthest from its
/// starting value (earliest such frame on ties). Both phases must keep at
/// least two frames, otherwise TooShort is raised.
PhasePair segment_phases(const AngleSequence& angles, const ActivityDefinition& def);

/// [first..last] slice helpers matching a PhasePair's index ranges.
VectorSeries slice(const VectorSeries& series, std::size_t first, std::size_t last);
std::vector<double> slice(std::span<const double> track, std::size_t first, std::size_t last);

enum class Pipeline { mddtw_coords, mddtw_angles, hmm_coords, hmm_angles };

const char* pipeline_name(Pipeline p);
std::optional<Pipeline> pipeline_from_name(std::string_view name);
bool pipeline_uses_hmm(Pipeline p);
bool pipeline_uses_angles(Pipeline p);

struct Verdict {
  bool accepted = false;
  double statistic = 0.0;
  AcceptanceInterval interval;
};

/// DTW gate: distance from the test series to the template, accepted iff it
/// lies inside the calibration band.
Verdict evaluate_dtw(const VectorSeries& test, const DtwTemplate& tmpl,
                     const AcceptanceInterval& interval, const DtwOptions& opts = {});

/// HMM gate: per-symbol forward log-likelihood, accepted iff inside the band.
Verdict evaluate_hmm(std::span<const int> test, const HmmModel& model,
                     const AcceptanceInterval& interval);

}  // namespace gesturegate
