#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gesturegate/evaluator.hpp"
#include "gesturegate/synth.hpp"

namespace gesturegate {

/// How the DTW acceptance band is derived from the training distances.
/// HMM bands are always mean +- k_sigma * std. The DTW band defaults to the
/// span of the training distances: the distance distribution is heavier
/// tailed than the log-likelihoods, and a sigma band on it rejects a
/// meaningful share of the correct population itself.
enum class DtwBand { range, sigma };

struct ExperimentConfig {
  Pipeline pipeline = Pipeline::hmm_angles;
  int n_states = 5;
  Topology topology = Topology::left_right;
  double k_sigma = 2.0;
  DtwBand dtw_band = DtwBand::range;
  FloorPlane floor;
  PlaneEstimation plane_estimation = PlaneEstimation::per_frame;
  bool dtw_normalize = true;
  std::uint64_t seed = 0;
};

/// Linear map taking a raw coordinate track onto the quantizer's [-90, 90]
/// domain; the range is learned from the training tracks and test values are
/// clamped. The identity map (lo=-90, hi=90) is used for angle tracks.
struct AffineMap {
  double lo = -90.0;
  double hi = 90.0;

  double apply(double v) const;
  static AffineMap fit(std::span<const double> values);
  static AffineMap identity() { return {-90.0, 90.0}; }
};

/// One trained DTW gate: template plus calibration band for one phase.
struct PhaseTemplate {
  int phase = 1;  // 1 or 2
  DtwTemplate tmpl;
  AcceptanceInterval interval;
};

/// One trained HMM gate: model plus calibration band for one phase and one
/// characteristic (a plane-angle track or a coordinate axis).
struct PhaseCharacteristicModel {
  int phase = 1;
  std::string characteristic;
  AffineMap affine;
  HmmModel model;
  AcceptanceInterval interval;
};

struct ActivityModelSet {
  std::string activity_id;
  ActivityDefinition def;
  std::vector<PhaseTemplate> dtw;                 // DTW pipelines: one per phase
  std::vector<PhaseCharacteristicModel> hmm;      // HMM pipelines: phase x characteristic
};

struct TrainedPipeline {
  ExperimentConfig config;
  std::vector<ActivityModelSet> activities;

  const ActivityModelSet* find(std::string_view activity_id) const;
};

/// Characteristic column names for the HMM pipelines.
std::array<std::string, 3> characteristic_names(Pipeline pipeline);

/// Trains templates-with-intervals (DTW pipelines) or per-characteristic
/// models-with-intervals (HMM pipelines) from the correct-labelled sequences
/// of `training`, per activity and phase.
TrainedPipeline train_pipeline(const ExperimentConfig& config, const Dataset& training);

struct VerdictRow {
  std::string activity;
  std::size_t sequence_index = 0;  // position within the activity group
  std::string subject_id;
  Label label = Label::unlabeled;
  int phase = 1;
  std::string characteristic;  // "trajectory" for DTW; plane/axis or "combined" for HMM
  double statistic = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool accepted = false;
};

/// Scores every sequence of `test` against the trained gates. HMM pipelines
/// produce one row per characteristic plus a "combined" row that accepts only
/// when every characteristic accepts.
std::vector<VerdictRow> evaluate_dataset(const TrainedPipeline& trained, const Dataset& test);

struct ResultCell {
  std::string activity;
  int phase = 1;
  Label test_label = Label::error1;
  std::string characteristic;
  double detection_rate_pct = 0.0;  // percentage of sequences rejected
  int n_sequences = 0;
};

struct ResultTable {
  Pipeline pipeline = Pipeline::hmm_angles;
  std::vector<ResultCell> cells;

  const ResultCell* find(std::string_view activity, int phase, Label label,
                         std::string_view characteristic) const;
};

/// Rejection rates per activity x phase x test label (x characteristic for
/// HMM pipelines, plus a "max" summary cell per group).
ResultTable tabulate(const TrainedPipeline& trained, std::span<const VerdictRow> rows);

/// Full experiment: train on the correct-labelled part of `training`, score
/// every sequence of `test`, and tabulate rejection rates. Raises
/// MissingActivityData when a trained activity has no test sequences or a
/// test activity was never trained.
ResultTable run_experiment(const ExperimentConfig& config, const Dataset& training,
                           const Dataset& test);

struct AverageRow {
  int phase = 1;
  std::string features;   // "coordinates" or "angles"
  Label error = Label::error1;
  std::string technique;  // "HMM" or "DTW"
  double pct = 0.0;
};

/// Per-technique averages over activities, from the four pipeline tables.
/// HMM cells enter through their per-group "max" summary.
std::vector<AverageRow> average_rows(std::span<const ResultTable> tables);

}  // namespace gesturegate
