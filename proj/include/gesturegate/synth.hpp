#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gesturegate/motion_data.hpp"

namespace gesturegate {

enum class DeviationKind { none, error1, error2 };

const char* deviation_name(DeviationKind kind);

/// Parameters for one synthetic repetition. The limb direction follows a
/// half-sine sweep of the activity's primary-plane angle from rest to
/// peak_angle_deg and back; a deviation adds a half-sine offset of
/// deviation_magnitude_deg to the activity's deviation-plane angle, signed by
/// the error type; Gaussian noise perturbs both driven angle tracks per frame.
struct MotionScript {
  std::string activity_id;
  int duration_frames = 60;
  double peak_angle_deg = 0.0;  // <= 0 selects the activity preset's default
  DeviationKind deviation = DeviationKind::none;
  double deviation_magnitude_deg = 30.0;
  /// Constant postural style of the performer: an extra half-sine offset in
  /// the deviation plane present in correct and erroneous repetitions alike.
  double deviation_plane_bias_deg = 0.0;
  /// Resting posture offset in the primary plane: the limb does not return
  /// exactly to the anatomical position, so the whole primary track shifts.
  double rest_offset_deg = 0.0;
  /// Movement unsteadiness: a slow sinusoid superimposed on both driven
  /// angle tracks, enveloped by the movement profile so the rest pose is
  /// unaffected.
  double tremor_amplitude_deg = 0.0;
  double tremor_cycles = 3.0;
  double tremor_phase_rad = 0.0;
  /// Skeleton-tracking artifact: a smooth burst added to one driven track
  /// (the primary track when artifact_on_primary is set, the deviation-plane
  /// track otherwise), with a raised-cosine window of the given center and
  /// width (fractions of the duration). Amplitude 0 disables it.
  double artifact_amplitude_deg = 0.0;
  double artifact_center = 0.5;
  double artifact_width = 0.3;
  bool artifact_on_primary = true;
  double noise_std_deg = 2.0;
  std::uint64_t seed = 0;
};

enum class RestPose {
  down,     // limb hangs along -Y; the transverse angle sweeps up from -90
  forward,  // limb points along the facing direction; the sagittal angle sweeps
};

/// Everything the generator and the evaluation pipelines need to know about
/// one of the ten supported activities.
struct ActivityPreset {
  ActivityDefinition def;
  double peak_angle_deg = 45.0;
  RestPose rest = RestPose::down;
  double sweep_sign = 1.0;   // forward-rest only: direction of the primary sweep
  double slave_sign = 1.0;   // down-rest only: sign of the dependent component
  double error1_sign = 1.0;  // deviation-track sign for error1; error2 negates it
  double limb_length_m = 0.6;
};

std::span<const ActivityPreset> activity_presets();
const ActivityPreset* find_preset(std::string_view activity_id);

/// Definition lookup used by training and evaluation.
const ActivityDefinition& activity_definition(const std::string& activity_id);

SkeletonSequence generate(const MotionScript& script);

struct DatasetParams {
  std::vector<std::string> activities;  // empty selects all presets
  int n_correct = 42;
  int n_error_per_type = 100;
  int duration_frames = 60;
  double deviation_magnitude_deg = 30.0;
  double noise_std_deg = 2.0;
  /// Relative spread of each subject's movement amplitude. People differ
  /// far more in range of motion than one person's repetitions do, so this
  /// dominates the per-sequence jitter. It scales the swept angle only; the
  /// deviation-plane track is unaffected.
  double subject_amplitude_spread = 0.4;
  /// Relative spread of the deviation magnitude across error repetitions:
  /// each erroneous repetition deviates by deviation_magnitude_deg scaled by
  /// a uniform factor in [1-spread, 1+spread]. Instructed deviations are not
  /// reproducible to the degree, and the spread is what separates a
  /// quantization-based detector from a distance-band one.
  double deviation_magnitude_spread = 1.0;
  /// Half-range of the per-repetition postural drift in the deviation plane
  /// (degrees, uniform in [-bias, +bias]). Nobody executes a repetition in
  /// the textbook plane exactly.
  double style_bias_deg = 10.0;
  /// Range of the resting-posture offset in the primary plane (degrees).
  /// Down-rest activities start up to this much away from vertical; rotation
  /// activities start within half of it on either side of the neutral pose.
  double rest_offset_spread_deg = 25.0;
  /// Upper bound of the per-repetition tremor amplitude (degrees).
  double tremor_deg = 6.0;
  /// Probability that a repetition carries a tracking artifact, and the
  /// amplitude range of the burst (degrees).
  double artifact_probability = 0.15;
  double artifact_min_deg = 8.0;
  double artifact_max_deg = 25.0;
  /// Probability that a repetition is executed only partially (fatigue or
  /// limited range), and the residual-amplitude range of such repetitions.
  double partial_rep_probability = 0.3;
  double partial_rep_min = 0.2;
  double partial_rep_max = 0.5;
  std::uint64_t seed = 7;
};

/// Per-sequence bookkeeping captured at generation time (manifest content).
struct GeneratedEntry {
  std::string activity_id;
  std::size_t group_pos = 0;  // position inside the activity's group
  Label label = Label::correct;
  std::string subject_id;
  std::uint64_t seed = 0;
};

struct GeneratedDataset {
  Dataset data;
  std::vector<GeneratedEntry> entries;
  DatasetParams params;
};

/// Correct and erroneous repetitions for each requested activity, with
/// per-sequence jitter of the peak angle (+-10%) and duration (+-20%)
/// standing in for variability between subjects.
GeneratedDataset generate_dataset(const DatasetParams& params);

}  // namespace gesturegate
