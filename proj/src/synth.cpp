#include "gesturegate/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gesturegate/rng.hpp"

namespace gesturegate {

namespace {

// Fixed torso in a Y-up sensor frame; the subject faces -Z. Shoulders are
// 0.35 m apart with shoulder_center 0.10 m above the shoulder line (so the
// frontal-plane cross product never degenerates); hips are 0.30 m apart.
constexpr Vec3 kShoulderCenter{0.0, 1.50, 0.0};
constexpr Vec3 kLeftShoulder{-0.175, 1.40, 0.0};
constexpr Vec3 kRightShoulder{0.175, 1.40, 0.0};
constexpr Vec3 kHipCenter{0.0, 0.95, 0.0};
constexpr Vec3 kLeftHip{-0.15, 0.95, 0.0};
constexpr Vec3 kRightHip{0.15, 0.95, 0.0};
constexpr Vec3 kLeftElbow{-0.175, 1.10, 0.0};  // upper arm held at the side
constexpr double kFrameRate = 30.0;

ActivityDefinition make_def(const char* id, JointId proximal, JointId distal, BodyRegion region,
                            Plane deviation, Plane primary) {
  ActivityDefinition def;
  def.activity_id = id;
  def.limb_proximal = proximal;
  def.limb_distal = distal;
  def.body_region = region;
  def.deviation_plane = deviation;
  def.primary_plane = primary;
  return def;
}

const std::array<ActivityPreset, 10>& presets() {
  // With this torso the frontal normal points along -Z, the sagittal normal
  // along +X and the transverse normal along +Y, so the angle tracks are
  // sin-mapped component-wise: sin(frontal) = -u.z, sin(sagittal) = u.x,
  // sin(transverse) = u.y for a unit limb direction u.
  static const std::array<ActivityPreset, 10> table = {{
      {make_def("shoulder_extension", JointId::left_shoulder, JointId::left_wrist,
                BodyRegion::upper, Plane::sagittal, Plane::transverse),
       55.0, RestPose::down, 1.0, +1.0, +1.0, 0.60},
      {make_def("shoulder_flexion", JointId::left_shoulder, JointId::left_wrist,
                BodyRegion::upper, Plane::sagittal, Plane::transverse),
       90.0, RestPose::down, 1.0, -1.0, +1.0, 0.60},
      {make_def("shoulder_abduction", JointId::left_shoulder, JointId::left_wrist,
                BodyRegion::upper, Plane::frontal, Plane::transverse),
       90.0, RestPose::down, 1.0, -1.0, +1.0, 0.60},
      {make_def("hip_extension", JointId::left_hip, JointId::left_ankle, BodyRegion::lower,
                Plane::sagittal, Plane::transverse),
       35.0, RestPose::down, 1.0, +1.0, +1.0, 0.85},
      {make_def("hip_flexion", JointId::left_hip, JointId::left_ankle, BodyRegion::lower,
                Plane::sagittal, Plane::transverse),
       80.0, RestPose::down, 1.0, -1.0, +1.0, 0.85},
      {make_def("hip_abduction", JointId::left_hip, JointId::left_ankle, BodyRegion::lower,
                Plane::frontal, Plane::transverse),
       50.0, RestPose::down, 1.0, -1.0, +1.0, 0.85},
      // Rotation errors are directional in the transverse plane: error1 drops
      // the forearm toward the floor (negative), error2 lifts it.
      {make_def("shoulder_internal_rotation", JointId::left_elbow, JointId::left_wrist,
                BodyRegion::upper, Plane::transverse, Plane::sagittal),
       75.0, RestPose::forward, +1.0, 1.0, -1.0, 0.30},
      {make_def("shoulder_external_rotation", JointId::left_elbow, JointId::left_wrist,
                BodyRegion::upper, Plane::transverse, Plane::sagittal),
       75.0, RestPose::forward, -1.0, 1.0, -1.0, 0.30},
      {make_def("elbow_flexion", JointId::left_elbow, JointId::left_wrist, BodyRegion::upper,
                Plane::sagittal, Plane::transverse),
       130.0, RestPose::down, 1.0, -1.0, +1.0, 0.30},
      {make_def("elbow_extension", JointId::left_elbow, JointId::left_wrist, BodyRegion::upper,
                Plane::sagittal, Plane::transverse),
       120.0, RestPose::down, 1.0, +1.0, +1.0, 0.30},
  }};
  return table;
}

Vec3 proximal_position(const ActivityPreset& preset) {
  switch (preset.def.limb_proximal) {
    case JointId::left_shoulder: return kLeftShoulder;
    case JointId::left_hip: return kLeftHip;
    case JointId::left_elbow: return kLeftElbow;
    default: return kLeftShoulder;
  }
}

/// Limb direction from the driven primary and deviation angle tracks. The
/// third plane's angle is determined by the unit-norm constraint; its sign
/// comes from the activity's rest pose.
Vec3 limb_direction(const ActivityPreset& preset, double primary_deg, double deviation_deg) {
  double up = std::sin(primary_deg * kDegToRad);
  double ud = std::sin(deviation_deg * kDegToRad);
  const double ss = up * up + ud * ud;
  double dependent = 0.0;
  if (ss > 1.0) {
    // Noise pushed the driven pair past the unit sphere; project back.
    const double inv = 1.0 / std::sqrt(ss);
    up *= inv;
    ud *= inv;
  } else {
    dependent = std::sqrt(1.0 - ss);
  }

  Vec3 u;
  if (preset.rest == RestPose::down) {
    u.y = up;  // primary = transverse
    if (preset.def.deviation_plane == Plane::frontal) {
      u.z = -ud;
      u.x = preset.slave_sign * dependent;
    } else {  // deviation in the sagittal plane
      u.x = ud;
      u.z = preset.slave_sign * dependent;
    }
  } else {
    u.x = up;  // primary = sagittal
    u.y = ud;  // deviation = transverse
    u.z = -dependent;
  }
  return u;
}

}  // namespace

const char* deviation_name(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::none: return "none";
    case DeviationKind::error1: return "error1";
    case DeviationKind::error2: return "error2";
  }
  return "none";
}

std::span<const ActivityPreset> activity_presets() { return presets(); }

const ActivityPreset* find_preset(std::string_view activity_id) {
  for (const ActivityPreset& p : presets())
    if (p.def.activity_id == activity_id) return &p;
  return nullptr;
}

const ActivityDefinition& activity_definition(const std::string& activity_id) {
  const ActivityPreset* preset = find_preset(activity_id);
  if (preset == nullptr) throw MissingActivityData(activity_id);
  return preset->def;
}

SkeletonSequence generate(const MotionScript& script) {
  if (script.duration_frames < 8) throw Error("duration_frames must be at least 8");
  if (script.deviation_magnitude_deg < 0.0 || script.deviation_magnitude_deg > 60.0)
    throw Error("deviation_magnitude_deg must lie in [0, 60]");
  if (script.noise_std_deg < 0.0) throw Error("noise_std_deg must be non-negative");

  const ActivityPreset* preset = find_preset(script.activity_id);
  if (preset == nullptr) throw MissingActivityData(script.activity_id);

  double peak = script.peak_angle_deg > 0.0 ? script.peak_angle_deg : preset->peak_angle_deg;
  // Keep the swept primary angle short of the arcsin fold at +-90.
  const double peak_cap = preset->rest == RestPose::down
                              ? 176.0 - script.rest_offset_deg
                              : 86.0 - std::abs(script.rest_offset_deg);
  peak = std::min(peak, peak_cap);
  const int T = script.duration_frames;
  double dev_sign = 0.0;
  if (script.deviation == DeviationKind::error1) dev_sign = preset->error1_sign;
  if (script.deviation == DeviationKind::error2) dev_sign = -preset->error1_sign;

  Rng rng(script.seed);
  const Vec3 proximal = proximal_position(*preset);

  SkeletonSequence seq;
  seq.activity_id = script.activity_id;
  switch (script.deviation) {
    case DeviationKind::none: seq.label = Label::correct; break;
    case DeviationKind::error1: seq.label = Label::error1; break;
    case DeviationKind::error2: seq.label = Label::error2; break;
  }
  seq.frames.reserve(T);

  for (int t = 0; t < T; ++t) {
    const double u01 = static_cast<double>(t) / static_cast<double>(T - 1);
    const double h = std::sin(kPi * u01);
    const double tremor = script.tremor_amplitude_deg * h *
                          std::sin(2.0 * kPi * script.tremor_cycles * u01 +
                                   script.tremor_phase_rad);
    double artifact = 0.0;
    if (script.artifact_amplitude_deg != 0.0) {
      const double x = (u01 - script.artifact_center) / script.artifact_width;
      if (x > -0.5 && x < 0.5)
        artifact = script.artifact_amplitude_deg * h * 0.5 * (1.0 + std::cos(2.0 * kPi * x));
    }

    double primary = preset->rest == RestPose::down
                         ? -90.0 + script.rest_offset_deg + peak * h
                         : script.rest_offset_deg + preset->sweep_sign * peak * h;
    primary += tremor;
    double deviation =
        (dev_sign * script.deviation_magnitude_deg + script.deviation_plane_bias_deg) * h + tremor;
    if (script.artifact_on_primary)
      primary += artifact;
    else
      deviation += artifact;
    if (script.noise_std_deg > 0.0) {
      primary += rng.gaussian(0.0, script.noise_std_deg);
      deviation += rng.gaussian(0.0, script.noise_std_deg);
    }

    const Vec3 u = limb_direction(*preset, primary, deviation);

    SkeletonFrame frame;
    frame.timestamp = static_cast<double>(t) / kFrameRate;
    frame.joints.emplace(JointId::shoulder_center, kShoulderCenter);
    frame.joints.emplace(JointId::left_shoulder, kLeftShoulder);
    frame.joints.emplace(JointId::right_shoulder, kRightShoulder);
    frame.joints.emplace(JointId::hip_center, kHipCenter);
    frame.joints.emplace(JointId::left_hip, kLeftHip);
    frame.joints.emplace(JointId::right_hip, kRightHip);
    if (preset->def.limb_proximal == JointId::left_elbow)
      frame.joints.emplace(JointId::left_elbow, kLeftElbow);
    frame.joints.emplace(preset->def.limb_distal, proximal + preset->limb_length_m * u);
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

GeneratedDataset generate_dataset(const DatasetParams& params) {
  if (params.n_correct < 2) throw InsufficientTraining("n_correct must be at least 2");
  if (params.n_error_per_type < 2) throw InsufficientTraining("n_error_per_type must be at least 2");
  if (params.subject_amplitude_spread < 0.0 || params.subject_amplitude_spread >= 1.0)
    throw Error("subject_amplitude_spread must lie in [0, 1)");
  if (params.deviation_magnitude_spread < 0.0 || params.deviation_magnitude_spread > 1.0)
    throw Error("deviation_magnitude_spread must lie in [0, 1]");
  if (params.partial_rep_probability < 0.0 || params.partial_rep_probability > 1.0 ||
      params.artifact_probability < 0.0 || params.artifact_probability > 1.0)
    throw Error("probabilities must lie in [0, 1]");
  if (params.style_bias_deg < 0.0 || params.rest_offset_spread_deg < 0.0 ||
      params.tremor_deg < 0.0)
    throw Error("spread parameters must be non-negative");

  std::vector<const ActivityPreset*> selected;
  if (params.activities.empty()) {
    for (const ActivityPreset& p : presets()) selected.push_back(&p);
  } else {
    for (const std::string& id : params.activities) {
      const ActivityPreset* p = find_preset(id);
      if (p == nullptr) throw MissingActivityData(id);
      selected.push_back(p);
    }
  }

  GeneratedDataset out;
  out.params = params;

  for (std::size_t a = 0; a < selected.size(); ++a) {
    const ActivityPreset& preset = *selected[a];
    std::size_t group_pos = 0;

    const auto emit = [&](Label label, DeviationKind deviation, int count,
                          std::uint64_t label_code, const char* subject_prefix, int subjects,
                          std::uint64_t pool_code) {
      for (int i = 0; i < count; ++i) {
        const std::uint64_t seq_seed = derive_seed(params.seed, {a, label_code,
                                                                 static_cast<std::uint64_t>(i)});
        Rng jitter(mix_seed(seq_seed));
        const double peak_mult = jitter.uniform(0.9, 1.1);
        const double dur_mult = jitter.uniform(0.8, 1.2);
        double magnitude = params.deviation_magnitude_deg;
        if (deviation != DeviationKind::none) {
          magnitude *= jitter.uniform(1.0 - params.deviation_magnitude_spread,
                                      1.0 + params.deviation_magnitude_spread);
          magnitude = std::clamp(magnitude, 0.0, 60.0);
        }

        // One amplitude per person (per activity); the error pool is a
        // different group of people than the calibration pool. Postural
        // drift and unsteadiness vary per repetition.
        const int subject = i % subjects;
        Rng subject_rng(derive_seed(params.seed,
                                    {a, pool_code, static_cast<std::uint64_t>(subject)}));
        const double subject_mult = subject_rng.uniform(1.0 - params.subject_amplitude_spread,
                                                        1.0 + params.subject_amplitude_spread);
        const double rep_bias = jitter.uniform(-params.style_bias_deg, params.style_bias_deg);
        const double rest_offset =
            preset.rest == RestPose::down
                ? jitter.uniform(0.0, params.rest_offset_spread_deg)
                : jitter.uniform(-0.5 * params.rest_offset_spread_deg,
                                 0.5 * params.rest_offset_spread_deg);
        const double tremor_amp = jitter.uniform(0.0, params.tremor_deg);
        const double tremor_cycles = jitter.uniform(2.0, 4.0);
        const double tremor_phase = jitter.uniform(0.0, 2.0 * kPi);
        double artifact_amp = 0.0;
        bool artifact_primary = true;
        double artifact_center = 0.5;
        double artifact_width = 0.3;
        if (jitter.uniform() < params.artifact_probability) {
          artifact_amp = jitter.uniform(params.artifact_min_deg, params.artifact_max_deg);
          if (jitter.uniform() < 0.5) artifact_amp = -artifact_amp;
          artifact_primary = jitter.uniform() < 0.5;
          artifact_center = jitter.uniform(0.25, 0.75);
          artifact_width = jitter.uniform(0.2, 0.5);
        }
        // Incomplete execution: the repetition under-reaches and does not
        // start from (or return to) the anatomical position.
        double partial_mult = 1.0;
        double partial_rest = 0.0;
        if (jitter.uniform() < params.partial_rep_probability) {
          partial_mult = jitter.uniform(params.partial_rep_min, params.partial_rep_max);
          partial_rest = jitter.uniform(20.0, 40.0);
          if (preset.rest == RestPose::forward && jitter.uniform() < 0.5)
            partial_rest = -partial_rest;
        }

        MotionScript script;
        script.activity_id = preset.def.activity_id;
        script.duration_frames =
            std::max(8, static_cast<int>(std::lround(params.duration_frames * dur_mult)));
        script.peak_angle_deg = preset.peak_angle_deg * subject_mult * peak_mult * partial_mult;
        script.deviation = deviation;
        script.deviation_magnitude_deg = magnitude;
        script.deviation_plane_bias_deg = rep_bias;
        script.rest_offset_deg = rest_offset + partial_rest;
        script.tremor_amplitude_deg = tremor_amp;
        script.tremor_cycles = tremor_cycles;
        script.tremor_phase_rad = tremor_phase;
        script.artifact_amplitude_deg = artifact_amp;
        script.artifact_center = artifact_center;
        script.artifact_width = artifact_width;
        script.artifact_on_primary = artifact_primary;
        script.noise_std_deg = params.noise_std_deg;
        script.seed = seq_seed;

        SkeletonSequence seq = generate(script);
        seq.subject_id = subject_prefix + std::to_string(subject);
        seq.label = label;

        GeneratedEntry entry;
        entry.activity_id = preset.def.activity_id;
        entry.group_pos = group_pos++;
        entry.label = label;
        entry.subject_id = seq.subject_id;
        entry.seed = seq_seed;
        out.entries.push_back(std::move(entry));
        out.data.add(std::move(seq));
      }
    };

    emit(Label::correct, DeviationKind::none, params.n_correct, 0, "s", 14, 100);
    emit(Label::error1, DeviationKind::error1, params.n_error_per_type, 1, "e", 10, 101);
    emit(Label::error2, DeviationKind::error2, params.n_error_per_type, 2, "e", 10, 101);
  }
  return out;
}

}  // namespace gesturegate
