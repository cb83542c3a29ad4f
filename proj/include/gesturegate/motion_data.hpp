#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gesturegate/errors.hpp"
#include "gesturegate/geometry.hpp"

namespace gesturegate {

enum class JointId {
  shoulder_center,
  left_shoulder,
  right_shoulder,
  hip_center,
  left_hip,
  right_hip,
  left_elbow,
  right_elbow,
  left_wrist,
  right_wrist,
  left_hand,
  right_hand,
  left_knee,
  right_knee,
  left_ankle,
  right_ankle,
  left_foot,
  right_foot,
};

inline constexpr int kJointCount = 18;

const char* joint_name(JointId id);
std::optional<JointId> joint_from_name(std::string_view name);

enum class Label { correct, error1, error2, unlabeled };

const char* label_name(Label label);
std::optional<Label> label_from_name(std::string_view name);

enum class Plane { frontal, sagittal, transverse };

const char* plane_name(Plane plane);
std::optional<Plane> plane_from_name(std::string_view name);

enum class BodyRegion { upper, lower };

/// One sampled skeleton pose. Positions are meters in the sensor frame.
struct SkeletonFrame {
  double timestamp = 0.0;
  std::map<JointId, Vec3> joints;

  bool has(JointId id) const { return joints.count(id) != 0; }

  const Vec3& joint(JointId id) const {
    auto it = joints.find(id);
    if (it == joints.end()) throw MissingJoint(static_cast<std::size_t>(-1), joint_name(id));
    return it->second;
  }
};

/// A recorded repetition: ordered frames with strictly increasing timestamps.
struct SkeletonSequence {
  std::string activity_id;
  std::string subject_id;
  Label label = Label::unlabeled;
  std::vector<SkeletonFrame> frames;

  std::size_t length() const { return frames.size(); }
};

/// Static description of one exercise: the limb being tracked, which body
/// region supplies the normalization references, the plane whose angle the
/// known error modes disturb, and the plane that drives phase segmentation.
struct ActivityDefinition {
  std::string activity_id;
  JointId limb_proximal = JointId::left_shoulder;
  JointId limb_distal = JointId::left_wrist;
  BodyRegion body_region = BodyRegion::upper;
  Plane deviation_plane = Plane::frontal;
  Plane primary_plane = Plane::transverse;
};

/// Joints a sequence must carry to be usable for the given activity:
/// the shoulder triple (plane estimation), the region's reference triple,
/// and the limb endpoints.
std::vector<JointId> required_joints(const ActivityDefinition& def);

/// Checks sequence invariants: at least two frames, strictly increasing
/// timestamps, finite positions, and presence of `required` in every frame.
void validate_sequence(const SkeletonSequence& seq, std::span<const JointId> required = {});

/// Body-relative limb positions. The reference center has been subtracted
/// and positions divided by the reference pair distance, per frame.
struct NormalizedFrame {
  Vec3 proximal;
  Vec3 distal;
  double scale = 1.0;  // reference distance used for this frame
};

struct NormalizedSequence {
  std::vector<NormalizedFrame> frames;
};

/// Removes sensor placement and body size: per frame, subtracts the region's
/// center joint (shoulder_center or hip_center) and divides by the distance
/// between the region's side joints (shoulders or hips).
/// Throws DegenerateReference when that distance is <= 1e-9 m.
NormalizedSequence normalize(const SkeletonSequence& seq, const ActivityDefinition& def);

enum class FileFormat { csv, json };

const char* format_name(FileFormat format);
std::optional<FileFormat> format_from_name(std::string_view name);

/// Reads a recording. CSV carries frames only (header `t,<joint>_x,...`);
/// JSON additionally carries activity/subject/label metadata. When
/// `required` is non-empty every frame is checked for those joints.
SkeletonSequence load_sequence(const std::filesystem::path& path, FileFormat format,
                               std::span<const JointId> required = {});

void save_sequence(const SkeletonSequence& seq, const std::filesystem::path& path,
                   FileFormat format);

/// Sequences grouped by activity, in first-seen activity order.
struct Dataset {
  std::vector<std::pair<std::string, std::vector<SkeletonSequence>>> groups;

  void add(SkeletonSequence seq);
  const std::vector<SkeletonSequence>* find(std::string_view activity_id) const;
  std::size_t total_sequences() const;
};

}  // namespace gesturegate
