#include "gesturegate/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace gesturegate {

PlaneSet estimate_planes(const SkeletonFrame& frame, const FloorPlane& floor) {
  const Vec3 transverse{floor.a, floor.b, floor.c};
  if (norm(transverse) <= 1e-9) throw ZeroVector();

  const Vec3& sc = frame.joint(JointId::shoulder_center);
  const Vec3& ls = frame.joint(JointId::left_shoulder);
  const Vec3& rs = frame.joint(JointId::right_shoulder);

  const Vec3 frontal = cross(sc - ls, rs - ls);
  if (norm(frontal) <= 1e-9) throw CollinearShoulders();

  PlaneSet planes;
  planes.transverse = transverse;
  planes.frontal = frontal;
  // No re-orthogonalization against the floor: a leaning torso yields
  // frontal . transverse != 0, and the sagittal normal absorbs it.
  planes.sagittal = cross(frontal, transverse);
  planes.floor_offset = floor.d;
  return planes;
}

double plane_angle(const Vec3& limb, const Vec3& plane_normal) {
  const double limb_norm = norm(limb);
  const double normal_norm = norm(plane_normal);
  if (limb_norm <= 1e-9 || normal_norm <= 1e-9) throw ZeroVector();

  const double cosine = std::clamp(dot(limb, plane_normal) / (limb_norm * normal_norm), -1.0, 1.0);
  return 90.0 - std::acos(cosine) * kRadToDeg;
}

AngleSequence angle_sequence(const SkeletonSequence& seq, const ActivityDefinition& def,
                             const FloorPlane& floor, PlaneEstimation estimation) {
  AngleSequence angles;
  angles.reserve(seq.frames.size());

  PlaneSet planes;
  bool have_planes = false;
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& frame = seq.frames[f];
    for (JointId id :
         {JointId::shoulder_center, JointId::left_shoulder, JointId::right_shoulder,
          def.limb_proximal, def.limb_distal})
      if (!frame.has(id)) throw MissingJoint(f, joint_name(id));

    if (estimation == PlaneEstimation::per_frame || !have_planes) {
      try {
        planes = estimate_planes(frame, floor);
        have_planes = true;
      } catch (const CollinearShoulders&) {
        throw CollinearShoulders(f);
      } catch (const ZeroVector&) {
        throw ZeroVector(f);
      }
    }

    const Vec3 limb = frame.joint(def.limb_distal) - frame.joint(def.limb_proximal);
    try {
      AngleFrame a;
      a.frontal = plane_angle(limb, planes.frontal);
      a.sagittal = plane_angle(limb, planes.sagittal);
      a.transverse = plane_angle(limb, planes.transverse);
      angles.push_back(a);
    } catch (const ZeroVector&) {
      throw ZeroVector(f);
    }
  }
  return angles;
}

std::vector<double> plane_track(const AngleSequence& angles, Plane plane) {
  std::vector<double> track;
  track.reserve(angles.size());
  for (const AngleFrame& a : angles) track.push_back(a.value(plane));
  return track;
}

}  // namespace gesturegate
