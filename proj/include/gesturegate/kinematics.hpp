#pragma once

#include <vector>

#include "gesturegate/motion_data.hpp"

namespace gesturegate {

/// Floor plane aX + bY + cZ + d = 0 in the sensor frame; (a,b,c) is the
/// transverse-plane normal. Default is Y-up with the floor through the origin.
struct FloorPlane {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;
};

/// Normals of the three anatomical planes, not normalized (angle
/// computations normalize internally).
struct PlaneSet {
  Vec3 frontal;
  Vec3 sagittal;
  Vec3 transverse;
  double floor_offset = 0.0;
};

struct AngleFrame {
  double frontal = 0.0;
  double sagittal = 0.0;
  double transverse = 0.0;

  double value(Plane plane) const {
    switch (plane) {
      case Plane::frontal: return frontal;
      case Plane::sagittal: return sagittal;
      case Plane::transverse: return transverse;
    }
    return frontal;
  }
};

using AngleSequence = std::vector<AngleFrame>;

enum class PlaneEstimation {
  per_frame,    // normals re-estimated from every frame's shoulder triple
  first_frame,  // normals from frame 0 reused for the whole sequence
};

/// Plane normals for one frame: transverse from the floor plane, frontal
/// from the shoulder triple cross product, sagittal = frontal x transverse.
/// Throws CollinearShoulders when the shoulder cross product degenerates.
PlaneSet estimate_planes(const SkeletonFrame& frame, const FloorPlane& floor);

/// Angle between a limb vector and a plane, in degrees within [-90, 90]:
/// 90 - arccos of the normalized dot product with the plane normal.
/// The cosine is clamped to [-1, 1] before arccos.
double plane_angle(const Vec3& limb, const Vec3& plane_normal);

/// Per-frame plane angles of the activity's limb vector (distal - proximal).
AngleSequence angle_sequence(const SkeletonSequence& seq, const ActivityDefinition& def,
                             const FloorPlane& floor,
                             PlaneEstimation estimation = PlaneEstimation::per_frame);

std::vector<double> plane_track(const AngleSequence& angles, Plane plane);

}  // namespace gesturegate
