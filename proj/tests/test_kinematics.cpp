#include <doctest.h>

#include <cmath>

#include "gesturegate/kinematics.hpp"
#include "gesturegate/rng.hpp"

using namespace gesturegate;

namespace {

SkeletonFrame shoulder_frame(Vec3 sc, Vec3 ls, Vec3 rs) {
  SkeletonFrame frame;
  frame.joints = {{JointId::shoulder_center, sc},
                  {JointId::left_shoulder, ls},
                  {JointId::right_shoulder, rs}};
  return frame;
}

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("plane estimation on the analytic triple") {
  const SkeletonFrame frame = shoulder_frame({0, 1, 0}, {-1, 0, 0}, {1, 0, 0});
  const PlaneSet planes = estimate_planes(frame, FloorPlane{0, 1, 0, 0});

  CHECK(planes.frontal.x == 0.0);
  CHECK(planes.frontal.y == 0.0);
  CHECK(planes.frontal.z == -2.0);
  CHECK(planes.transverse.x == 0.0);
  CHECK(planes.transverse.y == 1.0);
  CHECK(planes.transverse.z == 0.0);
  CHECK(planes.sagittal.x == 2.0);
  CHECK(planes.sagittal.y == 0.0);
  CHECK(planes.sagittal.z == 0.0);

  // Sagittal = frontal x transverse, so it is orthogonal to the transverse
  // normal; for this axis-aligned case the dot product is exactly zero.
  CHECK(dot(planes.sagittal, planes.transverse) == 0.0);
}

TEST_CASE("collinear shoulder triple has no frontal plane") {
  const SkeletonFrame frame = shoulder_frame({0, 0, 0}, {-1, 0, 0}, {1, 0, 0});
  CHECK_THROWS_AS(estimate_planes(frame, FloorPlane{}), CollinearShoulders);
}

TEST_CASE("degenerate floor normal is rejected") {
  const SkeletonFrame frame = shoulder_frame({0, 1, 0}, {-1, 0, 0}, {1, 0, 0});
  CHECK_THROWS_AS(estimate_planes(frame, FloorPlane{0, 0, 0, 0}), ZeroVector);
}

TEST_CASE("frontal normal is orthogonal to both shoulder edges") {
  Rng rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    const Vec3 sc{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 ls{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 rs{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 e1 = sc - ls;
    const Vec3 e2 = rs - ls;
    if (norm(cross(e1, e2)) <= 1e-6) continue;

    const PlaneSet planes = estimate_planes(shoulder_frame(sc, ls, rs), FloorPlane{});
    CHECK(std::abs(dot(planes.frontal, e1)) <= 1e-9);
    CHECK(std::abs(dot(planes.frontal, e2)) <= 1e-9);
    CHECK(std::abs(dot(planes.sagittal, planes.transverse)) <= 1e-12);
    CHECK(std::abs(dot(planes.sagittal, planes.frontal)) <= 1e-9);
  }
}

TEST_CASE("plane_angle analytic cases") {
  CHECK(plane_angle({0, 1, 0}, {0, 1, 0}) == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(plane_angle({1, 0, 0}, {0, 1, 0}) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(plane_angle({0, 1, 1}, {0, 1, 0}) == doctest::Approx(45.0).epsilon(1e-12));
  CHECK(plane_angle({0, -1, 0}, {0, 1, 0}) == doctest::Approx(-90.0).epsilon(1e-12));
}

TEST_CASE("plane_angle rejects vanishing vectors") {
  CHECK_THROWS_AS(plane_angle({0, 0, 0}, {0, 1, 0}), ZeroVector);
  CHECK_THROWS_AS(plane_angle({0, 1, 0}, {1e-10, 0, 0}), ZeroVector);
}

TEST_CASE("plane_angle is scale invariant and odd in the limb") {
  Rng rng(1312);
  for (int rep = 0; rep < 50; ++rep) {
    const Vec3 limb{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Vec3 n{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (norm(limb) < 1e-3 || norm(n) < 1e-3) continue;
    const double s = rng.uniform(0.01, 50.0);
    const double t = rng.uniform(0.01, 50.0);

    const double base = plane_angle(limb, n);
    CHECK(std::abs(plane_angle(limb * s, n * t) - base) <= 1e-9);
    CHECK(std::abs(plane_angle(-1.0 * limb, n) + base) <= 1e-9);
    CHECK(base >= -90.0);
    CHECK(base <= 90.0);
  }
}

TEST_CASE("angle sequence: arm straight down reads transverse -90") {
  SkeletonSequence seq;
  for (int f = 0; f < 5; ++f) {
    SkeletonFrame frame = shoulder_frame({0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0});
    frame.timestamp = 0.1 * f;
    frame.joints.emplace(JointId::left_wrist, Vec3{-0.2, 0.8, 0.0});
    seq.frames.push_back(std::move(frame));
  }
  ActivityDefinition def;
  def.limb_proximal = JointId::left_shoulder;
  def.limb_distal = JointId::left_wrist;

  const AngleSequence angles = angle_sequence(seq, def, FloorPlane{});
  for (const AngleFrame& a : angles) {
    CHECK(a.transverse == doctest::Approx(-90.0).epsilon(1e-9));
    CHECK(a.frontal == doctest::Approx(0.0).scale(1).epsilon(1e-9));
    CHECK(a.sagittal == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  }
}

TEST_CASE("angle sequence: horizontal arm in the frontal plane reads frontal 0") {
  SkeletonSequence seq;
  for (int f = 0; f < 3; ++f) {
    SkeletonFrame frame = shoulder_frame({0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0});
    frame.timestamp = 0.1 * f;
    frame.joints.emplace(JointId::left_wrist, Vec3{-0.8, 1.4, 0.0});
    seq.frames.push_back(std::move(frame));
  }
  ActivityDefinition def;
  def.limb_proximal = JointId::left_shoulder;
  def.limb_distal = JointId::left_wrist;

  const AngleSequence angles = angle_sequence(seq, def, FloorPlane{});
  for (const AngleFrame& a : angles) {
    CHECK(a.frontal == doctest::Approx(0.0).scale(1).epsilon(1e-9));
    CHECK(a.transverse == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  }
}

TEST_CASE("angle sequence is invariant under rigid translation") {
  Rng rng(77);
  SkeletonSequence seq;
  for (int f = 0; f < 6; ++f) {
    SkeletonFrame frame = shoulder_frame({0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0});
    frame.timestamp = 0.1 * f;
    frame.joints.emplace(JointId::left_wrist,
                         Vec3{rng.uniform(-1, 1), rng.uniform(0.5, 2), rng.uniform(-1, 1)});
    seq.frames.push_back(std::move(frame));
  }
  ActivityDefinition def;
  def.limb_proximal = JointId::left_shoulder;
  def.limb_distal = JointId::left_wrist;

  const AngleSequence base = angle_sequence(seq, def, FloorPlane{});

  const Vec3 shift{3.2, -1.1, 0.7};
  SkeletonSequence moved = seq;
  for (auto& frame : moved.frames)
    for (auto& [id, p] : frame.joints) p = p + shift;
  const AngleSequence after = angle_sequence(moved, def, FloorPlane{});

  REQUIRE(after.size() == base.size());
  for (std::size_t f = 0; f < base.size(); ++f) {
    CHECK(std::abs(after[f].frontal - base[f].frontal) <= 1e-9);
    CHECK(std::abs(after[f].sagittal - base[f].sagittal) <= 1e-9);
    CHECK(std::abs(after[f].transverse - base[f].transverse) <= 1e-9);
  }
}

TEST_CASE("collinear shoulders inside a sequence carry the frame index") {
  SkeletonSequence seq;
  SkeletonFrame good = shoulder_frame({0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0});
  good.joints.emplace(JointId::left_wrist, Vec3{0.3, 1.0, 0.0});
  SkeletonFrame bad = shoulder_frame({0, 1.4, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0});
  bad.joints.emplace(JointId::left_wrist, Vec3{0.3, 1.0, 0.0});
  bad.timestamp = 0.1;
  seq.frames = {good, bad};

  ActivityDefinition def;
  def.limb_proximal = JointId::left_shoulder;
  def.limb_distal = JointId::left_wrist;
  try {
    angle_sequence(seq, def, FloorPlane{});
    FAIL("expected CollinearShoulders");
  } catch (const CollinearShoulders& e) {
    CHECK(e.frame_index() == 1);
  }

  // With first-frame plane estimation the degenerate later frame is fine.
  const AngleSequence angles = angle_sequence(seq, def, FloorPlane{}, PlaneEstimation::first_frame);
  CHECK(angles.size() == 2);
}

}  // TEST_SUITE
