#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gesturegate/motion_data.hpp"
#include "gesturegate/rng.hpp"

using namespace gesturegate;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "gesturegate_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

ActivityDefinition upper_def() {
  ActivityDefinition def;
  def.activity_id = "test_upper";
  def.limb_proximal = JointId::left_shoulder;
  def.limb_distal = JointId::left_wrist;
  def.body_region = BodyRegion::upper;
  return def;
}

SkeletonFrame frame_at(double t, Vec3 sc, Vec3 ls, Vec3 rs, Vec3 wrist) {
  SkeletonFrame frame;
  frame.timestamp = t;
  frame.joints = {{JointId::shoulder_center, sc},
                  {JointId::left_shoulder, ls},
                  {JointId::right_shoulder, rs},
                  {JointId::left_wrist, wrist}};
  return frame;
}

}  // namespace

TEST_SUITE("motion_data") {

TEST_CASE("CSV parsing and 3-frame round trip") {
  const fs::path path = temp_file("roundtrip.csv");
  SkeletonSequence seq;
  seq.frames = {
      frame_at(0.0, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0}, {0.3, 1.0, 0.1}),
      frame_at(0.1, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0}, {0.31, 1.01, 0.12}),
      frame_at(0.2, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0}, {0.29, 1.02, 0.11}),
  };
  save_sequence(seq, path, FileFormat::csv);

  const SkeletonSequence loaded = load_sequence(path, FileFormat::csv);
  REQUIRE(loaded.length() == 3);
  CHECK(loaded.frames[1].timestamp == 0.1);
  CHECK(loaded.frames[2].joint(JointId::left_wrist).x == 0.29);
  CHECK(loaded.frames[0].joint(JointId::shoulder_center).y == 1.5);
}

TEST_CASE("JSON round trip keeps metadata") {
  const fs::path path = temp_file("roundtrip.json");
  SkeletonSequence seq;
  seq.activity_id = "shoulder_abduction";
  seq.subject_id = "s03";
  seq.label = Label::error2;
  seq.frames = {
      frame_at(0.0, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0}, {0.3, 1.0, 0.1}),
      frame_at(0.1, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0}, {0.3, 1.1, 0.1}),
  };
  save_sequence(seq, path, FileFormat::json);

  const SkeletonSequence loaded = load_sequence(path, FileFormat::json);
  CHECK(loaded.activity_id == "shoulder_abduction");
  CHECK(loaded.subject_id == "s03");
  CHECK(loaded.label == Label::error2);
  CHECK(loaded.frames[1].joint(JointId::left_wrist).y == 1.1);
}

TEST_CASE("a frame lacking a required joint is reported with its index") {
  const fs::path path = temp_file("missing.json");
  write_text(path, R"({
    "activity_id": "x", "subject_id": "s", "label": "correct",
    "frames": [
      {"t": 0.0, "joints": {"shoulder_center": [0,1.5,0], "left_shoulder": [-0.2,1.4,0],
                            "right_shoulder": [0.2,1.4,0], "left_wrist": [0.3,1.0,0]}},
      {"t": 0.1, "joints": {"shoulder_center": [0,1.5,0], "left_shoulder": [-0.2,1.4,0],
                            "right_shoulder": [0.2,1.4,0], "left_wrist": [0.3,1.0,0]}},
      {"t": 0.2, "joints": {"shoulder_center": [0,1.5,0],
                            "right_shoulder": [0.2,1.4,0], "left_wrist": [0.3,1.0,0]}}
    ]})");

  const auto required = required_joints(upper_def());
  try {
    load_sequence(path, FileFormat::json, required);
    FAIL("expected MissingJoint");
  } catch (const MissingJoint& e) {
    CHECK(e.frame_index() == 2);
    CHECK(e.joint() == "left_shoulder");
  }
}

TEST_CASE("non-monotonic timestamps are rejected") {
  const fs::path path = temp_file("stuck_clock.csv");
  write_text(path,
             "t,left_wrist_x,left_wrist_y,left_wrist_z\n"
             "0.0,1,2,3\n"
             "0.1,1,2,3\n"
             "0.1,1,2,3\n");
  try {
    load_sequence(path, FileFormat::csv);
    FAIL("expected NonMonotonicTimestamp");
  } catch (const NonMonotonicTimestamp& e) {
    CHECK(e.frame_index() == 2);
  }
}

TEST_CASE("parse errors") {
  const fs::path path = temp_file("bad.csv");
  write_text(path, "t,left_wrist_x,left_wrist_y\n0.0,1,2\n");
  CHECK_THROWS_AS(load_sequence(path, FileFormat::csv), ParseError);

  write_text(path, "t,unknown_joint_x,unknown_joint_y,unknown_joint_z\n0.0,1,2,3\n");
  CHECK_THROWS_AS(load_sequence(path, FileFormat::csv), ParseError);

  write_text(path, "t,left_wrist_x,left_wrist_y,left_wrist_z\n0.0,1,oops,3\n0.1,1,2,3\n");
  CHECK_THROWS_AS(load_sequence(path, FileFormat::csv), ParseError);

  // A single frame violates the T >= 2 invariant.
  write_text(path, "t,left_wrist_x,left_wrist_y,left_wrist_z\n0.0,1,2,3\n");
  CHECK_THROWS_AS(load_sequence(path, FileFormat::csv), ParseError);
}

TEST_CASE("an empty joint triple in CSV maps to MissingJoint") {
  const fs::path path = temp_file("gap.csv");
  write_text(path,
             "t,shoulder_center_x,shoulder_center_y,shoulder_center_z,left_wrist_x,left_wrist_y,left_wrist_z\n"
             "0.0,0,1.5,0,1,2,3\n"
             "0.1,0,1.5,0,,,\n");
  try {
    load_sequence(path, FileFormat::csv);
    FAIL("expected MissingJoint");
  } catch (const MissingJoint& e) {
    CHECK(e.frame_index() == 1);
    CHECK(e.joint() == "left_wrist");
  }
}

TEST_CASE("normalization matches the hand example") {
  // Wrist (1,1,1), center (1,0,1), shoulders 0.5 m apart -> wrist (0,2,0).
  SkeletonSequence seq;
  for (int f = 0; f < 2; ++f)
    seq.frames.push_back(frame_at(0.1 * f, {1, 0, 1}, {0.75, 0, 1}, {1.25, 0, 1}, {1, 1, 1}));

  const NormalizedSequence normalized = normalize(seq, upper_def());
  REQUIRE(normalized.frames.size() == 2);
  CHECK(normalized.frames[0].distal.x == doctest::Approx(0.0));
  CHECK(normalized.frames[0].distal.y == doctest::Approx(2.0));
  CHECK(normalized.frames[0].distal.z == doctest::Approx(0.0));
  CHECK(normalized.frames[0].scale == doctest::Approx(0.5));
}

TEST_CASE("normalization of an already-normal skeleton is the identity") {
  SkeletonSequence seq;
  for (int f = 0; f < 3; ++f)
    seq.frames.push_back(
        frame_at(0.1 * f, {0, 0, 0}, {-0.5, 0, 0}, {0.5, 0, 0}, {0.1 * f, -0.8, 0.2}));

  const NormalizedSequence normalized = normalize(seq, upper_def());
  for (int f = 0; f < 3; ++f) {
    CHECK(normalized.frames[f].distal.x == doctest::Approx(0.1 * f).epsilon(1e-15));
    CHECK(normalized.frames[f].distal.y == doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(normalized.frames[f].distal.z == doctest::Approx(0.2).epsilon(1e-15));
  }
}

TEST_CASE("coincident reference joints are degenerate") {
  SkeletonSequence seq;
  seq.frames.push_back(frame_at(0.0, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0}, {1, 1, 1}));
  seq.frames.push_back(frame_at(0.1, {0, 1.5, 0}, {0.2, 1.4, 0}, {0.2, 1.4, 0}, {1, 1, 1}));
  try {
    normalize(seq, upper_def());
    FAIL("expected DegenerateReference");
  } catch (const DegenerateReference& e) {
    CHECK(e.frame_index() == 1);
  }
}

TEST_CASE("normalization agrees with scalar recomputation on random frames") {
  Rng rng(606);
  for (int rep = 0; rep < 30; ++rep) {
    const Vec3 sc{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const Vec3 ls{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Vec3 rs{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    if (norm(ls - rs) < 1e-3) rs.x += 1.0;
    const Vec3 wrist{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};

    SkeletonSequence seq;
    seq.frames.push_back(frame_at(0.0, sc, ls, rs, wrist));
    seq.frames.push_back(frame_at(0.1, sc, ls, rs, wrist));

    const NormalizedSequence normalized = normalize(seq, upper_def());
    const double s = std::sqrt((ls.x - rs.x) * (ls.x - rs.x) + (ls.y - rs.y) * (ls.y - rs.y) +
                               (ls.z - rs.z) * (ls.z - rs.z));
    CHECK(std::abs(normalized.frames[0].distal.x - (wrist.x - sc.x) / s) <= 1e-12);
    CHECK(std::abs(normalized.frames[0].distal.y - (wrist.y - sc.y) / s) <= 1e-12);
    CHECK(std::abs(normalized.frames[0].distal.z - (wrist.z - sc.z) / s) <= 1e-12);
  }
}

TEST_CASE("normalization is translation and scale invariant") {
  Rng rng(909);
  SkeletonSequence seq;
  for (int f = 0; f < 4; ++f)
    seq.frames.push_back(frame_at(0.1 * f, {0, 1.5, 0}, {-0.2, 1.4, 0}, {0.2, 1.4, 0},
                                  {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}));
  const NormalizedSequence base = normalize(seq, upper_def());

  const Vec3 shift{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
  const double scale = rng.uniform(0.3, 4.0);

  SkeletonSequence moved = seq;
  SkeletonSequence scaled = seq;
  for (auto& frame : moved.frames)
    for (auto& [id, p] : frame.joints) p = p + shift;
  for (auto& frame : scaled.frames)
    for (auto& [id, p] : frame.joints) p = p * scale;

  const NormalizedSequence after_move = normalize(moved, upper_def());
  const NormalizedSequence after_scale = normalize(scaled, upper_def());
  for (std::size_t f = 0; f < base.frames.size(); ++f) {
    CHECK(norm(after_move.frames[f].distal - base.frames[f].distal) <= 1e-9);
    CHECK(norm(after_scale.frames[f].distal - base.frames[f].distal) <= 1e-9);
  }
}

TEST_CASE("normalization is idempotent") {
  Rng rng(1234);
  SkeletonSequence seq;
  for (int f = 0; f < 4; ++f)
    seq.frames.push_back(frame_at(0.1 * f, {0.2, 1.5, -0.1}, {-0.2, 1.4, 0}, {0.25, 1.38, 0.05},
                                  {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}));
  const NormalizedSequence once = normalize(seq, upper_def());

  // Rebuild a skeleton from the normalized output with a unit reference.
  SkeletonSequence rebuilt;
  for (std::size_t f = 0; f < once.frames.size(); ++f) {
    SkeletonFrame frame;
    frame.timestamp = 0.1 * static_cast<double>(f);
    frame.joints = {{JointId::shoulder_center, {0, 0, 0}},
                    {JointId::left_shoulder, {-0.5, 0, 0}},
                    {JointId::right_shoulder, {0.5, 0, 0}},
                    {JointId::left_wrist, once.frames[f].distal}};
    rebuilt.frames.push_back(std::move(frame));
  }
  ActivityDefinition def = upper_def();
  def.limb_proximal = JointId::shoulder_center;

  const NormalizedSequence twice = normalize(rebuilt, def);
  for (std::size_t f = 0; f < once.frames.size(); ++f) {
    CHECK(norm(twice.frames[f].distal - once.frames[f].distal) <= 1e-12);
    CHECK(twice.frames[f].scale == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("dataset grouping preserves first-seen order") {
  Dataset dataset;
  SkeletonSequence a;
  a.activity_id = "b_activity";
  SkeletonSequence b;
  b.activity_id = "a_activity";
  SkeletonSequence c;
  c.activity_id = "b_activity";
  dataset.add(a);
  dataset.add(b);
  dataset.add(c);

  REQUIRE(dataset.groups.size() == 2);
  CHECK(dataset.groups[0].first == "b_activity");
  CHECK(dataset.groups[0].second.size() == 2);
  CHECK(dataset.total_sequences() == 3);
  CHECK(dataset.find("a_activity") != nullptr);
  CHECK(dataset.find("missing") == nullptr);
}

}  // TEST_SUITE
