#include "gesturegate/motion_data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gesturegate {

namespace {

constexpr std::array<const char*, kJointCount> kJointNames = {
    "shoulder_center", "left_shoulder", "right_shoulder", "hip_center", "left_hip", "right_hip",
    "left_elbow",      "right_elbow",   "left_wrist",     "right_wrist", "left_hand", "right_hand",
    "left_knee",       "right_knee",    "left_ankle",     "right_ankle", "left_foot", "right_foot",
};

double parse_double(std::string_view token, const std::string& context) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError("bad number '" + std::string(token) + "' in " + context);
  return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SkeletonSequence load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file '" + path.string() + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "t") throw ParseError("CSV header must start with 't'");
  if ((header.size() - 1) % 3 != 0) throw ParseError("CSV header joint columns must come in x,y,z triples");

  std::vector<JointId> column_joints;
  for (std::size_t c = 1; c < header.size(); c += 3) {
    const std::string_view base = header[c];
    if (base.size() < 3 || base.substr(base.size() - 2) != "_x")
      throw ParseError("expected '<joint>_x' column, got '" + std::string(base) + "'");
    const std::string name(base.substr(0, base.size() - 2));
    if (header[c + 1] != name + "_y" || header[c + 2] != name + "_z")
      throw ParseError("columns for joint '" + name + "' must be _x,_y,_z in order");
    const auto id = joint_from_name(name);
    if (!id) throw ParseError("unknown joint '" + name + "' in CSV header");
    column_joints.push_back(*id);
  }

  SkeletonSequence seq;
  std::size_t frame_index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw ParseError("frame " + std::to_string(frame_index) + ": expected " +
                       std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    SkeletonFrame frame;
    frame.timestamp = parse_double(fields[0], "timestamp of frame " + std::to_string(frame_index));
    for (std::size_t j = 0; j < column_joints.size(); ++j) {
      const std::size_t c = 1 + 3 * j;
      // An empty triple marks a joint that was not tracked in this frame.
      if (fields[c].empty() && fields[c + 1].empty() && fields[c + 2].empty())
        throw MissingJoint(frame_index, joint_name(column_joints[j]));
      Vec3 p{parse_double(fields[c], "frame " + std::to_string(frame_index)),
             parse_double(fields[c + 1], "frame " + std::to_string(frame_index)),
             parse_double(fields[c + 2], "frame " + std::to_string(frame_index))};
      frame.joints.emplace(column_joints[j], p);
    }
    seq.frames.push_back(std::move(frame));
    ++frame_index;
  }
  return seq;
}

SkeletonSequence load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
  }

  SkeletonSequence seq;
  try {
    seq.activity_id = doc.value("activity_id", "");
    seq.subject_id = doc.value("subject_id", "");
    if (doc.contains("label")) {
      const auto label = label_from_name(doc["label"].get<std::string>());
      if (!label) throw ParseError("unknown label '" + doc["label"].get<std::string>() + "'");
      seq.label = *label;
    }
    for (const auto& jframe : doc.at("frames")) {
      SkeletonFrame frame;
      frame.timestamp = jframe.at("t").get<double>();
      for (const auto& [name, coords] : jframe.at("joints").items()) {
        const auto id = joint_from_name(name);
        if (!id) throw ParseError("unknown joint '" + name + "'");
        if (!coords.is_array() || coords.size() != 3)
          throw ParseError("joint '" + name + "' must be a 3-element array");
        frame.joints.emplace(*id, Vec3{coords[0].get<double>(), coords[1].get<double>(),
                                       coords[2].get<double>()});
      }
      seq.frames.push_back(std::move(frame));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed sequence in '" + path.string() + "': " + e.what());
  }
  return seq;
}

void save_csv(const SkeletonSequence& seq, const std::filesystem::path& path) {
  if (seq.frames.empty()) throw Error("refusing to save empty sequence");
  // Column order is the enum order restricted to the joints of frame 0.
  std::vector<JointId> order;
  for (int j = 0; j < kJointCount; ++j) {
    const auto id = static_cast<JointId>(j);
    if (seq.frames.front().has(id)) order.push_back(id);
  }
  std::ostringstream out;
  out << "t";
  for (JointId id : order)
    out << ',' << joint_name(id) << "_x," << joint_name(id) << "_y," << joint_name(id) << "_z";
  out << '\n';
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& frame = seq.frames[f];
    out << format_double(frame.timestamp);
    for (JointId id : order) {
      if (!frame.has(id)) throw MissingJoint(f, joint_name(id));
      const Vec3& p = frame.joint(id);
      out << ',' << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z);
    }
    out << '\n';
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path.string() + "'");
  file << out.str();
}

void save_json(const SkeletonSequence& seq, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["activity_id"] = seq.activity_id;
  doc["subject_id"] = seq.subject_id;
  doc["label"] = label_name(seq.label);
  auto& frames = doc["frames"] = nlohmann::json::array();
  for (const auto& frame : seq.frames) {
    nlohmann::json jframe;
    jframe["t"] = frame.timestamp;
    auto& joints = jframe["joints"] = nlohmann::json::object();
    for (const auto& [id, p] : frame.joints) joints[joint_name(id)] = {p.x, p.y, p.z};
    frames.push_back(std::move(jframe));
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path.string() + "'");
  file << doc.dump(2) << '\n';
}

}  // namespace

const char* joint_name(JointId id) { return kJointNames[static_cast<int>(id)]; }

std::optional<JointId> joint_from_name(std::string_view name) {
  for (int j = 0; j < kJointCount; ++j)
    if (name == kJointNames[j]) return static_cast<JointId>(j);
  return std::nullopt;
}

const char* label_name(Label label) {
  switch (label) {
    case Label::correct: return "correct";
    case Label::error1: return "error1";
    case Label::error2: return "error2";
    case Label::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::optional<Label> label_from_name(std::string_view name) {
  for (Label l : {Label::correct, Label::error1, Label::error2, Label::unlabeled})
    if (name == label_name(l)) return l;
  return std::nullopt;
}

const char* plane_name(Plane plane) {
  switch (plane) {
    case Plane::frontal: return "frontal";
    case Plane::sagittal: return "sagittal";
    case Plane::transverse: return "transverse";
  }
  return "frontal";
}

std::optional<Plane> plane_from_name(std::string_view name) {
  for (Plane p : {Plane::frontal, Plane::sagittal, Plane::transverse})
    if (name == plane_name(p)) return p;
  return std::nullopt;
}

const char* format_name(FileFormat format) { return format == FileFormat::csv ? "csv" : "json"; }

std::optional<FileFormat> format_from_name(std::string_view name) {
  if (name == "csv") return FileFormat::csv;
  if (name == "json") return FileFormat::json;
  return std::nullopt;
}

std::vector<JointId> required_joints(const ActivityDefinition& def) {
  std::vector<JointId> joints = {JointId::shoulder_center, JointId::left_shoulder,
                                 JointId::right_shoulder};
  if (def.body_region == BodyRegion::lower) {
    joints.push_back(JointId::hip_center);
    joints.push_back(JointId::left_hip);
    joints.push_back(JointId::right_hip);
  }
  auto add_unique = [&joints](JointId id) {
    if (std::find(joints.begin(), joints.end(), id) == joints.end()) joints.push_back(id);
  };
  add_unique(def.limb_proximal);
  add_unique(def.limb_distal);
  return joints;
}

void validate_sequence(const SkeletonSequence& seq, std::span<const JointId> required) {
  if (seq.frames.size() < 2) throw ParseError("sequence must have at least 2 frames");
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& frame = seq.frames[f];
    if (f > 0 && !(frame.timestamp > seq.frames[f - 1].timestamp)) throw NonMonotonicTimestamp(f);
    for (const auto& [id, p] : frame.joints)
      if (!is_finite(p)) throw ParseError("frame " + std::to_string(f) + ": non-finite position for " +
                                          joint_name(id));
    for (JointId id : required)
      if (!frame.has(id)) throw MissingJoint(f, joint_name(id));
  }
}

NormalizedSequence normalize(const SkeletonSequence& seq, const ActivityDefinition& def) {
  const bool upper = def.body_region == BodyRegion::upper;
  const JointId center = upper ? JointId::shoulder_center : JointId::hip_center;
  const JointId left = upper ? JointId::left_shoulder : JointId::left_hip;
  const JointId right = upper ? JointId::right_shoulder : JointId::right_hip;

  NormalizedSequence out;
  out.frames.reserve(seq.frames.size());
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& frame = seq.frames[f];
    for (JointId id : {center, left, right, def.limb_proximal, def.limb_distal})
      if (!frame.has(id)) throw MissingJoint(f, joint_name(id));

    const Vec3& c = frame.joint(center);
    const double scale = norm(frame.joint(left) - frame.joint(right));
    if (scale <= 1e-9) throw DegenerateReference(f);

    NormalizedFrame nf;
    nf.proximal = (frame.joint(def.limb_proximal) - c) / scale;
    nf.distal = (frame.joint(def.limb_distal) - c) / scale;
    nf.scale = scale;
    out.frames.push_back(nf);
  }
  return out;
}

SkeletonSequence load_sequence(const std::filesystem::path& path, FileFormat format,
                               std::span<const JointId> required) {
  SkeletonSequence seq = format == FileFormat::csv ? load_csv(path) : load_json(path);
  validate_sequence(seq, required);
  return seq;
}

void save_sequence(const SkeletonSequence& seq, const std::filesystem::path& path,
                   FileFormat format) {
  if (format == FileFormat::csv)
    save_csv(seq, path);
  else
    save_json(seq, path);
}

void Dataset::add(SkeletonSequence seq) {
  for (auto& [activity, seqs] : groups) {
    if (activity == seq.activity_id) {
      seqs.push_back(std::move(seq));
      return;
    }
  }
  std::string activity = seq.activity_id;
  groups.emplace_back(std::move(activity), std::vector<SkeletonSequence>{std::move(seq)});
}

const std::vector<SkeletonSequence>* Dataset::find(std::string_view activity_id) const {
  for (const auto& [activity, seqs] : groups)
    if (activity == activity_id) return &seqs;
  return nullptr;
}

std::size_t Dataset::total_sequences() const {
  std::size_t n = 0;
  for (const auto& [activity, seqs] : groups) n += seqs.size();
  return n;
}

}  // namespace gesturegate
