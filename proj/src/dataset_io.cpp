#include "gesturegate/dataset_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gesturegate {

namespace fs = std::filesystem;

void atomic_write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw Error("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

fs::path write_dataset(const GeneratedDataset& dataset, const fs::path& dir, FileFormat format) {
  fs::create_directories(dir);

  nlohmann::json manifest;
  manifest["schema"] = "gesturegate-dataset/1";
  manifest["seed"] = dataset.params.seed;
  manifest["format"] = format_name(format);
  manifest["params"] = {
      {"n_correct", dataset.params.n_correct},
      {"n_error_per_type", dataset.params.n_error_per_type},
      {"duration_frames", dataset.params.duration_frames},
      {"deviation_magnitude_deg", dataset.params.deviation_magnitude_deg},
      {"noise_std_deg", dataset.params.noise_std_deg},
      {"subject_amplitude_spread", dataset.params.subject_amplitude_spread},
      {"deviation_magnitude_spread", dataset.params.deviation_magnitude_spread},
      {"style_bias_deg", dataset.params.style_bias_deg},
      {"tremor_deg", dataset.params.tremor_deg},
  };
  auto& sequences = manifest["sequences"] = nlohmann::json::array();

  // Per-(activity,label) counters give stable file names.
  std::map<std::string, int> counters;
  for (const GeneratedEntry& entry : dataset.entries) {
    const auto* group = dataset.data.find(entry.activity_id);
    if (group == nullptr || entry.group_pos >= group->size())
      throw Error("manifest entry does not match dataset contents");
    const SkeletonSequence& seq = (*group)[entry.group_pos];

    const std::string key = entry.activity_id + "/" + label_name(entry.label);
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03d.%s", label_name(entry.label), counters[key]++,
                  format_name(format));
    const std::string rel = entry.activity_id + "/" + name;

    fs::create_directories(dir / entry.activity_id);
    save_sequence(seq, dir / rel, format);

    sequences.push_back({
        {"file", rel},
        {"activity_id", entry.activity_id},
        {"subject_id", entry.subject_id},
        {"label", label_name(entry.label)},
        {"seed", entry.seed},
    });
  }

  const fs::path manifest_path = dir / "manifest.json";
  atomic_write_file(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

Dataset load_dataset(const fs::path& manifest_path, const std::set<std::string>& exclude) {
  std::ifstream in(manifest_path);
  if (!in) throw ParseError("cannot open manifest '" + manifest_path.string() + "'");
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid manifest JSON: " + std::string(e.what()));
  }

  const fs::path dir = manifest_path.parent_path();
  const auto format = format_from_name(manifest.value("format", "csv"));
  if (!format) throw ParseError("manifest has unknown format");

  Dataset dataset;
  try {
    for (const auto& entry : manifest.at("sequences")) {
      const std::string rel = entry.at("file").get<std::string>();
      if (exclude.count(rel) != 0) continue;

      const std::string activity = entry.at("activity_id").get<std::string>();
      std::span<const JointId> required;
      std::vector<JointId> required_storage;
      if (const ActivityPreset* preset = find_preset(activity)) {
        required_storage = required_joints(preset->def);
        required = required_storage;
      }

      SkeletonSequence seq = load_sequence(dir / rel, *format, required);
      seq.activity_id = activity;
      seq.subject_id = entry.value("subject_id", seq.subject_id);
      if (const auto label = label_from_name(entry.value("label", "unlabeled")))
        seq.label = *label;
      dataset.add(std::move(seq));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed manifest entry: " + std::string(e.what()));
  }
  return dataset;
}

std::set<std::string> read_exclude_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open exclude list '" + path.string() + "'");
  std::set<std::string> exclude;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
    if (start < line.size()) exclude.insert(line.substr(start));
  }
  return exclude;
}

}  // namespace gesturegate
