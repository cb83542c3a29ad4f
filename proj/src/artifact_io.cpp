#include "gesturegate/artifact_io.hpp"

#include <fstream>

#include <json.hpp>

#include "gesturegate/dataset_io.hpp"

namespace gesturegate {

namespace fs = std::filesystem;

namespace {

nlohmann::json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    nlohmann::json doc;
    in >> doc;
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

std::string model_file_name(const std::string& activity, int phase,
                            const std::string& characteristic) {
  return activity + "_phase" + std::to_string(phase) + "_" + characteristic + ".model.json";
}

std::string template_file_name(const std::string& activity, int phase) {
  return activity + "_phase" + std::to_string(phase) + ".template.json";
}

nlohmann::json interval_to_json(const AcceptanceInterval& interval) {
  return {{"mean", interval.mean}, {"std", interval.std}};
}

AcceptanceInterval interval_from_json(const nlohmann::json& doc, StatisticKind kind,
                                      double k_sigma) {
  return interval_from_moments(doc.at("mean").get<double>(), doc.at("std").get<double>(), kind,
                               k_sigma);
}

}  // namespace

void save_trained(const TrainedPipeline& trained, const fs::path& dir) {
  fs::create_directories(dir);
  const ExperimentConfig& config = trained.config;

  nlohmann::json summary;
  summary["schema"] = "gesturegate-artifacts/1";
  summary["pipeline"] = pipeline_name(config.pipeline);
  summary["n_states"] = config.n_states;
  summary["topology"] = topology_name(config.topology);
  summary["k_sigma"] = config.k_sigma;
  summary["dtw_band"] = config.dtw_band == DtwBand::range ? "range" : "sigma";
  summary["floor_plane"] = {config.floor.a, config.floor.b, config.floor.c, config.floor.d};
  summary["plane_estimation"] =
      config.plane_estimation == PlaneEstimation::per_frame ? "per_frame" : "first_frame";
  summary["dtw_normalize"] = config.dtw_normalize;
  summary["seed"] = config.seed;
  auto& activities = summary["activities"] = nlohmann::json::array();

  for (const ActivityModelSet& set : trained.activities) {
    nlohmann::json entry;
    entry["activity_id"] = set.activity_id;
    auto& files = entry["files"] = nlohmann::json::array();

    for (const PhaseTemplate& pt : set.dtw) {
      nlohmann::json doc;
      doc["kind"] = "dtw_template";
      doc["dim"] = pt.tmpl.series.dim();
      auto& series = doc["series"] = nlohmann::json::array();
      for (std::size_t t = 0; t < pt.tmpl.series.length(); ++t) {
        nlohmann::json vec = nlohmann::json::array();
        for (std::size_t k = 0; k < pt.tmpl.series.dim(); ++k) vec.push_back(pt.tmpl.series.at(t, k));
        series.push_back(std::move(vec));
      }
      doc["template_index"] = pt.tmpl.index;
      doc["training_distances"] = pt.tmpl.training_distances;
      doc["normalize"] = config.dtw_normalize;
      doc["trained_on"] = {{"activity_id", set.activity_id},
                           {"phase", pt.phase},
                           {"pipeline", pipeline_name(config.pipeline)},
                           {"n_sequences", pt.tmpl.training_distances.size()}};
      doc["calibration"] = interval_to_json(pt.interval);

      const std::string name = template_file_name(set.activity_id, pt.phase);
      atomic_write_file(dir / name, doc.dump(2) + "\n");
      files.push_back(name);
    }

    for (const PhaseCharacteristicModel& pcm : set.hmm) {
      nlohmann::json doc;
      doc["kind"] = "hmm_model";
      doc["n_states"] = pcm.model.n_states;
      doc["n_symbols"] = pcm.model.n_symbols;
      doc["topology"] = topology_name(pcm.model.topology);
      doc["A"] = pcm.model.transition;
      doc["B"] = pcm.model.emission;
      doc["pi"] = pcm.model.initial;
      doc["floor_eps"] = pcm.model.floor_eps;
      doc["trained_on"] = {{"activity_id", set.activity_id},
                           {"phase", pcm.phase},
                           {"characteristic", pcm.characteristic},
                           {"pipeline", pipeline_name(config.pipeline)},
                           {"affine_lo", pcm.affine.lo},
                           {"affine_hi", pcm.affine.hi}};
      doc["calibration"] = interval_to_json(pcm.interval);

      const std::string name = model_file_name(set.activity_id, pcm.phase, pcm.characteristic);
      atomic_write_file(dir / name, doc.dump(2) + "\n");
      files.push_back(name);
    }
    activities.push_back(std::move(entry));
  }

  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
}

TrainedPipeline load_trained(const fs::path& dir) {
  const nlohmann::json summary = load_json_file(dir / "summary.json");

  TrainedPipeline trained;
  try {
    ExperimentConfig& config = trained.config;
    const auto pipeline = pipeline_from_name(summary.at("pipeline").get<std::string>());
    if (!pipeline) throw ParseError("unknown pipeline in summary.json");
    config.pipeline = *pipeline;
    config.n_states = summary.at("n_states").get<int>();
    config.topology =
        summary.at("topology").get<std::string>() == "ergodic" ? Topology::ergodic : Topology::left_right;
    config.k_sigma = summary.at("k_sigma").get<double>();
    config.dtw_band = summary.value("dtw_band", "range") == "sigma" ? DtwBand::sigma : DtwBand::range;
    const auto& floor = summary.at("floor_plane");
    config.floor = {floor.at(0).get<double>(), floor.at(1).get<double>(), floor.at(2).get<double>(),
                    floor.at(3).get<double>()};
    config.plane_estimation = summary.at("plane_estimation").get<std::string>() == "first_frame"
                                  ? PlaneEstimation::first_frame
                                  : PlaneEstimation::per_frame;
    config.dtw_normalize = summary.at("dtw_normalize").get<bool>();
    config.seed = summary.at("seed").get<std::uint64_t>();

    for (const auto& entry : summary.at("activities")) {
      ActivityModelSet set;
      set.activity_id = entry.at("activity_id").get<std::string>();
      set.def = activity_definition(set.activity_id);

      for (const auto& file : entry.at("files")) {
        const nlohmann::json doc = load_json_file(dir / file.get<std::string>());
        const std::string kind = doc.at("kind").get<std::string>();
        if (kind == "dtw_template") {
          PhaseTemplate pt;
          pt.phase = doc.at("trained_on").at("phase").get<int>();
          const std::size_t dim = doc.at("dim").get<std::size_t>();
          VectorSeries series(dim);
          std::vector<double> vec(dim);
          for (const auto& jvec : doc.at("series")) {
            for (std::size_t k = 0; k < dim; ++k) vec[k] = jvec.at(k).get<double>();
            series.push_back(vec);
          }
          pt.tmpl.series = std::move(series);
          pt.tmpl.index = doc.at("template_index").get<std::size_t>();
          pt.tmpl.training_distances = doc.at("training_distances").get<std::vector<double>>();
          pt.interval =
              config.dtw_band == DtwBand::range
                  ? calibrate_range(pt.tmpl.training_distances, StatisticKind::dtw_distance)
                  : interval_from_json(doc.at("calibration"), StatisticKind::dtw_distance,
                                       config.k_sigma);
          set.dtw.push_back(std::move(pt));
        } else if (kind == "hmm_model") {
          PhaseCharacteristicModel pcm;
          pcm.phase = doc.at("trained_on").at("phase").get<int>();
          pcm.characteristic = doc.at("trained_on").at("characteristic").get<std::string>();
          pcm.affine.lo = doc.at("trained_on").at("affine_lo").get<double>();
          pcm.affine.hi = doc.at("trained_on").at("affine_hi").get<double>();
          pcm.model.n_states = doc.at("n_states").get<int>();
          pcm.model.n_symbols = doc.at("n_symbols").get<int>();
          pcm.model.topology = doc.at("topology").get<std::string>() == "ergodic"
                                   ? Topology::ergodic
                                   : Topology::left_right;
          pcm.model.transition = doc.at("A").get<std::vector<double>>();
          pcm.model.emission = doc.at("B").get<std::vector<double>>();
          pcm.model.initial = doc.at("pi").get<std::vector<double>>();
          pcm.model.floor_eps = doc.at("floor_eps").get<double>();
          pcm.interval = interval_from_json(doc.at("calibration"),
                                            StatisticKind::hmm_per_symbol_loglik, config.k_sigma);
          set.hmm.push_back(std::move(pcm));
        } else {
          throw ParseError("unknown artifact kind '" + kind + "'");
        }
      }

      // Phase-major, characteristic order as trained.
      std::stable_sort(set.dtw.begin(), set.dtw.end(),
                       [](const PhaseTemplate& a, const PhaseTemplate& b) { return a.phase < b.phase; });
      std::stable_sort(set.hmm.begin(), set.hmm.end(),
                       [](const PhaseCharacteristicModel& a, const PhaseCharacteristicModel& b) {
                         return a.phase < b.phase;
                       });
      trained.activities.push_back(std::move(set));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed artifact: " + std::string(e.what()));
  }
  return trained;
}

}  // namespace gesturegate
