// Command-line front end: synthetic data generation, feature extraction,
// training, evaluation, and the full four-pipeline experiment.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 data or training
// error, 4 internal numerical error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gesturegate/artifact_io.hpp"
#include "gesturegate/dataset_io.hpp"
#include "gesturegate/tables.hpp"

namespace fs = std::filesystem;
using namespace gesturegate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct CommonOptions {
  std::vector<double> floor_plane = {0.0, 1.0, 0.0, 0.0};
  std::string plane_estimation = "per_frame";
  std::string dtw_band = "range";
  double k_sigma = 2.0;
  int n_states = 5;
  std::string topology = "left_right";
  bool dtw_raw = false;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--floor_plane", opts.floor_plane,
                  "Floor plane coefficients a,b,c,d of aX+bY+cZ+d=0")
      ->expected(4);
  cmd->add_option("--planes", opts.plane_estimation, "Plane estimation: per_frame or first_frame")
      ->check(CLI::IsMember({"per_frame", "first_frame"}));
  cmd->add_option("--k-sigma", opts.k_sigma, "Acceptance band half-width in standard deviations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dtw-band", opts.dtw_band, "DTW band: range (training span) or sigma")
      ->check(CLI::IsMember({"range", "sigma"}));
  cmd->add_option("--n-states", opts.n_states, "HMM state count")->check(CLI::PositiveNumber);
  cmd->add_option("--topology", opts.topology, "HMM topology")
      ->check(CLI::IsMember({"left_right", "ergodic"}));
  cmd->add_flag("--dtw-raw", opts.dtw_raw, "Use the unnormalized accumulated DTW cost");
  cmd->add_option("--seed", opts.seed, "Seed for model initialization");
}

ExperimentConfig to_config(const CommonOptions& opts) {
  ExperimentConfig config;
  config.n_states = opts.n_states;
  config.topology = opts.topology == "ergodic" ? Topology::ergodic : Topology::left_right;
  config.k_sigma = opts.k_sigma;
  config.dtw_band = opts.dtw_band == "sigma" ? DtwBand::sigma : DtwBand::range;
  config.floor = {opts.floor_plane[0], opts.floor_plane[1], opts.floor_plane[2],
                  opts.floor_plane[3]};
  config.plane_estimation = opts.plane_estimation == "first_frame" ? PlaneEstimation::first_frame
                                                                   : PlaneEstimation::per_frame;
  config.dtw_normalize = !opts.dtw_raw;
  config.seed = opts.seed;
  return config;
}

Dataset correct_subset(const Dataset& all) {
  Dataset out;
  for (const auto& [activity, seqs] : all.groups)
    for (const SkeletonSequence& seq : seqs)
      if (seq.label == Label::correct) out.add(seq);
  return out;
}

Dataset test_subset(const Dataset& all) {
  Dataset out;
  for (const auto& [activity, seqs] : all.groups)
    for (const SkeletonSequence& seq : seqs)
      if (seq.label != Label::correct) out.add(seq);
  return out;
}

std::string format_stat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Movement-repetition gating with MDDTW templates and discrete HMMs"};
  app.require_subcommand(1);

  // --- synth ---------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->set_config("--config");
  std::string synth_out;
  std::vector<std::string> synth_activities;
  bool synth_all = false;
  DatasetParams synth_params;
  std::string synth_format = "csv";
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  auto* activity_opt =
      synth_cmd->add_option("--activity", synth_activities, "Activity id (repeatable)");
  synth_cmd->add_flag("--all", synth_all, "Generate every supported activity");
  synth_cmd->add_option("--correct", synth_params.n_correct, "Correct repetitions per activity");
  synth_cmd->add_option("--errors", synth_params.n_error_per_type,
                        "Erroneous repetitions per error type");
  synth_cmd->add_option("--frames", synth_params.duration_frames, "Nominal frames per repetition");
  synth_cmd->add_option("--deviation-magnitude", synth_params.deviation_magnitude_deg,
                        "Deviation amplitude in degrees");
  synth_cmd->add_option("--noise-std", synth_params.noise_std_deg,
                        "Angle noise standard deviation in degrees");
  synth_cmd->add_option("--subject-spread", synth_params.subject_amplitude_spread,
                        "Relative per-subject amplitude spread");
  synth_cmd->add_option("--deviation-spread", synth_params.deviation_magnitude_spread,
                        "Relative per-repetition deviation-magnitude spread");
  synth_cmd->add_option("--style-bias", synth_params.style_bias_deg,
                        "Half-range of per-repetition deviation-plane drift (degrees)");
  synth_cmd->add_option("--tremor", synth_params.tremor_deg,
                        "Upper bound of per-repetition tremor amplitude (degrees)");
  synth_cmd->add_option("--seed", synth_params.seed, "Dataset seed");
  synth_cmd->add_option("--format", synth_format, "File format")
      ->check(CLI::IsMember({"csv", "json"}));

  // --- extract -------------------------------------------------------------
  auto* extract_cmd = app.add_subcommand("extract", "Write plane-angle tracks for a dataset");
  extract_cmd->set_config("--config");
  std::string extract_manifest, extract_out;
  CommonOptions extract_opts;
  extract_cmd->add_option("--manifest", extract_manifest, "Dataset manifest")->required();
  extract_cmd->add_option("--out", extract_out, "Output directory")->required();
  add_common(extract_cmd, extract_opts);

  // --- train ---------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "Train templates or models plus calibration");
  train_cmd->set_config("--config");
  std::string train_manifest, train_out, train_pipeline_name, train_exclude;
  CommonOptions train_opts;
  train_cmd->add_option("--manifest", train_manifest, "Dataset manifest")->required();
  train_cmd->add_option("--out", train_out, "Artifact directory")->required();
  train_cmd->add_option("--pipeline", train_pipeline_name, "Pipeline")
      ->required()
      ->check(CLI::IsMember({"mddtw_coords", "mddtw_angles", "hmm_coords", "hmm_angles"}));
  train_cmd->add_option("--exclude", train_exclude, "Exclude-list file");
  add_common(train_cmd, train_opts);

  // --- evaluate ------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("evaluate", "Score sequences against trained artifacts");
  eval_cmd->set_config("--config");
  std::string eval_manifest, eval_artifacts, eval_out;
  bool eval_all_labels = false;
  eval_cmd->add_option("--manifest", eval_manifest, "Dataset manifest")->required();
  eval_cmd->add_option("--artifacts", eval_artifacts, "Artifact directory from train")->required();
  eval_cmd->add_option("--out", eval_out, "Verdict CSV path")->required();
  eval_cmd->add_flag("--include-correct", eval_all_labels,
                     "Also score correct-labelled sequences");

  // --- experiment ----------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment", "Run detection-rate experiments");
  exp_cmd->set_config("--config");
  std::string exp_manifest, exp_out, exp_pipeline = "all", exp_exclude;
  bool exp_synth_defaults = false;
  bool exp_null = false;
  DatasetParams exp_params;
  CommonOptions exp_opts;
  exp_cmd->add_option("--manifest", exp_manifest, "Dataset manifest");
  exp_cmd->add_flag("--synth-defaults", exp_synth_defaults,
                    "Generate the default synthetic dataset in memory");
  exp_cmd->add_option("--out", exp_out, "Output directory")->required();
  exp_cmd->add_option("--pipeline", exp_pipeline, "Pipeline or 'all'")
      ->check(CLI::IsMember({"all", "mddtw_coords", "mddtw_angles", "hmm_coords", "hmm_angles"}));
  exp_cmd->add_flag("--null", exp_null, "Evaluate the correct set against itself");
  exp_cmd->add_option("--exclude", exp_exclude, "Exclude-list file");
  exp_cmd->add_option("--correct", exp_params.n_correct, "Correct repetitions per activity");
  exp_cmd->add_option("--errors", exp_params.n_error_per_type,
                      "Erroneous repetitions per error type");
  exp_cmd->add_option("--frames", exp_params.duration_frames, "Nominal frames per repetition");
  exp_cmd->add_option("--deviation-magnitude", exp_params.deviation_magnitude_deg,
                      "Deviation amplitude in degrees");
  exp_cmd->add_option("--noise-std", exp_params.noise_std_deg,
                      "Angle noise standard deviation in degrees");
  exp_cmd->add_option("--subject-spread", exp_params.subject_amplitude_spread,
                      "Relative per-subject amplitude spread");
  exp_cmd->add_option("--deviation-spread", exp_params.deviation_magnitude_spread,
                      "Relative per-repetition deviation-magnitude spread");
  exp_cmd->add_option("--style-bias", exp_params.style_bias_deg,
                      "Half-range of per-repetition deviation-plane drift (degrees)");
  exp_cmd->add_option("--tremor", exp_params.tremor_deg,
                      "Upper bound of per-repetition tremor amplitude (degrees)");
  exp_cmd->add_option("--dataset-seed", exp_params.seed, "Seed for --synth-defaults");
  add_common(exp_cmd, exp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) {
      if (!synth_all && activity_opt->count() == 0)
        throw CLI::RequiredError("--activity (or --all)");
      if (!synth_all) synth_params.activities = synth_activities;
      const GeneratedDataset dataset = generate_dataset(synth_params);
      const auto format = format_from_name(synth_format);
      const fs::path manifest = write_dataset(dataset, synth_out, *format);
      std::cout << "wrote " << dataset.data.total_sequences() << " sequences; manifest "
                << manifest.string() << "\n";
      return kExitOk;
    }

    if (extract_cmd->parsed()) {
      const ExperimentConfig config = to_config(extract_opts);
      const Dataset dataset = load_dataset(extract_manifest);
      fs::create_directories(extract_out);
      std::ostringstream index;
      index << "file,activity,subject,label,frames,split_index\n";
      for (const auto& [activity, seqs] : dataset.groups) {
        const ActivityDefinition& def = activity_definition(activity);
        for (std::size_t s = 0; s < seqs.size(); ++s) {
          const AngleSequence angles =
              angle_sequence(seqs[s], def, config.floor, config.plane_estimation);
          const PhasePair phases = segment_phases(angles, def);

          char name[128];
          std::snprintf(name, sizeof(name), "%s_%03zu_angles.csv", activity.c_str(), s);
          std::ostringstream csv;
          csv << "t,frontal,sagittal,transverse\n";
          for (std::size_t t = 0; t < angles.size(); ++t) {
            csv << format_stat(seqs[s].frames[t].timestamp) << ',' << format_stat(angles[t].frontal)
                << ',' << format_stat(angles[t].sagittal) << ','
                << format_stat(angles[t].transverse) << '\n';
          }
          atomic_write_file(fs::path(extract_out) / name, csv.str());
          index << name << ',' << activity << ',' << seqs[s].subject_id << ','
                << label_name(seqs[s].label) << ',' << angles.size() << ',' << phases.split_index
                << '\n';
        }
      }
      atomic_write_file(fs::path(extract_out) / "angles_index.csv", index.str());
      return kExitOk;
    }

    if (train_cmd->parsed()) {
      ExperimentConfig config = to_config(train_opts);
      config.pipeline = *pipeline_from_name(train_pipeline_name);
      std::set<std::string> exclude;
      if (!train_exclude.empty()) exclude = read_exclude_list(train_exclude);
      const Dataset dataset = load_dataset(train_manifest, exclude);
      const TrainedPipeline trained = train_pipeline(config, correct_subset(dataset));
      save_trained(trained, train_out);

      std::size_t files = 0;
      for (const ActivityModelSet& set : trained.activities)
        files += set.dtw.size() + set.hmm.size();
      std::cout << "trained " << trained.activities.size() << " activities; wrote " << files
                << " artifact files to " << train_out << "\n";
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      const TrainedPipeline trained = load_trained(eval_artifacts);
      const Dataset dataset = load_dataset(eval_manifest);
      const Dataset subject = eval_all_labels ? dataset : test_subset(dataset);
      const std::vector<VerdictRow> rows = evaluate_dataset(trained, subject);
      atomic_write_file(eval_out, verdicts_csv(trained, rows));
      std::cout << "wrote " << rows.size() << " verdicts to " << eval_out << "\n";
      return kExitOk;
    }

    if (exp_cmd->parsed()) {
      if (exp_synth_defaults && !exp_manifest.empty())
        throw CLI::ValidationError("--manifest and --synth-defaults are mutually exclusive");
      if (!exp_synth_defaults && exp_manifest.empty())
        throw CLI::RequiredError("--manifest or --synth-defaults");

      Dataset dataset;
      if (exp_synth_defaults) {
        dataset = generate_dataset(exp_params).data;
      } else {
        std::set<std::string> exclude;
        if (!exp_exclude.empty()) exclude = read_exclude_list(exp_exclude);
        dataset = load_dataset(exp_manifest, exclude);
      }

      const Dataset training = correct_subset(dataset);
      const Dataset test = exp_null ? training : test_subset(dataset);

      std::vector<Pipeline> pipelines;
      if (exp_pipeline == "all") {
        pipelines = {Pipeline::mddtw_coords, Pipeline::mddtw_angles, Pipeline::hmm_coords,
                     Pipeline::hmm_angles};
      } else {
        pipelines = {*pipeline_from_name(exp_pipeline)};
      }

      const ExperimentConfig config = to_config(exp_opts);
      write_experiment_outputs(config, pipelines, training, test, exp_out);
      std::cout << "experiment outputs written to " << exp_out << "\n";
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
