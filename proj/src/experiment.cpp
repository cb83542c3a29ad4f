#include "gesturegate/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "gesturegate/rng.hpp"

namespace gesturegate {

double AffineMap::apply(double v) const {
  const double mapped = -90.0 + 180.0 * (v - lo) / (hi - lo);
  return std::clamp(mapped, -90.0, 90.0);
}

AffineMap AffineMap::fit(std::span<const double> values) {
  if (values.empty()) throw EmptySeries("cannot fit an affine map to an empty track");
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo < 1e-9) {  // flat track; keep the map well defined
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

const ActivityModelSet* TrainedPipeline::find(std::string_view activity_id) const {
  for (const ActivityModelSet& set : activities)
    if (set.activity_id == activity_id) return &set;
  return nullptr;
}

std::array<std::string, 3> characteristic_names(Pipeline pipeline) {
  if (pipeline_uses_angles(pipeline)) return {"frontal", "sagittal", "transverse"};
  return {"x", "y", "z"};
}

namespace {

/// Everything evaluation needs from one sequence, split by phase.
struct SequenceFeatures {
  std::size_t split = 0;
  std::array<VectorSeries, 2> dtw_series;               // per phase
  std::array<std::array<std::vector<double>, 3>, 2> tracks;  // per phase, per characteristic
};

VectorSeries angle_vectors(const AngleSequence& angles) {
  VectorSeries series(3);
  for (const AngleFrame& a : angles) {
    const double vec[3] = {a.frontal, a.sagittal, a.transverse};
    series.push_back(vec);
  }
  return series;
}

SequenceFeatures extract_features(const ExperimentConfig& config, const ActivityDefinition& def,
                                  const SkeletonSequence& seq) {
  const AngleSequence angles = angle_sequence(seq, def, config.floor, config.plane_estimation);
  const PhasePair phases = segment_phases(angles, def);

  SequenceFeatures features;
  features.split = phases.split_index;
  const std::size_t last = angles.size() - 1;
  const std::array<std::pair<std::size_t, std::size_t>, 2> ranges = {
      std::pair<std::size_t, std::size_t>{0, phases.split_index},
      std::pair<std::size_t, std::size_t>{phases.split_index, last}};

  const bool use_angles = pipeline_uses_angles(config.pipeline);
  VectorSeries full;
  if (use_angles) {
    full = angle_vectors(angles);
  } else {
    const NormalizedSequence normalized = normalize(seq, def);
    std::vector<Vec3> distal;
    distal.reserve(normalized.frames.size());
    for (const NormalizedFrame& f : normalized.frames) distal.push_back(f.distal);
    full = VectorSeries::from_points(distal);
  }

  for (int phase = 0; phase < 2; ++phase) {
    const auto [first, last_idx] = ranges[phase];
    features.dtw_series[phase] = slice(full, first, last_idx);
    for (int c = 0; c < 3; ++c) {
      auto& track = features.tracks[phase][c];
      track.reserve(last_idx - first + 1);
      for (std::size_t t = first; t <= last_idx; ++t) track.push_back(full.at(t, c));
    }
  }
  return features;
}

std::vector<int> quantize_characteristic(std::span<const double> track, const AffineMap& affine) {
  std::vector<double> mapped;
  mapped.reserve(track.size());
  for (double v : track) mapped.push_back(affine.apply(v));
  return quantize_track(mapped);
}

}  // namespace

TrainedPipeline train_pipeline(const ExperimentConfig& config, const Dataset& training) {
  if (!(config.k_sigma > 0.0)) throw Error("k_sigma must be positive");

  TrainedPipeline trained;
  trained.config = config;
  const bool hmm = pipeline_uses_hmm(config.pipeline);
  const bool angles = pipeline_uses_angles(config.pipeline);
  const DtwOptions dtw_opts{config.dtw_normalize};
  const auto names = characteristic_names(config.pipeline);

  for (std::size_t a = 0; a < training.groups.size(); ++a) {
    const auto& [activity_id, sequences] = training.groups[a];
    const ActivityDefinition& def = activity_definition(activity_id);

    std::vector<const SkeletonSequence*> correct;
    for (const SkeletonSequence& seq : sequences)
      if (seq.label == Label::correct) correct.push_back(&seq);
    if (correct.size() < 2)
      throw InsufficientTraining("activity '" + activity_id + "' has " +
                                 std::to_string(correct.size()) +
                                 " correct sequences; at least 2 are required");

    std::vector<SequenceFeatures> features;
    features.reserve(correct.size());
    for (const SkeletonSequence* seq : correct) features.push_back(extract_features(config, def, *seq));

    ActivityModelSet set;
    set.activity_id = activity_id;
    set.def = def;

    for (int phase = 0; phase < 2; ++phase) {
      if (!hmm) {
        std::vector<VectorSeries> series;
        series.reserve(features.size());
        for (const SequenceFeatures& f : features) series.push_back(f.dtw_series[phase]);

        PhaseTemplate pt;
        pt.phase = phase + 1;
        pt.tmpl = select_template(series, dtw_opts);
        pt.interval =
            config.dtw_band == DtwBand::range
                ? calibrate_range(pt.tmpl.training_distances, StatisticKind::dtw_distance)
                : calibrate(pt.tmpl.training_distances, StatisticKind::dtw_distance,
                            config.k_sigma);
        set.dtw.push_back(std::move(pt));
        continue;
      }

      for (int c = 0; c < 3; ++c) {
        AffineMap affine = AffineMap::identity();
        if (!angles) {
          std::vector<double> pooled;
          for (const SequenceFeatures& f : features)
            pooled.insert(pooled.end(), f.tracks[phase][c].begin(), f.tracks[phase][c].end());
          affine = AffineMap::fit(pooled);
        }

        std::vector<std::vector<int>> symbols;
        symbols.reserve(features.size());
        for (const SequenceFeatures& f : features)
          symbols.push_back(quantize_characteristic(f.tracks[phase][c], affine));

        PhaseCharacteristicModel pcm;
        pcm.phase = phase + 1;
        pcm.characteristic = names[c];
        pcm.affine = affine;
        const std::uint64_t seed = derive_seed(
            config.seed, {a, static_cast<std::uint64_t>(phase), static_cast<std::uint64_t>(c)});
        TrainOptions train_opts;
        pcm.model = baum_welch(symbols, config.n_states, config.topology, seed, train_opts).model;

        const std::vector<LogLikelihood> scores = score_sequences(pcm.model, symbols);
        std::vector<double> stats;
        stats.reserve(scores.size());
        for (const LogLikelihood& s : scores) stats.push_back(s.per_symbol);
        pcm.interval = calibrate(stats, StatisticKind::hmm_per_symbol_loglik, config.k_sigma);
        set.hmm.push_back(std::move(pcm));
      }
    }
    trained.activities.push_back(std::move(set));
  }
  return trained;
}

std::vector<VerdictRow> evaluate_dataset(const TrainedPipeline& trained, const Dataset& test) {
  const ExperimentConfig& config = trained.config;
  const bool hmm = pipeline_uses_hmm(config.pipeline);
  const DtwOptions dtw_opts{config.dtw_normalize};
  const auto names = characteristic_names(config.pipeline);
  const auto track_index = [&names](const std::string& characteristic) {
    for (int c = 0; c < 3; ++c)
      if (names[c] == characteristic) return c;
    throw Error("unknown characteristic '" + characteristic + "'");
  };

  std::vector<VerdictRow> rows;
  for (const auto& [activity_id, sequences] : test.groups) {
    const ActivityModelSet* set = trained.find(activity_id);
    if (set == nullptr) throw MissingActivityData(activity_id);

    for (std::size_t s = 0; s < sequences.size(); ++s) {
      const SkeletonSequence& seq = sequences[s];
      const SequenceFeatures features = extract_features(config, set->def, seq);

      VerdictRow base;
      base.activity = activity_id;
      base.sequence_index = s;
      base.subject_id = seq.subject_id;
      base.label = seq.label;

      for (int phase = 0; phase < 2; ++phase) {
        base.phase = phase + 1;
        if (!hmm) {
          const PhaseTemplate& pt = set->dtw[phase];
          const Verdict v = evaluate_dtw(features.dtw_series[phase], pt.tmpl, pt.interval, dtw_opts);
          VerdictRow row = base;
          row.characteristic = "trajectory";
          row.statistic = v.statistic;
          row.lo = v.interval.lo;
          row.hi = v.interval.hi;
          row.accepted = v.accepted;
          rows.push_back(std::move(row));
          continue;
        }

        int accepted_count = 0;
        for (const PhaseCharacteristicModel& pcm : set->hmm) {
          if (pcm.phase != phase + 1) continue;
          const int c = track_index(pcm.characteristic);
          const std::vector<int> symbols =
              quantize_characteristic(features.tracks[phase][c], pcm.affine);
          const Verdict v = evaluate_hmm(symbols, pcm.model, pcm.interval);
          accepted_count += v.accepted ? 1 : 0;

          VerdictRow row = base;
          row.characteristic = pcm.characteristic;
          row.statistic = v.statistic;
          row.lo = v.interval.lo;
          row.hi = v.interval.hi;
          row.accepted = v.accepted;
          rows.push_back(std::move(row));
        }
        // Combined rule (an extension of the per-characteristic verdicts):
        // reject when any characteristic rejects.
        VerdictRow combined = base;
        combined.characteristic = "combined";
        combined.statistic = accepted_count;
        combined.lo = 3.0;
        combined.hi = 3.0;
        combined.accepted = accepted_count == 3;
        rows.push_back(std::move(combined));
      }
    }
  }
  return rows;
}

ResultTable tabulate(const TrainedPipeline& trained, std::span<const VerdictRow> rows) {
  const bool hmm = pipeline_uses_hmm(trained.config.pipeline);
  const auto names = characteristic_names(trained.config.pipeline);

  ResultTable table;
  table.pipeline = trained.config.pipeline;

  // Preserve trained-activity order; labels in enum order.
  for (const ActivityModelSet& set : trained.activities) {
    for (int phase = 1; phase <= 2; ++phase) {
      for (Label label : {Label::correct, Label::error1, Label::error2, Label::unlabeled}) {
        const auto rate_of = [&](std::string_view characteristic) -> std::optional<ResultCell> {
          int n = 0;
          int rejected = 0;
          for (const VerdictRow& row : rows) {
            if (row.activity != set.activity_id || row.phase != phase || row.label != label ||
                row.characteristic != characteristic)
              continue;
            ++n;
            rejected += row.accepted ? 0 : 1;
          }
          if (n == 0) return std::nullopt;
          ResultCell cell;
          cell.activity = set.activity_id;
          cell.phase = phase;
          cell.test_label = label;
          cell.characteristic = std::string(characteristic);
          cell.detection_rate_pct = 100.0 * rejected / n;
          cell.n_sequences = n;
          return cell;
        };

        if (!hmm) {
          if (auto cell = rate_of("trajectory")) table.cells.push_back(*cell);
          continue;
        }
        double max_rate = -1.0;
        int max_n = 0;
        bool any = false;
        for (const std::string& characteristic : names) {
          if (auto cell = rate_of(characteristic)) {
            any = true;
            max_rate = std::max(max_rate, cell->detection_rate_pct);
            max_n = cell->n_sequences;
            table.cells.push_back(*cell);
          }
        }
        if (any) {
          ResultCell summary;
          summary.activity = set.activity_id;
          summary.phase = phase;
          summary.test_label = label;
          summary.characteristic = "max";
          summary.detection_rate_pct = max_rate;
          summary.n_sequences = max_n;
          table.cells.push_back(summary);
        }
      }
    }
  }
  return table;
}

const ResultCell* ResultTable::find(std::string_view activity, int phase, Label label,
                                    std::string_view characteristic) const {
  for (const ResultCell& cell : cells)
    if (cell.activity == activity && cell.phase == phase && cell.test_label == label &&
        cell.characteristic == characteristic)
      return &cell;
  return nullptr;
}

ResultTable run_experiment(const ExperimentConfig& config, const Dataset& training,
                           const Dataset& test) {
  const TrainedPipeline trained = train_pipeline(config, training);

  for (const ActivityModelSet& set : trained.activities) {
    const auto* group = test.find(set.activity_id);
    if (group == nullptr || group->empty()) throw MissingActivityData(set.activity_id);
  }

  const std::vector<VerdictRow> rows = evaluate_dataset(trained, test);
  return tabulate(trained, rows);
}

std::vector<AverageRow> average_rows(std::span<const ResultTable> tables) {
  std::vector<AverageRow> out;
  for (int phase = 1; phase <= 2; ++phase) {
    for (const bool angles : {false, true}) {
      for (Label error : {Label::error1, Label::error2}) {
        for (const bool hmm : {true, false}) {
          const ResultTable* table = nullptr;
          for (const ResultTable& t : tables) {
            if (pipeline_uses_hmm(t.pipeline) == hmm && pipeline_uses_angles(t.pipeline) == angles)
              table = &t;
          }
          if (table == nullptr) continue;

          const std::string characteristic = hmm ? "max" : "trajectory";
          double sum = 0.0;
          int n = 0;
          for (const ResultCell& cell : table->cells) {
            if (cell.phase != phase || cell.test_label != error ||
                cell.characteristic != characteristic)
              continue;
            sum += cell.detection_rate_pct;
            ++n;
          }
          if (n == 0) continue;

          AverageRow row;
          row.phase = phase;
          row.features = angles ? "angles" : "coordinates";
          row.error = error;
          row.technique = hmm ? "HMM" : "DTW";
          row.pct = sum / n;
          out.push_back(row);
        }
      }
    }
  }
  return out;
}

}  // namespace gesturegate
