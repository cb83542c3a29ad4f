#include "gesturegate/tables.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "gesturegate/dataset_io.hpp"

namespace gesturegate {

namespace {

std::string pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string stat(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::vector<Label> labels_present(const ResultTable& table) {
  std::vector<Label> labels;
  for (Label label : {Label::error1, Label::error2, Label::correct, Label::unlabeled}) {
    for (const ResultCell& cell : table.cells) {
      if (cell.test_label == label) {
        labels.push_back(label);
        break;
      }
    }
  }
  return labels;
}

std::vector<std::string> activities_present(const ResultTable& table) {
  std::vector<std::string> activities;
  for (const ResultCell& cell : table.cells) {
    bool seen = false;
    for (const std::string& a : activities) seen = seen || a == cell.activity;
    if (!seen) activities.push_back(cell.activity);
  }
  return activities;
}

void pad(std::ostringstream& out, const std::string& text, std::size_t width) {
  out << text;
  for (std::size_t i = text.size(); i < width; ++i) out << ' ';
}

}  // namespace

std::string results_csv(const ResultTable& table) {
  std::ostringstream out;
  out << "activity,phase,error_type,pipeline,characteristic,detection_rate_pct\n";
  for (const ResultCell& cell : table.cells) {
    out << cell.activity << ',' << cell.phase << ',' << label_name(cell.test_label) << ','
        << pipeline_name(table.pipeline) << ',' << cell.characteristic << ','
        << pct(cell.detection_rate_pct) << '\n';
  }
  return out.str();
}

std::string format_dtw_table(const ResultTable& table) {
  const auto labels = labels_present(table);
  const auto activities = activities_present(table);
  const std::size_t name_width = 28;
  const std::size_t col_width = 12;

  std::ostringstream out;
  out << "Detection rates (%), " << pipeline_name(table.pipeline) << "\n\n";
  pad(out, "activity", name_width);
  for (int phase = 1; phase <= 2; ++phase)
    for (Label label : labels)
      pad(out, "p" + std::to_string(phase) + " " + label_name(label), col_width);
  out << '\n';

  for (const std::string& activity : activities) {
    pad(out, activity, name_width);
    for (int phase = 1; phase <= 2; ++phase) {
      for (Label label : labels) {
        const ResultCell* cell = table.find(activity, phase, label, "trajectory");
        pad(out, cell != nullptr ? pct(cell->detection_rate_pct) : "-", col_width);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string format_hmm_table(const ResultTable& table, int phase) {
  const auto labels = labels_present(table);
  const auto activities = activities_present(table);
  const auto names = characteristic_names(table.pipeline);
  const std::size_t name_width = 28;
  const std::size_t col_width = 12;

  std::ostringstream out;
  out << "Detection rates (%), " << pipeline_name(table.pipeline) << ", phase " << phase
      << " (per characteristic; 'max' is the recognition summary)\n\n";
  pad(out, "activity", name_width);
  for (Label label : labels) {
    for (const std::string& characteristic : names)
      pad(out, std::string(label_name(label)) + " " + characteristic, col_width + 2);
    pad(out, std::string(label_name(label)) + " max", col_width + 2);
  }
  out << '\n';

  for (const std::string& activity : activities) {
    pad(out, activity, name_width);
    for (Label label : labels) {
      for (const std::string& characteristic : names) {
        const ResultCell* cell = table.find(activity, phase, label, characteristic);
        pad(out, cell != nullptr ? pct(cell->detection_rate_pct) : "-", col_width + 2);
      }
      const ResultCell* max_cell = table.find(activity, phase, label, "max");
      pad(out, max_cell != nullptr ? pct(max_cell->detection_rate_pct) : "-", col_width + 2);
    }
    out << '\n';
  }
  return out.str();
}

std::string averages_csv(std::span<const AverageRow> rows) {
  std::ostringstream out;
  out << "phase,features,error_type,technique,avg_detection_rate_pct\n";
  for (const AverageRow& row : rows) {
    out << row.phase << ',' << row.features << ',' << label_name(row.error) << ','
        << row.technique << ',' << pct(row.pct) << '\n';
  }
  return out.str();
}

std::string format_averages(std::span<const AverageRow> rows) {
  std::ostringstream out;
  out << "Average detection rates (%) per technique\n\n";
  pad(out, "phase", 8);
  pad(out, "features", 14);
  pad(out, "error", 10);
  pad(out, "technique", 11);
  out << "avg\n";
  for (const AverageRow& row : rows) {
    pad(out, std::to_string(row.phase), 8);
    pad(out, row.features, 14);
    pad(out, label_name(row.error), 10);
    pad(out, row.technique, 11);
    out << pct(row.pct) << '\n';
  }
  return out.str();
}

std::string verdicts_csv(const TrainedPipeline& trained, std::span<const VerdictRow> rows) {
  std::ostringstream out;
  out << "activity,sequence,subject,label,phase,pipeline,characteristic,statistic,lo,hi,accepted\n";
  for (const VerdictRow& row : rows) {
    out << row.activity << ',' << row.sequence_index << ',' << row.subject_id << ','
        << label_name(row.label) << ',' << row.phase << ','
        << pipeline_name(trained.config.pipeline) << ',' << row.characteristic << ','
        << stat(row.statistic) << ',' << stat(row.lo) << ',' << stat(row.hi) << ','
        << (row.accepted ? "1" : "0") << '\n';
  }
  return out.str();
}

std::vector<ResultTable> write_experiment_outputs(const ExperimentConfig& base_config,
                                                  std::span<const Pipeline> pipelines,
                                                  const Dataset& training, const Dataset& test,
                                                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  std::vector<ResultTable> tables;
  for (Pipeline pipeline : pipelines) {
    ExperimentConfig config = base_config;
    config.pipeline = pipeline;
    ResultTable table = run_experiment(config, training, test);

    atomic_write_file(out_dir / ("results_" + std::string(pipeline_name(pipeline)) + ".csv"),
                      results_csv(table));
    if (pipeline_uses_hmm(pipeline)) {
      for (int phase = 1; phase <= 2; ++phase) {
        atomic_write_file(out_dir / ("table_" + std::string(pipeline_name(pipeline)) + "_phase" +
                                     std::to_string(phase) + ".txt"),
                          format_hmm_table(table, phase));
      }
    } else {
      atomic_write_file(out_dir / ("table_" + std::string(pipeline_name(pipeline)) + ".txt"),
                        format_dtw_table(table));
    }
    tables.push_back(std::move(table));
  }

  if (tables.size() == 4) {
    const std::vector<AverageRow> rows = average_rows(tables);
    atomic_write_file(out_dir / "averages.csv", averages_csv(rows));
    atomic_write_file(out_dir / "averages.txt", format_averages(rows));
  }
  return tables;
}

}  // namespace gesturegate
