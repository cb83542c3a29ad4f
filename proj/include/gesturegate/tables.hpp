#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "gesturegate/experiment.hpp"

namespace gesturegate {

/// Long-form CSV of one result table:
/// activity,phase,error_type,pipeline,characteristic,detection_rate_pct
std::string results_csv(const ResultTable& table);

/// Fixed-width text table for a DTW pipeline: activities as rows, one column
/// per (phase, test label).
std::string format_dtw_table(const ResultTable& table);

/// Fixed-width text table for one phase of an HMM pipeline: activities as
/// rows, per test label one column per characteristic plus the max summary.
std::string format_hmm_table(const ResultTable& table, int phase);

std::string averages_csv(std::span<const AverageRow> rows);
std::string format_averages(std::span<const AverageRow> rows);

/// Verdict CSV written by the evaluate command: one row per sequence x phase
/// (x characteristic for HMM pipelines, including the combined rule).
std::string verdicts_csv(const TrainedPipeline& trained, std::span<const VerdictRow> rows);

/// Runs the requested pipelines over the datasets and writes all experiment
/// outputs (per-pipeline CSVs, the six formatted tables, and the averages
/// table when all four pipelines run) into out_dir. Returns the tables.
std::vector<ResultTable> write_experiment_outputs(const ExperimentConfig& base_config,
                                                  std::span<const Pipeline> pipelines,
                                                  const Dataset& training, const Dataset& test,
                                                  const std::filesystem::path& out_dir);

}  // namespace gesturegate
