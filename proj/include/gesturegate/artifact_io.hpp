#pragma once

#include <filesystem>

#include "gesturegate/experiment.hpp"

namespace gesturegate {

/// Persists a trained pipeline: a summary.json with the configuration plus
/// one JSON document per template or model. Numeric values survive a
/// save/load round trip exactly.
void save_trained(const TrainedPipeline& trained, const std::filesystem::path& dir);

TrainedPipeline load_trained(const std::filesystem::path& dir);

}  // namespace gesturegate
