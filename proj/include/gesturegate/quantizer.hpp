#pragma once

#include <span>
#include <vector>

#include "gesturegate/kinematics.hpp"

namespace gesturegate {

inline constexpr int kAlphabetSize = 18;

/// Maps an angle in [-90, 90] to its 10-degree-bin symbol in [1, 18].
/// Bins are half-open below ([lo, lo+10)) except the top bin [80, 90].
int quantize(double angle_deg);

struct SymbolSequence {
  std::vector<int> symbols;
};

std::vector<int> quantize_track(std::span<const double> angles_deg);

SymbolSequence quantize_sequence(const AngleSequence& angles, Plane plane);

}  // namespace gesturegate
