#include "gesturegate/quantizer.hpp"

#include <algorithm>
#include <cmath>

namespace gesturegate {

int quantize(double angle_deg) {
  if (!(angle_deg >= -90.0 && angle_deg <= 90.0)) throw OutOfRange(angle_deg);
  const int symbol = static_cast<int>(std::floor((angle_deg + 90.0) / 10.0)) + 1;
  return std::min(symbol, kAlphabetSize);
}

std::vector<int> quantize_track(std::span<const double> angles_deg) {
  if (angles_deg.empty()) throw EmptySeries("cannot quantize an empty track");
  std::vector<int> symbols;
  symbols.reserve(angles_deg.size());
  for (std::size_t t = 0; t < angles_deg.size(); ++t) {
    const double a = angles_deg[t];
    if (!(a >= -90.0 && a <= 90.0)) throw OutOfRange(a, t);
    symbols.push_back(quantize(a));
  }
  return symbols;
}

SymbolSequence quantize_sequence(const AngleSequence& angles, Plane plane) {
  return SymbolSequence{quantize_track(plane_track(angles, plane))};
}

}  // namespace gesturegate
