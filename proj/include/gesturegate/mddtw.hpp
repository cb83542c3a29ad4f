#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gesturegate/errors.hpp"
#include "gesturegate/geometry.hpp"
#include "gesturegate/parallel.hpp"

namespace gesturegate {

/// Fixed-dimension series of real vectors, stored contiguously.
class VectorSeries {
 public:
  VectorSeries() = default;
  explicit VectorSeries(std::size_t dim) : dim_(dim) {}

  static VectorSeries from_points(std::span<const Vec3> points);
  /// One-dimensional track lifted to d dimensions by zero padding.
  static VectorSeries from_track(std::span<const double> track, std::size_t dim = 1);

  void push_back(std::span<const double> vec);

  std::size_t length() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return values_.empty(); }

  double at(std::size_t t, std::size_t k) const { return values_[t * dim_ + k]; }
  std::span<const double> vector(std::size_t t) const {
    return {values_.data() + t * dim_, dim_};
  }

 private:
  std::vector<double> values_;
  std::size_t dim_ = 0;
};

struct DtwOptions {
  /// Divide the accumulated cost by the optimal path length. Durations of
  /// recorded repetitions vary, so the normalized distance is the default;
  /// the raw accumulated cost is available for comparison runs.
  bool normalize = true;
};

/// Multi-dimensional DTW distance: dynamic-programming alignment over steps
/// {(1,0),(0,1),(1,1)} with the Euclidean distance between step vectors as
/// local cost, anchored at both endpoints and without a global window.
/// Ties in accumulated cost are resolved toward the shorter path, which
/// fixes the path length used for normalization.
double mddtw_distance(const VectorSeries& x, const VectorSeries& y, const DtwOptions& opts = {});

/// Full symmetric matrix of pairwise distances, row-major n x n. Cells are
/// independent, so the parallel path must match the serial one bitwise.
std::vector<double> pairwise_distance_matrix(std::span<const VectorSeries> series,
                                             const DtwOptions& opts = {},
                                             Execution exec = Execution::parallel);

struct DtwTemplate {
  VectorSeries series;
  std::size_t index = 0;                   // position of the winner in the training list
  std::vector<double> training_distances;  // distance from every training series to the winner
};

/// Picks the training series whose summed distance to all others is minimal
/// (lowest index on ties) and records the distances to it.
DtwTemplate select_template(std::span<const VectorSeries> training, const DtwOptions& opts = {},
                            Execution exec = Execution::parallel);

}  // namespace gesturegate
