#include "gesturegate/mddtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gesturegate {

VectorSeries VectorSeries::from_points(std::span<const Vec3> points) {
  VectorSeries series(3);
  for (const Vec3& p : points) {
    const double vec[3] = {p.x, p.y, p.z};
    series.push_back(vec);
  }
  return series;
}

VectorSeries VectorSeries::from_track(std::span<const double> track, std::size_t dim) {
  VectorSeries series(dim);
  std::vector<double> vec(dim, 0.0);
  for (double v : track) {
    vec[0] = v;
    series.push_back(vec);
  }
  return series;
}

void VectorSeries::push_back(std::span<const double> vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_) throw DimensionMismatch("vector dimension changed within a series");
  for (double v : vec) {
    if (!std::isfinite(v)) throw Error("non-finite component in series");
    values_.push_back(v);
  }
}

namespace {

double local_cost(const VectorSeries& x, std::size_t i, const VectorSeries& y, std::size_t j) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    const double d = x.at(i, k) - y.at(j, k);
    sum += d * d;
  }
  return std::sqrt(sum);
}

struct Cell {
  double cost;
  std::size_t len;
};

// Lexicographic order: cheaper path wins, shorter path breaks exact ties.
bool better(const Cell& a, const Cell& b) {
  return a.cost < b.cost || (a.cost == b.cost && a.len < b.len);
}

}  // namespace

double mddtw_distance(const VectorSeries& x, const VectorSeries& y, const DtwOptions& opts) {
  if (x.empty() || y.empty()) throw EmptySeries("DTW over an empty series");
  if (x.dim() != y.dim())
    throw DimensionMismatch("series dimensions differ: " + std::to_string(x.dim()) + " vs " +
                            std::to_string(y.dim()));

  const std::size_t n = x.length();
  const std::size_t m = y.length();

  std::vector<Cell> prev(m), curr(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = local_cost(x, i, y, j);
      Cell best;
      if (i == 0 && j == 0) {
        best = {0.0, 0};
      } else if (i == 0) {
        best = curr[j - 1];
      } else if (j == 0) {
        best = prev[j];
      } else {
        best = prev[j - 1];  // diagonal
        if (better(prev[j], best)) best = prev[j];
        if (better(curr[j - 1], best)) best = curr[j - 1];
      }
      curr[j] = {best.cost + c, best.len + 1};
    }
    std::swap(prev, curr);
  }

  const Cell& end = prev[m - 1];
  return opts.normalize ? end.cost / static_cast<double>(end.len) : end.cost;
}

std::vector<double> pairwise_distance_matrix(std::span<const VectorSeries> series,
                                             const DtwOptions& opts, Execution exec) {
  const std::size_t n = series.size();
  std::vector<double> matrix(n * n, 0.0);

  // Upper-triangle cell list; each cell is computed independently and
  // mirrored, so thread scheduling cannot change the result.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);

  const auto compute = [&](std::size_t c) {
    const auto [i, j] = cells[c];
    const double d = mddtw_distance(series[i], series[j], opts);
    matrix[i * n + j] = d;
    matrix[j * n + i] = d;
  };

  if (exec == Execution::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(cells.size()); ++c)
      compute(static_cast<std::size_t>(c));
  } else {
    for (std::size_t c = 0; c < cells.size(); ++c) compute(c);
  }
  return matrix;
}

DtwTemplate select_template(std::span<const VectorSeries> training, const DtwOptions& opts,
                            Execution exec) {
  if (training.size() < 2)
    throw InsufficientTraining("template selection needs at least 2 training series");
  const std::size_t dim = training[0].dim();
  for (const VectorSeries& s : training)
    if (s.dim() != dim) throw DimensionMismatch("training series dimensions differ");

  const std::size_t n = training.size();
  const std::vector<double> matrix = pairwise_distance_matrix(training, opts, exec);

  std::size_t best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += matrix[i * n + j];
    if (sum < best_sum) {
      best_sum = sum;
      best = i;
    }
  }

  DtwTemplate tmpl;
  tmpl.series = training[best];
  tmpl.index = best;
  tmpl.training_distances.assign(matrix.begin() + best * n, matrix.begin() + (best + 1) * n);
  return tmpl;
}

}  // namespace gesturegate
