// Independent reference implementations used only by tests. They must stay
// brute-force simple so they can serve as oracles for the real algorithms.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gesturegate/hmm.hpp"
#include "gesturegate/mddtw.hpp"
#include "gesturegate/rng.hpp"

namespace oracles {

/// DTW by exhaustive enumeration of every monotone alignment path with steps
/// {(1,0),(0,1),(1,1)}, anchored at both endpoints. Ties in accumulated cost
/// are broken toward the shorter path, matching the library's convention.
struct DtwBest {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t len = 0;
};

inline double dtw_local_cost(const gesturegate::VectorSeries& x, std::size_t i,
                             const gesturegate::VectorSeries& y, std::size_t j) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    const double d = x.at(i, k) - y.at(j, k);
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline void dtw_walk(const gesturegate::VectorSeries& x, const gesturegate::VectorSeries& y,
                     std::size_t i, std::size_t j, double cost, std::size_t len, DtwBest& best) {
  cost += dtw_local_cost(x, i, y, j);
  len += 1;
  if (i + 1 == x.length() && j + 1 == y.length()) {
    if (cost < best.cost || (cost == best.cost && len < best.len)) best = {cost, len};
    return;
  }
  if (i + 1 < x.length()) dtw_walk(x, y, i + 1, j, cost, len, best);
  if (j + 1 < y.length()) dtw_walk(x, y, i, j + 1, cost, len, best);
  if (i + 1 < x.length() && j + 1 < y.length()) dtw_walk(x, y, i + 1, j + 1, cost, len, best);
}

inline double dtw_brute_force(const gesturegate::VectorSeries& x,
                              const gesturegate::VectorSeries& y, bool normalize = true) {
  DtwBest best;
  dtw_walk(x, y, 0, 0, 0.0, 0, best);
  return normalize ? best.cost / static_cast<double>(best.len) : best.cost;
}

/// Forward probability by exhaustive enumeration of all N^T state paths.
inline double forward_enumeration_log(const gesturegate::HmmModel& m,
                                      const std::vector<int>& obs) {
  const int N = m.n_states;
  const std::size_t T = obs.size();
  std::vector<int> path(T, 0);
  double total = 0.0;
  while (true) {
    double p = m.initial[path[0]] * m.b(path[0], obs[0]);
    for (std::size_t t = 1; t < T && p > 0.0; ++t)
      p *= m.a(path[t - 1], path[t]) * m.b(path[t], obs[t]);
    total += p;

    std::size_t t = 0;
    while (t < T && ++path[t] == N) path[t++] = 0;
    if (t == T) break;
  }
  return std::log(total);
}

inline gesturegate::VectorSeries random_series(gesturegate::Rng& rng, std::size_t length,
                                               std::size_t dim, double lo = -2.0,
                                               double hi = 2.0) {
  gesturegate::VectorSeries series(dim);
  std::vector<double> vec(dim);
  for (std::size_t t = 0; t < length; ++t) {
    for (double& v : vec) v = rng.uniform(lo, hi);
    series.push_back(vec);
  }
  return series;
}

inline gesturegate::HmmModel random_model(gesturegate::Rng& rng, int n_states, int n_symbols) {
  gesturegate::HmmModel m;
  m.n_states = n_states;
  m.n_symbols = n_symbols;
  m.topology = gesturegate::Topology::ergodic;
  m.transition.resize(static_cast<std::size_t>(n_states) * n_states);
  m.emission.resize(static_cast<std::size_t>(n_states) * n_symbols);
  m.initial.resize(n_states);

  const auto fill_stochastic = [&rng](std::vector<double>& values, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
      double sum = 0.0;
      for (int j = 0; j < cols; ++j) {
        const double v = 0.05 + rng.uniform();
        values[static_cast<std::size_t>(i) * cols + j] = v;
        sum += v;
      }
      for (int j = 0; j < cols; ++j) values[static_cast<std::size_t>(i) * cols + j] /= sum;
    }
  };
  fill_stochastic(m.transition, n_states, n_states);
  fill_stochastic(m.emission, n_states, n_symbols);
  fill_stochastic(m.initial, 1, n_states);
  return m;
}

inline std::vector<int> random_observations(gesturegate::Rng& rng, std::size_t length,
                                            int n_symbols) {
  std::vector<int> obs(length);
  for (int& s : obs) s = rng.uniform_int(1, n_symbols);
  return obs;
}

}  // namespace oracles
