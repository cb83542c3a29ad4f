#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gesturegate/errors.hpp"
#include "gesturegate/parallel.hpp"

namespace gesturegate {

enum class Topology {
  ergodic,     // every transition allowed
  left_right,  // Bakis: a_ij = 0 for j < i and j > i + 2; starts in state 0
};

const char* topology_name(Topology t);

inline constexpr int kLeftRightSkip = 2;

/// Discrete-observation hidden Markov model. Rows of the transition and
/// emission matrices and the initial vector are stochastic; after training,
/// every structurally allowed entry is at least floor_eps so that no
/// observable sequence gets probability zero.
struct HmmModel {
  int n_states = 1;
  int n_symbols = 18;
  Topology topology = Topology::left_right;
  std::vector<double> transition;  // n_states x n_states, row-major
  std::vector<double> emission;    // n_states x n_symbols, row-major
  std::vector<double> initial;     // n_states
  double floor_eps = 1e-8;

  double a(int i, int j) const { return transition[static_cast<std::size_t>(i) * n_states + j]; }
  /// Emission probability of 1-based symbol `sym` in state i.
  double b(int i, int sym) const {
    return emission[static_cast<std::size_t>(i) * n_symbols + (sym - 1)];
  }

  bool transition_allowed(int i, int j) const {
    if (topology == Topology::ergodic) return true;
    return j >= i && j <= i + kLeftRightSkip;
  }
};

struct LogLikelihood {
  double total = 0.0;       // natural-log probability of the whole sequence
  double per_symbol = 0.0;  // total / T, the length-normalized statistic
};

/// Scaled forward recursion. exp(total) equals the sum over all state paths
/// of pi * prod(a) * prod(b). Symbols are 1-based; values outside
/// [1, n_symbols] raise SymbolOutOfRange.
LogLikelihood forward(const HmmModel& model, std::span<const int> obs);

/// Forward scores for a batch of sequences; the data-parallel kernel used by
/// calibration and evaluation. Serial and parallel paths agree bitwise.
std::vector<LogLikelihood> score_sequences(const HmmModel& model,
                                           std::span<const std::vector<int>> sequences,
                                           Execution exec = Execution::parallel);

/// Row-stochastic model with uniform rows perturbed by a seeded relative
/// jitter of at most 10%, then renormalized. Left-right topology zeroes the
/// forbidden transitions and pins the start distribution to state 0.
HmmModel init_model(int n_states, int n_symbols, Topology topology, std::uint64_t seed);

struct TrainOptions {
  int n_symbols = 18;
  int max_iterations = 300;
  double rel_tolerance = 1e-6;  // stop when relative log-likelihood gain drops below this
  double floor_eps = 1e-8;
};

struct TrainResult {
  HmmModel model;
  std::vector<double> loglik_history;  // total training log-likelihood per iteration
  int iterations = 0;
};

/// Observer invoked after each iteration's re-estimation, with the iteration
/// number, the updated model and the log-likelihood computed in that
/// iteration's E-step.
using TrainObserver = std::function<void(int, const HmmModel&, double)>;

/// Multi-sequence Baum-Welch: per-sequence posteriors are accumulated and
/// combined in the M-step. After every update, entries that fell below
/// floor_eps (where the topology allows mass at all) are raised to floor_eps
/// and rows renormalized. Deterministic for fixed inputs and seed.
TrainResult baum_welch(std::span<const std::vector<int>> training, int n_states,
                       Topology topology, std::uint64_t seed, const TrainOptions& opts = {},
                       const TrainObserver& observer = {});

}  // namespace gesturegate
