#include "gesturegate/hmm.hpp"

#include <cmath>
#include <cstddef>

#include "gesturegate/rng.hpp"

namespace gesturegate {

const char* topology_name(Topology t) { return t == Topology::ergodic ? "ergodic" : "left_right"; }

namespace {

void check_observations(std::span<const int> obs, int n_symbols) {
  if (obs.empty()) throw EmptySeries("empty observation sequence");
  for (std::size_t t = 0; t < obs.size(); ++t)
    if (obs[t] < 1 || obs[t] > n_symbols) throw SymbolOutOfRange(t, obs[t], n_symbols);
}

/// One scaled forward pass. alpha is T x N with rows summing to 1; scale[t]
/// holds the row sum before normalization, so sum(log(scale)) is the total
/// log-likelihood.
double scaled_forward(const HmmModel& m, std::span<const int> obs, std::vector<double>& alpha,
                      std::vector<double>& scale) {
  const int N = m.n_states;
  const std::size_t T = obs.size();
  alpha.assign(T * N, 0.0);
  scale.assign(T, 0.0);

  double log_total = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    double sum = 0.0;
    for (int j = 0; j < N; ++j) {
      double raw;
      if (t == 0) {
        raw = m.initial[j] * m.b(j, obs[0]);
      } else {
        double acc = 0.0;
        for (int i = 0; i < N; ++i) acc += alpha[(t - 1) * N + i] * m.a(i, j);
        raw = acc * m.b(j, obs[t]);
      }
      alpha[t * N + j] = raw;
      sum += raw;
    }
    if (!(sum > 0.0) || !std::isfinite(sum))
      throw NumericalError("forward recursion underflowed at t=" + std::to_string(t));
    scale[t] = sum;
    log_total += std::log(sum);
    for (int j = 0; j < N; ++j) alpha[t * N + j] /= sum;
  }
  return log_total;
}

/// Backward pass scaled with the forward pass's factors, so that
/// gamma_t(i) = alpha[t][i] * beta[t][i] without further normalization.
void scaled_backward(const HmmModel& m, std::span<const int> obs,
                     std::span<const double> scale, std::vector<double>& beta) {
  const int N = m.n_states;
  const std::size_t T = obs.size();
  beta.assign(T * N, 0.0);
  for (int i = 0; i < N; ++i) beta[(T - 1) * N + i] = 1.0;
  for (std::size_t t = T - 1; t-- > 0;) {
    for (int i = 0; i < N; ++i) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j)
        acc += m.a(i, j) * m.b(j, obs[t + 1]) * beta[(t + 1) * N + j];
      beta[t * N + i] = acc / scale[t + 1];
    }
  }
}

void normalize_row(std::span<double> row) {
  double sum = 0.0;
  for (double v : row) sum += v;
  if (!(sum > 0.0)) throw NumericalError("stochastic row lost all mass");
  for (double& v : row) v /= sum;
}

/// Raises allowed entries below eps to eps and renormalizes the row.
/// Entries the topology forbids stay exactly zero.
void floor_row(std::span<double> row, std::span<const char> allowed, double eps) {
  for (std::size_t k = 0; k < row.size(); ++k)
    if (allowed[k] && row[k] < eps) row[k] = eps;
  normalize_row(row);
}

}  // namespace

LogLikelihood forward(const HmmModel& model, std::span<const int> obs) {
  check_observations(obs, model.n_symbols);
  std::vector<double> alpha, scale;
  const double total = scaled_forward(model, obs, alpha, scale);
  return {total, total / static_cast<double>(obs.size())};
}

std::vector<LogLikelihood> score_sequences(const HmmModel& model,
                                           std::span<const std::vector<int>> sequences,
                                           Execution exec) {
  std::vector<LogLikelihood> scores(sequences.size());
  if (exec == Execution::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(sequences.size()); ++s)
      scores[s] = forward(model, sequences[s]);
  } else {
    for (std::size_t s = 0; s < sequences.size(); ++s) scores[s] = forward(model, sequences[s]);
  }
  return scores;
}

HmmModel init_model(int n_states, int n_symbols, Topology topology, std::uint64_t seed) {
  if (n_states < 1 || n_symbols < 1) throw Error("model needs at least one state and one symbol");

  HmmModel m;
  m.n_states = n_states;
  m.n_symbols = n_symbols;
  m.topology = topology;
  m.transition.assign(static_cast<std::size_t>(n_states) * n_states, 0.0);
  m.emission.assign(static_cast<std::size_t>(n_states) * n_symbols, 0.0);
  m.initial.assign(n_states, 0.0);

  Rng rng(seed);
  const auto perturbed = [&rng]() { return 1.0 + rng.uniform(-0.1, 0.1); };

  for (int i = 0; i < n_states; ++i) {
    auto row = std::span<double>(m.transition).subspan(static_cast<std::size_t>(i) * n_states,
                                                       n_states);
    for (int j = 0; j < n_states; ++j)
      if (m.transition_allowed(i, j)) row[j] = perturbed();
    normalize_row(row);
  }
  for (int i = 0; i < n_states; ++i) {
    auto row = std::span<double>(m.emission).subspan(static_cast<std::size_t>(i) * n_symbols,
                                                     n_symbols);
    for (int k = 0; k < n_symbols; ++k) row[k] = perturbed();
    normalize_row(row);
  }
  if (topology == Topology::left_right) {
    m.initial[0] = 1.0;
  } else {
    for (int i = 0; i < n_states; ++i) m.initial[i] = perturbed();
    normalize_row(m.initial);
  }
  return m;
}

TrainResult baum_welch(std::span<const std::vector<int>> training, int n_states,
                       Topology topology, std::uint64_t seed, const TrainOptions& opts,
                       const TrainObserver& observer) {
  if (training.empty()) throw EmptyTraining("Baum-Welch needs at least one training sequence");
  for (std::size_t s = 0; s < training.size(); ++s) {
    if (training[s].size() < 2) throw SequenceTooShort(s);
    check_observations(training[s], opts.n_symbols);
  }

  const int N = n_states;
  const int M = opts.n_symbols;

  HmmModel model = init_model(N, M, topology, seed);
  model.floor_eps = opts.floor_eps;

  std::vector<char> trans_allowed(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) trans_allowed[i * N + j] = model.transition_allowed(i, j);
  const std::vector<char> emit_allowed(M, 1);
  std::vector<char> init_allowed(N, 1);
  if (topology == Topology::left_right) {
    init_allowed.assign(N, 0);
    init_allowed[0] = 1;
  }

  TrainResult result;
  std::vector<double> alpha, beta, scale;
  std::vector<double> trans_num(static_cast<std::size_t>(N) * N);
  std::vector<double> trans_den(N);
  std::vector<double> emit_num(static_cast<std::size_t>(N) * M);
  std::vector<double> emit_den(N);
  std::vector<double> init_acc(N);

  double prev_ll = 0.0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    std::fill(trans_num.begin(), trans_num.end(), 0.0);
    std::fill(trans_den.begin(), trans_den.end(), 0.0);
    std::fill(emit_num.begin(), emit_num.end(), 0.0);
    std::fill(emit_den.begin(), emit_den.end(), 0.0);
    std::fill(init_acc.begin(), init_acc.end(), 0.0);

    double total_ll = 0.0;
    for (const std::vector<int>& obs : training) {
      const std::size_t T = obs.size();
      total_ll += scaled_forward(model, obs, alpha, scale);
      scaled_backward(model, obs, scale, beta);

      for (std::size_t t = 0; t < T; ++t) {
        for (int i = 0; i < N; ++i) {
          const double gamma = alpha[t * N + i] * beta[t * N + i];
          emit_num[static_cast<std::size_t>(i) * M + (obs[t] - 1)] += gamma;
          emit_den[i] += gamma;
          if (t == 0) init_acc[i] += gamma;
          if (t + 1 < T) trans_den[i] += gamma;
        }
      }
      for (std::size_t t = 0; t + 1 < T; ++t) {
        for (int i = 0; i < N; ++i) {
          const double ai = alpha[t * N + i];
          if (ai == 0.0) continue;
          for (int j = 0; j < N; ++j) {
            const double xi =
                ai * model.a(i, j) * model.b(j, obs[t + 1]) * beta[(t + 1) * N + j] / scale[t + 1];
            trans_num[static_cast<std::size_t>(i) * N + j] += xi;
          }
        }
      }
    }

    result.loglik_history.push_back(total_ll);
    result.iterations = iter + 1;

    const bool converged =
        iter > 0 && std::abs(total_ll - prev_ll) < opts.rel_tolerance * std::abs(prev_ll);
    prev_ll = total_ll;
    if (converged) break;

    // M-step with flooring of the structurally allowed entries.
    for (int i = 0; i < N; ++i) {
      auto row = std::span<double>(model.transition).subspan(static_cast<std::size_t>(i) * N, N);
      if (trans_den[i] > 0.0) {
        for (int j = 0; j < N; ++j) row[j] = trans_num[static_cast<std::size_t>(i) * N + j] / trans_den[i];
      }
      floor_row(row, std::span<const char>(trans_allowed).subspan(static_cast<std::size_t>(i) * N, N),
                opts.floor_eps);
    }
    for (int i = 0; i < N; ++i) {
      auto row = std::span<double>(model.emission).subspan(static_cast<std::size_t>(i) * M, M);
      if (emit_den[i] > 0.0) {
        for (int k = 0; k < M; ++k) row[k] = emit_num[static_cast<std::size_t>(i) * M + k] / emit_den[i];
      }
      floor_row(row, emit_allowed, opts.floor_eps);
    }
    if (topology == Topology::left_right) {
      std::fill(model.initial.begin(), model.initial.end(), 0.0);
      model.initial[0] = 1.0;
    } else {
      for (int i = 0; i < N; ++i) model.initial[i] = init_acc[i] / static_cast<double>(training.size());
      floor_row(model.initial, init_allowed, opts.floor_eps);
    }

    if (observer) observer(iter, model, total_ll);
  }

  result.model = std::move(model);
  return result;
}

}  // namespace gesturegate
