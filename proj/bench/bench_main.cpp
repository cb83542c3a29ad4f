// Compares the serial reference kernels with their OpenMP counterparts on a
// synthetic workload and reports timings plus a bitwise-equality check.
#include <chrono>
#include <cstdio>
#include <vector>

#include "gesturegate/hmm.hpp"
#include "gesturegate/mddtw.hpp"
#include "gesturegate/parallel.hpp"
#include "gesturegate/rng.hpp"

using namespace gesturegate;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    f();
    best = std::min(best, ms_since(start));
  }
  return best;
}

}  // namespace

int main() {
  std::printf("workers: %d\n\n", worker_count());
  std::printf("%-28s %12s %12s %9s %10s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "identical");

  {
    Rng rng(1);
    std::vector<VectorSeries> series;
    for (int i = 0; i < 48; ++i) {
      VectorSeries s(3);
      const std::size_t T = 140 + rng.next_u64() % 60;
      for (std::size_t t = 0; t < T; ++t) {
        const double v[3] = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        s.push_back(v);
      }
      series.push_back(std::move(s));
    }

    std::vector<double> serial, parallel;
    const double t_serial =
        best_of(3, [&] { serial = pairwise_distance_matrix(series, {}, Execution::serial); });
    const double t_parallel =
        best_of(3, [&] { parallel = pairwise_distance_matrix(series, {}, Execution::parallel); });
    const bool same = serial == parallel;
    std::printf("%-28s %12.1f %12.1f %8.2fx %10s\n", "dtw pairwise matrix", t_serial, t_parallel,
                t_serial / t_parallel, same ? "yes" : "NO");
  }

  {
    Rng rng(2);
    HmmModel model = init_model(5, 18, Topology::left_right, 3);
    std::vector<std::vector<int>> sequences;
    for (int s = 0; s < 4000; ++s) {
      std::vector<int> obs(120 + rng.next_u64() % 80);
      for (int& v : obs) v = rng.uniform_int(1, 18);
      sequences.push_back(std::move(obs));
    }

    std::vector<LogLikelihood> serial, parallel;
    const double t_serial =
        best_of(3, [&] { serial = score_sequences(model, sequences, Execution::serial); });
    const double t_parallel =
        best_of(3, [&] { parallel = score_sequences(model, sequences, Execution::parallel); });
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
      same = serial[i].total == parallel[i].total && serial[i].per_symbol == parallel[i].per_symbol;
    std::printf("%-28s %12.1f %12.1f %8.2fx %10s\n", "hmm batch forward", t_serial, t_parallel,
                t_serial / t_parallel, same ? "yes" : "NO");
  }

  return 0;
}
