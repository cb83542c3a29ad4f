#include <doctest.h>

#include <algorithm>

#include "gesturegate/mddtw.hpp"
#include "gesturegate/rng.hpp"
#include "oracles.hpp"

using namespace gesturegate;

namespace {

VectorSeries lift(std::initializer_list<double> track) {
  return VectorSeries::from_track(std::vector<double>(track), 3);
}

}  // namespace

TEST_SUITE("mddtw") {

TEST_CASE("self distance is exactly zero") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const VectorSeries x = oracles::random_series(rng, 1 + rep, 3);
    CHECK(mddtw_distance(x, x) == 0.0);
  }
}

TEST_CASE("single-pair distance is the Euclidean distance") {
  VectorSeries x(3), y(3);
  const double a[3] = {0, 0, 0};
  const double b[3] = {3, 4, 0};
  x.push_back(a);
  y.push_back(b);
  CHECK(mddtw_distance(x, y) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("zero-cost warp over repeated samples") {
  CHECK(mddtw_distance(lift({0, 1}), lift({0, 1, 1})) == 0.0);
}

TEST_CASE("matches exhaustive path enumeration on random pairs") {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t tx = 1 + rng.next_u64() % 7;
    const std::size_t ty = 1 + rng.next_u64() % 7;
    const VectorSeries x = oracles::random_series(rng, tx, 3);
    const VectorSeries y = oracles::random_series(rng, ty, 3);

    for (bool normalize : {true, false}) {
      const DtwOptions opts{normalize};
      const double got = mddtw_distance(x, y, opts);
      const double want = oracles::dtw_brute_force(x, y, normalize);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("symmetric in its arguments") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const VectorSeries x = oracles::random_series(rng, 2 + rng.next_u64() % 9, 3);
    const VectorSeries y = oracles::random_series(rng, 2 + rng.next_u64() % 9, 3);
    CHECK(std::abs(mddtw_distance(x, y) - mddtw_distance(y, x)) <= 1e-12);
  }
}

TEST_CASE("input validation") {
  VectorSeries empty(3);
  CHECK_THROWS_AS(mddtw_distance(empty, lift({1.0})), EmptySeries);
  VectorSeries two_d(2);
  const double v[2] = {0, 0};
  two_d.push_back(v);
  CHECK_THROWS_AS(mddtw_distance(two_d, lift({1.0})), DimensionMismatch);

  VectorSeries bad(1);
  const double nan_v[1] = {std::nan("")};
  CHECK_THROWS_AS(bad.push_back(nan_v), Error);
}

TEST_CASE("template: three identical series degenerate to index 0") {
  const std::vector<VectorSeries> training = {lift({1, 2, 3}), lift({1, 2, 3}), lift({1, 2, 3})};
  const DtwTemplate tmpl = select_template(training);
  CHECK(tmpl.index == 0);
  for (double d : tmpl.training_distances) CHECK(d == 0.0);
  CHECK(tmpl.training_distances.size() == 3);
}

TEST_CASE("template: middle series wins the 0 / 0.5 / 1 constant set") {
  // Normalized pairwise distances: d(0,1)=1, d(0,0.5)=d(1,0.5)=0.5;
  // row sums 1.5, 1.5, 1.0, so the constant-0.5 series is the medoid.
  const std::vector<VectorSeries> training = {
      lift({0, 0, 0, 0}), lift({1, 1, 1, 1}), lift({0.5, 0.5, 0.5, 0.5})};
  const DtwTemplate tmpl = select_template(training);
  CHECK(tmpl.index == 2);
  CHECK(tmpl.training_distances[0] == doctest::Approx(0.5));
  CHECK(tmpl.training_distances[1] == doctest::Approx(0.5));
  CHECK(tmpl.training_distances[2] == 0.0);
}

TEST_CASE("template: two series tie and the lower index wins") {
  const std::vector<VectorSeries> training = {lift({0, 1}), lift({2, 3})};
  CHECK(select_template(training).index == 0);
}

TEST_CASE("template selection is order-invariant up to the tie-break") {
  Rng rng(99);
  std::vector<VectorSeries> training;
  for (int i = 0; i < 6; ++i) training.push_back(oracles::random_series(rng, 4 + i % 3, 3));
  const DtwTemplate a = select_template(training);

  std::vector<VectorSeries> shuffled = {training[3], training[0], training[5],
                                        training[2], training[4], training[1]};
  const DtwTemplate b = select_template(shuffled);

  REQUIRE(a.series.length() == b.series.length());
  for (std::size_t t = 0; t < a.series.length(); ++t)
    for (std::size_t k = 0; k < 3; ++k) CHECK(a.series.at(t, k) == b.series.at(t, k));
}

TEST_CASE("template selection needs two series") {
  const std::vector<VectorSeries> training = {lift({1, 2})};
  CHECK_THROWS_AS(select_template(training), InsufficientTraining);
}

TEST_CASE("parallel pairwise matrix is bitwise identical to serial") {
  Rng rng(5150);
  std::vector<VectorSeries> series;
  for (int i = 0; i < 9; ++i) series.push_back(oracles::random_series(rng, 10 + i, 3));

  const auto serial = pairwise_distance_matrix(series, {}, Execution::serial);
  const auto parallel = pairwise_distance_matrix(series, {}, Execution::parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

}  // TEST_SUITE
