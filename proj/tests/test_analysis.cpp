#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "erasure/analysis.hpp"
#include "erasure/error.hpp"

using namespace erasure;
using namespace erasure::analysis;

namespace {

double sse(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

// Best objective over every split of the sorted values into k runs.
double best_contiguous(std::vector<double> v, std::size_t k) {
  std::sort(v.begin(), v.end());
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> cuts(k - 1);
  auto rec = [&](auto&& self, std::size_t j, std::size_t from) -> void {
    if (j == k - 1) {
      double total = 0;
      std::size_t start = 0;
      for (std::size_t c = 0; c <= k - 1; ++c) {
        const std::size_t end = c < k - 1 ? cuts[c] : v.size();
        total += sse(std::vector<double>(v.begin() + start, v.begin() + end));
        start = end;
      }
      best = std::min(best, total);
      return;
    }
    for (std::size_t c = from; c <= v.size() - (k - 1 - j); ++c) {
      cuts[j] = c;
      self(self, j + 1, c + 1);
    }
  };
  rec(rec, 0, 1);
  return best;
}

// Best objective over every assignment of points to k labels.
double best_assignment(const std::vector<double>& v, std::size_t k) {
  std::vector<std::size_t> a(v.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::vector<double>> groups(k);
    for (std::size_t i = 0; i < v.size(); ++i) groups[a[i]].push_back(v[i]);
    if (std::all_of(groups.begin(), groups.end(), [](auto& g) { return !g.empty(); })) {
      double total = 0;
      for (auto& g : groups) total += sse(g);
      best = std::min(best, total);
    }
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == k) a[i++] = 0;
    if (i == a.size()) break;
  }
  return best;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("k-means reproduces the reference clustering") {
    const std::vector<double> v = {1.9, 1.3, 8.7, 7.2, 23.3, 23.2, 29.7};
    const auto r = kmeans_1d(v, 3);
    CHECK(r.assignment == std::vector<std::size_t>{0, 0, 1, 1, 2, 2, 2});
    CHECK(r.centroids[0] == doctest::Approx(1.6));
    CHECK(r.centroids[1] == doctest::Approx(7.95));
    CHECK(r.centroids[2] == doctest::Approx(76.2 / 3));
  }

  TEST_CASE("k-means edge cases") {
    const auto one = kmeans_1d(std::vector<double>{5.0}, 1);
    CHECK(one.centroids == std::vector<double>{5.0});
    CHECK(one.objective == 0.0);
    try {
      kmeans_1d(std::vector<double>{1.0, 2.0}, 3);
      FAIL("expected TooFewPoints");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooFewPoints);
    }
    CHECK_THROWS_AS(kmeans_1d(std::vector<double>{1.0}, 0), Error);
    const auto same = kmeans_1d(std::vector<double>{2, 2, 2, 2}, 2);
    CHECK(same.objective == 0.0);
  }

  TEST_CASE("k-means is optimal against exhaustive search") {
    std::mt19937_64 gen(1234);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    std::uniform_int_distribution<int> size(3, 12);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> v(static_cast<std::size_t>(size(gen)));
      for (auto& x : v) x = dist(gen);
      const std::size_t k = 1 + static_cast<std::size_t>(t % 3);
      const auto r = kmeans_1d(v, k);
      CHECK(r.objective == doctest::Approx(best_contiguous(v, k)).epsilon(1e-9));
      // The reported objective matches the reported partition.
      std::vector<std::vector<double>> groups(k);
      for (std::size_t i = 0; i < v.size(); ++i) groups[r.assignment[i]].push_back(v[i]);
      double total = 0;
      for (auto& g : groups) total += sse(g);
      CHECK(total == doctest::Approx(r.objective).epsilon(1e-9));
    }
    for (int t = 0; t < 10; ++t) {
      std::vector<double> v(8);
      for (auto& x : v) x = dist(gen);
      CHECK(kmeans_1d(v, 3).objective == doctest::Approx(best_assignment(v, 3)).epsilon(1e-9));
    }
  }

  TEST_CASE("labels are ordered by value and invariant under affine scaling") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> v(10);
      for (auto& x : v) x = dist(gen);
      std::vector<double> scaled(v);
      for (auto& x : scaled) x = 3.5 * x + 12.0;
      const auto a = label_results({{"t", v}});
      const auto b = label_results({{"t", scaled}});
      CHECK(a[0].labels == b[0].labels);
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (v[i] < v[j]) CHECK(a[0].labels[i] <= a[0].labels[j]);
        }
      }
    }
  }

  TEST_CASE("label_results handles flags and degenerate columns") {
    const std::vector<Column> cols = {
        {"total", std::vector<double>{1.9, 1.3, 8.7, 7.2, 23.3, 23.2, 29.7}},
        {"flat", std::vector<double>{4, 4, 4, 4}},
        {"proof", std::vector<bool>{true, false, true}},
    };
    const auto out = label_results(cols);
    REQUIRE(out.size() == 3);
    using enum PerfLabel;
    CHECK(out[0].labels == std::vector<PerfLabel>{GOOD, GOOD, AVERAGE, AVERAGE, POOR, POOR, POOR});
    CHECK_FALSE(out[0].warning.has_value());
    CHECK(out[1].labels.empty());
    CHECK(out[1].warning.has_value());
    CHECK(out[2].flags == std::vector<bool>{true, false, true});
    CHECK(to_string(AVERAGE) == "average");
  }

  TEST_CASE("decision table rows") {
    auto pick = [](Level net, MemorySize mem, Level sec, bool distant = false, bool accel = false, bool fast = false) {
      return recommend(UseCase{net, mem, sec, distant, accel, fast});
    };
    using enum Level;
    using enum MemorySize;
    CHECK(pick(HIGH, SMALL, HIGH).protocol == ProtocolId::DKW);
    CHECK(pick(HIGH, SMALL, HIGH, true).protocol == ProtocolId::POSE_L);
    CHECK(pick(HIGH, LARGE, HIGH).protocol == ProtocolId::POSE_L);
    CHECK(pick(HIGH, LARGE, LOW).protocol == ProtocolId::KK);
    CHECK(pick(LOW, LARGE, HIGH).protocol == ProtocolId::POSE_R);
    CHECK(pick(LOW, LARGE, LOW).protocol == ProtocolId::PT);
    CHECK(pick(LOW, SMALL, HIGH, false, false, true).protocol == ProtocolId::DKW);
    CHECK(pick(LOW, SMALL, LOW, false, false, true).protocol == ProtocolId::KK);
    CHECK(pick(LOW, LARGE, HIGH, false, true).protocol == ProtocolId::DKW);
    for (auto r : {pick(HIGH, SMALL, HIGH), pick(LOW, LARGE, LOW), pick(HIGH, LARGE, LOW)}) {
      CHECK_FALSE(r.extrapolated);
      CHECK_FALSE(r.justification.empty());
    }
  }

  TEST_CASE("uncovered cases fall back with a flag") {
    const auto r = recommend(UseCase{Level::LOW, MemorySize::LARGE, Level::LOW, true, false, false});
    CHECK(r.protocol == ProtocolId::POSE_R);
    CHECK(r.extrapolated);
    CHECK(recommend(UseCase{Level::HIGH, MemorySize::SMALL, Level::LOW, false, false, false}).extrapolated);
  }

  TEST_CASE("recommend is total and deterministic over the grid") {
    for (int bits = 0; bits < 64; ++bits) {
      const UseCase u{bits & 1 ? Level::LOW : Level::HIGH, bits & 2 ? MemorySize::LARGE : MemorySize::SMALL,
                      bits & 4 ? Level::LOW : Level::HIGH, (bits & 8) != 0, (bits & 16) != 0, (bits & 32) != 0};
      const auto a = recommend(u), b = recommend(u);
      CHECK(a.protocol == b.protocol);
      CHECK(a.justification == b.justification);
      if (u.distant_attacker_resistance_required) CHECK(is_distance_bounded(a.protocol));
    }
  }
}
