#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "moralsrc/errors.hpp"
#include "moralsrc/timecourse.hpp"

using namespace moralsrc;

namespace {

MoralPosterior virtue_posterior(double p_virtue) {
  MoralPosterior post;
  post.relevance = {0.9, 0.1};
  post.polarity = PolarityProbs{p_virtue, 1.0 - p_virtue};
  post.foundations = std::array<double, 5>{0.2, 0.2, 0.2, 0.2, 0.2};
  return post;
}

MoralPosterior irrelevant_posterior() {
  MoralPosterior post;
  post.relevance = {0.3, 0.7};
  return post;
}

ScoredDocument scored(std::size_t bin, std::optional<MoralPosterior> post) {
  ScoredDocument d;
  d.bin = bin;
  d.id = "d" + std::to_string(bin);
  d.posterior = std::move(post);
  return d;
}

std::vector<TimeBin> bins(std::size_t n) {
  std::vector<TimeBin> out;
  TimePoint t{};
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({i, t, t + std::chrono::days{7}});
    t += std::chrono::days{7};
  }
  return out;
}

std::vector<std::optional<double>> as_series(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

// Exact permutation p-value at split i: share of all orderings of x whose
// statistic at i reaches the observed one.
double exact_p(std::vector<double> x, std::size_t i) {
  auto stat = [&](const std::vector<double>& y) {
    double a = 0, b = 0;
    for (std::size_t j = 0; j <= i; ++j) a += y[j];
    for (std::size_t j = i + 1; j < y.size(); ++j) b += y[j];
    return std::abs(b / static_cast<double>(y.size() - i - 1) - a / static_cast<double>(i + 1));
  };
  const double observed = stat(x);
  std::vector<std::size_t> idx(x.size());
  for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
  std::size_t hits = 0, total = 0;
  do {
    std::vector<double> y;
    for (auto j : idx) y.push_back(x[j]);
    if (stat(y) >= observed - 1e-12) ++hits;
    ++total;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("time course is the mean over admitted documents") {
  const auto m = MoralDimension::of(Polarity::virtue);
  std::vector<ScoredDocument> docs{
      scored(0, virtue_posterior(0.7)),
      scored(1, virtue_posterior(0.2)),
      scored(1, virtue_posterior(0.8)),
      scored(2, irrelevant_posterior()),
      scored(2, std::nullopt),
  };
  auto series = moral_timecourse(docs, m, bins(4));
  REQUIRE(series.size() == 4);
  CHECK(series[0].value == doctest::Approx(0.7));
  CHECK(series[0].n_docs == 1);
  CHECK(*series[1].value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(series[1].n_docs == 2);
  CHECK(!series[2].value);
  CHECK(series[2].n_docs == 0);
  CHECK(!series[3].value);

  auto relevance = moral_timecourse(docs, MoralDimension::relevant(), bins(4));
  CHECK(*relevance[2].value == doctest::Approx(0.3));
  CHECK(relevance[2].n_docs == 1);
}

TEST_CASE("mean shift statistics") {
  std::vector<double> x{0, 0, 0, 1, 1, 1, 1};
  auto s = mean_shift_statistics(x);
  REQUIRE(s.size() == 6);
  CHECK(s[2] == 1.0);
  CHECK(s[0] == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("constant series has no change point") {
  SlidingWindowConfig cfg;
  auto cps = detect_change_points(as_series(std::vector<double>(7, 0.5)), cfg);
  CHECK(cps.empty());
}

TEST_CASE("step series: Monte-Carlo p matches exact enumeration") {
  const std::vector<double> x{0, 0, 0, 1, 1, 1, 1};
  SlidingWindowConfig cfg;
  cfg.seed = 17;
  auto cps = detect_change_points(as_series(x), cfg);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].index == 2);
  CHECK(cps[0].direction == 1);
  CHECK(cps[0].window_start == 0);
  CHECK(cps[0].window_end == 6);
  CHECK(cps[0].p_value <= cfg.p_threshold);
  const double exact = exact_p(x, 2);
  CHECK(exact == doctest::Approx(1.0 / 35.0).epsilon(1e-12));
  CHECK(std::abs(cps[0].p_value - exact) <= 0.02);
}

TEST_CASE("short series is a configuration error") {
  SlidingWindowConfig cfg;
  CHECK_THROWS_AS(detect_change_points(as_series({0, 1, 0, 1, 0}), cfg), ConfigError);
  cfg.window_size = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("detection is invariant under a constant offset and reproducible") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0, 0.05);
  std::vector<double> x;
  for (int i = 0; i < 25; ++i) x.push_back((i < 12 ? 0.2 : 0.8) + noise(rng));
  std::vector<double> shifted = x;
  for (auto& v : shifted) v += 0.125;
  SlidingWindowConfig cfg;
  cfg.seed = 3;
  auto a = detect_change_points(as_series(x), cfg);
  auto b = detect_change_points(as_series(shifted), cfg);
  auto c = detect_change_points(as_series(x), cfg);
  REQUIRE(!a.empty());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].p_value == b[i].p_value);
    CHECK(a[i].p_value == c[i].p_value);
    CHECK(a[i].p_value >= 0.0);
    CHECK(a[i].p_value <= 1.0);
  }
  // parallel permutations give the serial answer
  cfg.threads = 4;
  auto d = detect_change_points(as_series(x), cfg);
  REQUIRE(d.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(d[i].p_value == a[i].p_value);
}

TEST_CASE("a step found in overlapping windows is reported once") {
  std::vector<double> x{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  SlidingWindowConfig cfg;
  cfg.step = 1;
  auto cps = detect_change_points(as_series(x), cfg);
  std::vector<std::size_t> idx;
  for (const auto& cp : cps) idx.push_back(cp.index);
  CHECK(std::count(idx.begin(), idx.end(), 4u) == 1);
}

TEST_CASE("missing points: interpolated when sparse, window skipped when dense") {
  // interpolates to 0,0,0,0,0.5,1,1: only the all-zero prefix reaches the
  // observed statistic at split 3, exact p = 1/35
  std::vector<std::optional<double>> one_gap{0, 0, 0, 0, std::nullopt, 1, 1};
  SlidingWindowConfig cfg;
  auto cps = detect_change_points(one_gap, cfg);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].index == 3);
  CHECK(std::abs(cps[0].p_value - exact_p({0, 0, 0, 0, 0.5, 1, 1}, 3)) <= 0.02);
  std::vector<std::optional<double>> two_gaps{0, 0, 0, std::nullopt, std::nullopt, 1, 1};
  CHECK(detect_change_points(two_gaps, cfg).empty());
}
