#include "moralsrc/timecourse.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "moralsrc/random.hpp"

namespace moralsrc {

std::vector<ScoredDocument> score_entity_documents(const Corpus& corpus, const EntityQuery& e,
                                                   const WordEmbeddingStore& emb,
                                                   const CentroidSet& centroids,
                                                   const TokenSet& stopwords,
                                                   const VectorizeOptions& opts,
                                                   unsigned threads) {
  const auto& docs = corpus.documents();
  std::vector<std::optional<ScoredDocument>> slots(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    auto filtered = entity_filter(docs[i], e);
    if (!filtered) return;
    ScoredDocument sd;
    sd.doc_index = i;
    sd.bin = corpus.bin_of(i);
    sd.id = docs[i].id;
    if (auto v = vectorize(*filtered, e, emb, centroids, stopwords, opts)) {
      sd.posterior = classify_doc(*v, centroids);
    }
    sd.topic_tokens = topic_tokens(*filtered, e, stopwords);
    slots[i] = std::move(sd);
  });
  std::vector<ScoredDocument> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  if (out.empty()) {
    throw EmptyResultError(fmt::format("entity '{}' is not mentioned in the corpus", e.canonical_name));
  }
  return out;
}

std::vector<TimeCoursePoint> moral_timecourse(std::span<const ScoredDocument> docs,
                                              const MoralDimension& m,
                                              std::span<const TimeBin> bins) {
  std::vector<TimeCoursePoint> out(bins.size());
  std::vector<double> sums(bins.size(), 0.0);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    out[b].bin = bins[b].index;
    out[b].bin_start = bins[b].start;
  }
  for (const auto& d : docs) {
    if (d.bin >= bins.size()) throw ContractError("document bin outside the series");
    if (auto p = d.probability(m)) {
      sums[d.bin] += *p;
      ++out[d.bin].n_docs;
    }
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (out[b].n_docs > 0) out[b].value = sums[b] / static_cast<double>(out[b].n_docs);
  }
  return out;
}

std::vector<TimeCoursePoint> moral_timecourse(const EntityQuery& e, const MoralDimension& m,
                                              const Corpus& corpus, const WordEmbeddingStore& emb,
                                              const CentroidSet& centroids,
                                              const TokenSet& stopwords) {
  auto scored = score_entity_documents(corpus, e, emb, centroids, stopwords);
  return moral_timecourse(scored, m, corpus.bins());
}

// ---------------------------------------------------------------------------

void SlidingWindowConfig::validate() const {
  if (window_size < 3) throw ConfigError("window size must be >= 3");
  if (step < 1) throw ConfigError("window step must be >= 1");
  if (permutations < 1) throw ConfigError("permutation count must be >= 1");
  if (!(p_threshold > 0.0 && p_threshold <= 1.0)) throw ConfigError("p threshold must lie in (0, 1]");
  if (!(max_missing_fraction >= 0.0 && max_missing_fraction < 1.0)) {
    throw ConfigError("max missing fraction must lie in [0, 1)");
  }
}

std::vector<double> mean_shift_statistics(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out;
  if (n < 2) return out;
  double total = 0.0;
  for (double v : x) total += v;
  double prefix = 0.0;
  out.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    prefix += x[i];
    const double before = prefix / static_cast<double>(i + 1);
    const double after = (total - prefix) / static_cast<double>(n - i - 1);
    out.push_back(std::abs(after - before));
  }
  return out;
}

namespace {

// Linear interpolation from the nearest observed neighbours in the whole
// series; constant extension past either end.
std::optional<double> interpolate(std::span<const std::optional<double>> s, std::size_t j) {
  if (s[j]) return s[j];
  std::optional<std::size_t> left, right;
  for (std::size_t i = j; i-- > 0;) {
    if (s[i]) {
      left = i;
      break;
    }
  }
  for (std::size_t i = j + 1; i < s.size(); ++i) {
    if (s[i]) {
      right = i;
      break;
    }
  }
  if (left && right) {
    const double t = static_cast<double>(j - *left) / static_cast<double>(*right - *left);
    return *s[*left] + t * (*s[*right] - *s[*left]);
  }
  if (left) return s[*left];
  if (right) return s[*right];
  return std::nullopt;
}

}  // namespace

std::vector<ChangePoint> detect_change_points(std::span<const std::optional<double>> series,
                                              const SlidingWindowConfig& cfg) {
  cfg.validate();
  const std::size_t W = cfg.window_size;
  if (series.size() < W) {
    throw ConfigError(fmt::format("series of length {} is shorter than the window size {}",
                                  series.size(), W));
  }
  const std::size_t splits = W - 1;
  std::vector<ChangePoint> out;

  for (std::size_t start = 0; start + W <= series.size(); start += cfg.step) {
    std::size_t missing = 0;
    for (std::size_t j = start; j < start + W; ++j) missing += series[j] ? 0 : 1;
    if (static_cast<double>(missing) > cfg.max_missing_fraction * static_cast<double>(W)) {
      spdlog::debug("window at {} skipped: {} of {} points missing", start, missing, W);
      continue;
    }
    std::vector<double> x(W);
    for (std::size_t j = 0; j < W; ++j) x[j] = *interpolate(series, start + j);

    const auto observed = mean_shift_statistics(x);
    // Relative slack so that arrangements tying the observed statistic up to
    // summation rounding still count as ">=".
    std::vector<double> cutoff(splits);
    for (std::size_t i = 0; i < splits; ++i) {
      cutoff[i] = observed[i] - 1e-12 * std::max(1.0, std::abs(observed[i]));
    }

    std::vector<std::uint8_t> hits(cfg.permutations * splits, 0);
    const std::uint64_t window_seed = derive_seed(cfg.seed, start);
    parallel_for(cfg.permutations, cfg.threads, [&](std::size_t p) {
      Rng rng(derive_seed(window_seed, p));
      std::vector<double> y = x;
      full_shuffle(y, rng);
      const auto stats = mean_shift_statistics(y);
      for (std::size_t i = 0; i < splits; ++i) hits[p * splits + i] = stats[i] >= cutoff[i] ? 1 : 0;
    });

    std::size_t best = 0;
    double best_p = 2.0;
    for (std::size_t i = 0; i < splits; ++i) {
      std::size_t count = 0;
      for (std::size_t p = 0; p < cfg.permutations; ++p) count += hits[p * splits + i];
      const double pv = (1.0 + static_cast<double>(count)) / (1.0 + static_cast<double>(cfg.permutations));
      if (pv < best_p || (pv == best_p && observed[i] > observed[best])) {
        best_p = pv;
        best = i;
      }
    }
    if (best_p > cfg.p_threshold) continue;

    ChangePoint cp;
    cp.index = start + best;
    cp.window_start = start;
    cp.window_end = start + W - 1;
    cp.p_value = best_p;
    cp.statistic = observed[best];
    double before = 0.0, after = 0.0;
    for (std::size_t j = 0; j <= best; ++j) before += x[j];
    for (std::size_t j = best + 1; j < W; ++j) after += x[j];
    const double diff = after / static_cast<double>(W - best - 1) - before / static_cast<double>(best + 1);
    cp.direction = diff > 0 ? 1 : (diff < 0 ? -1 : 0);

    if (!out.empty() && out.back().index == cp.index) {
      if (cp.p_value < out.back().p_value) out.back() = cp;
      continue;
    }
    out.push_back(cp);
  }
  return out;
}

std::vector<ChangePoint> detect_change_points(std::span<const TimeCoursePoint> series,
                                              const SlidingWindowConfig& cfg) {
  std::vector<std::optional<double>> values;
  values.reserve(series.size());
  for (const auto& p : series) values.push_back(p.value);
  return detect_change_points(values, cfg);
}

}  // namespace moralsrc
