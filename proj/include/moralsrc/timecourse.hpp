#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moralsrc/corpus.hpp"
#include "moralsrc/moral_classifier.hpp"

namespace moralsrc {

// A document of D(e, .) after entity filtering and moral classification.
struct ScoredDocument {
  std::size_t doc_index = 0;  // into Corpus::documents()
  std::size_t bin = 0;
  std::string id;
  std::optional<MoralPosterior> posterior;  // nullopt when no token survived vectorization
  std::vector<std::string> topic_tokens;

  std::optional<double> probability(const MoralDimension& m) const {
    return posterior ? posterior->probability(m) : std::nullopt;
  }
};

// Entity-filters, vectorizes and classifies every document mentioning e.
// Throws EmptyResultError when e is never mentioned.
std::vector<ScoredDocument> score_entity_documents(const Corpus& corpus, const EntityQuery& e,
                                                   const WordEmbeddingStore& emb,
                                                   const CentroidSet& centroids,
                                                   const TokenSet& stopwords,
                                                   const VectorizeOptions& opts = {},
                                                   unsigned threads = 1);

struct TimeCoursePoint {
  std::size_t bin = 0;
  TimePoint bin_start{};
  std::optional<double> value;
  std::size_t n_docs = 0;
};

// P(m|e,t) per bin: mean of P_e(m|d) over the documents the hierarchy admits for m.
std::vector<TimeCoursePoint> moral_timecourse(std::span<const ScoredDocument> docs,
                                              const MoralDimension& m,
                                              std::span<const TimeBin> bins);

std::vector<TimeCoursePoint> moral_timecourse(const EntityQuery& e, const MoralDimension& m,
                                              const Corpus& corpus, const WordEmbeddingStore& emb,
                                              const CentroidSet& centroids,
                                              const TokenSet& stopwords);

struct SlidingWindowConfig {
  std::size_t window_size = 7;
  std::size_t step = 3;
  std::size_t permutations = 1000;
  double p_threshold = 0.05;
  // Windows with a larger share of missing points are skipped.
  double max_missing_fraction = 0.2;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  void validate() const;
};

struct ChangePoint {
  std::size_t index = 0;         // position in the series; the last point before the shift
  std::size_t window_start = 0;  // inclusive
  std::size_t window_end = 0;    // inclusive; (index, window_end] is the window after t
  double p_value = 1.0;
  double statistic = 0.0;
  int direction = 0;  // sign of mean(after) - mean(before)
};

// Mean-shift statistic |mean(x[i+1..]) - mean(x[..i])| for every split i in [0, n-2].
std::vector<double> mean_shift_statistics(std::span<const double> x);

// Sliding-window permutation test on a series with possibly missing points.
std::vector<ChangePoint> detect_change_points(std::span<const std::optional<double>> series,
                                              const SlidingWindowConfig& cfg);
std::vector<ChangePoint> detect_change_points(std::span<const TimeCoursePoint> series,
                                              const SlidingWindowConfig& cfg);

}  // namespace moralsrc
