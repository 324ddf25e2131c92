#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "moralsrc/corpus.hpp"
#include "moralsrc/source_tracer.hpp"
#include "moralsrc/timecourse.hpp"
#include "moralsrc/topic_model.hpp"

namespace moralsrc {

// Groups the entity's documents into topic-model slices, one per nonempty bin.
std::vector<TopicSliceInput> topic_slices(std::span<const ScoredDocument> scored);

struct TraceConfig {
  MoralDimension dimension = MoralDimension::of(Polarity::virtue);
  SlidingWindowConfig window;
  TopicModelConfig topics;
  double source_fraction = 0.10;
  std::size_t influence_samples = 10000;
  double alpha = 0.05;
  bool baselines = true;
  std::size_t salient_words = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct SourceTraceReport {
  std::string entity;
  MoralDimension dimension;
  ChangePoint change_point;
  TimePoint change_bin_start{};
  TimePoint window_start{};  // first bin after t
  TimePoint window_end{};    // start of the last bin of the window
  double base = 0.0;         // P(m|e,t)
  std::optional<double> window_value;  // P(m|e, t~t+dt)
  std::size_t window_docs = 0;
  std::vector<TopicInfluence> topic_ranking;
  std::size_t source_topic = 0;
  SetInfluence source_docs;
  std::optional<InfluenceBaseline> influence_function;
  std::optional<SetInfluence> random;
  std::map<std::string, std::optional<CoherenceScore>> coherence;
  std::vector<std::string> salient_words;
  std::uint64_t influence_seed = 0;
  std::uint64_t random_seed = 0;
};

struct EntityTrace {
  std::vector<TimeCoursePoint> series;
  std::vector<ChangePoint> change_points;
  std::vector<SourceTraceReport> reports;
};

// Change-point detection and source attribution for one entity and dimension.
// Change points without a base value or without window documents are skipped.
EntityTrace trace_entity(const Corpus& corpus, const EntityQuery& e,
                         std::span<const ScoredDocument> scored, const TopicModelFit& fit,
                         const WordEmbeddingStore& emb, const TokenSet& stopwords,
                         const TraceConfig& cfg);

nlohmann::ordered_json report_to_json(const SourceTraceReport& r);

}  // namespace moralsrc
