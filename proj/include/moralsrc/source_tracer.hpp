#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "moralsrc/corpus.hpp"
#include "moralsrc/embedding_store.hpp"
#include "moralsrc/timecourse.hpp"
#include "moralsrc/topic_model.hpp"

namespace moralsrc {

// A document of D(e, t~t+dt) admitted by the hierarchy for dimension m.
struct WindowDocument {
  std::string id;
  double probability = 0.0;   // P_e(m|d)
  std::vector<double> theta;  // P(topic = o | d); may be empty when topics are not needed
};

// Documents in bins (cp.index, cp.window_end] that carry P_e(m|d). Theta rows
// come from `fit` when given; a missing row is a contract violation.
std::vector<WindowDocument> window_documents(std::span<const ScoredDocument> scored,
                                             const MoralDimension& m, const ChangePoint& cp,
                                             const TopicModelFit* fit);

// Unweighted mean of P_e(m|d) over the window minus `excluded`; nullopt if
// nothing remains.
std::optional<double> window_mean(std::span<const WindowDocument> docs,
                                  const std::set<std::string>& excluded = {});

// Sum_d P_e(m|d) (1 - theta_do) / Sum_d (1 - theta_do); nullopt when the
// denominator is zero.
std::optional<double> counterfactual_estimate(std::span<const WindowDocument> docs,
                                              std::size_t topic);

struct TopicInfluence {
  std::size_t topic = 0;
  double delta_s = 0.0;
  std::optional<double> counterfactual;  // nullopt: all weight removed
};

// One entry per topic, ascending by delta_s, ties toward the lower topic id.
std::vector<TopicInfluence> topic_influence(std::optional<double> base,
                                            std::span<const WindowDocument> docs, std::size_t k);

struct SetInfluence {
  std::vector<std::string> doc_ids;  // sorted
  double delta_j = 0.0;
  std::optional<double> p_value_vs_null;
};

SetInfluence set_influence(double base, std::span<const WindowDocument> docs,
                           std::set<std::string> doc_ids);

// ceil(fraction * n), at least 1 for a nonempty window.
std::size_t source_set_size(std::size_t n, double fraction);

// The source_set_size(...) documents with the highest theta for `topic`.
SetInfluence topic_source_docs(double base, std::span<const WindowDocument> docs,
                               std::size_t topic, double fraction);

enum class SubsetSearch {
  automatic,    // enumerate every subset when n_samples covers them all
  monte_carlo,  // always sample
};

struct InfluenceSearchConfig {
  double fraction = 0.10;
  std::size_t n_samples = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  SubsetSearch mode = SubsetSearch::automatic;
};

struct InfluenceBaseline {
  SetInfluence best;      // p_value_vs_null holds the empirical quantile
  double quantile = 1.0;  // share of the null with delta_j <= best
  bool significant = false;
  std::size_t evaluated = 0;
  bool exhaustive = false;
};

// Random search for the subset minimizing delta_j against a null of random
// subsets of the same size.
InfluenceBaseline influence_function_baseline(double base, std::span<const WindowDocument> docs,
                                              const InfluenceSearchConfig& cfg);

SetInfluence random_baseline(double base, std::span<const WindowDocument> docs, double fraction,
                             std::uint64_t seed);

struct CoherenceScore {
  double value = 0.0;
  std::size_t body_substituted = 0;  // documents without a usable headline
};

// Mean cosine over ordered pairs i != j.
double coherence(std::span<const Vector> vectors);

// Headline embedding of a document: mean of in-vocabulary headline tokens,
// falling back to the body (then the precomputed vector).
struct HeadlineVector {
  Vector vector;
  bool substituted = false;
};
HeadlineVector headline_vector(const Document& doc, const WordEmbeddingStore& emb,
                               const TokenSet& stopwords);

CoherenceScore coherence(std::span<const std::string> doc_ids, const Corpus& corpus,
                         const WordEmbeddingStore& emb, const TokenSet& stopwords);

}  // namespace moralsrc
