#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "moralsrc/embedding_store.hpp"
#include "moralsrc/lexicon.hpp"

namespace moralsrc {

// prob_i = exp(-d_i) / sum_j exp(-d_j), evaluated with the smallest distance
// factored out.
std::vector<double> softmax_neg_distances(std::span<const double> distances);

// Softmax over negative Euclidean distances from v to each centroid.
std::vector<double> tier_softmax(std::span<const double> v, std::span<const Vector> centroids);

struct RelevanceProbs {
  double relevant = 0.0;
  double irrelevant = 0.0;
  // Ties go to relevant.
  bool is_relevant() const { return relevant >= irrelevant; }
};

struct PolarityProbs {
  double virtue = 0.0;
  double vice = 0.0;
  Polarity verdict() const { return virtue >= vice ? Polarity::virtue : Polarity::vice; }
};

// P_e(m|d) over the moral hierarchy. Lower tiers exist only when the tier
// above resolved to the gating verdict.
struct MoralPosterior {
  RelevanceProbs relevance;
  std::optional<PolarityProbs> polarity;
  // Indexed like foundations_of(polarity->verdict()).
  std::optional<std::array<double, 5>> foundations;

  // P(m|d) when the hierarchy admits m for this document, else nullopt.
  std::optional<double> probability(const MoralDimension& m) const;
};

MoralPosterior classify_doc(std::span<const double> v, const CentroidSet& centroids);

// Relevance tier for a single word; nullopt when out of vocabulary.
std::optional<RelevanceProbs> classify_word(std::string_view w, const WordEmbeddingStore& emb,
                                            const CentroidSet& centroids);

RelevanceProbs classify_relevance(std::span<const double> v, const CentroidSet& centroids);

}  // namespace moralsrc
