#include "moralsrc/moral_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "moralsrc/errors.hpp"

namespace moralsrc {

std::vector<double> softmax_neg_distances(std::span<const double> distances) {
  if (distances.size() < 2) throw ContractError("softmax needs at least two centroids");
  const double dmin = *std::min_element(distances.begin(), distances.end());
  std::vector<double> p(distances.size());
  double z = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    p[i] = std::exp(-(distances[i] - dmin));
    z += p[i];
  }
  for (double& x : p) x /= z;
  return p;
}

std::vector<double> tier_softmax(std::span<const double> v, std::span<const Vector> centroids) {
  std::vector<double> d;
  d.reserve(centroids.size());
  for (const auto& c : centroids) d.push_back(euclidean_distance(v, c));
  return softmax_neg_distances(d);
}

RelevanceProbs classify_relevance(std::span<const double> v, const CentroidSet& c) {
  const double d[2] = {euclidean_distance(v, c.moral), euclidean_distance(v, c.neutral)};
  auto p = softmax_neg_distances(d);
  return {p[0], p[1]};
}

MoralPosterior classify_doc(std::span<const double> v, const CentroidSet& c) {
  MoralPosterior post;
  post.relevance = classify_relevance(v, c);
  if (!post.relevance.is_relevant()) return post;

  const double dp[2] = {euclidean_distance(v, c.virtue), euclidean_distance(v, c.vice)};
  auto pp = softmax_neg_distances(dp);
  post.polarity = PolarityProbs{pp[0], pp[1]};

  const auto fs = foundations_of(post.polarity->verdict());
  std::array<double, 5> df{};
  for (std::size_t i = 0; i < 5; ++i) df[i] = euclidean_distance(v, c.of(fs[i]));
  auto pf = softmax_neg_distances(df);
  std::array<double, 5> probs{};
  std::copy(pf.begin(), pf.end(), probs.begin());
  post.foundations = probs;
  return post;
}

std::optional<double> MoralPosterior::probability(const MoralDimension& m) const {
  switch (m.tier) {
    case Tier::relevance:
      return m.label == 0 ? relevance.relevant : relevance.irrelevant;
    case Tier::polarity:
      if (!polarity) return std::nullopt;
      return m.polarity() == Polarity::virtue ? polarity->virtue : polarity->vice;
    case Tier::foundation: {
      if (!polarity || !foundations) return std::nullopt;
      const Foundation f = m.foundation();
      if (polarity_of(f) != polarity->verdict()) return std::nullopt;
      const auto fs = foundations_of(polarity->verdict());
      for (std::size_t i = 0; i < 5; ++i) {
        if (fs[i] == f) return (*foundations)[i];
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<RelevanceProbs> classify_word(std::string_view w, const WordEmbeddingStore& emb,
                                            const CentroidSet& centroids) {
  const Vector* v = emb.find(w);
  if (!v) return std::nullopt;
  return classify_relevance(*v, centroids);
}

}  // namespace moralsrc
