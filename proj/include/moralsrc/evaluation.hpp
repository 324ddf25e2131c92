#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moralsrc/corpus.hpp"
#include "moralsrc/moral_classifier.hpp"

namespace moralsrc {

// Majority-vote labels of one annotated document.
struct DocumentJudgment {
  std::string id;
  std::size_t annotators = 0;
  std::size_t non_moral_annotators = 0;
  bool relevant = false;                 // not more than half of annotators said non-moral
  std::optional<Polarity> polarity;      // relevant documents only; ties -> vice
  std::optional<Foundation> foundation;  // relevant documents with moral labels only
  // Graded proportions.
  double relevance_share = 0.0;
  double virtue_share = 0.0;
  std::array<double, kFoundationCount> foundation_share{};

  // Whether the 3-tier structure admits this document for m.
  bool admits(const MoralDimension& m) const;
  // 0/1 indicator (binary) or proportion (graded) of m for an admitted document.
  double indicator(const MoralDimension& m, bool graded) const;
};

// Throws FormatError on labels that are neither foundations nor "non-moral".
// Foundation ties are broken by a uniform draw seeded from (seed, doc id).
DocumentJudgment judge_document(const Document& doc, std::uint64_t seed);

struct EmpiricalJudgment {
  std::string entity;
  std::string topic_label;
  MoralDimension dimension;
  double count_m_e_o = 0.0;   // integral unless graded
  std::size_t count_e_o = 0;  // documents of the cell admitted for the dimension
  double p_hat = 0.0;
};

struct GroundTruth {
  std::vector<DocumentJudgment> documents;
  std::vector<EmpiricalJudgment> table;  // only cells with count_e_o >= 1
  std::size_t skipped_unannotated = 0;
};

struct GroundTruthOptions {
  bool graded = false;
  std::uint64_t seed = 1;
  std::vector<MoralDimension> dimensions = standard_dimensions();
};

// P^(m|e,o) over (entity, topic_label) cells of documents that mention e.
GroundTruth build_ground_truth(const Corpus& corpus, std::span<const EntityQuery> entities,
                               const GroundTruthOptions& opts);

enum class ModelVariant { topic_based, topic_free_static, precomputed_vectors };
std::string_view to_string(ModelVariant v);
ModelVariant parse_variant(std::string_view s);

struct EvalDocument {
  std::string id;
  std::string topic_label;
  std::optional<MoralPosterior> posterior;
};

// topic set: mean of P_e(m|d) over documents labelled `topic`;
// topic nullopt: mean over all documents. nullopt when no document qualifies.
std::optional<double> model_judgment(std::span<const EvalDocument> docs, const MoralDimension& m,
                                     const std::optional<std::string>& topic);

struct JudgmentPair {
  double predicted = 0.0;
  double truth = 0.0;
};

struct EvalRow {
  MoralDimension dimension;
  ModelVariant variant = ModelVariant::topic_based;
  double f1 = 0.0;
  std::optional<double> pearson_r;
  std::optional<double> p_value;
  std::optional<double> p_bonferroni;
  std::size_t n = 0;
};

double f1_score(std::span<const JudgmentPair> pairs, double threshold = 0.5);
// nullopt when n < 3 or either side is constant.
std::optional<double> pearson_r(std::span<const JudgmentPair> pairs);
// Two-sided p-value of r under the t distribution with n-2 degrees of freedom.
double pearson_p_value(double r, std::size_t n);

EvalRow score(std::span<const JudgmentPair> pairs, std::size_t bonferroni_factor);

struct EvalOptions {
  std::vector<ModelVariant> variants = {ModelVariant::topic_based, ModelVariant::topic_free_static,
                                        ModelVariant::precomputed_vectors};
  GroundTruthOptions ground_truth;
  unsigned threads = 1;
};

struct EvalCellPair {
  std::string entity;
  std::string topic_label;
  MoralDimension dimension;
  ModelVariant variant;
  JudgmentPair pair;
};

struct EvalReport {
  std::vector<EvalRow> rows;         // dimension-major, variants in option order
  std::vector<EvalCellPair> pairs;   // the valid cells behind the rows
  std::vector<ModelVariant> variants;
  std::size_t skipped_unannotated = 0;
  bool graded = false;
};

// Requires at least one annotated document; throws ConfigError otherwise.
EvalReport evaluate(const Corpus& corpus, std::span<const EntityQuery> entities,
                    const WordEmbeddingStore& emb, const CentroidSet& centroids,
                    const TokenSet& stopwords, const EvalOptions& opts);

// dimension, then f1,r,p,p_bonferroni,n per variant.
void write_eval_csv(const EvalReport& report, std::ostream& out);

}  // namespace moralsrc
