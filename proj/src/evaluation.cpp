#include "moralsrc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "moralsrc/random.hpp"

namespace moralsrc {

namespace {

bool is_non_moral(std::string_view label) {
  return label == "non-moral" || label == "nonmoral" || label == "non_moral";
}

}  // namespace

bool DocumentJudgment::admits(const MoralDimension& m) const {
  switch (m.tier) {
    case Tier::relevance:
      return true;
    case Tier::polarity:
      return relevant && polarity.has_value();
    case Tier::foundation:
      return relevant && polarity && *polarity == polarity_of(m.foundation());
  }
  return false;
}

double DocumentJudgment::indicator(const MoralDimension& m, bool graded) const {
  switch (m.tier) {
    case Tier::relevance: {
      const double r = graded ? relevance_share : (relevant ? 1.0 : 0.0);
      return m.label == 0 ? r : 1.0 - r;
    }
    case Tier::polarity: {
      const double v = graded ? virtue_share : (*polarity == Polarity::virtue ? 1.0 : 0.0);
      return m.polarity() == Polarity::virtue ? v : 1.0 - v;
    }
    case Tier::foundation:
      if (graded) return foundation_share[static_cast<std::size_t>(m.foundation())];
      return foundation && *foundation == m.foundation() ? 1.0 : 0.0;
  }
  return 0.0;
}

DocumentJudgment judge_document(const Document& doc, std::uint64_t seed) {
  DocumentJudgment j;
  j.id = doc.id;
  j.annotators = doc.annotations.size();
  std::array<std::size_t, kFoundationCount> votes{};
  std::size_t virtue_labels = 0, vice_labels = 0;
  for (const auto& a : doc.annotations) {
    bool non_moral = false;
    for (const auto& label : a.labels) {
      if (is_non_moral(label)) {
        non_moral = true;
        continue;
      }
      std::string_view base = label;
      if (auto dot = base.find('.'); dot != std::string_view::npos) base = base.substr(0, dot);
      auto f = parse_foundation(base);
      if (!f) throw FormatError(fmt::format("document '{}': unknown annotation label '{}'", doc.id, label));
      ++votes[static_cast<std::size_t>(*f)];
      (polarity_of(*f) == Polarity::virtue ? virtue_labels : vice_labels) += 1;
    }
    j.non_moral_annotators += non_moral ? 1 : 0;
  }
  if (j.annotators == 0) return j;

  j.relevant = 2 * j.non_moral_annotators <= j.annotators;
  j.relevance_share =
      1.0 - static_cast<double>(j.non_moral_annotators) / static_cast<double>(j.annotators);
  const std::size_t moral_labels = virtue_labels + vice_labels;
  if (moral_labels > 0) {
    j.virtue_share = static_cast<double>(virtue_labels) / static_cast<double>(moral_labels);
    for (std::size_t i = 0; i < kFoundationCount; ++i) {
      j.foundation_share[i] = static_cast<double>(votes[i]) / static_cast<double>(moral_labels);
    }
  }
  if (!j.relevant || moral_labels == 0) return j;

  j.polarity = virtue_labels > vice_labels ? Polarity::virtue : Polarity::vice;
  const std::size_t top = *std::max_element(votes.begin(), votes.end());
  std::vector<Foundation> tied;
  for (std::size_t i = 0; i < kFoundationCount; ++i) {
    if (votes[i] == top) tied.push_back(static_cast<Foundation>(i));
  }
  if (tied.size() == 1) {
    j.foundation = tied.front();
  } else {
    Rng rng(derive_seed(seed, "ground-truth:" + doc.id));
    j.foundation = tied[uniform_index(rng, tied.size())];
  }
  return j;
}

namespace {

struct Cell {
  std::string entity;
  std::string topic;
  std::vector<std::size_t> docs;  // corpus indices
};

// (entity, topic) cells of annotated documents mentioning each entity, in a
// stable order: entity input order, then topic label.
std::vector<Cell> build_cells(const Corpus& corpus, std::span<const EntityQuery> entities,
                              std::size_t& skipped) {
  skipped = 0;
  const auto& docs = corpus.documents();
  for (const auto& d : docs) skipped += d.annotations.empty() ? 1 : 0;
  std::vector<Cell> cells;
  for (const auto& e : entities) {
    std::map<std::string, std::vector<std::size_t>> by_topic;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& d = docs[i];
      if (d.annotations.empty() || !d.topic_label) continue;
      if (!entity_filter(d, e)) continue;
      by_topic[*d.topic_label].push_back(i);
    }
    for (auto& [topic, idx] : by_topic) cells.push_back({e.canonical_name, topic, std::move(idx)});
  }
  return cells;
}

}  // namespace

GroundTruth build_ground_truth(const Corpus& corpus, std::span<const EntityQuery> entities,
                               const GroundTruthOptions& opts) {
  GroundTruth gt;
  const auto& docs = corpus.documents();
  std::vector<std::optional<DocumentJudgment>> judged(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].annotations.empty()) continue;
    judged[i] = judge_document(docs[i], opts.seed);
    gt.documents.push_back(*judged[i]);
  }
  auto cells = build_cells(corpus, entities, gt.skipped_unannotated);
  if (gt.skipped_unannotated > 0) {
    spdlog::info("{} documents without annotations skipped", gt.skipped_unannotated);
  }
  for (const auto& cell : cells) {
    for (const auto& m : opts.dimensions) {
      EmpiricalJudgment ej;
      ej.entity = cell.entity;
      ej.topic_label = cell.topic;
      ej.dimension = m;
      for (std::size_t i : cell.docs) {
        const auto& j = *judged[i];
        if (!j.admits(m)) continue;
        ++ej.count_e_o;
        ej.count_m_e_o += j.indicator(m, opts.graded);
      }
      if (ej.count_e_o == 0) continue;
      ej.p_hat = ej.count_m_e_o / static_cast<double>(ej.count_e_o);
      gt.table.push_back(std::move(ej));
    }
  }
  return gt;
}

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::topic_based:
      return "topic_based";
    case ModelVariant::topic_free_static:
      return "topic_free_static";
    case ModelVariant::precomputed_vectors:
      return "precomputed_vectors";
  }
  return "";
}

ModelVariant parse_variant(std::string_view s) {
  if (s == "topic_based") return ModelVariant::topic_based;
  if (s == "topic_free_static") return ModelVariant::topic_free_static;
  if (s == "precomputed_vectors") return ModelVariant::precomputed_vectors;
  throw ConfigError(fmt::format("unknown model variant '{}'", s));
}

std::optional<double> model_judgment(std::span<const EvalDocument> docs, const MoralDimension& m,
                                     const std::optional<std::string>& topic) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& d : docs) {
    if (topic && d.topic_label != *topic) continue;
    if (!d.posterior) continue;
    auto p = d.posterior->probability(m);
    if (!p) continue;
    sum += *p;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

double f1_score(std::span<const JudgmentPair> pairs, double threshold) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& p : pairs) {
    const bool pred = p.predicted >= threshold;
    const bool truth = p.truth >= threshold;
    tp += pred && truth;
    fp += pred && !truth;
    fn += !pred && truth;
  }
  // No positives on either side is full agreement.
  if (tp + fp + fn == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

std::optional<double> pearson_r(std::span<const JudgmentPair> pairs) {
  const std::size_t n = pairs.size();
  if (n < 3) return std::nullopt;
  auto constant = [&](auto get) {
    return std::all_of(pairs.begin(), pairs.end(), [&](const JudgmentPair& p) { return get(p) == get(pairs[0]); });
  };
  if (constant([](const JudgmentPair& p) { return p.predicted; }) ||
      constant([](const JudgmentPair& p) { return p.truth; })) {
    return std::nullopt;
  }
  double mx = 0.0, my = 0.0;
  for (const auto& p : pairs) {
    mx += p.predicted;
    my += p.truth;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& p : pairs) {
    const double dx = p.predicted - mx, dy = p.truth - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson_p_value(double r, std::size_t n) {
  if (n < 3) throw ContractError("p-value needs n >= 3");
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
}

EvalRow score(std::span<const JudgmentPair> pairs, std::size_t bonferroni_factor) {
  EvalRow row;
  row.n = pairs.size();
  row.f1 = f1_score(pairs);
  row.pearson_r = pearson_r(pairs);
  if (row.pearson_r) {
    row.p_value = pearson_p_value(*row.pearson_r, row.n);
    row.p_bonferroni =
        std::min(1.0, *row.p_value * static_cast<double>(std::max<std::size_t>(bonferroni_factor, 1)));
  }
  return row;
}

EvalReport evaluate(const Corpus& corpus, std::span<const EntityQuery> entities,
                    const WordEmbeddingStore& emb, const CentroidSet& centroids,
                    const TokenSet& stopwords, const EvalOptions& opts) {
  const auto& docs = corpus.documents();
  if (std::none_of(docs.begin(), docs.end(), [](const Document& d) { return !d.annotations.empty(); })) {
    throw ConfigError("evaluation needs a corpus with annotations");
  }
  GroundTruth gt = build_ground_truth(corpus, entities, opts.ground_truth);

  EvalReport report;
  report.variants = opts.variants;
  report.skipped_unannotated = gt.skipped_unannotated;
  report.graded = opts.ground_truth.graded;

  // Per entity: static and precomputed posteriors of every annotated, labelled document.
  struct EntityDocs {
    std::vector<EvalDocument> static_docs;
    std::vector<EvalDocument> precomputed_docs;
  };
  std::map<std::string, EntityDocs> by_entity;
  for (const auto& e : entities) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (!docs[i].annotations.empty() && docs[i].topic_label) idx.push_back(i);
    }
    std::vector<std::optional<std::pair<EvalDocument, EvalDocument>>> slots(idx.size());
    parallel_for(idx.size(), opts.threads, [&](std::size_t s) {
      const auto& d = docs[idx[s]];
      auto filtered = entity_filter(d, e);
      if (!filtered) return;
      EvalDocument st{d.id, *d.topic_label, std::nullopt};
      EvalDocument pre{d.id, *d.topic_label, std::nullopt};
      VectorizeOptions vo;
      vo.use_precomputed = false;
      if (auto v = vectorize(*filtered, e, emb, centroids, stopwords, vo)) {
        st.posterior = classify_doc(*v, centroids);
      }
      if (d.precomputed_vector) pre.posterior = classify_doc(*d.precomputed_vector, centroids);
      slots[s] = std::make_pair(std::move(st), std::move(pre));
    });
    auto& ed = by_entity[e.canonical_name];
    for (auto& s : slots) {
      if (!s) continue;
      ed.static_docs.push_back(std::move(s->first));
      ed.precomputed_docs.push_back(std::move(s->second));
    }
  }

  const auto& dims = opts.ground_truth.dimensions;
  for (const auto& m : dims) {
    for (ModelVariant variant : opts.variants) {
      std::vector<JudgmentPair> pairs;
      for (const auto& ej : gt.table) {
        if (!(ej.dimension == m)) continue;
        const auto& ed = by_entity.at(ej.entity);
        const auto& pool =
            variant == ModelVariant::precomputed_vectors ? ed.precomputed_docs : ed.static_docs;
        // Model-side validity: some document of the cell passes the hierarchy for m.
        if (!model_judgment(pool, m, ej.topic_label)) continue;
        std::optional<double> pred = variant == ModelVariant::topic_based
                                         ? model_judgment(pool, m, ej.topic_label)
                                         : model_judgment(pool, m, std::nullopt);
        JudgmentPair pair{*pred, ej.p_hat};
        pairs.push_back(pair);
        report.pairs.push_back({ej.entity, ej.topic_label, m, variant, pair});
      }
      EvalRow row = score(pairs, dims.size());
      row.dimension = m;
      row.variant = variant;
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_eval_csv(const EvalReport& report, std::ostream& out) {
  out << "dimension";
  for (auto v : report.variants) {
    out << fmt::format(",{0}_f1,{0}_r,{0}_p,{0}_p_bonferroni,{0}_n", to_string(v));
  }
  out << '\n';
  auto opt = [](const std::optional<double>& x) { return x ? fmt::format("{}", *x) : std::string(); };
  const std::size_t nv = report.variants.size();
  for (std::size_t i = 0; i + nv <= report.rows.size(); i += nv) {
    out << to_string(report.rows[i].dimension);
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& r = report.rows[i + v];
      out << fmt::format(",{},{},{},{},{}", r.f1, opt(r.pearson_r), opt(r.p_value),
                         opt(r.p_bonferroni), r.n);
    }
    out << '\n';
  }
}

}  // namespace moralsrc
