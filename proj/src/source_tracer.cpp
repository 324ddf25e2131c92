#include "moralsrc/source_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "moralsrc/errors.hpp"
#include "moralsrc/random.hpp"

namespace moralsrc {

std::vector<WindowDocument> window_documents(std::span<const ScoredDocument> scored,
                                             const MoralDimension& m, const ChangePoint& cp,
                                             const TopicModelFit* fit) {
  std::vector<WindowDocument> out;
  for (const auto& d : scored) {
    if (d.bin <= cp.index || d.bin > cp.window_end) continue;
    auto p = d.probability(m);
    if (!p) continue;
    WindowDocument wd{d.id, *p, {}};
    if (fit) {
      auto th = fit->theta(d.id);
      if (!th) throw ContractError(fmt::format("document '{}' is not covered by the topic fit", d.id));
      wd.theta.assign(th->begin(), th->end());
    }
    out.push_back(std::move(wd));
  }
  return out;
}

std::optional<double> window_mean(std::span<const WindowDocument> docs,
                                  const std::set<std::string>& excluded) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& d : docs) {
    if (excluded.count(d.id)) continue;
    sum += d.probability;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> counterfactual_estimate(std::span<const WindowDocument> docs,
                                              std::size_t topic) {
  double num = 0.0, den = 0.0;
  for (const auto& d : docs) {
    if (topic >= d.theta.size()) throw ContractError("topic id outside the document's theta row");
    const double keep = 1.0 - d.theta[topic];
    num += d.probability * keep;
    den += keep;
  }
  if (!(den > 0.0)) return std::nullopt;
  return num / den;
}

std::vector<TopicInfluence> topic_influence(std::optional<double> base,
                                            std::span<const WindowDocument> docs, std::size_t k) {
  if (!base) throw ContractError("topic influence needs a base-state value at the change point");
  std::vector<TopicInfluence> out;
  out.reserve(k);
  for (std::size_t o = 0; o < k; ++o) {
    TopicInfluence ti;
    ti.topic = o;
    ti.counterfactual = counterfactual_estimate(docs, o);
    // All weight removed counts as full restoration.
    ti.delta_s = ti.counterfactual ? std::abs(*ti.counterfactual - *base) : 0.0;
    out.push_back(ti);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TopicInfluence& a, const TopicInfluence& b) { return a.delta_s < b.delta_s; });
  return out;
}

SetInfluence set_influence(double base, std::span<const WindowDocument> docs,
                           std::set<std::string> doc_ids) {
  std::set<std::string> window;
  for (const auto& d : docs) window.insert(d.id);
  for (const auto& id : doc_ids) {
    if (!window.count(id)) {
      throw ContractError(fmt::format("document '{}' is not in the change-point window", id));
    }
  }
  SetInfluence out;
  auto rest = window_mean(docs, doc_ids);
  out.delta_j = rest ? std::abs(*rest - base) : 0.0;
  out.doc_ids.assign(doc_ids.begin(), doc_ids.end());
  return out;
}

std::size_t source_set_size(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("source fraction must lie in (0, 1]");
  if (n == 0) return 0;
  // The small slack keeps e.g. 0.1 * 30 from rounding up to 4.
  auto size = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(size, 1, n);
}

SetInfluence topic_source_docs(double base, std::span<const WindowDocument> docs,
                               std::size_t topic, double fraction) {
  const std::size_t size = source_set_size(docs.size(), fraction);
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ta = docs[a].theta.at(topic), tb = docs[b].theta.at(topic);
    if (ta != tb) return ta > tb;
    return docs[a].id < docs[b].id;
  });
  std::set<std::string> chosen;
  for (std::size_t i = 0; i < size; ++i) chosen.insert(docs[order[i]].id);
  return set_influence(base, docs, std::move(chosen));
}

namespace {

// delta_j for a subset given as indices; same arithmetic as set_influence.
double delta_j_of(double base, std::span<const WindowDocument> docs,
                  std::span<const std::size_t> subset, std::vector<std::uint8_t>& mask) {
  std::fill(mask.begin(), mask.end(), 0);
  for (std::size_t i : subset) mask[i] = 1;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (mask[i]) continue;
    sum += docs[i].probability;
    ++n;
  }
  if (n == 0) return 0.0;
  return std::abs(sum / static_cast<double>(n) - base);
}

// C(n, r), saturating at max.
std::size_t binomial_capped(std::size_t n, std::size_t r, std::size_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  long double c = 1.0L;
  for (std::size_t i = 1; i <= r; ++i) {
    c = c * static_cast<long double>(n - r + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

bool lexicographically_smaller(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                               std::span<const WindowDocument> docs) {
  std::vector<std::string> ia, ib;
  for (auto i : a) ia.push_back(docs[i].id);
  for (auto i : b) ib.push_back(docs[i].id);
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  return ia < ib;
}

}  // namespace

InfluenceBaseline influence_function_baseline(double base, std::span<const WindowDocument> docs,
                                              const InfluenceSearchConfig& cfg) {
  if (cfg.n_samples < 1) throw ConfigError("influence baseline needs n_samples >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  const std::size_t n = docs.size();
  const std::size_t size = source_set_size(n, cfg.fraction);
  if (size == 0) throw ConfigError("influence baseline subset size is 0 (empty window)");

  InfluenceBaseline out;
  std::vector<std::vector<std::size_t>> subsets;
  const std::size_t total = binomial_capped(n, size, cfg.n_samples);
  if (cfg.mode == SubsetSearch::automatic && total <= cfg.n_samples) {
    out.exhaustive = true;
    std::vector<std::size_t> c(size);
    std::iota(c.begin(), c.end(), 0);
    for (;;) {
      subsets.push_back(c);
      std::size_t i = size;
      while (i > 0 && c[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < size; ++j) c[j] = c[j - 1] + 1;
    }
  } else {
    subsets.resize(cfg.n_samples);
    parallel_for(cfg.n_samples, cfg.threads, [&](std::size_t s) {
      Rng rng(derive_seed(cfg.seed, s));
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      partial_shuffle(idx, size, rng);
      idx.resize(size);
      std::sort(idx.begin(), idx.end());
      subsets[s] = std::move(idx);
    });
  }

  std::vector<double> null(subsets.size());
  parallel_for(subsets.size(), cfg.threads, [&](std::size_t s) {
    std::vector<std::uint8_t> mask(n);
    null[s] = delta_j_of(base, docs, subsets[s], mask);
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < subsets.size(); ++s) {
    if (null[s] < null[best] ||
        (null[s] == null[best] && lexicographically_smaller(subsets[s], subsets[best], docs))) {
      best = s;
    }
  }
  std::size_t at_or_below = 0;
  for (double v : null) at_or_below += v <= null[best] ? 1 : 0;

  std::set<std::string> ids;
  for (auto i : subsets[best]) ids.insert(docs[i].id);
  out.best = set_influence(base, docs, std::move(ids));
  out.quantile = static_cast<double>(at_or_below) / static_cast<double>(null.size());
  out.best.p_value_vs_null = out.quantile;
  out.significant = out.quantile <= cfg.alpha;
  out.evaluated = subsets.size();
  return out;
}

SetInfluence random_baseline(double base, std::span<const WindowDocument> docs, double fraction,
                             std::uint64_t seed) {
  const std::size_t size = source_set_size(docs.size(), fraction);
  std::vector<std::size_t> idx(docs.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  partial_shuffle(idx, size, rng);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < size; ++i) ids.insert(docs[idx[i]].id);
  return set_influence(base, docs, std::move(ids));
}

double coherence(std::span<const Vector> vectors) {
  const std::size_t n = vectors.size();
  if (n < 2) throw ContractError("coherence needs at least two documents");
  // cosine is symmetric, so sum the upper triangle twice.
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * cosine(vectors[i], vectors[j]);
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

HeadlineVector headline_vector(const Document& doc, const WordEmbeddingStore& emb,
                               const TokenSet& stopwords) {
  auto mean_of = [&](auto&& for_each_token) -> std::optional<Vector> {
    std::vector<const Vector*> vs;
    for_each_token([&](const std::string& t) {
      if (stopwords.count(t)) return;
      if (const Vector* v = emb.find(t)) vs.push_back(v);
    });
    if (vs.empty()) return std::nullopt;
    return mean_vector(std::span<const Vector* const>(vs));
  };
  if (doc.headline_tokens) {
    auto v = mean_of([&](auto&& f) {
      for (const auto& t : *doc.headline_tokens) f(t);
    });
    if (v) return {std::move(*v), false};
  }
  auto body = mean_of([&](auto&& f) {
    for (const auto& s : doc.sentences)
      for (const auto& t : s) f(t);
  });
  if (body) return {std::move(*body), true};
  if (doc.precomputed_vector && doc.precomputed_vector->size() == emb.dimension()) {
    return {*doc.precomputed_vector, true};
  }
  return {Vector(emb.dimension(), 0.0), true};
}

CoherenceScore coherence(std::span<const std::string> doc_ids, const Corpus& corpus,
                         const WordEmbeddingStore& emb, const TokenSet& stopwords) {
  if (doc_ids.size() < 2) throw ContractError("coherence needs at least two documents");
  CoherenceScore out;
  std::vector<Vector> vs;
  for (const auto& id : doc_ids) {
    const Document* d = corpus.find(id);
    if (!d) throw ContractError(fmt::format("unknown document '{}'", id));
    auto hv = headline_vector(*d, emb, stopwords);
    out.body_substituted += hv.substituted ? 1 : 0;
    vs.push_back(std::move(hv.vector));
  }
  out.value = coherence(vs);
  return out;
}

}  // namespace moralsrc
