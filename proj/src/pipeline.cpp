#include "moralsrc/pipeline.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "moralsrc/random.hpp"

namespace moralsrc {

std::vector<TopicSliceInput> topic_slices(std::span<const ScoredDocument> scored) {
  std::map<std::size_t, TopicSliceInput> by_bin;
  for (const auto& d : scored) {
    auto& slice = by_bin[d.bin];
    slice.bin = d.bin;
    slice.docs.push_back({d.id, d.topic_tokens});
  }
  std::vector<TopicSliceInput> out;
  for (auto& [bin, s] : by_bin) out.push_back(std::move(s));
  return out;
}

EntityTrace trace_entity(const Corpus& corpus, const EntityQuery& e,
                         std::span<const ScoredDocument> scored, const TopicModelFit& fit,
                         const WordEmbeddingStore& emb, const TokenSet& stopwords,
                         const TraceConfig& cfg) {
  EntityTrace out;
  const std::string dim = to_string(cfg.dimension);
  out.series = moral_timecourse(scored, cfg.dimension, corpus.bins());

  SlidingWindowConfig wcfg = cfg.window;
  wcfg.seed = derive_seed(cfg.seed, "changepoints:" + e.canonical_name + ":" + dim);
  wcfg.threads = cfg.threads;
  out.change_points = detect_change_points(out.series, wcfg);

  for (const auto& cp : out.change_points) {
    const auto& base = out.series[cp.index].value;
    if (!base) {
      spdlog::warn("{} / {}: change point at bin {} has no observed base value, skipped",
                   e.canonical_name, dim, cp.index);
      continue;
    }
    auto docs = window_documents(scored, cfg.dimension, cp, &fit);
    if (docs.empty()) {
      spdlog::warn("{} / {}: no documents in the window after bin {}, skipped", e.canonical_name,
                   dim, cp.index);
      continue;
    }

    SourceTraceReport r;
    r.entity = e.canonical_name;
    r.dimension = cfg.dimension;
    r.change_point = cp;
    r.change_bin_start = corpus.bins()[cp.index].start;
    r.window_start = corpus.bins()[std::min(cp.index + 1, cp.window_end)].start;
    r.window_end = corpus.bins()[cp.window_end].start;
    r.base = *base;
    r.window_value = window_mean(docs);
    r.window_docs = docs.size();
    r.topic_ranking = topic_influence(base, docs, fit.k());
    r.source_topic = r.topic_ranking.front().topic;
    r.source_docs = topic_source_docs(r.base, docs, r.source_topic, cfg.source_fraction);

    const std::string tag = fmt::format("{}:{}:{}", e.canonical_name, dim, cp.index);
    r.influence_seed = derive_seed(cfg.seed, "influence:" + tag);
    r.random_seed = derive_seed(cfg.seed, "random:" + tag);

    auto add_coherence = [&](const std::string& method, const std::vector<std::string>& ids) {
      if (ids.size() < 2) {
        r.coherence[method] = std::nullopt;
        return;
      }
      r.coherence[method] = coherence(ids, corpus, emb, stopwords);
    };
    add_coherence("topic_based", r.source_docs.doc_ids);

    if (cfg.baselines) {
      InfluenceSearchConfig icfg;
      icfg.fraction = cfg.source_fraction;
      icfg.n_samples = cfg.influence_samples;
      icfg.alpha = cfg.alpha;
      icfg.seed = r.influence_seed;
      icfg.threads = cfg.threads;
      r.influence_function = influence_function_baseline(r.base, docs, icfg);
      r.random = random_baseline(r.base, docs, cfg.source_fraction, r.random_seed);
      add_coherence("influence_function", r.influence_function->best.doc_ids);
      add_coherence("random", r.random->doc_ids);
    }

    // Topic words from the first modelled slice after t.
    for (std::size_t b = cp.index + 1; b <= cp.window_end; ++b) {
      if (auto s = fit.slice_for_bin(b)) {
        r.salient_words = salient_words(fit, *s, r.source_topic, cfg.salient_words);
        break;
      }
    }
    out.reports.push_back(std::move(r));
  }
  return out;
}

namespace {

nlohmann::ordered_json set_json(const SetInfluence& s) {
  nlohmann::ordered_json j;
  j["doc_ids"] = s.doc_ids;
  j["size"] = s.doc_ids.size();
  j["delta_j"] = s.delta_j;
  j["p_value_vs_null"] = s.p_value_vs_null ? nlohmann::ordered_json(*s.p_value_vs_null) : nullptr;
  return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const SourceTraceReport& r) {
  nlohmann::ordered_json j;
  j["entity"] = r.entity;
  j["dimension"] = to_string(r.dimension);
  j["change_point"] = {
      {"bin", r.change_point.index},
      {"bin_start", format_timestamp(r.change_bin_start)},
      {"p_value", r.change_point.p_value},
      {"statistic", r.change_point.statistic},
      {"direction", r.change_point.direction},
      {"window_first_bin", r.change_point.window_start},
      {"window_last_bin", r.change_point.window_end},
      {"delta_t_start", format_timestamp(r.window_start)},
      {"delta_t_end", format_timestamp(r.window_end)},
  };
  j["base_value"] = r.base;
  j["window_value"] = r.window_value ? nlohmann::ordered_json(*r.window_value) : nullptr;
  j["window_docs"] = r.window_docs;
  auto ranking = nlohmann::ordered_json::array();
  for (const auto& t : r.topic_ranking) {
    ranking.push_back({{"topic", t.topic},
                       {"delta_s", t.delta_s},
                       {"counterfactual", t.counterfactual ? nlohmann::ordered_json(*t.counterfactual)
                                                           : nullptr},
                       {"degenerate", !t.counterfactual.has_value()}});
  }
  j["topic_ranking"] = ranking;
  j["source_topic"] = r.source_topic;
  j["salient_words"] = r.salient_words;
  j["source_docs"] = set_json(r.source_docs);
  if (r.influence_function || r.random) {
    nlohmann::ordered_json b;
    if (r.influence_function) {
      auto f = set_json(r.influence_function->best);
      f["quantile"] = r.influence_function->quantile;
      f["significant"] = r.influence_function->significant;
      f["evaluated_subsets"] = r.influence_function->evaluated;
      f["exhaustive"] = r.influence_function->exhaustive;
      f["seed"] = r.influence_seed;
      b["influence_function"] = f;
    }
    if (r.random) {
      auto f = set_json(*r.random);
      f["seed"] = r.random_seed;
      b["random"] = f;
    }
    j["baselines"] = b;
  }
  nlohmann::ordered_json coh = nlohmann::ordered_json::object();
  for (const auto& [method, c] : r.coherence) {
    if (c) {
      coh[method] = {{"value", c->value}, {"body_substituted", c->body_substituted}};
    } else {
      coh[method] = nullptr;
    }
  }
  j["coherence"] = coh;
  return j;
}

}  // namespace moralsrc
