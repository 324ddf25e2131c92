#include "moralsrc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "moralsrc/corpus.hpp"
#include "moralsrc/errors.hpp"
#include "moralsrc/evaluation.hpp"
#include "moralsrc/lexicon.hpp"
#include "moralsrc/pipeline.hpp"
#include "moralsrc/random.hpp"

namespace fs = std::filesystem;

namespace moralsrc {

std::map<std::string, std::string> RunConfig::canonical() const {
  auto join = [](const std::vector<std::string>& v) { return fmt::format("{}", fmt::join(v, ",")); };
  std::map<std::string, std::string> m;
  m["command"] = command;
  m["corpus"] = corpus;
  m["embeddings"] = embeddings;
  m["lexicon"] = lexicon;
  m["aliases"] = aliases;
  m["stopwords"] = stopwords;
  m["neutral"] = neutral;
  m["fit"] = fit;
  m["embedding_dim"] = embedding_dim ? std::to_string(*embedding_dim) : "";
  m["bin_width"] = bin_width;
  m["range_start"] = range_start;
  m["range_end"] = range_end;
  m["entities"] = join(entities);
  m["dimensions"] = join(dimensions);
  m["window_size"] = std::to_string(window_size);
  m["window_step"] = std::to_string(window_step);
  m["permutations"] = std::to_string(permutations);
  m["p_threshold"] = fmt::format("{}", p_threshold);
  m["max_missing"] = fmt::format("{}", max_missing);
  m["topics"] = std::to_string(topics);
  m["topic_alpha"] = topic_alpha ? fmt::format("{}", *topic_alpha) : "";
  m["topic_beta"] = fmt::format("{}", topic_beta);
  m["gibbs_iterations"] = std::to_string(gibbs_iterations);
  m["chain_strength"] = fmt::format("{}", chain_strength);
  m["average_theta"] = average_theta ? "true" : "false";
  m["salient_words"] = std::to_string(salient_words);
  m["source_fraction"] = fmt::format("{}", source_fraction);
  m["influence_samples"] = std::to_string(influence_samples);
  m["significance"] = fmt::format("{}", significance);
  m["baselines"] = baselines ? "on" : "off";
  m["variants"] = join(variants);
  m["graded"] = graded ? "true" : "false";
  m["docs"] = join(docs);
  m["seed"] = std::to_string(seed);
  return m;
}

std::string RunConfig::hash() const {
  std::string text;
  for (const auto& [k, v] : canonical()) text += k + "=" + v + "\n";
  return fmt::format("{:016x}", fnv1a64(text));
}

namespace {

struct Resources {
  WordEmbeddingStore emb{1};
  CentroidSet centroids;
  TokenSet stopwords;
  std::optional<Corpus> corpus;
  std::vector<EntityQuery> entities;
};

void require_path(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(fmt::format("missing required option {}", flag));
  if (!fs::exists(value)) throw ConfigError(fmt::format("{}: file '{}' does not exist", flag, value));
}

std::string slug(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "entity" : out;
}

class Outputs {
 public:
  explicit Outputs(const RunConfig& cfg) : dir_(cfg.output_dir), cfg_(cfg) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory '{}'", dir_.string()));
  }

  std::string csv_preamble() const {
    return fmt::format("# moralsrc {} config_hash={} seed={}\n", cfg_.command, cfg_.hash(), cfg_.seed);
  }

  void write(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write '{}'", p.string()));
    out << content;
    spdlog::info("wrote {}", p.string());
  }

  nlohmann::ordered_json provenance() const {
    nlohmann::ordered_json j;
    j["config_hash"] = cfg_.hash();
    j["seed"] = cfg_.seed;
    j["corpus"] = cfg_.corpus;
    j["fit"] = cfg_.fit.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(cfg_.fit);
    nlohmann::ordered_json c;
    for (const auto& [k, v] : cfg_.canonical()) c[k] = v;
    j["config"] = c;
    return j;
  }

 private:
  fs::path dir_;
  const RunConfig& cfg_;
};

std::string num(double x) { return fmt::format("{}", x); }

CorpusOptions corpus_options(const RunConfig& cfg) {
  CorpusOptions o;
  o.bin_width = parse_bin_width(cfg.bin_width);
  if (!cfg.range_start.empty()) o.range_start = parse_timestamp(cfg.range_start);
  if (!cfg.range_end.empty()) o.range_end = parse_timestamp(cfg.range_end);
  return o;
}

Resources load_resources(const RunConfig& cfg, bool need_lexicon) {
  Resources r;
  require_path(cfg.corpus, "--corpus");
  require_path(cfg.embeddings, "--embeddings");
  if (need_lexicon) require_path(cfg.lexicon, "--lexicon");
  if (!cfg.aliases.empty()) require_path(cfg.aliases, "--aliases");
  if (!cfg.stopwords.empty()) require_path(cfg.stopwords, "--stopwords");
  if (!cfg.neutral.empty()) require_path(cfg.neutral, "--neutral");
  const auto opts = corpus_options(cfg);

  r.emb = load_embeddings(cfg.embeddings, cfg.embedding_dim);
  if (need_lexicon) {
    SeedLexicon lex = parse_lexicon(cfg.lexicon);
    if (!cfg.neutral.empty()) load_neutral_words(lex, cfg.neutral);
    r.centroids = build_centroids(lex, r.emb);
  }
  r.stopwords = cfg.stopwords.empty() ? default_stopword_set() : load_token_set(cfg.stopwords);
  r.corpus.emplace(ingest_corpus(cfg.corpus, opts));

  std::vector<EntityQuery> known;
  if (!cfg.aliases.empty()) known = load_aliases(cfg.aliases);
  if (cfg.entities.empty()) {
    r.entities = known;
  } else {
    for (const auto& name : cfg.entities) {
      auto it = std::find_if(known.begin(), known.end(),
                             [&](const EntityQuery& e) { return e.canonical_name == name; });
      r.entities.push_back(it != known.end() ? *it : make_entity(name));
    }
  }
  return r;
}

void require_entities(const Resources& r) {
  if (r.entities.empty()) throw ConfigError("no entities: pass --entity or --aliases");
}

std::vector<MoralDimension> dimensions_or(const RunConfig& cfg, std::vector<MoralDimension> dflt) {
  if (cfg.dimensions.empty()) return dflt;
  std::vector<MoralDimension> out;
  for (const auto& d : cfg.dimensions) out.push_back(parse_dimension(d));
  return out;
}

SlidingWindowConfig window_config(const RunConfig& cfg) {
  SlidingWindowConfig w;
  w.window_size = cfg.window_size;
  w.step = cfg.window_step;
  w.permutations = cfg.permutations;
  w.p_threshold = cfg.p_threshold;
  w.max_missing_fraction = cfg.max_missing;
  w.threads = cfg.threads;
  w.validate();
  return w;
}

TopicModelConfig topic_config(const RunConfig& cfg, const EntityQuery& e) {
  TopicModelConfig t;
  t.k = cfg.topics;
  t.alpha = cfg.topic_alpha;
  t.beta = cfg.topic_beta;
  t.gibbs_iterations = cfg.gibbs_iterations;
  t.chain_strength = cfg.chain_strength;
  t.average_theta = cfg.average_theta;
  t.seed = derive_seed(cfg.seed, "topics:" + e.canonical_name);
  t.validate();
  return t;
}

std::uint64_t changepoint_seed(const RunConfig& cfg, const EntityQuery& e, const MoralDimension& m) {
  return derive_seed(cfg.seed, "changepoints:" + e.canonical_name + ":" + to_string(m));
}

std::string series_csv(const Outputs& out, std::span<const TimeCoursePoint> series) {
  std::string s = out.csv_preamble() + "bin_start,value,n_docs\n";
  for (const auto& p : series) {
    s += fmt::format("{},{},{}\n", format_date(p.bin_start), p.value ? num(*p.value) : "", p.n_docs);
  }
  return s;
}

std::string changepoints_csv(const Outputs& out, const Corpus& corpus,
                             std::span<const ChangePoint> cps) {
  std::string s = out.csv_preamble() + "bin_start,p_value,direction,window_start,window_end\n";
  for (const auto& cp : cps) {
    s += fmt::format("{},{},{},{},{}\n", format_date(corpus.bins()[cp.index].start), num(cp.p_value),
                     cp.direction, format_date(corpus.bins()[cp.window_start].start),
                     format_date(corpus.bins()[cp.window_end].start));
  }
  return s;
}

int cmd_timecourse(const RunConfig& cfg, bool with_changepoints) {
  Resources r = load_resources(cfg, true);
  require_entities(r);
  Outputs out(cfg);
  const auto dims = dimensions_or(cfg, {MoralDimension::relevant(), MoralDimension::of(Polarity::virtue)});
  auto wcfg = window_config(cfg);
  for (const auto& e : r.entities) {
    auto scored = score_entity_documents(*r.corpus, e, r.emb, r.centroids, r.stopwords, {}, cfg.threads);
    for (const auto& m : dims) {
      auto series = moral_timecourse(scored, m, r.corpus->bins());
      const std::string stem = fmt::format("{}_{}", slug(e.canonical_name), to_string(m));
      if (!with_changepoints) {
        out.write("timecourse_" + stem + ".csv", series_csv(out, series));
        continue;
      }
      wcfg.seed = changepoint_seed(cfg, e, m);
      auto cps = detect_change_points(series, wcfg);
      out.write("changepoints_" + stem + ".csv", changepoints_csv(out, *r.corpus, cps));
    }
  }
  return kExitOk;
}

std::vector<TopicSliceInput> entity_slices(const Resources& r, const EntityQuery& e) {
  std::vector<ScoredDocument> docs;
  const auto& all = r.corpus->documents();
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto f = entity_filter(all[i], e);
    if (!f) continue;
    ScoredDocument sd;
    sd.doc_index = i;
    sd.bin = r.corpus->bin_of(i);
    sd.id = all[i].id;
    sd.topic_tokens = topic_tokens(*f, e, r.stopwords);
    docs.push_back(std::move(sd));
  }
  if (docs.empty()) {
    throw EmptyResultError(fmt::format("entity '{}' is not mentioned in the corpus", e.canonical_name));
  }
  return topic_slices(docs);
}

int cmd_topics(const RunConfig& cfg) {
  Resources r = load_resources(cfg, false);
  require_entities(r);
  Outputs out(cfg);
  for (const auto& e : r.entities) {
    auto slices = entity_slices(r, e);
    auto fit = fit_dynamic_topics(slices, topic_config(cfg, e));
    const std::string stem = "topics_" + slug(e.canonical_name);
    const fs::path fit_path = fs::path(cfg.output_dir) / (stem + ".fit");
    save_topic_fit(fit, fit_path);
    std::string csv = out.csv_preamble() + "slice,bin_start,topic,rank,word,probability\n";
    for (std::size_t s = 0; s < fit.slices().size(); ++s) {
      const auto bin_start = format_date(r.corpus->bins()[fit.slices()[s].bin].start);
      for (std::size_t o = 0; o < fit.k(); ++o) {
        auto words = salient_words(fit, s, o, cfg.salient_words);
        auto row = fit.phi(s, o);
        for (std::size_t i = 0; i < words.size(); ++i) {
          csv += fmt::format("{},{},{},{},{},{}\n", s, bin_start, o, i + 1, words[i],
                             num(row[*fit.vocabulary().id(words[i])]));
        }
      }
    }
    out.write(stem + "_words.csv", csv);
  }
  return kExitOk;
}

int cmd_trace(const RunConfig& cfg) {
  Resources r = load_resources(cfg, true);
  require_entities(r);
  if (!cfg.fit.empty()) {
    require_path(cfg.fit, "--fit");
    if (r.entities.size() != 1) throw ConfigError("--fit can only be used with a single entity");
  }
  Outputs out(cfg);
  const auto dims = dimensions_or(cfg, {MoralDimension::of(Polarity::virtue)});
  std::size_t total_reports = 0;
  for (const auto& e : r.entities) {
    auto scored = score_entity_documents(*r.corpus, e, r.emb, r.centroids, r.stopwords, {}, cfg.threads);
    const auto tcfg = topic_config(cfg, e);
    TopicModelFit fit = cfg.fit.empty() ? fit_dynamic_topics(topic_slices(scored), tcfg)
                                        : load_topic_fit(cfg.fit);
    if (!cfg.fit.empty() && fit.k() != cfg.topics) {
      spdlog::warn("topic fit has k = {}, overriding --topics {}", fit.k(), cfg.topics);
    }
    for (const auto& m : dims) {
      TraceConfig tc;
      tc.dimension = m;
      tc.window = window_config(cfg);
      tc.topics = tcfg;
      tc.source_fraction = cfg.source_fraction;
      tc.influence_samples = cfg.influence_samples;
      tc.alpha = cfg.significance;
      tc.baselines = cfg.baselines;
      tc.salient_words = cfg.salient_words;
      tc.seed = cfg.seed;
      tc.threads = cfg.threads;
      auto trace = trace_entity(*r.corpus, e, scored, fit, r.emb, r.stopwords, tc);

      const std::string stem = fmt::format("trace_{}_{}", slug(e.canonical_name), to_string(m));
      std::string topics_csv = out.csv_preamble() + "change_bin_start,topic,delta_s,counterfactual\n";
      std::string methods_csv =
          out.csv_preamble() + "change_bin_start,method,n_docs,delta_j,coherence,body_substituted\n";
      std::string summary_csv = out.csv_preamble() +
                                "change_bin_start,p_value,direction,base_value,window_docs,source_topic,report\n";
      for (const auto& rep : trace.reports) {
        const std::string date = format_date(rep.change_bin_start);
        const std::string file = fmt::format("{}_{}.json", stem, date);
        auto j = report_to_json(rep);
        j["provenance"] = out.provenance();
        out.write(file, j.dump(2) + "\n");
        summary_csv += fmt::format("{},{},{},{},{},{},{}\n", date, num(rep.change_point.p_value),
                                   rep.change_point.direction, num(rep.base), rep.window_docs,
                                   rep.source_topic, file);
        for (const auto& t : rep.topic_ranking) {
          topics_csv += fmt::format("{},{},{},{}\n", date, t.topic, num(t.delta_s),
                                    t.counterfactual ? num(*t.counterfactual) : "");
        }
        auto method_row = [&](const std::string& name, const SetInfluence& s) {
          const auto& c = rep.coherence.at(name);
          methods_csv += fmt::format("{},{},{},{},{},{}\n", date, name, s.doc_ids.size(), num(s.delta_j),
                                     c ? num(c->value) : "", c ? std::to_string(c->body_substituted) : "");
        };
        method_row("topic_based", rep.source_docs);
        if (rep.influence_function) method_row("influence_function", rep.influence_function->best);
        if (rep.random) method_row("random", *rep.random);
      }
      out.write(stem + "_summary.csv", summary_csv);
      out.write(stem + "_topics.csv", topics_csv);
      out.write(stem + "_methods.csv", methods_csv);
      if (trace.reports.empty()) {
        spdlog::info("{} / {}: no change points detected, no reports written", e.canonical_name,
                     to_string(m));
      }
      total_reports += trace.reports.size();
    }
  }
  spdlog::info("{} source trace report(s) written", total_reports);
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg) {
  Resources r = load_resources(cfg, true);
  require_entities(r);
  Outputs out(cfg);
  EvalOptions eo;
  if (!cfg.variants.empty()) {
    eo.variants.clear();
    for (const auto& v : cfg.variants) eo.variants.push_back(parse_variant(v));
  }
  eo.ground_truth.graded = cfg.graded;
  eo.ground_truth.seed = derive_seed(cfg.seed, "ground-truth");
  eo.threads = cfg.threads;
  auto report = evaluate(*r.corpus, r.entities, r.emb, r.centroids, r.stopwords, eo);

  std::ostringstream table;
  table << out.csv_preamble()
        << fmt::format("# ground_truth={} polarity_tie=negative bonferroni_factor={}\n",
                       cfg.graded ? "graded" : "majority", eo.ground_truth.dimensions.size());
  write_eval_csv(report, table);
  out.write("eval.csv", table.str());

  std::string pairs = out.csv_preamble() + "variant,dimension,entity,topic,predicted,truth\n";
  for (const auto& p : report.pairs) {
    pairs += fmt::format("{},{},\"{}\",\"{}\",{},{}\n", to_string(p.variant), to_string(p.dimension),
                         p.entity, p.topic_label, num(p.pair.predicted), num(p.pair.truth));
  }
  out.write("eval_pairs.csv", pairs);
  return kExitOk;
}

int cmd_coherence(const RunConfig& cfg) {
  Resources r = load_resources(cfg, false);
  if (cfg.docs.size() < 2) throw ConfigError("coherence needs at least two --doc ids");
  for (const auto& id : cfg.docs) {
    if (!r.corpus->find(id)) throw ConfigError(fmt::format("unknown document id '{}'", id));
  }
  Outputs out(cfg);
  auto score = coherence(cfg.docs, *r.corpus, r.emb, r.stopwords);
  std::string csv = out.csv_preamble() + "n_docs,coherence,body_substituted\n";
  csv += fmt::format("{},{},{}\n", cfg.docs.size(), num(score.value), score.body_substituted);
  out.write("coherence.csv", csv);
  return kExitOk;
}

void add_options(CLI::App& app, RunConfig& cfg, std::size_t& embedding_dim, double& topic_alpha,
                 std::string& baselines, std::string& log_level) {
  app.add_option("--corpus", cfg.corpus, "Corpus file (one JSON record per line)");
  app.add_option("--embeddings", cfg.embeddings, "Word embeddings (plain-text vector format)");
  app.add_option("--embedding-dim", embedding_dim, "Expected embedding dimension (0: any)");
  app.add_option("--lexicon", cfg.lexicon, "Moral seed lexicon (token<TAB>category)");
  app.add_option("--aliases", cfg.aliases, "Entity alias file (canonical<TAB>alias...)");
  app.add_option("--stopwords", cfg.stopwords, "Function-word list (default: bundled)");
  app.add_option("--neutral", cfg.neutral, "Morally neutral word list (default: lexicon/bundled)");
  app.add_option("--output-dir,-o", cfg.output_dir, "Directory for output files")->capture_default_str();
  app.add_option("--fit", cfg.fit, "Saved topic fit to reuse (trace, single entity)");
  app.add_option("--bin-width", cfg.bin_width, "Time bin width: day, week or month")->capture_default_str();
  app.add_option("--range-start", cfg.range_start, "Corpus range start (ISO-8601)");
  app.add_option("--range-end", cfg.range_end, "Corpus range end (ISO-8601)");
  app.add_option("--entity", cfg.entities, "Entity canonical name (repeatable; default: all aliases)");
  app.add_option("--dimension", cfg.dimensions,
                 "Moral dimension: relevant, irrelevant, virtue, vice or a foundation (repeatable)");
  app.add_option("--window-size", cfg.window_size, "Sliding window size in bins")->capture_default_str();
  app.add_option("--window-step", cfg.window_step, "Sliding window step in bins")->capture_default_str();
  app.add_option("--permutations", cfg.permutations, "Permutations per window")->capture_default_str();
  app.add_option("--p-threshold", cfg.p_threshold, "Change-point significance threshold")->capture_default_str();
  app.add_option("--max-missing", cfg.max_missing, "Skip windows with more missing points than this share")
      ->capture_default_str();
  app.add_option("--topics,-k", cfg.topics, "Number of topics")->capture_default_str();
  app.add_option("--topic-alpha", topic_alpha, "Document-topic prior (0: 50/k)");
  app.add_option("--topic-beta", cfg.topic_beta, "Topic-word prior")->capture_default_str();
  app.add_option("--gibbs-iterations", cfg.gibbs_iterations, "Gibbs sweeps per slice")->capture_default_str();
  app.add_option("--chain-strength", cfg.chain_strength, "Weight of carried-over topic counts")
      ->capture_default_str();
  app.add_flag("--average-theta", cfg.average_theta, "Average theta over the second half of the chain");
  app.add_option("--salient-words", cfg.salient_words, "Topic words to report")->capture_default_str();
  app.add_option("--source-fraction", cfg.source_fraction, "Source set size as a share of the window")
      ->capture_default_str();
  app.add_option("--influence-samples", cfg.influence_samples, "Random subsets for the influence baseline")
      ->capture_default_str();
  app.add_option("--significance", cfg.significance, "Influence baseline significance level")
      ->capture_default_str();
  app.add_option("--baselines", baselines, "Run the influence-function and random baselines: on|off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--variant", cfg.variants,
                 "Evaluation variant: topic_based, topic_free_static, precomputed_vectors (repeatable)");
  app.add_flag("--graded", cfg.graded, "Graded-proportion ground truth instead of majority votes");
  app.add_option("--doc", cfg.docs, "Document id for the coherence command (repeatable)");
  app.add_option("--seed", cfg.seed, "Master random seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Moral time courses, change points and their source topics and documents", "moralsrc"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value configuration file (flags take precedence)");

  RunConfig cfg;
  std::size_t embedding_dim = 0;
  double topic_alpha = 0.0;
  std::string baselines = "on";
  std::string log_level = "info";
  add_options(app, cfg, embedding_dim, topic_alpha, baselines, log_level);

  app.add_subcommand("timecourse", "Moral time course per entity and dimension (CSV)");
  app.add_subcommand("changepoints", "Change points of the moral time course (CSV)");
  app.add_subcommand("topics", "Fit and save the dynamic topic model per entity");
  app.add_subcommand("trace", "Source topic and documents for each detected change point (JSON/CSV)");
  app.add_subcommand("eval", "Compare model judgments with annotated ground truth (CSV)");
  app.add_subcommand("coherence", "Expected headline coherence of a document set (CSV)");

  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("moralsrc");
    l->set_pattern("[%l] %v");
    return l;
  }();
  spdlog::set_default_logger(logger);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  auto level = spdlog::level::from_str(log_level);
  logger->set_level(level);
  cfg.embedding_dim = embedding_dim > 0 ? std::optional<std::size_t>(embedding_dim) : std::nullopt;
  cfg.topic_alpha = topic_alpha > 0.0 ? std::optional<double>(topic_alpha) : std::nullopt;
  cfg.baselines = baselines == "on";
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "timecourse") return cmd_timecourse(cfg, false);
    if (cfg.command == "changepoints") return cmd_timecourse(cfg, true);
    if (cfg.command == "topics") return cmd_topics(cfg);
    if (cfg.command == "trace") return cmd_trace(cfg);
    if (cfg.command == "eval") return cmd_eval(cfg);
    if (cfg.command == "coherence") return cmd_coherence(cfg);
  } catch (const ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return kExitConfig;
  } catch (const FormatError& e) {
    spdlog::error("format error: {}", e.what());
    return kExitFormat;
  } catch (const ContractError& e) {
    spdlog::error("contract violation: {}", e.what());
    return kExitContract;
  } catch (const EmptyResultError& e) {
    spdlog::error("{}", e.what());
    return kExitEmpty;
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kExitInternal;
  }
  return kExitConfig;
}

}  // namespace moralsrc
