// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "moralsrc/corpus.hpp"
#include "moralsrc/embedding_store.hpp"
#include "moralsrc/evaluation.hpp"
#include "moralsrc/lexicon.hpp"
#include "moralsrc/moral_classifier.hpp"
#include "moralsrc/random.hpp"
#include "moralsrc/source_tracer.hpp"
#include "moralsrc/timecourse.hpp"
#include "moralsrc/topic_model.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace moralsrc;
using namespace moralsrc::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vector random_vector(Rng& rng, std::size_t dim, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Vector v(dim);
  for (auto& x : v) x = n(rng);
  return v;
}

double sum_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

// ---------------------------------------------------------------- 1
Outcome probability_discipline() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(1, "acceptance:1"));
  double worst = 0.0;
  std::size_t gating_failures = 0, range_failures = 0;
  const auto dims = standard_dimensions();
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = 2 + uniform_index(rng, 63);
    // spread of the centroid cloud relative to the vector: from tight to far apart
    const double scale = std::pow(10.0, -2.0 + 4.0 * uniform01(rng));
    CentroidSet c;
    c.moral = random_vector(rng, dim, scale);
    c.neutral = random_vector(rng, dim, scale);
    c.virtue = random_vector(rng, dim, scale);
    c.vice = random_vector(rng, dim, scale);
    for (auto& f : c.foundation) f = random_vector(rng, dim, scale);
    const Vector v = random_vector(rng, dim, scale);

    const auto post = classify_doc(v, c);
    const double rel[] = {post.relevance.relevant, post.relevance.irrelevant};
    worst = std::max(worst, std::abs(sum_of(rel) - 1.0));
    for (double p : rel) range_failures += !(p >= 0.0 && p <= 1.0);

    // foundations => polarity => relevance
    if (post.polarity.has_value() != post.relevance.is_relevant()) ++gating_failures;
    if (post.foundations.has_value() != post.polarity.has_value()) ++gating_failures;
    if (post.polarity) {
      const double pol[] = {post.polarity->virtue, post.polarity->vice};
      worst = std::max(worst, std::abs(sum_of(pol) - 1.0));
      for (double p : pol) range_failures += !(p >= 0.0 && p <= 1.0);
    }
    if (post.foundations) {
      worst = std::max(worst, std::abs(sum_of(*post.foundations) - 1.0));
      for (double p : *post.foundations) range_failures += !(p >= 0.0 && p <= 1.0);
    }
    for (const auto& m : dims) {
      bool admitted = true;
      if (m.tier == Tier::polarity) admitted = post.relevance.is_relevant();
      if (m.tier == Tier::foundation) {
        admitted = post.polarity && post.polarity->verdict() == polarity_of(m.foundation());
      }
      if (post.probability(m).has_value() != admitted) ++gating_failures;
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-9 && gating_failures == 0 && range_failures == 0 && secs < 5.0;
  return {pass, fmt::format("max |sum-1| = {:.2e}, gating violations {}, out-of-range {}, {:.2f}s", worst,
                            gating_failures, range_failures, secs)};
}

// ---------------------------------------------------------------- helpers for window fixtures
std::vector<WindowDocument> random_window(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<WindowDocument> docs(n);
  for (std::size_t d = 0; d < n; ++d) {
    docs[d].id = fmt::format("w{:02}", d);
    docs[d].probability = uniform01(rng);
    docs[d].theta.assign(k, 0.0);
  }
  return docs;
}

// ---------------------------------------------------------------- 2
Outcome counterfactual_reduction() {
  Rng rng(derive_seed(1, "acceptance:2"));
  std::size_t fixtures = 0, mismatches = 0;
  for (int f = 0; f < 200; ++f) {
    const std::size_t n = 1 + uniform_index(rng, 40);
    const std::size_t k = 1 + uniform_index(rng, 5);
    auto docs = random_window(rng, n, k);
    const std::size_t zero_topic = uniform_index(rng, k);
    // other topics get arbitrary mass; the tested topic stays at zero
    for (auto& d : docs) {
      for (std::size_t o = 0; o < k; ++o) d.theta[o] = o == zero_topic ? 0.0 : uniform01(rng);
    }
    const auto cf = counterfactual_estimate(docs, zero_topic);
    const auto mean = window_mean(docs);
    ++fixtures;
    if (!cf || !mean || std::bit_cast<std::uint64_t>(*cf) != std::bit_cast<std::uint64_t>(*mean)) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} fixtures, {} not bitwise equal", fixtures, mismatches)};
}

// ---------------------------------------------------------------- 3
struct BruteMin {
  double value = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  std::set<std::string> ids;
};

// Enumerates every subset of the given size with a bitmask and evaluates
// |mean(remaining) - base| directly.
BruteMin brute_force(double base, const std::vector<WindowDocument>& docs, std::size_t size) {
  BruteMin out;
  const std::size_t n = docs.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
    double s = 0.0;
    std::size_t c = 0;
    for (std::size_t d = 0; d < n; ++d) {
      if (mask & (1u << d)) continue;
      s += docs[d].probability;
      ++c;
    }
    const double dj = c ? std::abs(s / static_cast<double>(c) - base) : 0.0;
    if (dj < out.value) {
      out.runner_up = out.value;
      out.value = dj;
      out.ids.clear();
      for (std::size_t d = 0; d < n; ++d) {
        if (mask & (1u << d)) out.ids.insert(docs[d].id);
      }
    } else if (dj < out.runner_up) {
      out.runner_up = dj;
    }
  }
  return out;
}

Outcome influence_oracle() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(1, "acceptance:3"));
  std::size_t exhaustive_ok = 0, mc_ok = 0;
  const std::size_t fixtures = 50;
  for (std::size_t f = 0; f < fixtures; ++f) {
    const std::size_t n = 4 + uniform_index(rng, 9);  // 4..12
    const std::size_t size = 1 + uniform_index(rng, 3);
    const double fraction = (static_cast<double>(size) - 0.5) / static_cast<double>(n);
    auto docs = random_window(rng, n, 1);
    const double base = uniform01(rng);
    const auto truth = brute_force(base, docs, size);

    InfluenceSearchConfig cfg;
    cfg.fraction = fraction;
    cfg.n_samples = 10000;
    cfg.seed = derive_seed(1, f);
    cfg.mode = SubsetSearch::automatic;
    const auto ex = influence_function_baseline(base, docs, cfg);
    const std::set<std::string> got(ex.best.doc_ids.begin(), ex.best.doc_ids.end());
    const bool unique = truth.runner_up - truth.value > 1e-12;
    const bool same = ex.exhaustive && ex.best.doc_ids.size() == size &&
                      std::abs(ex.best.delta_j - truth.value) <= 1e-12 && (!unique || got == truth.ids);
    exhaustive_ok += same;

    cfg.mode = SubsetSearch::monte_carlo;
    const auto mc = influence_function_baseline(base, docs, cfg);
    mc_ok += !mc.exhaustive && mc.best.delta_j <= truth.value * 1.05 + 1e-15;
  }
  const double secs = seconds_since(t0);
  const bool pass = exhaustive_ok == fixtures && mc_ok * 100 >= 95 * fixtures && secs < 60.0;
  return {pass, fmt::format("exhaustive matches {}/{}, monte-carlo within 5% {}/{}, {:.2f}s", exhaustive_ok,
                            fixtures, mc_ok, fixtures, secs)};
}

// ---------------------------------------------------------------- 4
Outcome hard_assignment() {
  Rng rng(derive_seed(1, "acceptance:4"));
  std::size_t comparisons = 0, mismatches = 0;
  for (int f = 0; f < 100; ++f) {
    const std::size_t n = 1 + uniform_index(rng, 20);
    const std::size_t k = 1 + uniform_index(rng, 4);
    auto docs = random_window(rng, n, k);
    for (auto& d : docs) d.theta[uniform_index(rng, k)] = 1.0;
    const double base = uniform01(rng);
    const auto ranking = topic_influence(base, docs, k);
    for (const auto& t : ranking) {
      std::set<std::string> ids;
      for (const auto& d : docs) {
        if (d.theta[t.topic] == 1.0) ids.insert(d.id);
      }
      const auto s = set_influence(base, docs, ids);
      ++comparisons;
      if (std::bit_cast<std::uint64_t>(s.delta_j) != std::bit_cast<std::uint64_t>(t.delta_s)) ++mismatches;
    }
  }
  return {mismatches == 0, fmt::format("{} topic comparisons over 100 fixtures, {} differ", comparisons,
                                       mismatches)};
}

// ---------------------------------------------------------------- 5
Outcome change_point_recovery() {
  const auto t0 = Clock::now();
  std::size_t hits = 0, constant_clean = 0, noisy_flat_windows = 0, noisy_flat_flagged = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(derive_seed(seed, "acceptance:5"));
    std::normal_distribution<double> noise(0.0, 0.05);
    const std::size_t last_before = 6 + uniform_index(rng, 17);  // 6..22
    const double low = 0.1 + 0.3 * uniform01(rng);
    const double step = 0.5 + 0.3 * uniform01(rng);
    std::vector<std::optional<double>> series(30);
    for (std::size_t i = 0; i < 30; ++i) series[i] = (i <= last_before ? low : low + step) + noise(rng);

    SlidingWindowConfig cfg;
    cfg.window_size = 7;
    cfg.step = 3;
    cfg.permutations = 1000;
    cfg.seed = derive_seed(seed, "acceptance:5:perm");
    const auto cps = detect_change_points(series, cfg);
    const bool hit = std::any_of(cps.begin(), cps.end(), [&](const ChangePoint& cp) {
      return cp.index + 1 >= last_before && cp.index <= last_before + 1;
    });
    hits += hit;

    std::vector<std::optional<double>> flat(30, 0.2 + 0.6 * uniform01(rng));
    constant_clean += detect_change_points(flat, cfg).empty();

    // reference only: a flat series with noise has ~5% false alarms per window
    std::vector<std::optional<double>> noisy(30);
    for (auto& x : noisy) x = 0.5 + noise(rng);
    noisy_flat_flagged += detect_change_points(noisy, cfg).size();
    noisy_flat_windows += 8;
  }
  const double secs = seconds_since(t0);
  const bool pass = hits >= 18 && constant_clean == 20 && secs < 120.0;
  return {pass, fmt::format("step found within +-1 in {}/20, constant series silent in {}/20 "
                            "(noisy flat: {}/{} windows flagged), {:.2f}s",
                            hits, constant_clean, noisy_flat_flagged, noisy_flat_windows, secs)};
}

// ---------------------------------------------------------------- 6
std::vector<nlohmann::json> trace_reports(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<nlohmann::json> out;
  for (const auto& f : files) out.push_back(nlohmann::json::parse(read_file(f)));
  return out;
}

std::vector<std::string> world_trace_args(const WorldFiles& w, const fs::path& out, std::uint64_t seed) {
  return {"trace",           "--corpus",     w.corpus.string(),  "--embeddings",       w.embeddings.string(),
          "--lexicon",       w.lexicon.string(), "--aliases",    w.aliases.string(), "-o",
          out.string(),      "-k",           "2",                "--topic-alpha",      "0.1",
          "--gibbs-iterations", "200",       "--source-fraction", "0.1",              "--seed",
          std::to_string(seed), "--log-level", "warn"};
}

Outcome end_to_end_attribution() {
  const auto t0 = Clock::now();
  std::size_t ok = 0, topic_ok = 0, coherence_ok = 0;
  std::string failures;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WorldOptions opts;
    opts.seed = seed;
    const auto dir = scratch_dir(fmt::format("acceptance6_{}", seed));
    const auto w = write_world(dir / "in", opts);
    if (run(world_trace_args(w, dir / "out", seed)) != 0) {
      failures += fmt::format(" s{}:rc", seed);
      continue;
    }
    const nlohmann::json* report = nullptr;
    const auto reports = trace_reports(dir / "out");
    for (const auto& r : reports) {
      const std::size_t bin = r["change_point"]["bin"];
      if (bin + 2 >= opts.flip_bin && bin <= opts.flip_bin) report = &r;
    }
    if (!report) {
      failures += fmt::format(" s{}:nocp", seed);
      continue;
    }
    const auto& r = *report;
    // the source topic is A: its salient event words are A's, and the documents
    // it contributes to the source set are all topic-A documents
    std::size_t a_words = 0, b_words = 0;
    for (const auto& word : r["salient_words"]) {
      const auto s = word.get<std::string>();
      a_words += std::find(w.topic_a_words.begin(), w.topic_a_words.end(), s) != w.topic_a_words.end();
      b_words += std::find(w.topic_b_words.begin(), w.topic_b_words.end(), s) != w.topic_b_words.end();
    }
    bool docs_a = !r["source_docs"]["doc_ids"].empty();
    for (const auto& id : r["source_docs"]["doc_ids"]) {
      docs_a = docs_a && id.get<std::string>().find("-a-") != std::string::npos;
    }
    const bool topic = a_words > 0 && b_words == 0 && docs_a;
    const auto& coh = r["coherence"];
    const bool coherent = coh.contains("topic_based") && coh.contains("random") && !coh["topic_based"].is_null() &&
                          !coh["random"].is_null() &&
                          coh["topic_based"]["value"].get<double>() >= coh["random"]["value"].get<double>();
    topic_ok += topic;
    coherence_ok += coherent;
    ok += topic && coherent;
    if (!(topic && coherent)) failures += fmt::format(" s{}:{}{}", seed, topic ? "" : "T", coherent ? "" : "H");
  }
  const double secs = seconds_since(t0);
  const bool pass = ok >= 18 && secs < 300.0;
  return {pass, fmt::format("{}/20 seeds (source topic A {}/20, E[H] topic >= random {}/20){}, {:.1f}s", ok,
                            topic_ok, coherence_ok, failures.empty() ? "" : " failed:" + failures, secs)};
}

// ---------------------------------------------------------------- 7
Outcome topic_recovery() {
  const auto t0 = Clock::now();
  std::size_t ok = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto corpus = generate_lda_corpus(seed);
    TopicModelConfig cfg;
    cfg.k = 2;
    cfg.alpha = 0.1;  // the generator's mixture prior
    cfg.gibbs_iterations = 300;
    cfg.seed = derive_seed(seed, "acceptance:7");
    const auto fit = fit_dynamic_topics(corpus.slices, cfg);
    const auto& vocab = fit.vocabulary();
    std::vector<Vector> truth(2, Vector(vocab.size(), 0.0));
    for (std::size_t t = 0; t < 2; ++t) {
      for (const auto& [word, p] : corpus.topics[t]) truth[t][*vocab.id(word)] = p;
    }
    double seed_worst = 1.0;
    for (std::size_t s = 0; s < fit.slices().size(); ++s) {
      auto cos = [&](std::size_t o, std::size_t t) { return cosine(fit.phi(s, o), truth[t]); };
      const double straight = std::min(cos(0, 0), cos(1, 1));
      const double crossed = std::min(cos(0, 1), cos(1, 0));
      seed_worst = std::min(seed_worst, std::max(straight, crossed));
    }
    worst = std::min(worst, seed_worst);
    ok += seed_worst >= 0.9;
  }
  const double secs = seconds_since(t0);
  return {ok == 10 && secs < 120.0,
          fmt::format("{}/10 seeds, worst aligned cosine {:.4f}, {:.1f}s", ok, worst, secs)};
}

// ---------------------------------------------------------------- 8
double pairwise_cosine(const std::vector<Vector>& vs) {
  double total = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (i == j) continue;
      double dot = 0.0, a = 0.0, b = 0.0;
      for (std::size_t x = 0; x < vs[i].size(); ++x) {
        dot += vs[i][x] * vs[j][x];
        a += vs[i][x] * vs[i][x];
        b += vs[j][x] * vs[j][x];
      }
      total += dot / (std::sqrt(a) * std::sqrt(b));
    }
  }
  const double n = static_cast<double>(vs.size());
  return total / (n * (n - 1.0));
}

Outcome coherence_oracle() {
  Rng rng(derive_seed(1, "acceptance:8"));
  double worst = 0.0;
  std::size_t sets = 0;
  for (int f = 0; f < 300; ++f) {
    const std::size_t n = 2 + uniform_index(rng, 19);
    const std::size_t dim = 1 + uniform_index(rng, 50);
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(random_vector(rng, dim, 1.0));
    worst = std::max(worst, std::abs(coherence(vs) - pairwise_cosine(vs)));
    ++sets;
  }

  // document route on the evaluation fixture
  const fs::path fx = fs::path(MORALSRC_FIXTURES) / "eval";
  const auto emb = load_embeddings(fx / "embeddings.txt");
  const auto stop = load_token_set(fx / "stopwords.txt");
  const auto corpus = ingest_corpus(fx / "tweets.jsonl", {});
  std::vector<std::string> all;
  for (const auto& d : corpus.documents()) all.push_back(d.id);
  for (int f = 0; f < 50; ++f) {
    auto ids = all;
    full_shuffle(ids, rng);
    ids.resize(2 + uniform_index(rng, std::min<std::size_t>(19, ids.size() - 1)));
    std::vector<Vector> vs;
    for (const auto& id : ids) vs.push_back(headline_vector(*corpus.find(id), emb, stop).vector);
    worst = std::max(worst, std::abs(coherence(ids, corpus, emb, stop).value - pairwise_cosine(vs)));
    ++sets;
  }
  return {worst <= 1e-9, fmt::format("{} sets of 2..20 documents, max |diff| = {:.2e}", sets, worst)};
}

// ---------------------------------------------------------------- 9
bool close_or_both_null(const nlohmann::json& expected, const std::optional<double>& got) {
  if (expected.is_null()) return !got.has_value();
  return got && std::abs(expected.get<double>() - *got) <= 1e-9;
}

Outcome evaluation_harness() {
  const fs::path fx = fs::path(MORALSRC_FIXTURES) / "eval";
  const auto expected_all = nlohmann::json::parse(read_file(fx / "expected.json"));
  const auto emb = load_embeddings(fx / "embeddings.txt");
  const auto centroids = build_centroids(parse_lexicon(fx / "lexicon.tsv"), emb);
  const auto stop = load_token_set(fx / "stopwords.txt");
  const auto corpus = ingest_corpus(fx / "tweets.jsonl", {});
  const auto entities = load_aliases(fx / "aliases.tsv");

  EvalOptions opts;
  const auto report = evaluate(corpus, entities, emb, centroids, stop, opts);

  // the fixture's one foundation tie is resolved by a seeded draw; pick the matching branch
  const std::string tie_doc = expected_all["tie_document"];
  const auto tie = judge_document(*corpus.find(tie_doc), opts.ground_truth.seed);
  const std::string branch(to_string(*tie.foundation));
  if (!expected_all["branches"].contains(branch)) return {false, "tie resolved to unexpected foundation " + branch};
  const auto& expected = expected_all["branches"][branch];

  std::size_t row_bad = 0, rows = 0;
  for (const auto& e : expected["rows"]) {
    ++rows;
    auto it = std::find_if(report.rows.begin(), report.rows.end(), [&](const EvalRow& r) {
      return to_string(r.dimension) == e["dimension"].get<std::string>() &&
             to_string(r.variant) == e["variant"].get<std::string>();
    });
    if (it == report.rows.end() || it->n != e["n"].get<std::size_t>() ||
        std::abs(it->f1 - e["f1"].get<double>()) > 1e-9 || !close_or_both_null(e["r"], it->pearson_r) ||
        !close_or_both_null(e["p"], it->p_value)) {
      ++row_bad;
    }
  }
  row_bad += report.rows.size() != rows;

  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, JudgmentPair> got_cells;
  for (const auto& p : report.pairs) {
    got_cells[{std::string(to_string(p.variant)), to_string(p.dimension), p.entity, p.topic_label}] = p.pair;
  }
  std::size_t cell_bad = 0, value_bad = 0;
  std::set<Key> expected_keys;
  for (const auto& e : expected["pairs"]) {
    Key k{e["variant"], e["dimension"], e["entity"], e["topic"]};
    expected_keys.insert(k);
    auto it = got_cells.find(k);
    if (it == got_cells.end()) {
      ++cell_bad;
      continue;
    }
    value_bad += std::abs(it->second.predicted - e["predicted"].get<double>()) > 1e-9 ||
                 std::abs(it->second.truth - e["truth"].get<double>()) > 1e-9;
  }
  for (const auto& [k, _] : got_cells) cell_bad += !expected_keys.contains(k);

  std::size_t verdict_bad = 0;
  for (const auto& [id, e] : expected["judgments"].items()) {
    const auto j = judge_document(*corpus.find(id), opts.ground_truth.seed);
    bool same = j.relevant == e["relevant"].get<bool>();
    if (e.contains("polarity")) same = same && j.polarity && to_string(*j.polarity) == e["polarity"].get<std::string>();
    else same = same && !j.polarity;
    if (e.contains("foundation")) {
      same = same && j.foundation && to_string(*j.foundation) == e["foundation"].get<std::string>();
    }
    verdict_bad += !same;
  }
  // boundary cases of the majority rules, stated independently of the oracle
  const auto t05 = judge_document(*corpus.find("t05"), 1);  // 3 of 5 annotators non-moral
  const auto t03 = judge_document(*corpus.find("t03"), 1);  // 2 of 4 annotators non-moral
  const auto t18 = judge_document(*corpus.find("t18"), 1);  // 2 virtue vs 2 vice labels
  const bool boundary = !t05.relevant && t03.relevant && t18.relevant && t18.polarity == Polarity::vice;

  const bool pass = row_bad == 0 && cell_bad == 0 && value_bad == 0 && verdict_bad == 0 && boundary;
  return {pass, fmt::format("tie branch '{}': {} rows ({} off), {} valid cells ({} set mismatches, {} value "
                            "mismatches), verdict mismatches {}, boundary cases {}",
                            branch, rows, row_bad, expected_keys.size(), cell_bad, value_bad, verdict_bad,
                            boundary ? "ok" : "wrong")};
}

// ---------------------------------------------------------------- 10
Outcome determinism() {
  const auto dir = scratch_dir("acceptance10");
  WorldOptions opts;
  opts.seed = 3;
  const auto w = write_world(dir / "in", opts);
  std::vector<fs::path> outs;
  int rc = 0;
  for (const char* threads : {"1", "4", "4"}) {
    outs.push_back(dir / fmt::format("out{}", outs.size()));
    auto args = world_trace_args(w, outs.back(), 11);
    args.insert(args.end(), {"--threads", threads, "--influence-samples", "10000"});
    rc |= run(args);
  }
  if (rc != 0) return {false, "trace run failed"};
  auto listing = [](const fs::path& d) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(d)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
  };
  const auto names = listing(outs[0]);
  std::size_t reports = 0, differing = 0;
  for (const auto& n : names) reports += n.ends_with(".json");
  for (std::size_t i = 1; i < outs.size(); ++i) {
    if (listing(outs[i]) != names) return {false, "output file sets differ"};
    for (const auto& n : names) differing += read_file(outs[0] / n) != read_file(outs[i] / n);
  }
  return {reports > 0 && differing == 0,
          fmt::format("{} files ({} reports) across threads 1/4/4, {} differ", names.size(), reports, differing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"probability discipline", probability_discipline},
      {"zero-theta counterfactual equals window mean", counterfactual_reduction},
      {"set influence vs brute force", influence_oracle},
      {"hard-assignment delta_s == delta_j", hard_assignment},
      {"change-point recovery", change_point_recovery},
      {"end-to-end source attribution", end_to_end_attribution},
      {"topic recovery", topic_recovery},
      {"coherence oracle", coherence_oracle},
      {"evaluation harness", evaluation_harness},
      {"determinism", determinism},
  };
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
