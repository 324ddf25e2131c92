#include "moralsrc/topic_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "text_util.hpp"

namespace moralsrc {

void TopicModelConfig::validate() const {
  if (k < 1) throw ConfigError("topic count k must be >= 1");
  if (!(alpha_value() > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(beta > 0.0)) throw ConfigError("beta must be > 0");
  if (gibbs_iterations < 1) throw ConfigError("gibbs_iterations must be >= 1");
  if (!(chain_strength >= 0.0 && chain_strength <= 1.0)) {
    throw ConfigError("chain_strength must lie in [0, 1]");
  }
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

Vocabulary Vocabulary::from_slices(std::span<const TopicSliceInput> slices) {
  std::set<std::string> all;
  for (const auto& s : slices) {
    for (const auto& d : s.docs) all.insert(d.tokens.begin(), d.tokens.end());
  }
  return Vocabulary(std::vector<std::string>(all.begin(), all.end()));
}

std::optional<std::size_t> Vocabulary::id(std::string_view w) const {
  auto it = index_.find(std::string(w));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

GibbsSampler::GibbsSampler(std::vector<std::vector<std::size_t>> docs, std::size_t vocab_size,
                           std::size_t k, double alpha, std::vector<double> topic_word_prior,
                           std::uint64_t seed)
    : docs_(std::move(docs)),
      vocab_size_(vocab_size),
      k_(k),
      alpha_(alpha),
      prior_(std::move(topic_word_prior)),
      prior_total_(k, 0.0),
      n_dk_(docs_.size() * k, 0),
      n_kw_(k * vocab_size, 0),
      n_k_(k, 0),
      rng_(seed),
      weights_(k, 0.0) {
  if (prior_.size() != k * vocab_size) throw ContractError("topic-word prior has wrong shape");
  for (std::size_t o = 0; o < k_; ++o) {
    for (std::size_t w = 0; w < vocab_size_; ++w) prior_total_[o] += prior_[o * vocab_size_ + w];
  }
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    z_[d].resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::size_t w = docs_[d][i];
      if (w >= vocab_size_) throw ContractError("word id out of range");
      const std::size_t o = uniform_index(rng_, k_);
      z_[d][i] = o;
      ++n_dk_[d * k_ + o];
      ++n_kw_[o * vocab_size_ + w];
      ++n_k_[o];
      ++total_tokens_;
    }
  }
}

void GibbsSampler::sweep() {
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::size_t w = docs_[d][i];
      std::size_t o = z_[d][i];
      --n_dk_[d * k_ + o];
      --n_kw_[o * vocab_size_ + w];
      --n_k_[o];

      double total = 0.0;
      for (std::size_t t = 0; t < k_; ++t) {
        const double pw = (static_cast<double>(n_kw_[t * vocab_size_ + w]) + prior_[t * vocab_size_ + w]) /
                          (static_cast<double>(n_k_[t]) + prior_total_[t]);
        total += (static_cast<double>(n_dk_[d * k_ + t]) + alpha_) * pw;
        weights_[t] = total;
      }
      const double u = uniform01(rng_) * total;
      o = static_cast<std::size_t>(std::upper_bound(weights_.begin(), weights_.end(), u) -
                                   weights_.begin());
      if (o >= k_) o = k_ - 1;

      z_[d][i] = o;
      ++n_dk_[d * k_ + o];
      ++n_kw_[o * vocab_size_ + w];
      ++n_k_[o];
    }
  }
}

std::vector<double> GibbsSampler::phi() const {
  std::vector<double> out(k_ * vocab_size_);
  for (std::size_t o = 0; o < k_; ++o) {
    const double denom = static_cast<double>(n_k_[o]) + prior_total_[o];
    for (std::size_t w = 0; w < vocab_size_; ++w) {
      out[o * vocab_size_ + w] =
          (static_cast<double>(n_kw_[o * vocab_size_ + w]) + prior_[o * vocab_size_ + w]) / denom;
    }
  }
  return out;
}

std::vector<double> GibbsSampler::theta() const {
  std::vector<double> out(docs_.size() * k_);
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const double denom =
        static_cast<double>(docs_[d].size()) + static_cast<double>(k_) * alpha_;
    for (std::size_t o = 0; o < k_; ++o) {
      out[d * k_ + o] = (static_cast<double>(n_dk_[d * k_ + o]) + alpha_) / denom;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TopicModelFit::TopicModelFit(std::size_t k, Vocabulary vocab, std::vector<SliceFit> slices)
    : k_(k), vocab_(std::move(vocab)), slices_(std::move(slices)) {
  for (std::size_t s = 0; s < slices_.size(); ++s) {
    const auto& sl = slices_[s];
    if (sl.phi.size() != k_ * vocab_.size() || sl.theta.size() != sl.doc_ids.size() * k_) {
      throw ContractError("topic fit tables have inconsistent shapes");
    }
    for (std::size_t d = 0; d < sl.doc_ids.size(); ++d) {
      if (!doc_index_.emplace(sl.doc_ids[d], std::make_pair(s, d)).second) {
        throw FormatError(fmt::format("document '{}' appears twice in topic fit", sl.doc_ids[d]));
      }
    }
  }
}

std::span<const double> TopicModelFit::phi(std::size_t slice, std::size_t topic) const {
  if (slice >= slices_.size() || topic >= k_) {
    throw ContractError(fmt::format("topic ({}, {}) out of range", slice, topic));
  }
  return std::span<const double>(slices_[slice].phi).subspan(topic * vocab_.size(), vocab_.size());
}

std::optional<std::span<const double>> TopicModelFit::theta(std::string_view doc_id) const {
  auto it = doc_index_.find(std::string(doc_id));
  if (it == doc_index_.end()) return std::nullopt;
  const auto [s, d] = it->second;
  return std::span<const double>(slices_[s].theta).subspan(d * k_, k_);
}

std::optional<std::size_t> TopicModelFit::slice_for_bin(std::size_t bin) const {
  for (std::size_t s = 0; s < slices_.size(); ++s) {
    if (slices_[s].bin == bin) return s;
  }
  return std::nullopt;
}

SliceFit fit_topic_slice(const TopicSliceInput& slice, const Vocabulary& vocab,
                         const TopicModelConfig& cfg, std::span<const double> extra_prior,
                         std::uint64_t stream_seed, std::vector<double>* topic_word_counts_out) {
  cfg.validate();
  const std::size_t k = cfg.k;
  const std::size_t V = vocab.size();
  if (slice.docs.empty()) {
    throw ConfigError(fmt::format("time bin {} has no documents to model", slice.bin));
  }
  if (k > V) throw ConfigError(fmt::format("k = {} exceeds vocabulary size {}", k, V));

  std::vector<std::vector<std::size_t>> docs;
  docs.reserve(slice.docs.size());
  SliceFit out;
  out.bin = slice.bin;
  for (const auto& d : slice.docs) {
    std::vector<std::size_t> ids;
    ids.reserve(d.tokens.size());
    for (const auto& t : d.tokens) {
      auto id = vocab.id(t);
      if (!id) throw ContractError(fmt::format("token '{}' missing from vocabulary", t));
      ids.push_back(*id);
    }
    docs.push_back(std::move(ids));
    out.doc_ids.push_back(d.id);
  }

  std::vector<double> prior(k * V, cfg.beta);
  if (!extra_prior.empty()) {
    if (extra_prior.size() != prior.size()) throw ContractError("carried prior has wrong shape");
    for (std::size_t i = 0; i < prior.size(); ++i) prior[i] += extra_prior[i];
  }

  GibbsSampler sampler(std::move(docs), V, k, cfg.alpha_value(), std::move(prior), stream_seed);
  const std::size_t burn = cfg.gibbs_iterations / 2;
  std::vector<double> theta_sum;
  std::size_t samples = 0;
  for (std::size_t it = 0; it < cfg.gibbs_iterations; ++it) {
    sampler.sweep();
    if (cfg.average_theta && it >= burn) {
      auto th = sampler.theta();
      if (theta_sum.empty()) theta_sum.assign(th.size(), 0.0);
      for (std::size_t i = 0; i < th.size(); ++i) theta_sum[i] += th[i];
      ++samples;
    }
  }
  out.phi = sampler.phi();
  if (cfg.average_theta && samples > 0) {
    for (double& x : theta_sum) x /= static_cast<double>(samples);
    out.theta = std::move(theta_sum);
  } else {
    out.theta = sampler.theta();
  }
  if (topic_word_counts_out) {
    topic_word_counts_out->assign(k * V, 0.0);
    for (std::size_t o = 0; o < k; ++o) {
      for (std::size_t w = 0; w < V; ++w) {
        (*topic_word_counts_out)[o * V + w] = static_cast<double>(sampler.topic_word(o, w));
      }
    }
  }
  return out;
}

TopicModelFit fit_dynamic_topics(std::span<const TopicSliceInput> slices,
                                 const TopicModelConfig& cfg) {
  cfg.validate();
  if (slices.empty()) throw ConfigError("no time slices to model");
  for (const auto& s : slices) {
    if (s.docs.empty()) {
      throw ConfigError(fmt::format("time bin {} has no documents to model", s.bin));
    }
  }
  Vocabulary vocab = Vocabulary::from_slices(slices);
  if (cfg.k > vocab.size()) {
    throw ConfigError(fmt::format("k = {} exceeds vocabulary size {}", cfg.k, vocab.size()));
  }

  std::vector<SliceFit> fits;
  std::vector<double> carried;  // prior mass for the next slice
  std::vector<double> counts;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    fits.push_back(fit_topic_slice(slices[s], vocab, cfg, carried, derive_seed(cfg.seed, s), &counts));
    carried.clear();
    if (cfg.chain_strength > 0.0 && s + 1 < slices.size()) {
      double this_tokens = 0.0, next_tokens = 0.0;
      for (const auto& d : slices[s].docs) this_tokens += static_cast<double>(d.tokens.size());
      for (const auto& d : slices[s + 1].docs) next_tokens += static_cast<double>(d.tokens.size());
      if (this_tokens > 0.0) {
        const double scale = cfg.chain_strength * next_tokens / this_tokens;
        carried.resize(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) carried[i] = scale * counts[i];
      }
    }
    spdlog::debug("fitted topic slice {} (bin {})", s, slices[s].bin);
  }
  return TopicModelFit(cfg.k, std::move(vocab), std::move(fits));
}

std::vector<std::string> salient_words(const TopicModelFit& fit, std::size_t slice,
                                       std::size_t topic, std::size_t n) {
  auto row = fit.phi(slice, topic);
  std::vector<std::size_t> idx(row.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Vocabulary ids follow lexicographic order, so id order breaks ties.
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(n, idx.size()); ++i) {
    out.push_back(fit.vocabulary().word(idx[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr std::string_view kMagic = "moralsrc-topic-fit";
constexpr int kVersion = 1;

void write_row(std::ostream& out, std::span<const double> row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ' ';
    out << fmt::format("{}", row[i]);
  }
  out << '\n';
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file");
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(fmt::format("{}:{}: {}", name_, lineno_, what));
  }
  std::size_t keyword(std::string_view key) {
    auto line = next();
    auto f = detail::split_whitespace(line);
    if (f.size() != 2 || f[0] != key) fail(fmt::format("expected '{} N'", key));
    return parse_size(f[1]);
  }
  std::size_t parse_size(std::string_view s) const {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("expected an integer");
    return v;
  }
  std::vector<double> numbers(std::string_view text, std::size_t expected) const {
    auto f = detail::split_whitespace(text);
    if (f.size() != expected) fail(fmt::format("expected {} numbers, found {}", expected, f.size()));
    std::vector<double> out(expected);
    for (std::size_t i = 0; i < expected; ++i) {
      auto [p, ec] = std::from_chars(f[i].data(), f[i].data() + f[i].size(), out[i]);
      if (ec != std::errc() || p != f[i].data() + f[i].size()) fail("invalid number");
    }
    return out;
  }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t lineno_ = 0;
};

}  // namespace

void save_topic_fit(const TopicModelFit& fit, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  const std::size_t V = fit.vocabulary().size();
  out << kMagic << ' ' << kVersion << '\n';
  out << "k " << fit.k() << '\n';
  out << "slices " << fit.slices().size() << '\n';
  out << "vocab " << V << '\n';
  for (const auto& w : fit.vocabulary().words()) {
    if (w.find_first_of("\n\r") != std::string::npos) {
      throw ContractError("vocabulary word contains a line break");
    }
    out << w << '\n';
  }
  for (std::size_t s = 0; s < fit.slices().size(); ++s) {
    const auto& sl = fit.slices()[s];
    out << "slice " << s << " bin " << sl.bin << " docs " << sl.doc_ids.size() << '\n';
    out << "phi\n";
    for (std::size_t o = 0; o < fit.k(); ++o) write_row(out, fit.phi(s, o));
    out << "theta\n";
    for (std::size_t d = 0; d < sl.doc_ids.size(); ++d) {
      if (sl.doc_ids[d].find_first_of("\t\n\r") != std::string::npos) {
        throw ContractError("document id contains a tab or line break");
      }
      out << sl.doc_ids[d] << '\t';
      write_row(out, std::span<const double>(sl.theta).subspan(d * fit.k(), fit.k()));
    }
  }
}

TopicModelFit load_topic_fit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open topic fit '{}'", path.string()));
  LineReader r(in, path.string());
  {
    auto header = r.next();
    auto f = detail::split_whitespace(header);
    if (f.size() != 2 || f[0] != kMagic) r.fail("not a topic fit file");
    if (r.parse_size(f[1]) != kVersion) r.fail("unsupported topic fit version");
  }
  const std::size_t k = r.keyword("k");
  const std::size_t n_slices = r.keyword("slices");
  const std::size_t V = r.keyword("vocab");
  std::vector<std::string> words;
  words.reserve(V);
  for (std::size_t i = 0; i < V; ++i) words.push_back(r.next());
  Vocabulary vocab(words);
  if (vocab.size() != V || vocab.words() != words) r.fail("vocabulary is not sorted and unique");

  std::vector<SliceFit> slices;
  for (std::size_t s = 0; s < n_slices; ++s) {
    auto head = r.next();
    auto f = detail::split_whitespace(head);
    if (f.size() != 6 || f[0] != "slice" || f[2] != "bin" || f[4] != "docs") {
      r.fail("expected 'slice S bin B docs N'");
    }
    SliceFit sl;
    sl.bin = r.parse_size(f[3]);
    const std::size_t n_docs = r.parse_size(f[5]);
    if (r.next() != "phi") r.fail("expected 'phi'");
    for (std::size_t o = 0; o < k; ++o) {
      auto row = r.numbers(r.next(), V);
      sl.phi.insert(sl.phi.end(), row.begin(), row.end());
    }
    if (r.next() != "theta") r.fail("expected 'theta'");
    for (std::size_t d = 0; d < n_docs; ++d) {
      auto line = r.next();
      auto tab = line.find('\t');
      if (tab == std::string::npos) r.fail("theta row without document id");
      sl.doc_ids.push_back(line.substr(0, tab));
      auto row = r.numbers(std::string_view(line).substr(tab + 1), k);
      sl.theta.insert(sl.theta.end(), row.begin(), row.end());
    }
    slices.push_back(std::move(sl));
  }
  return TopicModelFit(k, std::move(vocab), std::move(slices));
}

}  // namespace moralsrc
