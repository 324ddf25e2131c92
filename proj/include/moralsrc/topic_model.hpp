#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moralsrc/random.hpp"

namespace moralsrc {

struct TopicModelConfig {
  std::size_t k = 10;
  std::optional<double> alpha;  // default 50 / k
  double beta = 0.01;
  std::size_t gibbs_iterations = 1000;
  // Weight of slice s's topic-word counts in slice s+1's prior, with the
  // counts rescaled to slice s+1's token volume. 0 fits slices independently.
  double chain_strength = 0.5;
  std::uint64_t seed = 1;
  // Average theta over the second half of the chain instead of taking the
  // final iteration's counts.
  bool average_theta = false;

  double alpha_value() const { return alpha.value_or(50.0 / static_cast<double>(k)); }
  void validate() const;
};

struct TopicDoc {
  std::string id;
  std::vector<std::string> tokens;
};

struct TopicSliceInput {
  std::size_t bin = 0;
  std::vector<TopicDoc> docs;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  // Sorted, deduplicated.
  explicit Vocabulary(std::vector<std::string> words);
  static Vocabulary from_slices(std::span<const TopicSliceInput> slices);

  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }
  std::optional<std::size_t> id(std::string_view w) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Collapsed Gibbs sampler for LDA on one slice, with an arbitrary (k x V)
// Dirichlet prior on the topic-word distributions.
class GibbsSampler {
 public:
  GibbsSampler(std::vector<std::vector<std::size_t>> docs, std::size_t vocab_size, std::size_t k,
               double alpha, std::vector<double> topic_word_prior, std::uint64_t seed);

  void sweep();

  std::size_t k() const { return k_; }
  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t total_tokens() const { return total_tokens_; }
  std::size_t doc_topic(std::size_t d, std::size_t o) const { return n_dk_[d * k_ + o]; }
  std::size_t topic_word(std::size_t o, std::size_t w) const { return n_kw_[o * vocab_size_ + w]; }
  std::size_t topic_total(std::size_t o) const { return n_k_[o]; }
  std::size_t num_docs() const { return docs_.size(); }

  // (n_ow + prior_ow) / (n_o + sum_w prior_ow), row-major k x V.
  std::vector<double> phi() const;
  // (n_do + alpha) / (N_d + k alpha), row-major D x k.
  std::vector<double> theta() const;

 private:
  std::vector<std::vector<std::size_t>> docs_;
  std::vector<std::vector<std::size_t>> z_;
  std::size_t vocab_size_;
  std::size_t k_;
  double alpha_;
  std::vector<double> prior_;        // k x V
  std::vector<double> prior_total_;  // k
  std::vector<std::size_t> n_dk_, n_kw_, n_k_;
  std::size_t total_tokens_ = 0;
  Rng rng_;
  std::vector<double> weights_;
};

struct SliceFit {
  std::size_t bin = 0;
  std::vector<std::string> doc_ids;
  std::vector<double> phi;    // k x V
  std::vector<double> theta;  // docs x k
};

class TopicModelFit {
 public:
  TopicModelFit() = default;
  TopicModelFit(std::size_t k, Vocabulary vocab, std::vector<SliceFit> slices);

  std::size_t k() const { return k_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::vector<SliceFit>& slices() const { return slices_; }

  std::span<const double> phi(std::size_t slice, std::size_t topic) const;
  // P(topic = . | d); nullopt when the document is not part of the fit.
  std::optional<std::span<const double>> theta(std::string_view doc_id) const;
  // Slice index for a time bin, if that bin was modelled.
  std::optional<std::size_t> slice_for_bin(std::size_t bin) const;

 private:
  std::size_t k_ = 0;
  Vocabulary vocab_;
  std::vector<SliceFit> slices_;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> doc_index_;
};

// Chained per-slice LDA. Slice s is sampled with seed derive_seed(cfg.seed, s).
TopicModelFit fit_dynamic_topics(std::span<const TopicSliceInput> slices,
                                 const TopicModelConfig& cfg);

// One slice against a given vocabulary and optional carried-over counts prior.
// Exposed so callers can refit a single slice.
SliceFit fit_topic_slice(const TopicSliceInput& slice, const Vocabulary& vocab,
                         const TopicModelConfig& cfg, std::span<const double> extra_prior,
                         std::uint64_t stream_seed,
                         std::vector<double>* topic_word_counts_out = nullptr);

// Top-n words of a topic in a slice; ties by lexicographic order.
std::vector<std::string> salient_words(const TopicModelFit& fit, std::size_t slice,
                                       std::size_t topic, std::size_t n);

void save_topic_fit(const TopicModelFit& fit, const std::filesystem::path& path);
TopicModelFit load_topic_fit(const std::filesystem::path& path);

}  // namespace moralsrc
