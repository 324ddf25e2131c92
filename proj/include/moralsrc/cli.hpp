#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moralsrc {

// Fully resolved run configuration (defaults < config file < flags).
struct RunConfig {
  std::string command;

  std::string corpus;
  std::string embeddings;
  std::string lexicon;
  std::string aliases;
  std::string stopwords;  // empty: bundled list
  std::string neutral;    // empty: lexicon rows or bundled list
  std::string output_dir = ".";
  std::string fit;        // trace: reuse a saved topic fit
  std::optional<std::size_t> embedding_dim;

  std::string bin_width = "week";
  std::string range_start;
  std::string range_end;
  std::vector<std::string> entities;
  std::vector<std::string> dimensions;

  std::size_t window_size = 7;
  std::size_t window_step = 3;
  std::size_t permutations = 1000;
  double p_threshold = 0.05;
  double max_missing = 0.2;

  std::size_t topics = 10;
  std::optional<double> topic_alpha;
  double topic_beta = 0.01;
  std::size_t gibbs_iterations = 1000;
  double chain_strength = 0.5;
  bool average_theta = false;
  std::size_t salient_words = 10;

  double source_fraction = 0.10;
  std::size_t influence_samples = 10000;
  double significance = 0.05;
  bool baselines = true;

  std::vector<std::string> variants;
  bool graded = false;
  std::vector<std::string> docs;  // coherence subcommand

  std::uint64_t seed = 1;
  unsigned threads = 1;

  // key -> value for every setting that influences results (excludes
  // output_dir and threads).
  std::map<std::string, std::string> canonical() const;
  std::string hash() const;  // 16 hex digits of FNV-1a over canonical()
};

// Entry point shared by the executable and the tests. Returns the exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace moralsrc
