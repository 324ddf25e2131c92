// Synthetic inputs shared by the unit and acceptance tests.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "moralsrc/topic_model.hpp"

namespace moralsrc::testing {

// A small embedding space with a moral axis, a virtue/vice axis, one axis
// per foundation pair and one headline direction per event topic.
struct WorldOptions {
  std::size_t bins = 30;
  std::size_t docs_per_topic = 10;
  std::size_t flip_bin = 15;  // topic A docs turn vice from this bin on
  bool flip = true;
  std::uint64_t seed = 1;
};

struct WorldFiles {
  std::filesystem::path dir;
  std::filesystem::path corpus;
  std::filesystem::path embeddings;
  std::filesystem::path lexicon;
  std::filesystem::path aliases;
  std::vector<std::string> topic_a_words;
  std::vector<std::string> topic_b_words;
};

WorldFiles write_world(const std::filesystem::path& dir, const WorldOptions& opts);

// Corpus sampled from two topics with disjoint 10-word vocabularies. Each
// document draws its topic mixture from a sparse Dirichlet.
struct LdaCorpus {
  std::vector<TopicSliceInput> slices;
  // Generator topic-word distributions as word -> probability.
  std::vector<std::map<std::string, double>> topics;
};

LdaCorpus generate_lda_corpus(std::uint64_t seed, std::size_t n_slices = 2, std::size_t docs_per_slice = 100,
                              std::size_t doc_length = 30);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::string read_file(const std::filesystem::path& p);

// Runs the CLI entry point with the given arguments (program name prepended).
int run(const std::vector<std::string>& args);

}  // namespace moralsrc::testing
