#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace moralsrc {

using Vector = std::vector<double>;

// Immutable token -> vector table of fixed dimension.
class WordEmbeddingStore {
 public:
  explicit WordEmbeddingStore(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }

  // nullptr when the token is not in the vocabulary.
  const Vector* find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token) != nullptr; }

  // Inserts or replaces. Throws ContractError on wrong size or non-finite values.
  void insert(std::string token, Vector v);

  // Tokens in lexicographic order.
  std::vector<std::string> tokens() const;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::size_t dimension_;
  std::unordered_map<std::string, Vector, Hash, std::equal_to<>> entries_;
};

// Plain-text embedding format: optional "COUNT DIM" header, then
// "token v1 ... vDIM" per line. Duplicate tokens: the last one wins.
WordEmbeddingStore load_embeddings(const std::filesystem::path& path,
                                   std::optional<std::size_t> expected_dimension = {});

// Writes a header line and every entry (sorted by token) with round-trip precision.
void save_embeddings(const WordEmbeddingStore& store, const std::filesystem::path& path);

// Cosine similarity; 0 when either vector has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Componentwise arithmetic mean of a nonempty list of equal-size vectors.
Vector mean_vector(std::span<const Vector> vs);
Vector mean_vector(std::span<const Vector* const> vs);

}  // namespace moralsrc
