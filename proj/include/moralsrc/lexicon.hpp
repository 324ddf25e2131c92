#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "moralsrc/embedding_store.hpp"

namespace moralsrc {

// Declaration order is the tie-break order used by the classifier.
enum class Foundation {
  care,
  harm,
  fairness,
  cheating,
  loyalty,
  betrayal,
  authority,
  subversion,
  sanctity,
  degradation,
};
inline constexpr std::size_t kFoundationCount = 10;

enum class Polarity { virtue, vice };

inline constexpr std::array<Foundation, kFoundationCount> kAllFoundations = {
    Foundation::care,      Foundation::harm,       Foundation::fairness, Foundation::cheating,
    Foundation::loyalty,   Foundation::betrayal,   Foundation::authority, Foundation::subversion,
    Foundation::sanctity,  Foundation::degradation,
};

// Care(+)/Harm(-), Fairness(+)/Cheating(-), Loyalty(+)/Betrayal(-),
// Authority(+)/Subversion(-), Sanctity(+)/Degradation(-).
constexpr Polarity polarity_of(Foundation f) {
  return static_cast<int>(f) % 2 == 0 ? Polarity::virtue : Polarity::vice;
}

// The opposite member of the virtue/vice pair.
constexpr Foundation paired_foundation(Foundation f) {
  int i = static_cast<int>(f);
  return static_cast<Foundation>(i % 2 == 0 ? i + 1 : i - 1);
}

// The five foundations of one polarity, in declaration order.
std::array<Foundation, 5> foundations_of(Polarity p);

std::string_view to_string(Foundation f);
std::string_view to_string(Polarity p);
std::optional<Foundation> parse_foundation(std::string_view s);

enum class Tier { relevance, polarity, foundation };

// One moral dimension m: a label on one tier of the hierarchy.
struct MoralDimension {
  Tier tier = Tier::relevance;
  // relevance: 0 = relevant, 1 = irrelevant; polarity: Polarity; foundation: Foundation.
  int label = 0;

  static MoralDimension relevant() { return {Tier::relevance, 0}; }
  static MoralDimension irrelevant() { return {Tier::relevance, 1}; }
  static MoralDimension of(Polarity p) { return {Tier::polarity, static_cast<int>(p)}; }
  static MoralDimension of(Foundation f) { return {Tier::foundation, static_cast<int>(f)}; }

  Polarity polarity() const { return static_cast<Polarity>(label); }
  Foundation foundation() const { return static_cast<Foundation>(label); }

  friend bool operator==(const MoralDimension&, const MoralDimension&) = default;
};

// "relevant", "irrelevant", "virtue", "vice" or a foundation name.
// "relevance" and "polarity" are accepted as aliases of "relevant" and "virtue".
MoralDimension parse_dimension(std::string_view s);
std::string to_string(const MoralDimension& m);

// relevant, virtue, then the ten foundations.
std::vector<MoralDimension> standard_dimensions();

struct SeedLexicon {
  std::array<std::set<std::string>, kFoundationCount> foundation_seeds;
  std::set<std::string> neutral_seeds;

  const std::set<std::string>& seeds(Foundation f) const {
    return foundation_seeds[static_cast<std::size_t>(f)];
  }
};

// Lexicon TSV: "token<TAB>category" per line, '#' comments. When the file
// has no neutral rows the bundled neutral list is used.
SeedLexicon parse_lexicon(const std::filesystem::path& path);

// Replaces the neutral seeds with a one-token-per-line word list.
void load_neutral_words(SeedLexicon& lex, const std::filesystem::path& path);

// Throws FormatError/ConfigError when the invariants do not hold.
void validate_lexicon(const SeedLexicon& lex);

const std::vector<std::string>& default_neutral_words();
const std::vector<std::string>& default_stopwords();

struct CentroidSet {
  Vector moral;
  Vector neutral;
  Vector virtue;
  Vector vice;
  std::array<Vector, kFoundationCount> foundation;
  // Seeds that were not in the embedding vocabulary.
  std::size_t skipped_seeds = 0;

  const Vector& of(Foundation f) const { return foundation[static_cast<std::size_t>(f)]; }
  const Vector& of(Polarity p) const { return p == Polarity::virtue ? virtue : vice; }
  std::size_t dimension() const { return moral.size(); }
};

CentroidSet build_centroids(const SeedLexicon& lex, const WordEmbeddingStore& emb);

}  // namespace moralsrc
