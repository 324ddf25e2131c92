#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moralsrc/embedding_store.hpp"
#include "moralsrc/lexicon.hpp"

namespace moralsrc {

using TimePoint = std::chrono::sys_seconds;
using TokenSet = std::set<std::string, std::less<>>;

struct Annotation {
  std::string annotator;
  std::vector<std::string> labels;  // foundation names or "non-moral"
};

struct Document {
  std::string id;
  TimePoint timestamp{};
  std::vector<std::vector<std::string>> sentences;  // lowercase tokens
  std::optional<std::vector<std::string>> headline_tokens;
  std::optional<std::string> topic_label;
  std::vector<Annotation> annotations;
  std::optional<Vector> precomputed_vector;

  std::size_t token_count() const;
};

enum class BinWidth { day, week, month };
BinWidth parse_bin_width(std::string_view s);
std::string_view to_string(BinWidth w);

struct TimeBin {
  std::size_t index = 0;
  TimePoint start{};
  TimePoint end{};  // exclusive
};

struct CorpusOptions {
  BinWidth bin_width = BinWidth::week;
  // Declared range. Unset bounds default to the earliest timestamp (floored to
  // the bin boundary) and the latest timestamp.
  std::optional<TimePoint> range_start;
  std::optional<TimePoint> range_end;
};

// Documents plus the partition of the corpus range into time bins.
class Corpus {
 public:
  Corpus(std::vector<Document> docs, const CorpusOptions& opts);

  const std::vector<Document>& documents() const { return docs_; }
  const std::vector<TimeBin>& bins() const { return bins_; }
  // Indices into documents(), in input order.
  const std::vector<std::size_t>& members(std::size_t bin) const { return members_[bin]; }
  std::size_t bin_of(std::size_t doc_index) const { return bin_of_[doc_index]; }
  const Document* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;
  BinWidth bin_width() const { return width_; }

 private:
  std::vector<Document> docs_;
  std::vector<TimeBin> bins_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> bin_of_;
  std::unordered_map<std::string, std::size_t> by_id_;
  BinWidth width_;
};

// One JSON object per line; see README for the record schema.
Corpus ingest_corpus(const std::filesystem::path& path, const CorpusOptions& opts);

// Parses a single record line. Exposed for tests.
Document parse_record(std::string_view json_line);

// ISO-8601 date or date-time (Z or numeric offset). Throws FormatError.
TimePoint parse_timestamp(std::string_view s);
std::string format_timestamp(TimePoint t);  // YYYY-MM-DDTHH:MM:SSZ
std::string format_date(TimePoint t);       // YYYY-MM-DD

TimePoint floor_to_bin(TimePoint t, BinWidth w);
TimePoint advance_bin(TimePoint t, BinWidth w);

struct EntityQuery {
  std::string canonical_name;
  std::vector<std::vector<std::string>> aliases;  // lowercase token sequences

  // Union of all alias tokens.
  TokenSet alias_tokens() const;
};

// Lowercases and tokenizes names; the canonical name is always an alias.
EntityQuery make_entity(std::string_view canonical, const std::vector<std::string>& aliases = {});

// "canonical<TAB>alias1<TAB>alias2..." per line.
std::vector<EntityQuery> load_aliases(const std::filesystem::path& path);

// Keeps only the sentences that contain an alias as a contiguous token run.
std::optional<Document> entity_filter(const Document& doc, const EntityQuery& e);

TokenSet load_token_set(const std::filesystem::path& path);
TokenSet default_stopword_set();

struct VectorizeOptions {
  // Return the record's precomputed vector when it has one.
  bool use_precomputed = true;
  // Drop words whose relevance-tier probability is below 0.5.
  bool drop_irrelevant_words = true;
};

// Mean embedding of the surviving tokens of an entity-filtered document.
std::optional<Vector> vectorize(const Document& filtered, const EntityQuery& e,
                                const WordEmbeddingStore& emb, const CentroidSet& centroids,
                                const TokenSet& stopwords, const VectorizeOptions& opts = {});

// Tokens eligible for topic modelling: everything but stopwords and alias tokens.
std::vector<std::string> topic_tokens(const Document& filtered, const EntityQuery& e,
                                      const TokenSet& stopwords);

}  // namespace moralsrc
