#include "moralsrc/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "moralsrc/moral_classifier.hpp"
#include "text_util.hpp"

namespace moralsrc {

using namespace std::chrono;
using json = nlohmann::json;

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

BinWidth parse_bin_width(std::string_view s) {
  if (s == "day") return BinWidth::day;
  if (s == "week") return BinWidth::week;
  if (s == "month") return BinWidth::month;
  throw ConfigError(fmt::format("unknown bin width '{}' (expected day, week or month)", s));
}

std::string_view to_string(BinWidth w) {
  switch (w) {
    case BinWidth::day:
      return "day";
    case BinWidth::week:
      return "week";
    case BinWidth::month:
      return "month";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Timestamps

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }

  int digits(std::size_t n) {
    if (pos + n > s.size()) throw FormatError("truncated timestamp");
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = s[pos + i];
      if (c < '0' || c > '9') throw FormatError("expected digit in timestamp");
      v = v * 10 + (c - '0');
    }
    pos += n;
    return v;
  }
  void expect(char c) {
    if (peek() != c) throw FormatError(fmt::format("expected '{}' in timestamp", c));
    ++pos;
  }
};

}  // namespace

TimePoint parse_timestamp(std::string_view text) {
  Cursor c{detail::trim(text)};
  try {
    int y = c.digits(4);
    c.expect('-');
    int mo = c.digits(2);
    c.expect('-');
    int d = c.digits(2);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw FormatError("invalid calendar date");
    seconds tod{0};
    if (!c.done()) {
      if (c.peek() != 'T' && c.peek() != 't' && c.peek() != ' ') throw FormatError("bad separator");
      ++c.pos;
      int hh = c.digits(2);
      c.expect(':');
      int mm = c.digits(2);
      int ss = 0;
      if (c.peek() == ':') {
        ++c.pos;
        ss = c.digits(2);
        if (c.peek() == '.' || c.peek() == ',') {
          ++c.pos;
          std::size_t start = c.pos;
          while (!c.done() && c.peek() >= '0' && c.peek() <= '9') ++c.pos;
          if (c.pos == start) throw FormatError("empty fraction");
        }
      }
      if (hh > 23 || mm > 59 || ss > 60) throw FormatError("time of day out of range");
      tod = hours{hh} + minutes{mm} + seconds{ss};
      if (!c.done()) {
        char z = c.peek();
        if (z == 'Z' || z == 'z') {
          ++c.pos;
        } else if (z == '+' || z == '-') {
          ++c.pos;
          int oh = c.digits(2);
          if (c.peek() == ':') ++c.pos;
          int om = c.digits(2);
          seconds off = hours{oh} + minutes{om};
          tod -= (z == '+') ? off : -off;
        } else {
          throw FormatError("bad zone designator");
        }
      }
    }
    if (!c.done()) throw FormatError("trailing characters");
    return TimePoint{sys_days{ymd}.time_since_epoch() + tod};
  } catch (const FormatError& e) {
    throw FormatError(fmt::format("unparseable timestamp '{}': {}", std::string(text), e.what()));
  }
}

std::string format_date(TimePoint t) {
  year_month_day ymd{floor<days>(t)};
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::string format_timestamp(TimePoint t) {
  auto dp = floor<days>(t);
  hh_mm_ss hms{t - dp};
  return fmt::format("{}T{:02}:{:02}:{:02}Z", format_date(t), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

TimePoint floor_to_bin(TimePoint t, BinWidth w) {
  auto d = floor<days>(t);
  if (w == BinWidth::month) {
    year_month_day ymd{d};
    return TimePoint{sys_days{ymd.year() / ymd.month() / 1}.time_since_epoch()};
  }
  return TimePoint{d.time_since_epoch()};
}

TimePoint advance_bin(TimePoint t, BinWidth w) {
  switch (w) {
    case BinWidth::day:
      return t + days{1};
    case BinWidth::week:
      return t + days{7};
    case BinWidth::month: {
      auto d = floor<days>(t);
      year_month_day ymd{d};
      auto next = ymd.year() / ymd.month() / ymd.day() + months{1};
      return TimePoint{sys_days{next}.time_since_epoch() + (t - TimePoint{d.time_since_epoch()})};
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Corpus

Corpus::Corpus(std::vector<Document> docs, const CorpusOptions& opts)
    : docs_(std::move(docs)), width_(opts.bin_width) {
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (!by_id_.emplace(docs_[i].id, i).second) {
      throw FormatError(fmt::format("duplicate document id '{}'", docs_[i].id));
    }
  }
  if (docs_.empty()) return;

  auto [lo, hi] = std::minmax_element(docs_.begin(), docs_.end(), [](const auto& a, const auto& b) {
    return a.timestamp < b.timestamp;
  });
  TimePoint start = floor_to_bin(opts.range_start.value_or(lo->timestamp), width_);
  TimePoint end = opts.range_end.value_or(hi->timestamp);
  if (end < start) throw ConfigError("corpus range end precedes its start");
  for (const auto& d : docs_) {
    if (d.timestamp < start || d.timestamp > end) {
      throw RecordError(d.id, fmt::format("timestamp {} outside the corpus range",
                                          format_timestamp(d.timestamp)));
    }
  }

  for (TimePoint b = start; b <= end; b = advance_bin(b, width_)) {
    bins_.push_back({bins_.size(), b, advance_bin(b, width_)});
  }
  members_.resize(bins_.size());
  bin_of_.resize(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    auto it = std::upper_bound(bins_.begin(), bins_.end(), docs_[i].timestamp,
                               [](TimePoint t, const TimeBin& b) { return t < b.start; });
    std::size_t bin = static_cast<std::size_t>(it - bins_.begin()) - 1;
    bin_of_[i] = bin;
    members_[bin].push_back(i);
  }
}

const Document* Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

std::optional<std::size_t> Corpus::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string> lower_tokens(const json& arr, const std::string& id, const char* field) {
  if (!arr.is_array()) throw RecordError(id, fmt::format("'{}' must be a list of strings", field));
  std::vector<std::string> out;
  for (const auto& t : arr) {
    if (!t.is_string()) throw RecordError(id, fmt::format("'{}' must be a list of strings", field));
    std::string tok = detail::to_lower_utf8(t.get<std::string>());
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace

Document parse_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError(fmt::format("invalid JSON record: {}", e.what()));
  }
  if (!j.is_object()) throw FormatError("corpus record is not an object");
  if (!j.contains("id") || !j["id"].is_string()) throw FormatError("record without string 'id'");

  Document doc;
  doc.id = j["id"].get<std::string>();
  if (!j.contains("timestamp") || !j["timestamp"].is_string()) {
    throw RecordError(doc.id, "missing 'timestamp'");
  }
  try {
    doc.timestamp = parse_timestamp(j["timestamp"].get<std::string>());
  } catch (const FormatError& e) {
    throw RecordError(doc.id, e.what());
  }

  const bool has_text = j.contains("text");
  const bool has_tokens = j.contains("tokens");
  if (has_text == has_tokens) throw RecordError(doc.id, "exactly one of 'text' or 'tokens' required");
  if (has_text) {
    if (!j["text"].is_string()) throw RecordError(doc.id, "'text' must be a string");
    doc.sentences = detail::tokenize_sentences(j["text"].get<std::string>());
  } else {
    const auto& t = j["tokens"];
    if (!t.is_array()) throw RecordError(doc.id, "'tokens' must be a list of sentences");
    for (const auto& sent : t) {
      auto toks = lower_tokens(sent, doc.id, "tokens");
      if (!toks.empty()) doc.sentences.push_back(std::move(toks));
    }
  }

  if (j.contains("headline") && j.contains("headline_tokens")) {
    throw RecordError(doc.id, "at most one of 'headline' or 'headline_tokens' allowed");
  }
  if (j.contains("headline")) {
    if (!j["headline"].is_string()) throw RecordError(doc.id, "'headline' must be a string");
    doc.headline_tokens = detail::tokenize(j["headline"].get<std::string>());
  } else if (j.contains("headline_tokens")) {
    doc.headline_tokens = lower_tokens(j["headline_tokens"], doc.id, "headline_tokens");
  }

  if (j.contains("topic_label")) {
    if (!j["topic_label"].is_string()) throw RecordError(doc.id, "'topic_label' must be a string");
    doc.topic_label = j["topic_label"].get<std::string>();
  }

  if (j.contains("annotations")) {
    const auto& a = j["annotations"];
    if (!a.is_array()) throw RecordError(doc.id, "'annotations' must be a list");
    for (const auto& entry : a) {
      if (!entry.is_object() || !entry.contains("labels")) {
        throw RecordError(doc.id, "annotation must be an object with 'labels'");
      }
      Annotation ann;
      if (entry.contains("annotator")) {
        if (!entry["annotator"].is_string()) throw RecordError(doc.id, "'annotator' must be a string");
        ann.annotator = entry["annotator"].get<std::string>();
      }
      ann.labels = lower_tokens(entry["labels"], doc.id, "labels");
      doc.annotations.push_back(std::move(ann));
    }
  }

  if (j.contains("vector")) {
    const auto& v = j["vector"];
    if (!v.is_array() || v.empty()) throw RecordError(doc.id, "'vector' must be a nonempty list");
    Vector vec;
    for (const auto& x : v) {
      if (!x.is_number()) throw RecordError(doc.id, "'vector' must contain numbers");
      vec.push_back(x.get<double>());
      if (!std::isfinite(vec.back())) throw RecordError(doc.id, "non-finite vector component");
    }
    doc.precomputed_vector = std::move(vec);
  }
  return doc;
}

Corpus ingest_corpus(const std::filesystem::path& path, const CorpusOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open corpus file '{}'", path.string()));
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    try {
      docs.push_back(parse_record(line));
    } catch (const RecordError&) {
      throw;
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("{}:{}: {}", path.string(), lineno, e.what()));
    }
  }
  spdlog::info("ingested {} documents from {}", docs.size(), path.string());
  return Corpus(std::move(docs), opts);
}

// ---------------------------------------------------------------------------
// Entities

TokenSet EntityQuery::alias_tokens() const {
  TokenSet out;
  for (const auto& a : aliases) out.insert(a.begin(), a.end());
  return out;
}

EntityQuery make_entity(std::string_view canonical, const std::vector<std::string>& aliases) {
  EntityQuery e;
  e.canonical_name = std::string(detail::trim(canonical));
  auto push = [&](std::vector<std::string> toks) {
    if (toks.empty()) return;
    if (std::find(e.aliases.begin(), e.aliases.end(), toks) == e.aliases.end()) {
      e.aliases.push_back(std::move(toks));
    }
  };
  // Both the verbatim lowercase form (matches pre-tokenized records, e.g.
  // hashtags) and the punctuation-stripped form (matches raw-text records).
  auto add = [&](std::string_view name) {
    std::vector<std::string> verbatim;
    for (auto piece : detail::split_whitespace(detail::to_lower_utf8(name))) {
      verbatim.emplace_back(piece);
    }
    push(std::move(verbatim));
    push(detail::tokenize(name));
  };
  add(canonical);
  for (const auto& a : aliases) add(a);
  if (e.aliases.empty()) throw ConfigError(fmt::format("entity '{}' has no usable alias", canonical));
  return e;
}

std::vector<EntityQuery> load_aliases(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open alias file '{}'", path.string()));
  std::vector<EntityQuery> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = detail::split_char(t, '\t');
    std::vector<std::string> aliases;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto a = detail::trim(fields[i]);
      if (!a.empty()) aliases.emplace_back(a);
    }
    out.push_back(make_entity(detail::trim(fields[0]), aliases));
  }
  return out;
}

std::optional<Document> entity_filter(const Document& doc, const EntityQuery& e) {
  auto mentions = [&](const std::vector<std::string>& sent) {
    for (const auto& alias : e.aliases) {
      if (alias.empty() || alias.size() > sent.size()) continue;
      if (std::search(sent.begin(), sent.end(), alias.begin(), alias.end()) != sent.end()) {
        return true;
      }
    }
    return false;
  };
  Document out = doc;
  out.sentences.clear();
  for (const auto& s : doc.sentences) {
    if (mentions(s)) out.sentences.push_back(s);
  }
  if (out.sentences.empty()) return std::nullopt;
  return out;
}

TokenSet load_token_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open word list '{}'", path.string()));
  TokenSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.insert(detail::to_lower_utf8(t));
  }
  return out;
}

TokenSet default_stopword_set() {
  const auto& w = default_stopwords();
  return TokenSet(w.begin(), w.end());
}

std::optional<Vector> vectorize(const Document& filtered, const EntityQuery& e,
                                const WordEmbeddingStore& emb, const CentroidSet& centroids,
                                const TokenSet& stopwords, const VectorizeOptions& opts) {
  if (opts.use_precomputed && filtered.precomputed_vector) return filtered.precomputed_vector;

  const TokenSet alias = e.alias_tokens();
  std::vector<const Vector*> kept;
  for (const auto& sent : filtered.sentences) {
    for (const auto& tok : sent) {
      if (stopwords.count(tok) || alias.count(tok)) continue;
      const Vector* v = emb.find(tok);
      if (!v) continue;
      if (opts.drop_irrelevant_words && classify_relevance(*v, centroids).relevant < 0.5) continue;
      kept.push_back(v);
    }
  }
  if (kept.empty()) return std::nullopt;
  return mean_vector(std::span<const Vector* const>(kept));
}

std::vector<std::string> topic_tokens(const Document& filtered, const EntityQuery& e,
                                      const TokenSet& stopwords) {
  const TokenSet alias = e.alias_tokens();
  std::vector<std::string> out;
  for (const auto& sent : filtered.sentences) {
    for (const auto& tok : sent) {
      if (!stopwords.count(tok) && !alias.count(tok)) out.push_back(tok);
    }
  }
  return out;
}

}  // namespace moralsrc
