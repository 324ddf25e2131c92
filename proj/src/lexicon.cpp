#include "moralsrc/lexicon.hpp"

#include <fstream>
#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "text_util.hpp"

namespace moralsrc {

namespace {

constexpr std::array<std::string_view, kFoundationCount> kFoundationNames = {
    "care",    "harm",     "fairness",  "cheating",   "loyalty",
    "betrayal", "authority", "subversion", "sanctity", "degradation",
};

}  // namespace

std::array<Foundation, 5> foundations_of(Polarity p) {
  std::array<Foundation, 5> out{};
  std::size_t n = 0;
  for (Foundation f : kAllFoundations) {
    if (polarity_of(f) == p) out[n++] = f;
  }
  return out;
}

std::string_view to_string(Foundation f) { return kFoundationNames[static_cast<std::size_t>(f)]; }

std::string_view to_string(Polarity p) { return p == Polarity::virtue ? "virtue" : "vice"; }

std::optional<Foundation> parse_foundation(std::string_view s) {
  for (std::size_t i = 0; i < kFoundationCount; ++i) {
    if (kFoundationNames[i] == s) return static_cast<Foundation>(i);
  }
  if (s == "purity") return Foundation::sanctity;
  return std::nullopt;
}

MoralDimension parse_dimension(std::string_view s) {
  if (s == "relevant" || s == "relevance") return MoralDimension::relevant();
  if (s == "irrelevant") return MoralDimension::irrelevant();
  if (s == "virtue" || s == "polarity") return MoralDimension::of(Polarity::virtue);
  if (s == "vice") return MoralDimension::of(Polarity::vice);
  if (auto f = parse_foundation(s)) return MoralDimension::of(*f);
  throw ConfigError(fmt::format("unknown moral dimension '{}'", s));
}

std::string to_string(const MoralDimension& m) {
  switch (m.tier) {
    case Tier::relevance:
      return m.label == 0 ? "relevant" : "irrelevant";
    case Tier::polarity:
      return std::string(to_string(m.polarity()));
    case Tier::foundation:
      return std::string(to_string(m.foundation()));
  }
  return {};
}

std::vector<MoralDimension> standard_dimensions() {
  std::vector<MoralDimension> out{MoralDimension::relevant(), MoralDimension::of(Polarity::virtue)};
  for (Foundation f : kAllFoundations) out.push_back(MoralDimension::of(f));
  return out;
}

SeedLexicon parse_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open lexicon file '{}'", path.string()));

  SeedLexicon lex;
  bool saw_neutral = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto fields = detail::split_char(trimmed, '\t');
    if (fields.size() != 2) {
      throw FormatError(fmt::format("{}:{}: expected 'token<TAB>category'", path.string(), lineno));
    }
    std::string token = detail::to_lower_utf8(detail::trim(fields[0]));
    std::string_view category = detail::trim(fields[1]);
    if (token.empty()) throw FormatError(fmt::format("{}:{}: empty token", path.string(), lineno));

    if (category == "neutral") {
      lex.neutral_seeds.insert(std::move(token));
      saw_neutral = true;
      continue;
    }
    std::string_view base = category;
    std::string_view suffix;
    if (auto dot = category.find('.'); dot != std::string_view::npos) {
      base = category.substr(0, dot);
      suffix = category.substr(dot + 1);
    }
    auto f = parse_foundation(base);
    if (!f) {
      throw FormatError(
          fmt::format("{}:{}: unknown category '{}'", path.string(), lineno, std::string(category)));
    }
    if (!suffix.empty()) {
      if (suffix != "virtue" && suffix != "vice") {
        throw FormatError(fmt::format("{}:{}: unknown category suffix '{}'", path.string(), lineno,
                                      std::string(suffix)));
      }
      if (suffix != to_string(polarity_of(*f))) {
        throw FormatError(fmt::format("{}:{}: '{}' is a {} foundation, not {}", path.string(),
                                      lineno, to_string(*f), to_string(polarity_of(*f)),
                                      std::string(suffix)));
      }
    }
    lex.foundation_seeds[static_cast<std::size_t>(*f)].insert(std::move(token));
  }

  if (!saw_neutral) {
    for (const auto& w : default_neutral_words()) {
      bool moral = false;
      for (const auto& s : lex.foundation_seeds) moral = moral || s.count(w) > 0;
      if (!moral) lex.neutral_seeds.insert(w);
    }
  }
  validate_lexicon(lex);
  return lex;
}

void load_neutral_words(SeedLexicon& lex, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open neutral word list '{}'", path.string()));
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.insert(detail::to_lower_utf8(t));
  }
  lex.neutral_seeds = std::move(words);
  validate_lexicon(lex);
}

void validate_lexicon(const SeedLexicon& lex) {
  std::vector<std::string> missing;
  for (Foundation f : kAllFoundations) {
    if (lex.seeds(f).empty()) missing.emplace_back(to_string(f));
  }
  if (!missing.empty()) {
    throw ConfigError(fmt::format("lexicon has no seeds for: {}", fmt::join(missing, ", ")));
  }
  if (lex.neutral_seeds.empty()) throw ConfigError("lexicon has no neutral seeds");
  for (const auto& w : lex.neutral_seeds) {
    for (Foundation f : kAllFoundations) {
      if (lex.seeds(f).count(w)) {
        throw FormatError(
            fmt::format("token '{}' is listed as both neutral and {}", w, to_string(f)));
      }
    }
  }
}

CentroidSet build_centroids(const SeedLexicon& lex, const WordEmbeddingStore& emb) {
  validate_lexicon(lex);
  CentroidSet out;

  auto resolve = [&](const std::set<std::string>& seeds, std::string_view label) {
    std::vector<const Vector*> vs;
    for (const auto& w : seeds) {
      if (const Vector* v = emb.find(w)) {
        vs.push_back(v);
      } else {
        spdlog::warn("lexicon seed '{}' ({}) not in embedding vocabulary, skipped", w, label);
        ++out.skipped_seeds;
      }
    }
    if (vs.empty()) {
      throw ConfigError(fmt::format("no lexicon seed for '{}' is in the embedding vocabulary", label));
    }
    return vs;
  };

  std::vector<const Vector*> all_moral, virtue, vice;
  for (Foundation f : kAllFoundations) {
    auto vs = resolve(lex.seeds(f), to_string(f));
    out.foundation[static_cast<std::size_t>(f)] = mean_vector(std::span<const Vector* const>(vs));
    auto& pool = polarity_of(f) == Polarity::virtue ? virtue : vice;
    pool.insert(pool.end(), vs.begin(), vs.end());
    all_moral.insert(all_moral.end(), vs.begin(), vs.end());
  }
  auto neutral = resolve(lex.neutral_seeds, "neutral");

  // Pooled (token-weighted) means. A token seeded under several foundations
  // counts once per foundation.
  out.moral = mean_vector(std::span<const Vector* const>(all_moral));
  out.virtue = mean_vector(std::span<const Vector* const>(virtue));
  out.vice = mean_vector(std::span<const Vector* const>(vice));
  out.neutral = mean_vector(std::span<const Vector* const>(neutral));
  if (out.skipped_seeds > 0) {
    spdlog::info("{} lexicon seeds skipped (not in embedding vocabulary)", out.skipped_seeds);
  }
  return out;
}

}  // namespace moralsrc
