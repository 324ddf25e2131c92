#include <doctest.h>

#include <fstream>

#include <fmt/format.h>

#include "moralsrc/corpus.hpp"
#include "moralsrc/errors.hpp"
#include "synthetic.hpp"

using namespace moralsrc;
using moralsrc::testing::scratch_dir;

namespace {

std::filesystem::path write_corpus(const std::string& name, const std::string& body) {
  auto p = scratch_dir(name) / "corpus.jsonl";
  std::ofstream(p) << body;
  return p;
}

Document doc_of(std::vector<std::vector<std::string>> sentences) {
  Document d;
  d.id = "x";
  d.sentences = std::move(sentences);
  return d;
}

CentroidSet two_d_centroids() {
  CentroidSet c;
  c.moral = {1, 0};
  c.neutral = {-1, 0};
  c.virtue = {1, 1};
  c.vice = {1, -1};
  for (auto& f : c.foundation) f = {1, 0};
  return c;
}

}  // namespace

TEST_CASE("weekly binning puts records 7 days apart in consecutive bins") {
  auto p = write_corpus("corpus_bins",
                        R"({"id":"a","timestamp":"2021-03-01T10:00:00Z","text":"Hello world."})" "\n"
                        R"({"id":"b","timestamp":"2021-03-08T10:00:00Z","text":"Again."})" "\n");
  auto c = ingest_corpus(p, {});
  REQUIRE(c.bins().size() == 2);
  CHECK(c.members(0) == std::vector<std::size_t>{0});
  CHECK(c.members(1) == std::vector<std::size_t>{1});
  CHECK(c.bins()[1].start - c.bins()[0].start == std::chrono::days{7});
}

TEST_CASE("bins partition the corpus") {
  std::string body;
  for (int i = 0; i < 40; ++i) {
    body += fmt::format(R"({{"id":"d{}","timestamp":"2021-0{}-{:02}T0{}:00:00+02:00","text":"x"}})" "\n", i,
                        1 + i % 3, 1 + (i * 7) % 28, i % 10);
  }
  for (auto width : {BinWidth::day, BinWidth::week, BinWidth::month}) {
    CorpusOptions o;
    o.bin_width = width;
    auto c = ingest_corpus(write_corpus("corpus_partition", body), o);
    std::size_t total = 0;
    for (std::size_t b = 0; b < c.bins().size(); ++b) {
      for (auto i : c.members(b)) {
        CHECK(c.bin_of(i) == b);
        CHECK(c.documents()[i].timestamp >= c.bins()[b].start);
        CHECK(c.documents()[i].timestamp < c.bins()[b].end);
      }
      total += c.members(b).size();
    }
    CHECK(total == 40);
  }
}

TEST_CASE("pre-tokenized records are used verbatim apart from lowercasing") {
  auto d = parse_record(
      R"({"id":"t","timestamp":"2021-01-01","tokens":[["Obama","spoke,"],["rain"]],"headline_tokens":["h1"]})");
  REQUIRE(d.sentences.size() == 2);
  CHECK(d.sentences[0] == std::vector<std::string>{"obama", "spoke,"});
  CHECK(d.headline_tokens == std::vector<std::string>{"h1"});
}

TEST_CASE("raw text is split into sentences and punctuation-stripped tokens") {
  auto d = parse_record(R"({"id":"t","timestamp":"2021-01-01","text":"Obama spoke! Rain fell, slowly."})");
  REQUIRE(d.sentences.size() == 2);
  CHECK(d.sentences[0] == std::vector<std::string>{"obama", "spoke"});
  CHECK(d.sentences[1] == std::vector<std::string>{"rain", "fell", "slowly"});
}

TEST_CASE("record errors") {
  try {
    parse_record(R"({"id":"bad1","timestamp":"not-a-date","text":"x"})");
    FAIL("expected RecordError");
  } catch (const RecordError& e) {
    CHECK(e.id() == "bad1");
    CHECK(std::string(e.what()).find("bad1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_record(R"({"id":"b","timestamp":"2021-01-01","text":"x","tokens":[["x"]]})"),
                  RecordError);
  auto dup = write_corpus("corpus_dup", R"({"id":"a","timestamp":"2021-01-01","text":"x"})" "\n"
                                        R"({"id":"a","timestamp":"2021-01-02","text":"y"})" "\n");
  CHECK_THROWS_AS(ingest_corpus(dup, {}), FormatError);
}

TEST_CASE("timestamps with offsets normalise to UTC") {
  CHECK(format_timestamp(parse_timestamp("2020-02-29T23:30:00-01:00")) == "2020-03-01T00:30:00Z");
  CHECK(format_timestamp(parse_timestamp("2020-02-29")) == "2020-02-29T00:00:00Z");
  CHECK_THROWS_AS(parse_timestamp("2020-02-30"), FormatError);
}

TEST_CASE("entity_filter keeps only mentioning sentences") {
  auto e = make_entity("Obama");
  auto d = doc_of({{"obama", "spoke"}, {"rain", "fell"}});
  auto f = entity_filter(d, e);
  REQUIRE(f);
  CHECK(f->sentences == std::vector<std::vector<std::string>>{{"obama", "spoke"}});
  CHECK(!entity_filter(doc_of({{"rain", "fell"}}), e));
}

TEST_CASE("overlapping aliases retain a sentence once") {
  auto e = make_entity("Obama", {"Barack Obama"});
  auto f = entity_filter(doc_of({{"barack", "obama", "spoke"}, {"no"}}), e);
  REQUIRE(f);
  CHECK(f->sentences.size() == 1);
  // alias tokens must be contiguous
  CHECK(!entity_filter(doc_of({{"barack", "spoke"}}), make_entity("Barack Obama")));
}

TEST_CASE("entity_filter is idempotent") {
  auto e = make_entity("Acme", {"acme corp"});
  auto d = doc_of({{"acme", "corp", "rose"}, {"x"}, {"the", "acme", "fell"}, {"acme"}});
  auto once = entity_filter(d, e);
  REQUIRE(once);
  auto twice = entity_filter(*once, e);
  REQUIRE(twice);
  CHECK(once->sentences == twice->sentences);
}

TEST_CASE("vectorize averages surviving tokens") {
  WordEmbeddingStore emb(2);
  emb.insert("kind", {1, 0});
  emb.insert("cruel", {0, 1});
  emb.insert("obama", {5, 5});
  auto e = make_entity("Obama");
  CentroidSet c = two_d_centroids();
  c.neutral = {-5, -5};
  TokenSet stop{"the"};
  VectorizeOptions o;
  o.drop_irrelevant_words = false;
  auto v = vectorize(doc_of({{"the", "obama", "kind", "cruel", "unknown"}}), e, emb, c, stop, o);
  REQUIRE(v);
  CHECK(*v == Vector{0.5, 0.5});
  CHECK(!vectorize(doc_of({{"the", "obama"}}), e, emb, c, stop, o));
}

TEST_CASE("words nearer the neutral centroid are excluded") {
  // moral centroid (1,0), neutral (-1,0): x > 0 is relevant.
  WordEmbeddingStore emb(2);
  emb.insert("kind", {2, 1});
  emb.insert("cruel", {0.5, -3});
  emb.insert("stone", {-0.25, 4});
  auto e = make_entity("Obama");
  auto c = two_d_centroids();
  auto v = vectorize(doc_of({{"obama", "kind", "cruel", "stone"}}), e, emb, c, {}, {});
  REQUIRE(v);
  // hand mean of kind and cruel only
  CHECK((*v)[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK((*v)[1] == doctest::Approx(-1.0).epsilon(1e-15));
  VectorizeOptions keep;
  keep.drop_irrelevant_words = false;
  auto all = vectorize(doc_of({{"obama", "kind", "cruel", "stone"}}), e, emb, c, {}, keep);
  CHECK((*all)[0] == doctest::Approx(2.25 / 3).epsilon(1e-15));
  CHECK((*all)[1] == doctest::Approx(2.0 / 3).epsilon(1e-15));
}

TEST_CASE("vectorize output lies in the convex hull of surviving tokens") {
  WordEmbeddingStore emb(3);
  emb.insert("a", {1, 2, 3});
  emb.insert("b", {4, -1, 0.5});
  emb.insert("c", {2, 2, 2});
  auto c = two_d_centroids();
  c.moral = {10, 0, 0};
  c.neutral = {-10, 0, 0};
  auto v = vectorize(doc_of({{"a", "b", "c"}}), make_entity("z"), emb, c, {}, {});
  REQUIRE(v);
  CHECK((*v)[0] >= 1);
  CHECK((*v)[0] <= 4);
  CHECK((*v)[1] >= -1);
  CHECK((*v)[1] <= 2);
}

TEST_CASE("precomputed vectors bypass filtering") {
  auto d = doc_of({{"the"}});
  d.precomputed_vector = Vector{0.1, 0.2};
  WordEmbeddingStore emb(2);
  auto v = vectorize(d, make_entity("z"), emb, two_d_centroids(), {"the"}, {});
  REQUIRE(v);
  CHECK(*v == Vector{0.1, 0.2});
}

TEST_CASE("alias files and token sets load") {
  auto dir = scratch_dir("corpus_alias");
  std::ofstream(dir / "a.tsv") << "# comment\nBarack Obama\tobama\tpotus\n\nAcme\n";
  auto es = load_aliases(dir / "a.tsv");
  REQUIRE(es.size() == 2);
  CHECK(es[0].canonical_name == "Barack Obama");
  CHECK(es[0].alias_tokens().count("potus") == 1);
  std::ofstream(dir / "s.txt") << "The\nof\n";
  CHECK(load_token_set(dir / "s.txt") == TokenSet{"of", "the"});
  CHECK(default_stopword_set().count("the") == 1);
}
