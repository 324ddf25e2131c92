#include "moralsrc/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "moralsrc/errors.hpp"
#include "text_util.hpp"

namespace moralsrc {

WordEmbeddingStore::WordEmbeddingStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ContractError("embedding dimension must be positive");
}

const Vector* WordEmbeddingStore::find(std::string_view token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

void WordEmbeddingStore::insert(std::string token, Vector v) {
  if (v.size() != dimension_) {
    throw ContractError(fmt::format("vector for '{}' has {} components, expected {}", token,
                                    v.size(), dimension_));
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw ContractError(fmt::format("non-finite component for '{}'", token));
  }
  entries_.insert_or_assign(std::move(token), std::move(v));
}

std::vector<std::string> WordEmbeddingStore::tokens() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool parse_unsigned(std::string_view s, std::size_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

WordEmbeddingStore load_embeddings(const std::filesystem::path& path,
                                   std::optional<std::size_t> expected_dimension) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open embeddings file '{}'", path.string()));

  std::optional<WordEmbeddingStore> store;
  std::optional<std::size_t> declared_count;
  std::size_t data_lines = 0;
  std::size_t duplicates = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = detail::split_whitespace(line);
    if (fields.empty()) continue;

    if (!store && lineno == 1 && fields.size() == 2) {
      std::size_t count = 0, dim = 0;
      if (parse_unsigned(fields[0], count) && parse_unsigned(fields[1], dim)) {
        if (dim == 0) throw FormatError(fmt::format("{}:1: header declares dimension 0", path.string()));
        store.emplace(dim);
        declared_count = count;
        continue;
      }
    }
    if (fields.size() < 2) {
      throw FormatError(fmt::format("{}:{}: token without components", path.string(), lineno));
    }
    if (!store) store.emplace(fields.size() - 1);
    if (fields.size() - 1 != store->dimension()) {
      throw FormatError(fmt::format("{}:{}: expected {} components, found {}", path.string(), lineno,
                                    store->dimension(), fields.size() - 1));
    }
    Vector v(store->dimension());
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto f = fields[i + 1];
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v[i]);
      if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(v[i])) {
        throw FormatError(
            fmt::format("{}:{}: invalid number '{}'", path.string(), lineno, std::string(f)));
      }
    }
    std::string token(fields[0]);
    if (store->contains(token)) {
      ++duplicates;
      spdlog::warn("{}:{}: duplicate token '{}', keeping the later vector", path.string(), lineno,
                   token);
    }
    store->insert(std::move(token), std::move(v));
    ++data_lines;
  }
  if (!store) throw FormatError(fmt::format("{}: no embedding entries", path.string()));
  if (declared_count && *declared_count != data_lines) {
    spdlog::warn("{}: header declares {} entries, found {}", path.string(), *declared_count,
                 data_lines);
  }
  if (expected_dimension && *expected_dimension != store->dimension()) {
    throw ConfigError(fmt::format("{}: embedding dimension {} does not match expected {}",
                                  path.string(), store->dimension(), *expected_dimension));
  }
  if (duplicates > 0) spdlog::warn("{}: {} duplicate tokens", path.string(), duplicates);
  return std::move(*store);
}

void save_embeddings(const WordEmbeddingStore& store, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  out << store.size() << ' ' << store.dimension() << '\n';
  for (const auto& tok : store.tokens()) {
    out << tok;
    for (double x : *store.find(tok)) out << ' ' << fmt::format("{}", x);
    out << '\n';
  }
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractError(fmt::format("cosine: dimension mismatch {} vs {}", a.size(), b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractError(fmt::format("distance: dimension mismatch {} vs {}", a.size(), b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

template <typename Get>
Vector mean_impl(std::size_t n, Get get) {
  if (n == 0) throw ContractError("mean_vector: empty input");
  const std::size_t dim = get(0).size();
  Vector sum(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& v = get(i);
    if (v.size() != dim) throw ContractError("mean_vector: dimension mismatch");
    for (std::size_t j = 0; j < dim; ++j) sum[j] += v[j];
  }
  for (double& x : sum) x /= static_cast<double>(n);
  return sum;
}

}  // namespace

Vector mean_vector(std::span<const Vector> vs) {
  return mean_impl(vs.size(), [&](std::size_t i) -> const Vector& { return vs[i]; });
}

Vector mean_vector(std::span<const Vector* const> vs) {
  return mean_impl(vs.size(), [&](std::size_t i) -> const Vector& { return *vs[i]; });
}

}  // namespace moralsrc
