#include "text_util.hpp"

#include <cctype>
#include <clocale>
#include <cwctype>
#include <locale.h>
#include <wctype.h>

namespace moralsrc::detail {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Decodes one UTF-8 code point at s[i]; returns its byte length or 0 if invalid.
std::size_t decode_utf8(std::string_view s, std::size_t i, char32_t& cp) {
  auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  return len;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// A private UTF-8 ctype locale so the process-global locale is never touched.
locale_t utf8_locale() {
  static locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
    if (!l) l = newlocale(LC_CTYPE_MASK, "C", static_cast<locale_t>(0));
    return l;
  }();
  return loc;
}

char32_t lower_cp(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), utf8_locale()));
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  return iswpunct_l(static_cast<wint_t>(cp), utf8_locale()) != 0;
}

}  // namespace

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_char(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string to_lower_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(s, i, cp);
    if (len == 0) {
      out.push_back(s[i]);
      ++i;
      continue;
    }
    encode_utf8(lower_cp(cp), out);
    i += len;
  }
  return out;
}

namespace {

std::string strip_punct(std::string_view tok) {
  // Collect code point boundaries, then drop punctuation from both ends.
  std::vector<std::pair<std::size_t, std::size_t>> cps;  // (offset, length)
  std::vector<bool> punct;
  std::size_t i = 0;
  while (i < tok.size()) {
    char32_t cp;
    std::size_t len = decode_utf8(tok, i, cp);
    if (len == 0) {
      cps.emplace_back(i, 1);
      punct.push_back(false);
      ++i;
      continue;
    }
    cps.emplace_back(i, len);
    punct.push_back(is_punct_cp(cp));
    i += len;
  }
  std::size_t b = 0, e = cps.size();
  while (b < e && punct[b]) ++b;
  while (e > b && punct[e - 1]) --e;
  if (b == e) return {};
  std::size_t from = cps[b].first;
  std::size_t to = cps[e - 1].first + cps[e - 1].second;
  return std::string(tok.substr(from, to - from));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::string lower = to_lower_utf8(text);
  std::vector<std::string> out;
  for (auto piece : split_whitespace(lower)) {
    std::string t = strip_punct(piece);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<std::string>> tokenize_sentences(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    auto toks = tokenize(text.substr(start, end - start));
    if (!toks.empty()) out.push_back(std::move(toks));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '.' || c == '!' || c == '?') && i + 1 < text.size() && is_space(text[i + 1])) {
      flush(i + 1);
      start = i + 1;
    }
  }
  if (start < text.size()) flush(text.size());
  return out;
}

}  // namespace moralsrc::detail
