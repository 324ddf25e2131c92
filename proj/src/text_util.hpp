#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moralsrc::detail {

std::vector<std::string_view> split_whitespace(std::string_view s);
std::vector<std::string_view> split_char(std::string_view s, char sep);
std::string_view trim(std::string_view s);

// Unicode-aware lowercasing of UTF-8 text. Invalid byte sequences are kept verbatim.
std::string to_lower_utf8(std::string_view s);

// Lowercase, split on whitespace, strip leading/trailing punctuation from each token.
std::vector<std::string> tokenize(std::string_view text);

// Split raw text into sentences at '.', '!' or '?' followed by whitespace,
// then tokenize each. Empty sentences are dropped.
std::vector<std::vector<std::string>> tokenize_sentences(std::string_view text);

}  // namespace moralsrc::detail
