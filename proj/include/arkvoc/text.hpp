#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace arkvoc {

/// Lowercase, punctuation to spaces, whitespace collapsed, trimmed.
/// ASCII letters are lowercased; non-ASCII letters pass through unchanged,
/// while Unicode punctuation and spaces (general punctuation, Latin-1
/// symbols, CJK punctuation) become spaces.
std::string normalize_label(std::string_view s);

/// Splits normalized text into words.
std::vector<std::string> tokenize(std::string_view text);

/// Built-in English stopword list, sorted.
const std::vector<std::string_view>& stopwords();
bool is_stopword(std::string_view word) noexcept;

}  // namespace arkvoc
