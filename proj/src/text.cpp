#include "arkvoc/text.hpp"

#include <algorithm>

namespace arkvoc {

namespace {

bool punctuation_codepoint(char32_t cp) {
  if (cp >= 0x80 && cp <= 0xBF) return cp != 0xAA && cp != 0xB5 && cp != 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return true;
  if (cp >= 0x2000 && cp <= 0x206F) return true;
  if (cp >= 0x3000 && cp <= 0x303F) return true;
  if (cp == 0xFEFF) return true;
  return false;
}

// Length of the UTF-8 sequence at `s[i]` and its code point; 0 if invalid.
std::size_t decode(std::string_view s, std::size_t i, char32_t& cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if ((b0 & 0xE0) == 0xC0) {
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
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  return len;
}

constexpr std::string_view kStopwords[] = {
    "a",     "about", "above", "after",  "again", "against", "all",   "am",    "an",    "and",
    "any",   "are",   "as",    "at",     "be",    "because", "been",  "before", "being", "below",
    "between", "both", "but",  "by",     "can",   "could",   "did",   "do",    "does",  "doing",
    "down",  "during", "each", "few",    "for",   "from",    "further", "had", "has",   "have",
    "having", "he",   "her",   "here",   "hers",  "herself", "him",   "himself", "his", "how",
    "i",     "if",    "in",    "into",   "is",    "it",      "its",   "itself", "just", "me",
    "more",  "most",  "my",    "myself", "no",    "nor",     "not",   "now",   "of",    "off",
    "on",    "once",  "only",  "or",     "other", "our",     "ours",  "ourselves", "out", "over",
    "own",   "same",  "she",   "should", "so",    "some",    "such",  "than",  "that",  "the",
    "their", "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those",
    "through", "to",  "too",   "under",  "until", "up",      "upon",  "very",  "was",   "we",
    "were",  "what",  "when",  "where",  "which", "while",   "who",   "whom",  "why",   "will",
    "with",  "would", "you",   "your",   "yours", "yourself", "yourselves",
};

}  // namespace

std::string normalize_label(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  auto emit = [&](std::string_view bytes) {
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += bytes;
  };

  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
        emit(std::string_view(&s[i], 1));
      } else if (c >= 'A' && c <= 'Z') {
        const char lower = static_cast<char>(c - 'A' + 'a');
        emit(std::string_view(&lower, 1));
      } else {
        pending_space = true;
      }
      ++i;
      continue;
    }
    char32_t cp = 0;
    const auto len = decode(s, i, cp);
    if (len == 0) {
      pending_space = true;
      ++i;
    } else {
      if (punctuation_codepoint(cp)) {
        pending_space = true;
      } else {
        emit(s.substr(i, len));
      }
      i += len;
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  const auto normalized = normalize_label(text);
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    auto end = normalized.find(' ', pos);
    if (end == std::string::npos) end = normalized.size();
    words.emplace_back(normalized.substr(pos, end - pos));
    pos = end + 1;
  }
  return words;
}

const std::vector<std::string_view>& stopwords() {
  static const std::vector<std::string_view> list = [] {
    std::vector<std::string_view> v(std::begin(kStopwords), std::end(kStopwords));
    std::sort(v.begin(), v.end());
    return v;
  }();
  return list;
}

bool is_stopword(std::string_view word) noexcept {
  const auto& list = stopwords();
  return std::binary_search(list.begin(), list.end(), word);
}

}  // namespace arkvoc
