#pragma once

// Test-only oracles. Nothing here calls into the code paths it checks.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#ifndef ARKVOC_FIXTURE_DIR
#error "ARKVOC_FIXTURE_DIR must be defined"
#endif

namespace oracle {

inline std::string fixture(std::string_view name) { return std::string(ARKVOC_FIXTURE_DIR) + "/" + std::string(name); }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const std::string kAlphabet = "0123456789bcdfghjkmnpqrstvwxz";

/// Direct evaluation of the weighted mod-29 check character.
inline char check_char(const std::string& s) {
  long long sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto pos = kAlphabet.find(s[i]);
    const long long v = pos == std::string::npos ? 0 : static_cast<long long>(pos);
    sum += static_cast<long long>(i + 1) * v;
  }
  return kAlphabet[static_cast<std::size_t>(sum % 29)];
}

/// One N-Triples statement: IRI subject, IRI predicate, IRI or plain literal
/// object, terminated by " .".
inline bool valid_ntriples_line(const std::string& line) {
  static const std::regex iri(R"(<[^<>"{}|^`\\\x00-\x20]+>)");
  static const std::regex literal(R"("(?:[^"\\\n\r]|\\[tbnrf"'\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*")");
  static const std::regex statement(R"(^(<[^>]*>) (<[^>]*>) (<[^>]*>|"(?:[^"\\]|\\.)*") \.$)");
  std::smatch m;
  if (!std::regex_match(line, m, statement)) return false;
  const auto object = m[3].str();
  return std::regex_match(m[1].str(), iri) && std::regex_match(m[2].str(), iri) &&
         (std::regex_match(object, iri) || std::regex_match(object, literal));
}

/// Lowercase ASCII, every non-alphanumeric ASCII byte a separator.
inline std::string simple_normalize(const std::string& s) {
  std::string out;
  bool space = false;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) {
      if (space && !out.empty()) out += ' ';
      space = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      space = true;
    }
  }
  return out;
}

inline std::size_t words_in(const std::string& s) {
  return s.empty() ? 0 : static_cast<std::size_t>(std::count(s.begin(), s.end(), ' ')) + 1;
}

inline std::size_t occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

struct OracleTerm {
  std::string name;
  std::vector<std::string> labels;  // preferred first
};

/// Naive matcher: whole-word substring search of every normalized label in
/// the normalized document. A label counts when it has 1..max_n words and
/// neither its first nor its last word is a stopword.
inline std::map<std::string, std::size_t> naive_matches(const std::string& text, const std::vector<OracleTerm>& terms,
                                                        std::size_t max_n, const std::set<std::string>& stopwords) {
  const auto doc = " " + simple_normalize(text) + " ";
  std::map<std::string, std::size_t> out;
  for (const auto& t : terms) {
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto& raw : t.labels) {
      const auto label = simple_normalize(raw);
      if (label.empty() || !seen.insert(label).second) continue;
      const auto n = words_in(label);
      if (n > max_n) continue;
      const auto first = label.substr(0, label.find(' '));
      const auto last = label.substr(label.rfind(' ') + 1);
      if (stopwords.contains(first) || stopwords.contains(last)) continue;
      total += occurrences(doc, " " + label + " ");
    }
    if (total > 0) out[t.name] = total;
  }
  return out;
}

}  // namespace oracle
