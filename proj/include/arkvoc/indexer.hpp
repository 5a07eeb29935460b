#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arkvoc/vocabulary.hpp"

namespace arkvoc {

struct Candidate {
  std::string phrase;
  std::size_t count = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Word n-grams (1..max_n) of the normalized text that neither start nor end
/// with a stopword, ordered by count desc then phrase asc.
std::vector<Candidate> extract_candidates(std::string_view text, std::size_t max_n = 3);

struct Match {
  std::string term_name;
  std::string ark;
  std::string pref_label;
  std::string matched_label;  // normalized phrase that produced the best score
  std::size_t phrase_length = 0;
  std::size_t count = 0;
  std::uint64_t score = 0;

  friend bool operator==(const Match&, const Match&) = default;
};

struct IndexResult {
  std::string document_id;
  std::string vocabulary_id;
  std::vector<Match> matches;  // score desc, then term name

  friend bool operator==(const IndexResult&, const IndexResult&) = default;
};

struct IndexOptions {
  std::size_t max_n = 3;
  std::size_t top_k = 10;
};

/// One result per vocabulary, in input order.
std::vector<IndexResult> index(std::string_view text, const std::vector<const Vocabulary*>& vocabularies,
                               const IndexOptions& options = {}, std::string_view document_id = {});

struct Document {
  std::string id;
  std::string text;
};

/// Indexes every document against every vocabulary. Result `i * V + j` is
/// document i against vocabulary j. Documents are processed in parallel.
std::vector<IndexResult> index_corpus(const std::vector<Document>& documents,
                                      const std::vector<const Vocabulary*>& vocabularies,
                                      const IndexOptions& options = {});
/// Single-threaded reference for index_corpus.
std::vector<IndexResult> index_corpus_serial(const std::vector<Document>& documents,
                                             const std::vector<const Vocabulary*>& vocabularies,
                                             const IndexOptions& options = {});

/// Union of several results for the same vocabulary: counts and scores add.
IndexResult merge_results(const std::vector<IndexResult>& results);

/// Exact ratio; `empty` marks a zero denominator (value defined as 0).
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  bool empty() const noexcept { return denominator == 0; }
  double value() const noexcept {
    return empty() ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  /// Rational equality, e.g. 2/4 == 1/2.
  bool equals(std::uint64_t num, std::uint64_t den) const noexcept;
};

struct DriftReport {
  std::string kind;  // "exclusive" or "absence"
  Ratio fraction;
  std::vector<std::string> terms;  // pref labels, sorted
};

/// Fraction of A's matched terms whose normalized pref_label is matched by
/// no term in B.
DriftReport drift_exclusive(const IndexResult& a, const IndexResult& b);
/// Fraction of A's matched terms whose normalized pref_label equals no
/// preferred or alternate label of `vocab_b`.
DriftReport drift_vocab_absence(const IndexResult& a, const Vocabulary& vocab_b);

std::string drift_anvl(const DriftReport& report);

/// `doc \t vocab \t ark \t label \t count \t score` per match.
std::string results_lines(const std::vector<IndexResult>& results);
std::string results_json(const std::vector<IndexResult>& results);

}  // namespace arkvoc
