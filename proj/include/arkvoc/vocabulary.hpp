#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arkvoc/minter.hpp"

namespace arkvoc {

/// A link to another term. `target` is set once the label resolved to a term
/// name in the same vocabulary; otherwise the reference dangles.
struct TermReference {
  std::string label;
  std::optional<std::string> target;

  bool resolved() const noexcept { return target.has_value(); }
  friend bool operator==(const TermReference&, const TermReference&) = default;
};

struct Term {
  std::string name;
  std::string pref_label;
  std::vector<std::string> alt_labels;
  std::vector<std::string> notes;
  std::vector<TermReference> broader;
  std::vector<TermReference> narrower;
  std::vector<TermReference> related;
  std::vector<std::string> sources;

  friend bool operator==(const Term&, const Term&) = default;
};

class Vocabulary {
 public:
  std::string id;
  std::string title;
  std::string naan;
  std::string shoulder;
  std::string subspace;

  const std::map<std::string, Term>& terms() const noexcept { return terms_; }
  const std::map<std::string, std::set<std::string>>& label_index() const noexcept {
    return label_index_;
  }

  /// `<shoulder><subspace>`, the assigned name shared by all terms.
  std::string assigned_name() const { return shoulder + subspace; }
  /// `ark:/<naan>/<shoulder><subspace>/<name>`.
  std::string term_ark(std::string_view name) const;

  const Term* get_term(std::string_view name) const noexcept;
  std::vector<const Term*> find_by_label(std::string_view label) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  friend class VocabularyBuilder;
  std::map<std::string, Term> terms_;
  std::map<std::string, std::set<std::string>> label_index_;
};

struct LoadResult {
  Vocabulary vocabulary;
  std::vector<std::string> warnings;
};

/// Parses the JSON vocabulary document. Unnamed terms are minted in
/// ascending pref_label order; link labels resolve by exact pref_label.
/// Throws Error(duplicate_pref_label, duplicate_explicit_name, invalid_name,
/// invalid_document, minter_required).
LoadResult load_vocabulary(std::string_view document, MinterState* minter = nullptr);
LoadResult load_vocabulary_file(const std::string& path, MinterState* minter = nullptr);

/// JSON document with every term's assigned name filled in.
std::string to_document(const Vocabulary& v);

inline const Term* get_term(const Vocabulary& v, std::string_view name) noexcept {
  return v.get_term(name);
}
inline std::vector<const Term*> find_by_label(const Vocabulary& v, std::string_view label) {
  return v.find_by_label(label);
}

/// ANVL metadata record for one term.
std::string term_record(const Vocabulary& v, const Term& t);

/// Sorted N-Triples export with SKOS predicates.
std::string linked_data(const Vocabulary& v, std::string_view resolver_host = "n2t.net");

/// Escapes a string for use inside an N-Triples literal.
std::string ntriples_escape(std::string_view s);

}  // namespace arkvoc
