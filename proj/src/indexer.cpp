#include "arkvoc/indexer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "arkvoc/anvl.hpp"
#include "arkvoc/text.hpp"
#include "json.hpp"

namespace arkvoc {

std::vector<Candidate> extract_candidates(std::string_view text, std::size_t max_n) {
  const auto words = tokenize(text);
  std::map<std::string, std::size_t> counts;
  std::string phrase;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (is_stopword(words[i])) continue;
    phrase.clear();
    for (std::size_t n = 1; n <= max_n && i + n <= words.size(); ++n) {
      const auto& last = words[i + n - 1];
      if (n > 1) phrase += ' ';
      phrase += last;
      if (!is_stopword(last)) ++counts[phrase];
    }
  }
  std::vector<Candidate> out;
  out.reserve(counts.size());
  for (auto& [p, c] : counts) out.push_back({p, c});
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.count > b.count; });
  return out;
}

namespace {

std::size_t word_count(std::string_view phrase) {
  return phrase.empty() ? 0 : static_cast<std::size_t>(std::count(phrase.begin(), phrase.end(), ' ')) + 1;
}

void sort_matches(std::vector<Match>& matches) {
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term_name < b.term_name;
  });
}

IndexResult index_one(const std::vector<Candidate>& candidates, const Vocabulary& v, const IndexOptions& options,
                      std::string_view document_id) {
  struct Acc {
    Match match;
    std::uint64_t best = 0;
  };
  std::map<std::string, Acc> acc;
  const auto& label_index = v.label_index();
  for (const auto& c : candidates) {
    const auto hit = label_index.find(c.phrase);
    if (hit == label_index.end()) continue;
    const auto len = word_count(c.phrase);
    const auto contribution = static_cast<std::uint64_t>(c.count) * len;
    for (const auto& name : hit->second) {
      auto& a = acc[name];
      if (a.match.count == 0) {
        const Term& t = *v.get_term(name);
        a.match.term_name = name;
        a.match.ark = v.term_ark(name);
        a.match.pref_label = t.pref_label;
      }
      a.match.count += c.count;
      a.match.score += contribution;
      if (contribution > a.best || (contribution == a.best && c.phrase < a.match.matched_label)) {
        a.best = contribution;
        a.match.matched_label = c.phrase;
        a.match.phrase_length = len;
      }
    }
  }
  IndexResult result{std::string(document_id), v.id, {}};
  result.matches.reserve(acc.size());
  for (auto& [name, a] : acc) result.matches.push_back(std::move(a.match));
  sort_matches(result.matches);
  if (options.top_k > 0 && result.matches.size() > options.top_k) result.matches.resize(options.top_k);
  return result;
}

}  // namespace

std::vector<IndexResult> index(std::string_view text, const std::vector<const Vocabulary*>& vocabularies,
                               const IndexOptions& options, std::string_view document_id) {
  const auto candidates = extract_candidates(text, options.max_n);
  std::vector<IndexResult> out;
  out.reserve(vocabularies.size());
  for (const auto* v : vocabularies) out.push_back(index_one(candidates, *v, options, document_id));
  return out;
}

std::vector<IndexResult> index_corpus(const std::vector<Document>& documents,
                                      const std::vector<const Vocabulary*>& vocabularies,
                                      const IndexOptions& options) {
  const auto vcount = vocabularies.size();
  std::vector<IndexResult> out(documents.size() * vcount);
  const auto n = static_cast<std::ptrdiff_t>(documents.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& doc = documents[static_cast<std::size_t>(i)];
    auto results = index(doc.text, vocabularies, options, doc.id);
    for (std::size_t j = 0; j < vcount; ++j) out[static_cast<std::size_t>(i) * vcount + j] = std::move(results[j]);
  }
  return out;
}

std::vector<IndexResult> index_corpus_serial(const std::vector<Document>& documents,
                                             const std::vector<const Vocabulary*>& vocabularies,
                                             const IndexOptions& options) {
  std::vector<IndexResult> out;
  out.reserve(documents.size() * vocabularies.size());
  for (const auto& doc : documents) {
    for (auto& r : index(doc.text, vocabularies, options, doc.id)) out.push_back(std::move(r));
  }
  return out;
}

IndexResult merge_results(const std::vector<IndexResult>& results) {
  IndexResult merged;
  if (results.empty()) return merged;
  merged.vocabulary_id = results.front().vocabulary_id;
  std::vector<std::string> ids;
  std::map<std::string, std::pair<Match, std::uint64_t>> acc;
  for (const auto& r : results) {
    ids.push_back(r.document_id);
    for (const auto& m : r.matches) {
      auto [it, fresh] = acc.try_emplace(m.term_name, m, m.score);
      if (fresh) continue;
      auto& [into, best] = it->second;
      into.count += m.count;
      into.score += m.score;
      if (m.score > best) {
        best = m.score;
        into.matched_label = m.matched_label;
        into.phrase_length = m.phrase_length;
      }
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) merged.document_id += (i ? "+" : "") + ids[i];
  for (auto& [name, entry] : acc) merged.matches.push_back(std::move(entry.first));
  sort_matches(merged.matches);
  return merged;
}

bool Ratio::equals(std::uint64_t num, std::uint64_t den) const noexcept {
  if (den == 0 || denominator == 0) return den == denominator && num == numerator;
  return static_cast<unsigned __int128>(numerator) * den == static_cast<unsigned __int128>(num) * denominator;
}

namespace {

// normalized pref label -> display pref label, over distinct terms of a result
std::map<std::string, std::string> matched_keys(const IndexResult& r) {
  std::map<std::string, std::string> keys;
  for (const auto& m : r.matches) keys.emplace(normalize_label(m.pref_label), m.pref_label);
  return keys;
}

DriftReport fill(std::string kind, const std::map<std::string, std::string>& a_keys, auto&& missing) {
  DriftReport report{std::move(kind), {0, a_keys.size()}, {}};
  for (const auto& [key, label] : a_keys) {
    if (missing(key)) {
      ++report.fraction.numerator;
      report.terms.push_back(label);
    }
  }
  std::sort(report.terms.begin(), report.terms.end());
  return report;
}

}  // namespace

DriftReport drift_exclusive(const IndexResult& a, const IndexResult& b) {
  const auto b_keys = matched_keys(b);
  return fill("exclusive", matched_keys(a), [&](const std::string& key) { return !b_keys.contains(key); });
}

DriftReport drift_vocab_absence(const IndexResult& a, const Vocabulary& vocab_b) {
  const auto& index = vocab_b.label_index();
  return fill("absence", matched_keys(a), [&](const std::string& key) { return !index.contains(key); });
}

std::string drift_anvl(const DriftReport& report) {
  std::string out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", report.fraction.value());
  anvl::append_field(out, "drift", report.kind);
  anvl::append_field(out, "numerator", std::to_string(report.fraction.numerator));
  anvl::append_field(out, "denominator", std::to_string(report.fraction.denominator));
  anvl::append_field(out, "fraction", buf);
  anvl::append_field(out, "empty", report.fraction.empty() ? "true" : "false");
  for (const auto& t : report.terms) anvl::append_field(out, "term", t);
  return out;
}

std::string results_lines(const std::vector<IndexResult>& results) {
  std::string out;
  for (const auto& r : results) {
    for (const auto& m : r.matches) {
      out += r.document_id + '\t' + r.vocabulary_id + '\t' + m.ark + '\t' + m.pref_label + '\t' +
             std::to_string(m.count) + '\t' + std::to_string(m.score) + '\n';
    }
  }
  return out;
}

std::string results_json(const std::vector<IndexResult>& results) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json jr;
    jr["document"] = r.document_id;
    jr["vocabulary"] = r.vocabulary_id;
    jr["matches"] = nlohmann::ordered_json::array();
    for (const auto& m : r.matches) {
      nlohmann::ordered_json jm;
      jm["term"] = m.term_name;
      jm["ark"] = m.ark;
      jm["label"] = m.pref_label;
      jm["matched"] = m.matched_label;
      jm["length"] = m.phrase_length;
      jm["count"] = m.count;
      jm["score"] = m.score;
      jr["matches"].push_back(std::move(jm));
    }
    arr.push_back(std::move(jr));
  }
  return arr.dump(2) + "\n";
}

}  // namespace arkvoc
