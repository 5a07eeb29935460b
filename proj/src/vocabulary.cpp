#include "arkvoc/vocabulary.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "arkvoc/anvl.hpp"
#include "arkvoc/ark.hpp"
#include "arkvoc/error.hpp"
#include "arkvoc/text.hpp"
#include "json.hpp"

namespace arkvoc {

using nlohmann::json;

namespace {

constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
constexpr std::string_view kDctSource = "http://purl.org/dc/terms/source";

std::string required_string(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw Error(Errc::invalid_document, std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw Error(Errc::invalid_document, std::string("'") + key + "' must be an array");
  for (const auto& v : *it) {
    if (!v.is_string()) throw Error(Errc::invalid_document, std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

struct RawTerm {
  std::optional<std::string> name;
  std::string pref_label;
  std::vector<std::string> alt_labels, notes, broader, narrower, related, sources;
};

}  // namespace

class VocabularyBuilder {
 public:
  static void insert(Vocabulary& v, Term t) {
    for (const auto& label : t.alt_labels) index_label(v, label, t.name);
    index_label(v, t.pref_label, t.name);
    auto name = t.name;
    v.terms_.emplace(std::move(name), std::move(t));
  }

 private:
  static void index_label(Vocabulary& v, std::string_view label, const std::string& name) {
    auto key = normalize_label(label);
    if (!key.empty()) v.label_index_[std::move(key)].insert(name);
  }
};

std::string Vocabulary::term_ark(std::string_view name) const {
  std::string out = "ark:/";
  out += naan;
  out += '/';
  out += shoulder;
  out += subspace;
  out += '/';
  out += name;
  return out;
}

const Term* Vocabulary::get_term(std::string_view name) const noexcept {
  const auto it = terms_.find(std::string(name));
  return it == terms_.end() ? nullptr : &it->second;
}

std::vector<const Term*> Vocabulary::find_by_label(std::string_view label) const {
  std::vector<const Term*> out;
  const auto it = label_index_.find(normalize_label(label));
  if (it == label_index_.end()) return out;
  for (const auto& name : it->second) out.push_back(&terms_.at(name));
  return out;
}

LoadResult load_vocabulary(std::string_view document, MinterState* minter) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_document, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::invalid_document, "top level must be an object");

  LoadResult result;
  auto& v = result.vocabulary;
  v.id = required_string(doc, "id");
  v.title = doc.contains("title") ? required_string(doc, "title") : v.id;
  v.naan = required_string(doc, "naan");
  v.shoulder = required_string(doc, "shoulder");
  v.subspace = doc.contains("subspace") ? required_string(doc, "subspace") : std::string{};
  if (v.id.empty()) throw Error(Errc::invalid_document, "empty id");
  if (v.naan.empty() || !std::all_of(v.naan.begin(), v.naan.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(Errc::invalid_document, "naan '" + v.naan + "' is not a digit string");
  if (v.shoulder.empty() || !is_betanumeric(v.shoulder) || !is_betanumeric(v.subspace))
    throw Error(Errc::invalid_name, "shoulder/subspace '" + v.shoulder + v.subspace + "' is not betanumeric");

  std::vector<RawTerm> raw;
  if (const auto it = doc.find("terms"); it != doc.end()) {
    if (!it->is_array()) throw Error(Errc::invalid_document, "'terms' must be an array");
    for (const auto& t : *it) {
      if (!t.is_object()) throw Error(Errc::invalid_document, "term entries must be objects");
      RawTerm r;
      if (t.contains("name") && !t["name"].is_null()) r.name = required_string(t, "name");
      r.pref_label = required_string(t, "pref_label");
      if (r.pref_label.empty()) throw Error(Errc::invalid_document, "empty pref_label");
      r.alt_labels = string_list(t, "alt_labels");
      r.notes = string_list(t, "notes");
      r.broader = string_list(t, "broader");
      r.narrower = string_list(t, "narrower");
      r.related = string_list(t, "related");
      r.sources = string_list(t, "sources");
      raw.push_back(std::move(r));
    }
  }

  std::map<std::string, std::size_t> by_label;
  std::set<std::string> names;
  std::vector<std::size_t> unnamed;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!by_label.emplace(raw[i].pref_label, i).second)
      throw Error(Errc::duplicate_pref_label, "'" + raw[i].pref_label + "'");
    if (raw[i].name) {
      const auto& n = *raw[i].name;
      if (n.empty() || !is_betanumeric(n)) throw Error(Errc::invalid_name, "'" + n + "' for '" + raw[i].pref_label + "'");
      if (!names.insert(n).second) throw Error(Errc::duplicate_explicit_name, "'" + n + "'");
    } else {
      unnamed.push_back(i);
    }
  }

  if (!unnamed.empty()) {
    if (minter == nullptr)
      throw Error(Errc::minter_required, std::to_string(unnamed.size()) + " term(s) without a name");
    std::sort(unnamed.begin(), unnamed.end(),
              [&](std::size_t a, std::size_t b) { return raw[a].pref_label < raw[b].pref_label; });
    for (auto i : unnamed) {
      std::string name;
      do {
        name = mint_next(*minter);
      } while (names.contains(name));
      names.insert(name);
      raw[i].name = std::move(name);
    }
  }

  for (const auto& r : raw) {
    Term t;
    t.name = *r.name;
    t.pref_label = r.pref_label;
    t.alt_labels = r.alt_labels;
    t.notes = r.notes;
    t.sources = r.sources;
    auto resolve = [&](const std::vector<std::string>& labels, std::vector<TermReference>& out, const char* kind) {
      for (const auto& label : labels) {
        if (label == r.pref_label) {
          result.warnings.push_back("term '" + r.pref_label + "': dropped " + kind + " self-reference");
          continue;
        }
        TermReference ref{label, std::nullopt};
        if (const auto hit = by_label.find(label); hit != by_label.end()) {
          ref.target = *raw[hit->second].name;
        } else {
          result.warnings.push_back("term '" + r.pref_label + "': dangling " + kind + " reference '" + label + "'");
        }
        out.push_back(std::move(ref));
      }
    };
    resolve(r.broader, t.broader, "broader");
    resolve(r.narrower, t.narrower, "narrower");
    resolve(r.related, t.related, "related");
    VocabularyBuilder::insert(v, std::move(t));
  }
  return result;
}

LoadResult load_vocabulary_file(const std::string& path, MinterState* minter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot read vocabulary " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_vocabulary(buf.str(), minter);
}

std::string to_document(const Vocabulary& v) {
  nlohmann::ordered_json doc;
  doc["id"] = v.id;
  doc["title"] = v.title;
  doc["naan"] = v.naan;
  doc["shoulder"] = v.shoulder;
  doc["subspace"] = v.subspace;
  doc["terms"] = nlohmann::ordered_json::array();
  auto labels = [](const std::vector<TermReference>& refs) {
    std::vector<std::string> out;
    for (const auto& r : refs) out.push_back(r.label);
    return out;
  };
  for (const auto& [name, t] : v.terms()) {
    nlohmann::ordered_json j;
    j["name"] = t.name;
    j["pref_label"] = t.pref_label;
    if (!t.alt_labels.empty()) j["alt_labels"] = t.alt_labels;
    if (!t.notes.empty()) j["notes"] = t.notes;
    if (!t.broader.empty()) j["broader"] = labels(t.broader);
    if (!t.narrower.empty()) j["narrower"] = labels(t.narrower);
    if (!t.related.empty()) j["related"] = labels(t.related);
    if (!t.sources.empty()) j["sources"] = t.sources;
    doc["terms"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string term_record(const Vocabulary& v, const Term& t) {
  std::string out;
  anvl::append_field(out, "ark", v.term_ark(t.name));
  anvl::append_field(out, "label", t.pref_label);
  for (const auto& a : t.alt_labels) anvl::append_field(out, "alternate", a);
  for (const auto& n : t.notes) anvl::append_field(out, "note", n);
  auto links = [&](const std::vector<TermReference>& refs, std::string_view key) {
    for (const auto& r : refs) anvl::append_field(out, key, r.resolved() ? v.term_ark(*r.target) : r.label);
  };
  links(t.broader, "broader");
  links(t.narrower, "narrower");
  links(t.related, "related");
  for (const auto& s : t.sources) anvl::append_field(out, "source", s);
  anvl::append_field(out, "vocabulary", v.title);
  return out;
}

std::string ntriples_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string linked_data(const Vocabulary& v, std::string_view resolver_host) {
  const std::string base = "https://" + std::string(resolver_host) + "/";
  std::vector<std::string> lines;
  for (const auto& [name, t] : v.terms()) {
    const std::string subject = "<" + base + v.term_ark(name) + ">";
    auto literal = [&](std::string_view predicate, std::string_view value) {
      lines.push_back(subject + " <" + std::string(predicate) + "> \"" + ntriples_escape(value) + "\" .");
    };
    auto skos = [](std::string_view local) { return std::string(kSkos) + std::string(local); };
    auto links = [&](const std::vector<TermReference>& refs, std::string_view local) {
      for (const auto& r : refs) {
        if (r.resolved()) {
          lines.push_back(subject + " <" + skos(local) + "> <" + base + v.term_ark(*r.target) + "> .");
        } else {
          literal(skos(local), r.label);
        }
      }
    };
    literal(skos("prefLabel"), t.pref_label);
    for (const auto& a : t.alt_labels) literal(skos("altLabel"), a);
    for (const auto& n : t.notes) literal(skos("note"), n);
    links(t.broader, "broader");
    links(t.narrower, "narrower");
    links(t.related, "related");
    for (const auto& s : t.sources) literal(kDctSource, s);
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace arkvoc
