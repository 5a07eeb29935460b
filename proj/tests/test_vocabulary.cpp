#include <sstream>

#include "arkvoc/anvl.hpp"
#include "arkvoc/error.hpp"
#include "arkvoc/text.hpp"
#include "arkvoc/vocabulary.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace arkvoc;

namespace {

std::string doc(const std::string& terms) {
  return R"({"id":"lcsh1910","title":"LCSH 1910","naan":"99152","shoulder":"b4","subspace":"1910","terms":[)" + terms +
         "]}";
}

Errc load_error(const std::string& text, MinterState* minter = nullptr) {
  try {
    load_vocabulary(text, minter);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a load error");
  return Errc::io_failure;
}

Vocabulary fixture() { return load_vocabulary(oracle::slurp(oracle::fixture("lcsh1910.json"))).vocabulary; }

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("load: related references resolve") {
  const auto loaded = load_vocabulary(oracle::slurp(oracle::fixture("lcsh1910.json")));
  CHECK(loaded.warnings.empty());
  const auto& v = loaded.vocabulary;
  CHECK(v.terms().size() == 5);
  const auto abbeys = v.find_by_label("Abbeys");
  REQUIRE(abbeys.size() == 1);
  REQUIRE(abbeys[0]->related.size() == 3);
  std::vector<std::string> targets;
  for (const auto& r : abbeys[0]->related) {
    REQUIRE(r.resolved());
    targets.push_back(v.get_term(*r.target)->pref_label);
  }
  CHECK(targets == std::vector<std::string>{"Cathedrals", "Convents", "Monasteries"});
  CHECK(v.term_ark("5p30086k") == "ark:/99152/b41910/5p30086k");
}

TEST_CASE("load: dangling references warn") {
  const auto loaded = load_vocabulary(doc(R"({"name":"b1","pref_label":"Abbeys","related":["Nonexistent"]})"));
  REQUIRE(loaded.warnings.size() == 1);
  const auto& t = *loaded.vocabulary.get_term("b1");
  REQUIRE(t.related.size() == 1);
  CHECK_FALSE(t.related[0].resolved());
  CHECK(t.related[0].label == "Nonexistent");
}

TEST_CASE("load: self references are dropped") {
  const auto loaded = load_vocabulary(doc(R"({"name":"b1","pref_label":"Abbeys","broader":["Abbeys"]})"));
  CHECK(loaded.warnings.size() == 1);
  CHECK(loaded.vocabulary.get_term("b1")->broader.empty());
}

TEST_CASE("load: unnamed terms are minted in label order") {
  auto minter = MinterState::sequential(MinterTemplate("dd"), "");
  const auto text = doc(R"({"pref_label":"Asylums"},{"pref_label":"Abbeys"})");
  const auto loaded = load_vocabulary(text, &minter);
  const auto& v = loaded.vocabulary;
  CHECK(v.find_by_label("Abbeys")[0]->name == "00");
  CHECK(v.find_by_label("Asylums")[0]->name == "01");
  CHECK(minter.counter == 2);

  auto again = MinterState::sequential(MinterTemplate("dd"), "");
  CHECK(load_vocabulary(text, &again).vocabulary == v);

  CHECK(load_error(text) == Errc::minter_required);
}

TEST_CASE("load: minted names skip explicit ones") {
  auto minter = MinterState::sequential(MinterTemplate("dd"), "");
  const auto loaded = load_vocabulary(doc(R"({"name":"00","pref_label":"Zebras"},{"pref_label":"Abbeys"})"), &minter);
  CHECK(loaded.vocabulary.find_by_label("Abbeys")[0]->name == "01");
}

TEST_CASE("load: errors") {
  CHECK(load_error(doc(R"({"name":"b1","pref_label":"A"},{"name":"b2","pref_label":"A"})")) == Errc::duplicate_pref_label);
  CHECK(load_error(doc(R"({"name":"b1","pref_label":"A"},{"name":"b1","pref_label":"B"})")) == Errc::duplicate_explicit_name);
  CHECK(load_error(doc(R"({"name":"lcsh","pref_label":"A"})")) == Errc::invalid_name);
  CHECK(load_error(doc(R"({"name":"b1","pref_label":""})")) == Errc::invalid_document);
  CHECK(load_error("{not json") == Errc::invalid_document);
  CHECK(load_error(R"({"id":"x","naan":"99152","shoulder":"lc"})") == Errc::invalid_name);
  CHECK(load_error(R"({"id":"x","naan":"9a","shoulder":"b4"})") == Errc::invalid_document);
}

TEST_CASE("get_term and find_by_label") {
  const auto v = fixture();
  for (const auto& [name, t] : v.terms()) CHECK(*get_term(v, name) == t);
  CHECK(get_term(v, "zzzz") == nullptr);
  CHECK(find_by_label(v, "abbeys").size() == 1);
  CHECK(find_by_label(v, "ABBEYS  ").size() == 1);
  CHECK(find_by_label(v, "priories")[0]->pref_label == "Abbeys");
  CHECK(find_by_label(v, "unknown").empty());

  const auto loaded = load_vocabulary(doc(R"({"name":"c2","pref_label":"Asylums"},{"name":"b1","pref_label":"Homes","alt_labels":["asylums"]})"));
  const auto both = loaded.vocabulary.find_by_label("Asylums");
  REQUIRE(both.size() == 2);
  CHECK(both[0]->name == "b1");
  CHECK(both[1]->name == "c2");
}

TEST_CASE("label index completeness") {
  const auto v = fixture();
  std::size_t pairs = 0;
  for (const auto& [label, names] : v.label_index()) pairs += names.size();
  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& [name, t] : v.terms()) {
    expected.emplace(normalize_label(t.pref_label), name);
    for (const auto& a : t.alt_labels) expected.emplace(normalize_label(a), name);
  }
  CHECK(pairs == expected.size());
  for (const auto& [label, name] : expected) CHECK(v.label_index().at(label).contains(name));
}

TEST_CASE("term_record") {
  const auto v = fixture();
  const auto record = term_record(v, *v.get_term("5p30086k"));
  CHECK(record.starts_with("ark: ark:/99152/b41910/5p30086k\nlabel: Armories\n"));
  CHECK(record.find("source: Subject headings used in the dictionary catalogues of the Library of Congress, 1910, v. 1\n") != std::string::npos);
  CHECK(record.find("source: Subject headings used in the dictionary catalogues of the Library of Congress, 1910, v. 2\n") != std::string::npos);
  CHECK(record.ends_with("vocabulary: Library of Congress Subject Headings, 1910\n"));

  const auto bare = load_vocabulary(doc(R"({"name":"b1","pref_label":"Asylums"})")).vocabulary;
  CHECK(term_record(bare, *bare.get_term("b1")) == "ark: ark:/99152/b41910/b1\nlabel: Asylums\nvocabulary: LCSH 1910\n");
}

TEST_CASE("term_record round trip as ANVL") {
  const auto v = fixture();
  for (const auto& [name, t] : v.terms()) {
    const auto records = anvl::parse(term_record(v, t));
    REQUIRE(records.size() == 1);
    const auto& r = records[0];
    CHECK(r.get("ark") == v.term_ark(name));
    CHECK(r.get("label") == t.pref_label);
    CHECK(r.get_all("alternate") == t.alt_labels);
    CHECK(r.get_all("note") == t.notes);
    CHECK(r.get_all("source") == t.sources);
    std::vector<std::string> related;
    for (const auto& ref : t.related) related.push_back(ref.resolved() ? v.term_ark(*ref.target) : ref.label);
    CHECK(r.get_all("related") == related);
  }
}

TEST_CASE("linked_data") {
  const auto one = load_vocabulary(doc(R"({"name":"b1","pref_label":"Asylums"})")).vocabulary;
  CHECK(linked_data(one) ==
        "<https://n2t.net/ark:/99152/b41910/b1> <http://www.w3.org/2004/02/skos/core#prefLabel> \"Asylums\" .\n");

  const auto v = fixture();
  const auto nt = linked_data(v);
  std::istringstream lines(nt);
  std::string line, previous;
  std::size_t related_to_targets = 0;
  while (std::getline(lines, line)) {
    REQUIRE(oracle::valid_ntriples_line(line));
    CHECK(previous <= line);
    previous = line;
    if (line.starts_with("<https://n2t.net/ark:/99152/b41910/gg519494> <http://www.w3.org/2004/02/skos/core#related> <"))
      ++related_to_targets;
  }
  CHECK(related_to_targets == 3);

  std::size_t expected = 0;
  for (const auto& [name, t] : v.terms())
    expected += 1 + t.alt_labels.size() + t.notes.size() + t.broader.size() + t.narrower.size() + t.related.size() +
                t.sources.size();
  CHECK(line_count(nt) == expected);
}

TEST_CASE("linked_data escapes literals") {
  const auto v = load_vocabulary(doc(R"({"name":"b1","pref_label":"Quote \" and \\ back\nslash\ttab"})")).vocabulary;
  const auto nt = linked_data(v, "resolver.example");
  CHECK(nt.find(R"("Quote \" and \\ back\nslash\ttab")") != std::string::npos);
  CHECK(oracle::valid_ntriples_line(nt.substr(0, nt.size() - 1)));
  CHECK(ntriples_escape(std::string(1, '\x01')) == "\\u0001");
}

TEST_CASE("to_document round trips") {
  const auto v = fixture();
  CHECK(load_vocabulary(to_document(v)).vocabulary == v);
}
