#include <filesystem>
#include <fstream>
#include <regex>

#include "arkvoc/error.hpp"
#include "arkvoc/publisher.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace arkvoc;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / "arkvoc_publisher_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Vocabulary fixture() { return load_vocabulary(oracle::slurp(oracle::fixture("lcsh1910.json"))).vocabulary; }

std::vector<std::string> hrefs(const std::string& html) {
  static const std::regex href(R"re(href="([^"]*)")re");
  std::vector<std::string> out;
  for (std::sregex_iterator it(html.begin(), html.end(), href), end; it != end; ++it) out.push_back((*it)[1].str());
  return out;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = oracle::slurp(e.path().string());
  return files;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("term page content") {
  const auto v = fixture();
  const auto page = render_term_page(v, *v.get_term("5p30086k"), "n2t.net");
  CHECK(page.find("<title>Armories</title>") != std::string::npos);
  CHECK(page.find("<dt>URI/PID</dt>\n<dd><code>ark:/99152/b41910/5p30086k</code></dd>") != std::string::npos);
  for (const char* section : {"Alternate Labels/Variants", "Notes", "Broader Terms", "Narrower Terms", "Related Terms", "Sources"})
    CHECK(page.find(section) != std::string::npos);

  const auto abbeys = render_term_page(v, *v.find_by_label("Abbeys")[0], "n2t.net");
  const auto links = hrefs(abbeys);
  REQUIRE(links.size() == 3);
  for (const auto& link : links) {
    REQUIRE(link.starts_with("https://n2t.net/ark:/99152/b41910/"));
    const auto name = link.substr(link.rfind('/') + 1);
    CHECK(v.get_term(name) != nullptr);
  }
}

TEST_CASE("html escaping") {
  const auto v = load_vocabulary(
      R"({"id":"x","naan":"99152","shoulder":"b4","terms":[{"name":"b1","pref_label":"Fish & <Chips>"}]})").vocabulary;
  const auto page = render_term_page(v, *v.get_term("b1"), "n2t.net");
  CHECK(page.find("Fish &amp; &lt;Chips&gt;") != std::string::npos);
  CHECK(page.find("<Chips>") == std::string::npos);
}

TEST_CASE("publish layout, manifest and determinism") {
  const auto v = fixture();
  const auto out = fresh_dir("layout");
  const auto manifest = publish(v, out, "n2t.net");
  CHECK(manifest.entries.size() == 2 * v.terms().size() + 2);
  const auto dir = out / "lcsh1910";
  for (const auto& [name, t] : v.terms()) {
    CHECK(fs::exists(dir / (name + ".html")));
    CHECK(fs::exists(dir / (name + ".txt")));
    CHECK(oracle::slurp((dir / (name + ".txt")).string()) == term_record(v, t));
  }
  CHECK(oracle::slurp((dir / "vocabulary.nt").string()) == linked_data(v, "n2t.net"));
  for (const auto& e : manifest.entries) {
    const auto content = oracle::slurp((dir / e.path).string());
    CHECK(content.size() == e.bytes);
    CHECK(sha256_hex(content) == e.hash);
  }
  CHECK(parse_manifest(oracle::slurp((dir / "manifest.txt").string())) == manifest);

  const auto first = snapshot(out);
  CHECK(publish(v, out, "n2t.net") == manifest);
  CHECK(snapshot(out) == first);

  const auto other = fresh_dir("layout2");
  publish(v, other, "n2t.net");
  CHECK(snapshot(other) == first);
}

TEST_CASE("index page is alphabetical") {
  const auto v = fixture();
  const auto page = render_index_page(v, "n2t.net");
  std::vector<std::size_t> positions;
  for (const char* label : {">Abbeys<", ">Armories<", ">Cathedrals<", ">Convents<", ">Monasteries<"})
    positions.push_back(page.find(label));
  CHECK(std::is_sorted(positions.begin(), positions.end()));
  CHECK(positions.back() != std::string::npos);
}

TEST_CASE("link closure") {
  const auto v = fixture();
  const auto out = fresh_dir("closure");
  publish(v, out, "n2t.net");
  std::set<std::string> arks;
  for (const auto& [name, t] : v.terms()) arks.insert("https://n2t.net/" + v.term_ark(name));
  for (const auto& [name, t] : v.terms()) {
    const auto page = oracle::slurp((out / "lcsh1910" / (name + ".html")).string());
    for (const auto& link : hrefs(page)) {
      const bool source = std::find(t.sources.begin(), t.sources.end(), link) != t.sources.end();
      CHECK((arks.contains(link) || source));
    }
  }
}

TEST_CASE("empty vocabulary") {
  const auto v = load_vocabulary(R"({"id":"empty","naan":"99152","shoulder":"b4","terms":[]})").vocabulary;
  const auto out = fresh_dir("empty");
  const auto manifest = publish(v, out);
  REQUIRE(manifest.entries.size() == 2);
  CHECK(manifest.entries[0].path == "index.html");
  CHECK(manifest.entries[1].path == "vocabulary.nt");
  CHECK(manifest.entries[1].bytes == 0);
}

TEST_CASE("collision with foreign files") {
  const auto v = fixture();
  const auto out = fresh_dir("collision");
  fs::create_directories(out / "lcsh1910");
  std::ofstream(out / "lcsh1910" / "index.html") << "hand written";
  try {
    publish(v, out);
    FAIL("expected collision");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::collision);
  }
}

TEST_CASE("verify_published") {
  const auto v = fixture();
  const auto out = fresh_dir("verify");
  publish(v, out, "n2t.example");
  CHECK(verify_published(v, out).clean());

  fs::remove(out / "lcsh1910" / "gg52027f.html");
  auto report = verify_published(v, out);
  CHECK(report.missing == std::vector<std::string>{"gg52027f.html"});
  CHECK(report.modified.empty());

  publish(v, out, "n2t.example");
  std::ofstream(out / "lcsh1910" / "5p30086k.html", std::ios::app) << "<!-- edited -->";
  std::ofstream(out / "lcsh1910" / "notes.md") << "stray";
  report = verify_published(v, out);
  CHECK(report.missing.empty());
  CHECK(report.modified == std::vector<std::string>{"5p30086k.html"});
  CHECK(report.extra == std::vector<std::string>{"notes.md"});
  CHECK(verify_report_anvl(report) == "status: drift\nmodified: 5p30086k.html\nextra: notes.md\n");
}
