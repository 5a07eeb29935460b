#include <random>

#include "arkvoc/error.hpp"
#include "arkvoc/registry.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace arkvoc;

namespace {

Errc parse_error(std::string_view text) {
  try {
    parse_registry(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a registry error");
  return Errc::io_failure;
}

}  // namespace

TEST_CASE("parse_registry") {
  const auto records = parse_registry(
      "naan: 13183\nwho: Metadata Research Center, Drexel University\nwhere: https://id.cci.drexel.edu\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].naan == "13183");
  CHECK(records[0].who == "Metadata Research Center, Drexel University");
  CHECK(records[0].where == "https://id.cci.drexel.edu");

  CHECK(parse_registry("").empty());
  CHECK(parse_registry("\n\n# only a comment\n").empty());
  CHECK(parse_error("naan: 99152\n\nnaan: 99152\n") == Errc::duplicate_naan);
  CHECK(parse_error("who: nobody\n") == Errc::malformed_block);
  CHECK(parse_error("naan: 12a45\n") == Errc::malformed_block);
  CHECK(parse_error("naan: 12345\nwhere: example.org\n") == Errc::bad_url);
  CHECK(parse_error("naan: 12345\njust words\n") == Errc::malformed_block);
}

TEST_CASE("registry fixture lookup") {
  const auto text = oracle::slurp(oracle::fixture("mrc_registry.txt"));
  const auto records = parse_registry(text);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) CHECK(lookup(records, r.naan).has_value());
  const auto mrc = lookup(records, "13183");
  REQUIRE(mrc);
  CHECK(mrc->who == "Metadata Research Center, Drexel University");
  CHECK_FALSE(mrc->commitment.empty());
  CHECK_FALSE(lookup(records, "00000"));

  const Registry registry(records);
  CHECK(registry.lookup("12345")->where == "https://example.org");
  CHECK(registry.lookup("00000") == nullptr);
}

TEST_CASE("unknown keys survive and serialization is idempotent") {
  const auto text = "naan: 12345\nwho: Example\nwhere: https://example.org\nhow: NP | (:unkn) unknown\n\nnaan: 99999\n";
  const auto first = parse_registry(text);
  REQUIRE(first[0].extra.size() == 1);
  CHECK(first[0].extra[0].first == "how");
  const auto second = parse_registry(serialize_registry(first));
  CHECK(second == first);
  CHECK(serialize_registry(second) == serialize_registry(first));
}

TEST_CASE("classify_shared") {
  CHECK(classify_shared("12345") == SharedNaanClass::example);
  CHECK(classify_shared("99152") == SharedNaanClass::terms);
  CHECK(classify_shared("99166") == SharedNaanClass::agents);
  CHECK(classify_shared("99999") == SharedNaanClass::test);
  CHECK(classify_shared("13183") == SharedNaanClass::regular);

  std::mt19937_64 rng(1910);
  std::uniform_int_distribution<int> len(1, 9), digit(0, 9);
  const std::set<std::string> shared{"12345", "99152", "99166", "99999"};
  for (int i = 0; i < 2000; ++i) {
    std::string naan;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) naan += static_cast<char>('0' + digit(rng));
    REQUIRE((classify_shared(naan) == SharedNaanClass::regular) == !shared.contains(naan));
  }
}

TEST_CASE("absolute URLs") {
  CHECK(is_absolute_url("https://id.cci.drexel.edu"));
  CHECK(is_absolute_url("http://example.org/path"));
  CHECK_FALSE(is_absolute_url("example.org"));
  CHECK_FALSE(is_absolute_url("https://"));
  CHECK_FALSE(is_absolute_url("://host"));
  CHECK_FALSE(is_absolute_url("https://exa mple.org"));
}
