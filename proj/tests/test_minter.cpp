#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "arkvoc/ark.hpp"
#include "arkvoc/error.hpp"
#include "arkvoc/minter.hpp"
#include "doctest.h"

using namespace arkvoc;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  auto dir = fs::temp_directory_path() / "arkvoc_minter_test";
  fs::create_directories(dir);
  auto p = dir / name;
  fs::remove(p);
  return p;
}

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::io_failure;
}

}  // namespace

TEST_CASE("template capacity") {
  CHECK(capacity(MinterTemplate("eedddddk")) == 84'100'000ULL);
  CHECK(capacity(MinterTemplate("d")) == 10);
  CHECK(capacity(MinterTemplate("ek")) == 29);
  CHECK(error_of([] { MinterTemplate(""); }) == Errc::invalid_template);
  CHECK(error_of([] { MinterTemplate("dkd"); }) == Errc::invalid_template);
  CHECK(error_of([] { MinterTemplate("dx"); }) == Errc::invalid_template);
  CHECK(error_of([] { MinterTemplate("k"); }) == Errc::invalid_template);
  CHECK(error_of([] { MinterTemplate(std::string(40, 'e')); }) == Errc::invalid_template);
}

TEST_CASE("encode: mixed radix") {
  const MinterTemplate ed("ed");
  CHECK(encode(ed, 0) == "00");
  CHECK(encode(ed, 10) == "10");
  CHECK(encode(ed, 289) == "z9");
  CHECK(error_of([&] { encode(ed, 290); }) == Errc::index_out_of_range);

  // oracle: enumerate every index, expect a bijection onto R x digits
  std::set<std::string> seen;
  std::string last;
  for (std::uint64_t i = 0; i < 290; ++i) {
    last = encode(ed, i);
    REQUIRE(last.size() == 2);
    REQUIRE(kBetanumeric[i / 10] == last[0]);
    REQUIRE(static_cast<char>('0' + i % 10) == last[1]);
    seen.insert(last);
  }
  CHECK(seen.size() == 290);
  CHECK(last == "z9");
}

TEST_CASE("encode: check character uses the prefix") {
  const MinterTemplate t("eek");
  for (std::uint64_t i = 0; i < t.capacity(); ++i) {
    const auto name = encode(t, i, "99152/b4");
    REQUIRE(verify_check("99152/b4" + name));
  }
}

TEST_CASE("mint: sequential and quasi-random") {
  auto s = MinterState::sequential(MinterTemplate("dd"), "");
  CHECK(mint_next(s) == "00");
  CHECK(mint_next(s) == "01");
  CHECK(mint_next(s) == "02");
  CHECK(s.counter == 3);

  MinterState q;
  q.tmpl = MinterTemplate("dd");
  q.mode = MintMode::quasi_random;
  q.multiplier = 7;
  q.offset = 3;
  for (std::uint64_t i = 0; i < 3; ++i) {
    const auto expected = (i * 7 + 3) % 100;
    const auto minted = mint(q);
    CHECK(minted.name == std::string{static_cast<char>('0' + expected / 10), static_cast<char>('0' + expected % 10)});
    q = minted.next;
  }
}

TEST_CASE("mint: exhaustion and permutation") {
  for (const char* mask : {"dd", "ed", "eek"}) {
    for (auto state : {MinterState::sequential(MinterTemplate(mask), "99152/b4"),
                       MinterState::quasi_random(MinterTemplate(mask), "99152/b4", 12345)}) {
      std::set<std::string> names;
      const auto cap = state.tmpl.capacity();
      for (std::uint64_t i = 0; i < cap; ++i) names.insert(mint_next(state));
      CHECK(names.size() == cap);
      CHECK(error_of([&] { mint(state); }) == Errc::minter_exhausted);
    }
  }
}

TEST_CASE("default multiplier") {
  CHECK(is_prime(2));
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool trial = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
    REQUIRE(is_prime(n) == trial);
  }
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));  // Carmichael
  CHECK(is_prime(18446744073709551557ULL));
  for (std::uint64_t cap : {1ULL, 10ULL, 100ULL, 290ULL, 841ULL, 84'100'000ULL}) {
    const auto m = default_multiplier(cap);
    CHECK(m > cap / 2);
    CHECK(std::gcd(m, cap) == 1);
    CHECK(is_prime(m));
  }
  const auto q = MinterState::quasi_random(MinterTemplate("dd"), "", 1234);
  CHECK(q.offset == 34);
  CHECK(q.multiplier == 53);
}

TEST_CASE("state persistence") {
  const auto path = temp_path("state.txt");
  auto s = MinterState::quasi_random(MinterTemplate("eedddddk"), "99152/b4", 77);
  for (int i = 0; i < 5; ++i) mint_next(s);
  save_state(s, path);
  CHECK(load_state(path) == s);
  CHECK_FALSE(fs::exists(fs::path(path) += ".tmp"));

  const auto text = serialize_state(s);
  CHECK(text.find("template: eedddddk\n") == 0);
  CHECK(text.find("mode: quasi_random\n") != std::string::npos);

  // oracle: an uninterrupted run
  auto uninterrupted = MinterState::quasi_random(MinterTemplate("eedddddk"), "99152/b4", 77);
  std::string sixth;
  for (int i = 0; i < 6; ++i) sixth = mint_next(uninterrupted);
  auto reloaded = load_state(path);
  CHECK(mint_next(reloaded) == sixth);

  CHECK(error_of([&] { load_state(temp_path("absent.txt")); }) == Errc::missing_state_file);
  const auto corrupt = temp_path("corrupt.txt");
  std::ofstream(corrupt) << "template: eedddddk\nmode: sideways\n";
  CHECK(error_of([&] { load_state(corrupt); }) == Errc::corrupt_state_file);
  std::ofstream(corrupt, std::ios::trunc) << "template: dd\nprefix:\nmode: quasi_random\ncounter: 0\nmultiplier: 5\noffset: 0\n";
  CHECK(error_of([&] { load_state(corrupt); }) == Errc::corrupt_state_file);
}

TEST_CASE("determinism") {
  auto a = MinterState::quasi_random(MinterTemplate("eek"), "13183/", 9);
  auto b = a;
  for (int i = 0; i < 100; ++i) REQUIRE(mint_next(a) == mint_next(b));
}
