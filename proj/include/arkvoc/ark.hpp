#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace arkvoc {

/// Digits plus lowercase consonants without `l`.
inline constexpr std::string_view kBetanumeric = "0123456789bcdfghjkmnpqrstvwxz";
inline constexpr std::uint32_t kRadix = 29;

namespace detail {
constexpr std::array<std::int8_t, 256> make_alphabet_table() {
  std::array<std::int8_t, 256> table{};
  for (auto& v : table) v = -1;
  for (std::size_t i = 0; i < kBetanumeric.size(); ++i)
    table[static_cast<unsigned char>(kBetanumeric[i])] = static_cast<std::int8_t>(i);
  return table;
}
inline constexpr auto kAlphabetTable = make_alphabet_table();

// Same as kAlphabetTable with characters outside R weighted 0.
constexpr std::array<std::uint8_t, 256> make_value_table() {
  std::array<std::uint8_t, 256> table{};
  for (std::size_t i = 0; i < kBetanumeric.size(); ++i)
    table[static_cast<unsigned char>(kBetanumeric[i])] = static_cast<std::uint8_t>(i);
  return table;
}
inline constexpr auto kValueTable = make_value_table();
}  // namespace detail

/// Index of `c` in the betanumeric alphabet, or -1.
constexpr int alphabet_index(char c) noexcept {
  return detail::kAlphabetTable[static_cast<unsigned char>(c)];
}

constexpr bool is_betanumeric(char c) noexcept { return alphabet_index(c) >= 0; }

constexpr bool is_betanumeric(std::string_view s) noexcept {
  for (char c : s)
    if (!is_betanumeric(c)) return false;
  return true;
}

enum class Inflection { none, metadata, commitment };

std::string_view inflection_name(Inflection inflection) noexcept;

/// Hostname-independent identity of an ARK. Hyphens never appear in stored
/// fields.
struct ArkName {
  std::string naan;
  std::string assigned_name;
  std::vector<std::string> qualifiers;
  Inflection inflection = Inflection::none;

  friend bool operator==(const ArkName&, const ArkName&) = default;
};

struct Shoulder {
  std::string shoulder;
  std::string blade;
  bool degenerate = false;  // no digit in the assigned name

  friend bool operator==(const Shoulder&, const Shoulder&) = default;
};

/// Accepts `ark:/...`, `ark:...`, or any URI whose path contains `ark:`.
/// Throws Error (malformed_label, empty_naan, non_digit_naan,
/// illegal_character).
ArkName parse(std::string_view text);

/// `ark:/<naan>/<name>[/<qualifier>...]`, never with an inflection suffix.
std::string canonical_string(const ArkName& ark);

/// `https://<host>/` + canonical form, with `?` or `??` re-appended.
std::string to_uri(const ArkName& ark, std::string_view resolver_host);

/// Shortest prefix ending in a digit becomes the shoulder.
Shoulder split_shoulder(std::string_view assigned_name);

/// Field-wise equality ignoring inflection. Case-sensitive.
bool same_identity(const ArkName& a, const ArkName& b) noexcept;

/// Position-weighted sum mod 29 over `s` (1-based weights); characters
/// outside the alphabet count as zero.
constexpr char check_char(std::string_view s) noexcept {
  // i*v mod 29 does not depend on reducing i first, so one reduction suffices.
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += (i + 1) * detail::kValueTable[static_cast<unsigned char>(s[i])];
  return kBetanumeric[sum % kRadix];
}

constexpr bool verify_check(std::string_view s) noexcept {
  if (s.empty()) return false;
  return check_char(s.substr(0, s.size() - 1)) == s.back();
}

}  // namespace arkvoc
