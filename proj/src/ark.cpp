#include "arkvoc/ark.hpp"

#include <cctype>

#include "arkvoc/error.hpp"

namespace arkvoc {

namespace {

bool label_at(std::string_view text, std::size_t pos) {
  if (pos + 4 > text.size()) return false;
  for (std::size_t i = 0; i < 3; ++i)
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != "ark"[i]) return false;
  return text[pos + 3] == ':';
}

/// Offset of the `ark:` label: at the start of the text, or at the start of a
/// path segment of a URI.
std::size_t find_label(std::string_view text) {
  if (label_at(text, 0)) return 0;
  std::size_t from = 0;
  if (const auto scheme = text.find("://"); scheme != std::string_view::npos) {
    const auto path = text.find('/', scheme + 3);
    if (path == std::string_view::npos) return std::string_view::npos;
    from = path;
  }
  for (auto slash = text.find('/', from); slash != std::string_view::npos; slash = text.find('/', slash + 1))
    if (label_at(text, slash + 1)) return slash + 1;
  return std::string_view::npos;
}

std::string strip_hyphens(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != '-') out += c;
  return out;
}

std::string checked_component(std::string_view raw, std::string_view what) {
  std::string out = strip_hyphens(raw);
  if (out.empty()) throw Error(Errc::illegal_character, "empty " + std::string(what) + " component");
  for (char c : out) {
    if (!is_betanumeric(c))
      throw Error(Errc::illegal_character,
                  "'" + std::string(1, c) + "' in " + std::string(what) + " '" + std::string(raw) + "'");
  }
  return out;
}

}  // namespace

std::string_view inflection_name(Inflection inflection) noexcept {
  switch (inflection) {
    case Inflection::none: return "none";
    case Inflection::metadata: return "metadata";
    case Inflection::commitment: return "commitment";
  }
  return "none";
}

ArkName parse(std::string_view text) {
  const auto label = find_label(text);
  if (label == std::string_view::npos) throw Error(Errc::malformed_label, "no ark: label in '" + std::string(text) + "'");

  std::string_view rest = text.substr(label + 4);
  if (!rest.empty() && rest.front() == '/') rest.remove_prefix(1);

  ArkName ark;
  if (rest.ends_with("??")) {
    ark.inflection = Inflection::commitment;
    rest.remove_suffix(2);
  } else if (rest.ends_with("?")) {
    ark.inflection = Inflection::metadata;
    rest.remove_suffix(1);
  }

  const auto naan_end = rest.find('/');
  ark.naan = strip_hyphens(rest.substr(0, naan_end));
  if (ark.naan.empty()) throw Error(Errc::empty_naan, "in '" + std::string(text) + "'");
  for (char c : ark.naan)
    if (c < '0' || c > '9') throw Error(Errc::non_digit_naan, "'" + ark.naan + "'");

  if (naan_end == std::string_view::npos || naan_end + 1 >= rest.size())
    throw Error(Errc::missing_name, "no assigned name after NAAN " + ark.naan);
  rest.remove_prefix(naan_end + 1);

  bool first = true;
  while (true) {
    const auto slash = rest.find('/');
    const auto part = rest.substr(0, slash);
    if (first) {
      ark.assigned_name = checked_component(part, "assigned name");
      first = false;
    } else {
      ark.qualifiers.push_back(checked_component(part, "qualifier"));
    }
    if (slash == std::string_view::npos) break;
    rest.remove_prefix(slash + 1);
  }
  return ark;
}

std::string canonical_string(const ArkName& ark) {
  std::string out = "ark:/";
  out += ark.naan;
  out += '/';
  out += ark.assigned_name;
  for (const auto& q : ark.qualifiers) {
    out += '/';
    out += q;
  }
  return out;
}

std::string to_uri(const ArkName& ark, std::string_view resolver_host) {
  std::string out = "https://";
  out += resolver_host;
  out += '/';
  out += canonical_string(ark);
  if (ark.inflection == Inflection::metadata) out += '?';
  if (ark.inflection == Inflection::commitment) out += "??";
  return out;
}

Shoulder split_shoulder(std::string_view assigned_name) {
  if (assigned_name.empty()) throw Error(Errc::empty_input, "assigned name is empty");
  for (std::size_t i = 0; i < assigned_name.size(); ++i) {
    if (assigned_name[i] >= '0' && assigned_name[i] <= '9')
      return {std::string(assigned_name.substr(0, i + 1)), std::string(assigned_name.substr(i + 1)), false};
  }
  return {std::string(assigned_name), {}, true};
}

bool same_identity(const ArkName& a, const ArkName& b) noexcept {
  return a.naan == b.naan && a.assigned_name == b.assigned_name && a.qualifiers == b.qualifiers;
}

}  // namespace arkvoc
