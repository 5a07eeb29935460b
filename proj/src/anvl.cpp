#include "arkvoc/anvl.hpp"

namespace arkvoc::anvl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

std::optional<std::string> Record::get(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<std::string> Record::get_all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : fields)
    if (k == key) out.push_back(v);
  return out;
}

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  Record current;
  auto flush = [&] {
    if (!current.fields.empty()) records.push_back(std::move(current));
    current = Record{};
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (blank(line)) {
      flush();
    } else if (line.front() == '#') {
      // comment
    } else if ((line.front() == ' ' || line.front() == '\t') && !current.fields.empty()) {
      auto& value = current.fields.back().second;
      value += '\n';
      value += trim(line);
    } else {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        current.add("", std::string(trim(line)));
      } else {
        current.add(std::string(trim(line.substr(0, colon))), std::string(trim(line.substr(colon + 1))));
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush();
  return records;
}

void append_field(std::string& out, std::string_view key, std::string_view value) {
  out += key;
  out += ':';
  if (!value.empty()) out += ' ';
  for (char c : value) {
    if (c == '\n') {
      out += "\n  ";
    } else if (c != '\r') {
      out += c;
    }
  }
  out += '\n';
}

std::string to_string(const Record& record) {
  std::string out;
  for (const auto& [k, v] : record.fields) append_field(out, k, v);
  return out;
}

}  // namespace arkvoc::anvl
