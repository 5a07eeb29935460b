#pragma once

// Minimal ANVL ("A Name-Value Language") records: `key: value` lines,
// records separated by blank lines, `#` comment lines, and continuation
// lines that start with whitespace.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arkvoc::anvl {

using Field = std::pair<std::string, std::string>;

struct Record {
  std::vector<Field> fields;

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
  /// First value for `key`, if any.
  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> get_all(std::string_view key) const;
};

/// Splits text into records. Lines without a colon are reported through the
/// returned record as a field with an empty key so callers can reject them.
std::vector<Record> parse(std::string_view text);

/// Serializes one record. Embedded newlines become continuation lines.
std::string to_string(const Record& record);

void append_field(std::string& out, std::string_view key, std::string_view value);

}  // namespace arkvoc::anvl
