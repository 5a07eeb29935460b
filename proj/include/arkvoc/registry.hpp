#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arkvoc {

struct NaanRecord {
  std::string naan;
  std::string who;
  std::string where;
  std::string when;
  std::string commitment;
  /// Keys the model does not use, kept in input order.
  std::vector<std::pair<std::string, std::string>> extra;

  friend bool operator==(const NaanRecord&, const NaanRecord&) = default;
};

enum class SharedNaanClass { example, terms, agents, test, regular };

std::string_view shared_class_name(SharedNaanClass c) noexcept;

SharedNaanClass classify_shared(std::string_view naan) noexcept;

/// True for `scheme://host...` with a non-empty scheme and host.
bool is_absolute_url(std::string_view url) noexcept;

class Registry {
 public:
  Registry() = default;
  /// Throws Error(duplicate_naan).
  explicit Registry(std::vector<NaanRecord> records);

  const std::vector<NaanRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  const NaanRecord* lookup(std::string_view naan) const noexcept;

 private:
  std::vector<NaanRecord> records_;
};

/// Throws Error(duplicate_naan), Error(malformed_block), Error(bad_url).
std::vector<NaanRecord> parse_registry(std::string_view text);
std::string serialize_registry(const std::vector<NaanRecord>& records);

/// ANVL form of one record, as served for foreign-NAAN inflections.
std::string naan_record_anvl(const NaanRecord& record);

std::optional<NaanRecord> lookup(const std::vector<NaanRecord>& registry, std::string_view naan);

Registry load_registry(const std::string& path);

}  // namespace arkvoc
