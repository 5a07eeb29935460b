#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "arkvoc/vocabulary.hpp"

namespace arkvoc {

struct ManifestEntry {
  std::string path;  // relative to the vocabulary directory
  std::uint64_t bytes = 0;
  std::string hash;  // sha256 hex

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  std::string host;
  std::vector<ManifestEntry> entries;  // sorted by path

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

inline constexpr std::string_view kManifestFile = "manifest.txt";

std::string sha256_hex(std::string_view data);

/// HTML catalog page for one term. Resolved references link to
/// `https://<host>/<ark>`.
std::string render_term_page(const Vocabulary& v, const Term& t, std::string_view resolver_host);
/// Alphabetical (by pref_label) list of terms.
std::string render_index_page(const Vocabulary& v, std::string_view resolver_host);

/// In-memory rendering of every payload file, keyed by relative path.
std::vector<std::pair<std::string, std::string>> render_site(const Vocabulary& v,
                                                             std::string_view resolver_host);

/// Writes `<out_dir>/<v.id>/...` and its manifest. Throws Error(collision)
/// or Error(io_failure).
Manifest publish(const Vocabulary& v, const std::filesystem::path& out_dir,
                 std::string_view resolver_host = "n2t.net");

std::string serialize_manifest(const Manifest& m);
Manifest parse_manifest(std::string_view text);

struct VerifyReport {
  std::vector<std::string> missing;
  std::vector<std::string> modified;
  std::vector<std::string> extra;

  bool clean() const noexcept { return missing.empty() && modified.empty() && extra.empty(); }
};

/// Re-renders the vocabulary and compares against the files on disk.
VerifyReport verify_published(const Vocabulary& v, const std::filesystem::path& out_dir);

std::string verify_report_anvl(const VerifyReport& report);

}  // namespace arkvoc
