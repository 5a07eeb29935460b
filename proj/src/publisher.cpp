#include "arkvoc/publisher.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "arkvoc/anvl.hpp"
#include "arkvoc/error.hpp"

namespace arkvoc {

namespace fs = std::filesystem;

namespace {

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_url(std::string_view s) {
  return (s.starts_with("http://") || s.starts_with("https://")) && s.find_first_of(" \t\n\"<>") == std::string_view::npos;
}

std::string page_head(std::string_view title) {
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>";
  out += html_escape(title);
  out += "</title>\n</head>\n<body>\n";
  return out;
}

constexpr std::string_view kPageTail = "</body>\n</html>\n";

void text_section(std::string& out, std::string_view heading, const std::vector<std::string>& items, bool link_urls) {
  out += "<h2>";
  out += heading;
  out += "</h2>\n";
  if (items.empty()) {
    out += "<p>None</p>\n";
    return;
  }
  out += "<ul>\n";
  for (const auto& item : items) {
    out += "<li>";
    if (link_urls && is_url(item)) {
      out += "<a href=\"" + html_escape(item) + "\">" + html_escape(item) + "</a>";
    } else {
      out += html_escape(item);
    }
    out += "</li>\n";
  }
  out += "</ul>\n";
}

void link_section(std::string& out, std::string_view heading, const Vocabulary& v,
                  const std::vector<TermReference>& refs, std::string_view host) {
  out += "<h2>";
  out += heading;
  out += "</h2>\n";
  if (refs.empty()) {
    out += "<p>None</p>\n";
    return;
  }
  out += "<ul>\n";
  for (const auto& r : refs) {
    out += "<li>";
    if (r.resolved()) {
      const auto* target = v.get_term(*r.target);
      out += "<a href=\"https://" + html_escape(host) + "/" + v.term_ark(*r.target) + "\">" +
             html_escape(target ? target->pref_label : r.label) + "</a>";
    } else {
      out += html_escape(r.label);
    }
    out += "</li>\n";
  }
  out += "</ul>\n";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, std::string_view data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot write " + p.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::io_failure, "short write to " + p.string());
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::io_failure, "sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string render_term_page(const Vocabulary& v, const Term& t, std::string_view resolver_host) {
  const auto ark = v.term_ark(t.name);
  std::string out = page_head(t.pref_label);
  out += "<h1>" + html_escape(t.pref_label) + "</h1>\n";
  out += "<dl>\n<dt>URI/PID</dt>\n<dd><code>" + ark + "</code></dd>\n";
  out += "<dt>Vocabulary</dt>\n<dd>" + html_escape(v.title) + "</dd>\n</dl>\n";
  text_section(out, "Alternate Labels/Variants", t.alt_labels, false);
  text_section(out, "Notes", t.notes, false);
  link_section(out, "Broader Terms", v, t.broader, resolver_host);
  link_section(out, "Narrower Terms", v, t.narrower, resolver_host);
  link_section(out, "Related Terms", v, t.related, resolver_host);
  text_section(out, "Sources", t.sources, true);
  out += kPageTail;
  return out;
}

std::string render_index_page(const Vocabulary& v, std::string_view resolver_host) {
  std::vector<const Term*> sorted;
  for (const auto& [name, t] : v.terms()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const Term* a, const Term* b) {
    if (a->pref_label != b->pref_label) return a->pref_label < b->pref_label;
    return a->name < b->name;
  });
  std::string out = page_head(v.title);
  out += "<h1>" + html_escape(v.title) + "</h1>\n";
  out += "<p><code>ark:/" + v.naan + "/" + v.assigned_name() + "</code></p>\n<ul>\n";
  for (const auto* t : sorted) {
    const auto ark = v.term_ark(t->name);
    out += "<li><a href=\"https://" + html_escape(resolver_host) + "/" + ark + "\">" + html_escape(t->pref_label) +
           "</a> <code>" + ark + "</code></li>\n";
  }
  out += "</ul>\n";
  out += kPageTail;
  return out;
}

std::vector<std::pair<std::string, std::string>> render_site(const Vocabulary& v, std::string_view resolver_host) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& [name, t] : v.terms()) {
    files.emplace_back(name + ".html", render_term_page(v, t, resolver_host));
    files.emplace_back(name + ".txt", term_record(v, t));
  }
  files.emplace_back("index.html", render_index_page(v, resolver_host));
  files.emplace_back("vocabulary.nt", linked_data(v, resolver_host));
  std::sort(files.begin(), files.end());
  return files;
}

std::string serialize_manifest(const Manifest& m) {
  std::string out;
  anvl::append_field(out, "host", m.host);
  for (const auto& e : m.entries) {
    out += '\n';
    anvl::append_field(out, "path", e.path);
    anvl::append_field(out, "bytes", std::to_string(e.bytes));
    anvl::append_field(out, "hash", e.hash);
  }
  return out;
}

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  for (const auto& rec : anvl::parse(text)) {
    if (auto host = rec.get("host")) {
      m.host = *host;
      continue;
    }
    auto path = rec.get("path");
    auto bytes = rec.get("bytes");
    auto hash = rec.get("hash");
    if (!path || !bytes || !hash) throw Error(Errc::io_failure, "malformed manifest record");
    m.entries.push_back({*path, std::stoull(*bytes), *hash});
  }
  return m;
}

Manifest publish(const Vocabulary& v, const fs::path& out_dir, std::string_view resolver_host) {
  const fs::path dir = out_dir / v.id;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_failure, "cannot create " + dir.string() + ": " + ec.message());

  std::set<std::string> previous;
  if (const auto manifest_path = dir / kManifestFile; fs::exists(manifest_path)) {
    for (const auto& e : parse_manifest(read_file(manifest_path)).entries) previous.insert(e.path);
  }

  const auto files = render_site(v, resolver_host);
  for (const auto& [rel, content] : files) {
    if (fs::exists(dir / rel) && !previous.contains(rel))
      throw Error(Errc::collision, (dir / rel).string() + " was not produced by a prior publish");
  }

  Manifest manifest{std::string(resolver_host), {}};
  std::set<std::string> current;
  for (const auto& [rel, content] : files) {
    write_file(dir / rel, content);
    manifest.entries.push_back({rel, content.size(), sha256_hex(content)});
    current.insert(rel);
  }
  for (const auto& stale : previous) {
    if (!current.contains(stale)) fs::remove(dir / stale, ec);
  }
  write_file(dir / kManifestFile, serialize_manifest(manifest));
  return manifest;
}

VerifyReport verify_published(const Vocabulary& v, const fs::path& out_dir) {
  const fs::path dir = out_dir / v.id;
  std::string host = "n2t.net";
  if (const auto manifest_path = dir / kManifestFile; fs::exists(manifest_path))
    host = parse_manifest(read_file(manifest_path)).host;

  VerifyReport report;
  std::set<std::string> expected;
  for (const auto& [rel, content] : render_site(v, host)) {
    expected.insert(rel);
    const auto p = dir / rel;
    if (!fs::exists(p)) {
      report.missing.push_back(rel);
    } else if (sha256_hex(read_file(p)) != sha256_hex(content)) {
      report.modified.push_back(rel);
    }
  }
  std::error_code ec;
  if (fs::is_directory(dir, ec)) {
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const auto rel = fs::relative(entry.path(), dir).generic_string();
      if (rel != kManifestFile && !expected.contains(rel)) report.extra.push_back(rel);
    }
  }
  std::sort(report.extra.begin(), report.extra.end());
  return report;
}

std::string verify_report_anvl(const VerifyReport& report) {
  std::string out;
  anvl::append_field(out, "status", report.clean() ? "clean" : "drift");
  for (const auto& p : report.missing) anvl::append_field(out, "missing", p);
  for (const auto& p : report.modified) anvl::append_field(out, "modified", p);
  for (const auto& p : report.extra) anvl::append_field(out, "extra", p);
  return out;
}

}  // namespace arkvoc
