#include "arkvoc/registry.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "arkvoc/anvl.hpp"
#include "arkvoc/error.hpp"

namespace arkvoc {

std::string_view shared_class_name(SharedNaanClass c) noexcept {
  switch (c) {
    case SharedNaanClass::example: return "example";
    case SharedNaanClass::terms: return "terms";
    case SharedNaanClass::agents: return "agents";
    case SharedNaanClass::test: return "test";
    case SharedNaanClass::regular: return "regular";
  }
  return "regular";
}

SharedNaanClass classify_shared(std::string_view naan) noexcept {
  if (naan == "12345") return SharedNaanClass::example;
  if (naan == "99152") return SharedNaanClass::terms;
  if (naan == "99166") return SharedNaanClass::agents;
  if (naan == "99999") return SharedNaanClass::test;
  return SharedNaanClass::regular;
}

bool is_absolute_url(std::string_view url) noexcept {
  const auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) return false;
  for (std::size_t i = 0; i < sep; ++i) {
    const char c = url[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
    if (!ok) return false;
  }
  const auto host = url.substr(sep + 3);
  if (host.empty() || host.front() == '/') return false;
  for (char c : url)
    if (c == ' ' || c == '\t' || c == '\n') return false;
  return true;
}

Registry::Registry(std::vector<NaanRecord> records) : records_(std::move(records)) {
  std::set<std::string> seen;
  for (const auto& r : records_)
    if (!seen.insert(r.naan).second) throw Error(Errc::duplicate_naan, r.naan);
}

const NaanRecord* Registry::lookup(std::string_view naan) const noexcept {
  for (const auto& r : records_)
    if (r.naan == naan) return &r;
  return nullptr;
}

std::vector<NaanRecord> parse_registry(std::string_view text) {
  std::vector<NaanRecord> out;
  std::set<std::string> seen;
  std::size_t block = 0;
  for (const auto& rec : anvl::parse(text)) {
    ++block;
    NaanRecord r;
    bool has_naan = false;
    for (const auto& [key, value] : rec.fields) {
      if (key.empty()) throw Error(Errc::malformed_block, "block " + std::to_string(block) + ": line without ':'");
      if (key == "naan") {
        r.naan = value;
        has_naan = true;
      } else if (key == "who") {
        r.who = value;
      } else if (key == "where") {
        r.where = value;
      } else if (key == "when") {
        r.when = value;
      } else if (key == "commitment") {
        r.commitment = value;
      } else {
        r.extra.emplace_back(key, value);
      }
    }
    if (!has_naan || r.naan.empty()) throw Error(Errc::malformed_block, "block " + std::to_string(block) + ": missing naan");
    for (char c : r.naan)
      if (c < '0' || c > '9') throw Error(Errc::malformed_block, "block " + std::to_string(block) + ": naan '" + r.naan + "'");
    if (!r.where.empty() && !is_absolute_url(r.where)) throw Error(Errc::bad_url, r.naan + ": '" + r.where + "'");
    if (!seen.insert(r.naan).second) throw Error(Errc::duplicate_naan, r.naan);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

anvl::Record to_record(const NaanRecord& r) {
  anvl::Record rec;
  rec.add("naan", r.naan);
  if (!r.who.empty()) rec.add("who", r.who);
  if (!r.where.empty()) rec.add("where", r.where);
  if (!r.when.empty()) rec.add("when", r.when);
  if (!r.commitment.empty()) rec.add("commitment", r.commitment);
  return rec;
}

}  // namespace

std::string serialize_registry(const std::vector<NaanRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    if (!out.empty()) out += '\n';
    auto rec = to_record(r);
    for (const auto& kv : r.extra) rec.fields.push_back(kv);
    out += anvl::to_string(rec);
  }
  return out;
}

std::string naan_record_anvl(const NaanRecord& record) {
  auto rec = to_record(record);
  // commitment is only served on request
  std::erase_if(rec.fields, [](const auto& f) { return f.first == "commitment"; });
  rec.add("class", std::string(shared_class_name(classify_shared(record.naan))));
  return anvl::to_string(rec);
}

std::optional<NaanRecord> lookup(const std::vector<NaanRecord>& registry, std::string_view naan) {
  for (const auto& r : registry)
    if (r.naan == naan) return r;
  return std::nullopt;
}

Registry load_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot read registry " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Registry(parse_registry(buf.str()));
}

}  // namespace arkvoc
