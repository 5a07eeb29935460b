#include "arkvoc/resolver.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "arkvoc/anvl.hpp"
#include "arkvoc/error.hpp"
#include "arkvoc/publisher.hpp"

namespace arkvoc {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kHtml = "text/html; charset=utf-8";
constexpr std::string_view kText = "text/plain; charset=utf-8";

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string resolve_path(const fs::path& base, const std::string& p) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

std::string trim_trailing(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string strip_slash(std::string_view s) {
  while (!s.empty() && s.back() == '/') s.remove_suffix(1);
  return std::string(s);
}

/// `%2F` / `%2f` only; other escapes are left alone.
std::string decode_slashes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && s[i + 1] == '2' && (s[i + 2] == 'F' || s[i + 2] == 'f')) {
      out += '/';
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

bool wants_text(std::string_view accept) {
  return accept.find("text/plain") != std::string_view::npos && accept.find("text/html") == std::string_view::npos;
}

Response text_response(int status, std::string body) {
  return {status, std::string(kText), std::move(body), {}};
}

/// Label-relative pieces of a request: strict NAAN and assigned name, plus
/// the raw remainder (starting with `/`, or empty).
struct RequestArk {
  ArkName base;
  std::string remainder;
};

RequestArk split_request(std::string_view path) {
  std::size_t label = std::string_view::npos;
  for (std::size_t i = 0; i + 4 <= path.size(); ++i) {
    if ((i == 0 || path[i - 1] == '/') && path.substr(i, 4) == "ark:") {
      label = i;
      break;
    }
  }
  if (label == std::string_view::npos) throw Error(Errc::malformed_label, "no ark: label in '" + std::string(path) + "'");

  auto rest = path.substr(label + 4);
  if (!rest.empty() && rest.front() == '/') rest.remove_prefix(1);
  const auto naan_end = rest.find('/');
  if (naan_end == std::string_view::npos) {
    // let parse() produce the precise diagnostic
    parse("ark:/" + std::string(rest));
  }
  const auto name_end = rest.find('/', naan_end + 1);
  RequestArk out;
  out.base = parse("ark:/" + std::string(rest.substr(0, name_end)));
  if (name_end != std::string_view::npos) out.remainder = std::string(rest.substr(name_end));
  return out;
}

}  // namespace

void ResolverConfig::validate() const {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : routes) {
    if (r.naan.empty() || r.shoulder.empty()) throw Error(Errc::invalid_config, "route without naan/shoulder");
    if (!seen.emplace(r.naan, r.assigned_name()).second)
      throw Error(Errc::invalid_config, "duplicate route " + r.naan + "/" + r.assigned_name());
    if (!vocabulary_paths.contains(r.vocabulary_id))
      throw Error(Errc::invalid_config, "route " + r.naan + "/" + r.assigned_name() + " names unknown vocabulary '" +
                                            r.vocabulary_id + "'");
  }
  if (redirect_status < 300 || redirect_status > 399)
    throw Error(Errc::invalid_config, "redirect status " + std::to_string(redirect_status));
}

HostedRoute parse_route_spec(std::string_view spec) {
  const auto eq = spec.find('=');
  const auto slash = spec.find('/');
  if (eq == std::string_view::npos || slash == std::string_view::npos || slash > eq)
    throw Error(Errc::invalid_config, "route '" + std::string(spec) + "' is not <naan>/<shoulder><subspace>=<vocab-id>");
  HostedRoute r;
  r.naan = std::string(spec.substr(0, slash));
  const auto split = split_shoulder(spec.substr(slash + 1, eq - slash - 1));
  r.shoulder = split.shoulder;
  r.subspace = split.blade;
  r.vocabulary_id = std::string(spec.substr(eq + 1));
  if (r.vocabulary_id.empty()) throw Error(Errc::invalid_config, "route '" + std::string(spec) + "' has no vocabulary id");
  return r;
}

ResolverConfig parse_config(std::string_view text, const fs::path& base_dir) {
  ResolverConfig config;
  const auto records = anvl::parse(text);
  bool first = true;
  std::string commitment_file;
  for (const auto& rec : records) {
    if (first && !rec.get("route")) {
      first = false;
      for (const auto& [key, value] : rec.fields) {
        if (key == "listen") {
          const auto colon = value.rfind(':');
          if (colon == std::string::npos) throw Error(Errc::invalid_config, "listen '" + value + "' needs host:port");
          config.listen_host = value.substr(0, colon);
          config.listen_port = std::stoi(value.substr(colon + 1));
        } else if (key == "host") {
          config.public_host = value;
        } else if (key == "registry") {
          config.registry_path = resolve_path(base_dir, value);
        } else if (key == "redirect-status") {
          config.redirect_status = std::stoi(value);
        } else if (key == "commitment-file") {
          commitment_file = resolve_path(base_dir, value);
        } else if (key == "commitment") {
          config.default_commitment = value;
        } else if (key == "vocab") {
          const auto eq = value.find('=');
          if (eq == std::string::npos) throw Error(Errc::invalid_config, "vocab '" + value + "' needs <id>=<path>");
          config.vocabulary_paths[value.substr(0, eq)] = resolve_path(base_dir, value.substr(eq + 1));
        } else {
          throw Error(Errc::invalid_config, "unknown key '" + key + "'");
        }
      }
      continue;
    }
    first = false;
    const auto spec = rec.get("route");
    const auto vocab = rec.get("vocab");
    if (!spec || !vocab) throw Error(Errc::invalid_config, "route record needs 'route' and 'vocab'");
    auto route = parse_route_spec(*spec + "=" + *vocab);
    route.commitment = rec.get("commitment").value_or("");
    route.target = strip_slash(rec.get("target").value_or(""));
    route.payload = strip_slash(rec.get("payload").value_or(""));
    config.routes.push_back(std::move(route));
  }
  if (!commitment_file.empty()) config.default_commitment = trim_trailing(read_text(commitment_file));
  config.validate();
  return config;
}

ResolverConfig load_config(const fs::path& path) {
  return parse_config(read_text(path), path.parent_path());
}

Resolver::Resolver(ResolverConfig config, Registry registry, std::map<std::string, Vocabulary> vocabularies)
    : config_(std::move(config)), registry_(std::move(registry)), vocabularies_(std::move(vocabularies)) {
  config_.validate();
  for (const auto& r : config_.routes) {
    if (!vocabularies_.contains(r.vocabulary_id))
      throw Error(Errc::invalid_config, "vocabulary '" + r.vocabulary_id + "' is not loaded");
  }
}

namespace {

std::map<std::string, Vocabulary> load_vocabularies(const ResolverConfig& config) {
  std::map<std::string, Vocabulary> vocabularies;
  for (const auto& [id, path] : config.vocabulary_paths) {
    auto loaded = load_vocabulary_file(path);
    if (loaded.vocabulary.id != id)
      throw Error(Errc::invalid_config,
                  "vocabulary file " + path + " has id '" + loaded.vocabulary.id + "', expected '" + id + "'");
    vocabularies.emplace(id, std::move(loaded.vocabulary));
  }
  return vocabularies;
}

}  // namespace

Resolver Resolver::load(ResolverConfig config) {
  config.validate();
  Registry registry;
  if (!config.registry_path.empty()) registry = load_registry(config.registry_path);
  auto vocabularies = load_vocabularies(config);
  return Resolver(std::move(config), std::move(registry), std::move(vocabularies));
}

const HostedRoute* Resolver::find_route(std::string_view naan, std::string_view assigned_name) const noexcept {
  for (const auto& r : config_.routes)
    if (r.naan == naan && r.assigned_name() == assigned_name) return &r;
  return nullptr;
}

Response Resolver::healthcheck() const {
  std::string body;
  anvl::append_field(body, "status", "ok");
  anvl::append_field(body, "registry", std::to_string(registry_.size()));
  anvl::append_field(body, "routes", std::to_string(config_.routes.size()));
  for (const auto& [id, v] : vocabularies_) {
    anvl::append_field(body, "vocabulary", id);
    anvl::append_field(body, "terms", std::to_string(v.terms().size()));
  }
  return text_response(200, std::move(body));
}

Response Resolver::route(std::string_view request_target, std::string_view accept) const {
  std::string target = decode_slashes(request_target);
  if (target == "/healthz") return healthcheck();

  Inflection inflection = Inflection::none;
  if (const auto q = target.find('?'); q != std::string::npos) {
    const auto query = std::string_view(target).substr(q);
    if (query == "??") {
      inflection = Inflection::commitment;
    } else if (query == "?") {
      inflection = Inflection::metadata;
    } else {
      return text_response(400, "malformed-ark: unexpected query '" + std::string(query) + "'\n");
    }
    target.resize(q);
  }

  RequestArk req;
  try {
    req = split_request(target);
  } catch (const Error& e) {
    if (e.code() == Errc::malformed_label) return text_response(501, std::string(e.what()) + "\n");
    return text_response(400, "malformed-ark: " + std::string(e.what()) + "\n");
  }
  const auto& naan = req.base.naan;

  if (const auto* hosted = find_route(naan, req.base.assigned_name)) {
    ArkName ark;
    try {
      ark = parse("ark:/" + naan + "/" + req.base.assigned_name + req.remainder);
    } catch (const Error& e) {
      return text_response(400, "malformed-ark: " + std::string(e.what()) + "\n");
    }
    const auto canonical = canonical_string(ark);
    const auto& vocab = vocabularies_.at(hosted->vocabulary_id);
    const Term* term = nullptr;
    if (ark.qualifiers.size() > 1 || (ark.qualifiers.size() == 1 && !(term = vocab.get_term(ark.qualifiers[0]))))
      return text_response(404, "term-unknown: " + canonical + "\n");

    if (inflection != Inflection::none) {
      std::string body;
      if (term) {
        body = term_record(vocab, *term);
      } else {
        anvl::append_field(body, "ark", canonical);
        anvl::append_field(body, "vocabulary", vocab.title);
        anvl::append_field(body, "terms", std::to_string(vocab.terms().size()));
      }
      if (inflection == Inflection::commitment)
        anvl::append_field(body, "commitment", hosted->commitment.empty() ? config_.default_commitment : hosted->commitment);
      return text_response(200, std::move(body));
    }
    if (term && wants_text(accept)) return text_response(200, term_record(vocab, *term));
    return {200, std::string(kHtml),
            term ? render_term_page(vocab, *term, config_.public_host) : render_index_page(vocab, config_.public_host),
            {}};
  }

  const auto* record = registry_.lookup(naan);
  if (record == nullptr) return text_response(404, "naan-unknown: " + naan + "\n");
  const auto identity = "ark:/" + naan + "/" + req.base.assigned_name + req.remainder;

  if (inflection != Inflection::none) {
    std::string body;
    anvl::append_field(body, "ark", identity);
    body += naan_record_anvl(*record);
    if (inflection == Inflection::commitment) anvl::append_field(body, "commitment", record->commitment);
    return text_response(200, std::move(body));
  }
  if (record->where.empty()) return text_response(404, "naan-unknown: " + naan + " has no redirect target\n");
  Response r = text_response(config_.redirect_status, "");
  r.location = strip_slash(record->where) + "/" + identity;
  r.body = "Redirecting to " + r.location + "\n";
  return r;
}

std::vector<std::string> Resolver::resolve_chain(const ArkName& ark) const {
  ArkName plain = ark;
  plain.inflection = Inflection::none;
  std::vector<std::string> hops{to_uri(plain, config_.public_host)};

  if (const auto* hosted = find_route(ark.naan, ark.assigned_name)) {
    const auto& vocab = vocabularies_.at(hosted->vocabulary_id);
    if (ark.qualifiers.size() > 1 || (ark.qualifiers.size() == 1 && !vocab.get_term(ark.qualifiers[0])))
      throw Error(Errc::term_unknown, canonical_string(plain));
    std::string remainder;
    for (const auto& q : ark.qualifiers) remainder += "/" + q;
    if (!hosted->target.empty()) hops.push_back(hosted->target + remainder);
    if (!hosted->payload.empty()) hops.push_back(hosted->payload + remainder);
    return hops;
  }
  const auto* record = registry_.lookup(ark.naan);
  if (record == nullptr || record->where.empty()) throw Error(Errc::naan_unknown, ark.naan);
  hops.push_back(strip_slash(record->where) + "/" + canonical_string(plain));
  return hops;
}

std::vector<std::string> resolve_chain(const ArkName& ark, const ResolverConfig& config, const Registry& registry) {
  return Resolver(config, registry, load_vocabularies(config)).resolve_chain(ark);
}

}  // namespace arkvoc
