#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "arkvoc/ark.hpp"
#include "arkvoc/registry.hpp"
#include "arkvoc/vocabulary.hpp"

namespace arkvoc {

/// A locally hosted vocabulary under `<naan>/<shoulder><subspace>`.
/// `target` and `payload` optionally describe the institutional and static
/// hosting hops reported by resolve_chain.
struct HostedRoute {
  std::string naan;
  std::string shoulder;
  std::string subspace;
  std::string vocabulary_id;
  std::string commitment;
  std::string target;
  std::string payload;

  std::string assigned_name() const { return shoulder + subspace; }
};

struct ResolverConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::string public_host = "n2t.net";
  std::string registry_path;
  std::map<std::string, std::string> vocabulary_paths;  // id -> JSON path
  std::vector<HostedRoute> routes;
  std::string default_commitment;
  int redirect_status = 302;

  /// Throws Error(invalid_config) on duplicate routes or routes naming an
  /// unknown vocabulary id.
  void validate() const;
};

/// Config file: a first ANVL record with `listen`, `host`, `registry`,
/// `redirect-status`, `commitment-file` and repeated `vocab: <id>=<path>`,
/// followed by one record per route (`route`, `vocab`, `commitment`,
/// `target`, `payload`). Relative paths resolve against `base_dir`.
ResolverConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ResolverConfig load_config(const std::filesystem::path& path);

/// Parses `--route` flag values: `<naan>/<shoulder><subspace>=<vocab-id>`.
HostedRoute parse_route_spec(std::string_view spec);

struct Response {
  int status = 200;
  std::string content_type = "text/plain; charset=utf-8";
  std::string body;
  std::string location;

  friend bool operator==(const Response&, const Response&) = default;
};

class Resolver {
 public:
  Resolver(ResolverConfig config, Registry registry, std::map<std::string, Vocabulary> vocabularies);

  /// Reads the registry and every vocabulary named by the config.
  static Resolver load(ResolverConfig config);

  const ResolverConfig& config() const noexcept { return config_; }
  const Registry& registry() const noexcept { return registry_; }
  const std::map<std::string, Vocabulary>& vocabularies() const noexcept { return vocabularies_; }

  /// Handles one request target (path plus optional `?`/`??`). `accept` is
  /// the raw Accept header.
  Response route(std::string_view request_target, std::string_view accept = {}) const;

  /// Hop list the deployment produces for `ark`, without network I/O.
  /// Throws Error(naan_unknown) or Error(term_unknown).
  std::vector<std::string> resolve_chain(const ArkName& ark) const;

  Response healthcheck() const;

  const HostedRoute* find_route(std::string_view naan, std::string_view assigned_name) const noexcept;

 private:
  ResolverConfig config_;
  Registry registry_;
  std::map<std::string, Vocabulary> vocabularies_;
};

std::vector<std::string> resolve_chain(const ArkName& ark, const ResolverConfig& config,
                                       const Registry& registry);

/// Blocking HTTP/1.1 front end over a Resolver.
class Server {
 public:
  /// `access_log` prints one line per request to stdout.
  explicit Server(const Resolver& resolver, bool access_log = false);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace arkvoc
