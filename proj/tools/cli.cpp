#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "arkvoc/anvl.hpp"
#include "arkvoc/ark.hpp"
#include "arkvoc/error.hpp"
#include "arkvoc/indexer.hpp"
#include "arkvoc/minter.hpp"
#include "arkvoc/publisher.hpp"
#include "arkvoc/registry.hpp"
#include "arkvoc/resolver.hpp"
#include "arkvoc/vocabulary.hpp"
#include "json.hpp"

namespace arkvoc::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct MintOptions {
  std::string mask = "eedddddk";
  std::string prefix;
  std::string mode = "sequential";
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  std::string state_path;
};

MinterState fresh_state(const MintOptions& o) {
  MinterTemplate t(o.mask);
  if (o.mode == "quasi_random") return MinterState::quasi_random(t, o.prefix, o.seed);
  return MinterState::sequential(t, o.prefix);
}

/// Loads the state file if present, otherwise builds one from flags.
MinterState open_state(const MintOptions& o) {
  if (!o.state_path.empty() && fs::exists(o.state_path)) return load_state(o.state_path);
  return fresh_state(o);
}

struct ServeOptions {
  std::string config_path;
  std::string listen;
  std::string host;
  std::string registry;
  std::vector<std::string> vocabs;
  std::vector<std::string> routes;
  std::string commitment_file;
};

ResolverConfig build_config(const ServeOptions& o) {
  ResolverConfig config = o.config_path.empty() ? ResolverConfig{} : load_config(o.config_path);
  if (!o.listen.empty()) {
    const auto colon = o.listen.rfind(':');
    if (colon == std::string::npos) throw Error(Errc::invalid_config, "--listen needs host:port");
    config.listen_host = o.listen.substr(0, colon);
    config.listen_port = std::stoi(o.listen.substr(colon + 1));
  }
  if (!o.host.empty()) config.public_host = o.host;
  if (!o.registry.empty()) config.registry_path = o.registry;
  for (const auto& v : o.vocabs) {
    const auto eq = v.find('=');
    if (eq == std::string::npos) throw Error(Errc::invalid_config, "--vocab needs <id>=<path>");
    config.vocabulary_paths[v.substr(0, eq)] = v.substr(eq + 1);
  }
  for (const auto& r : o.routes) config.routes.push_back(parse_route_spec(r));
  if (!o.commitment_file.empty()) {
    auto text = read_file(o.commitment_file);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    config.default_commitment = text;
  }
  config.validate();
  return config;
}

std::vector<Document> read_documents(const std::vector<std::string>& paths) {
  std::vector<Document> docs;
  for (const auto& p : paths)
    docs.push_back({p == "-" ? std::string("stdin") : fs::path(p).stem().string(), read_file(p)});
  return docs;
}

void print_parse(const ArkName& ark, const std::string& format, std::ostream& out) {
  const auto split = split_shoulder(ark.assigned_name);
  const auto cls = shared_class_name(classify_shared(ark.naan));
  if (format == "json") {
    nlohmann::ordered_json j;
    j["canonical"] = canonical_string(ark);
    j["naan"] = ark.naan;
    j["assigned_name"] = ark.assigned_name;
    j["shoulder"] = split.shoulder;
    j["blade"] = split.blade;
    j["qualifiers"] = ark.qualifiers;
    j["inflection"] = inflection_name(ark.inflection);
    j["class"] = cls;
    out << j.dump(2) << '\n';
    return;
  }
  std::string s;
  anvl::append_field(s, "canonical", canonical_string(ark));
  anvl::append_field(s, "naan", ark.naan);
  anvl::append_field(s, "assigned_name", ark.assigned_name);
  anvl::append_field(s, "shoulder", split.shoulder);
  anvl::append_field(s, "blade", split.blade);
  for (const auto& q : ark.qualifiers) anvl::append_field(s, "qualifier", q);
  anvl::append_field(s, "inflection", inflection_name(ark.inflection));
  anvl::append_field(s, "class", cls);
  out << s;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ARK identifiers for controlled vocabularies", "arkvoc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // mint
  MintOptions mint_opts;
  auto* mint_cmd = app.add_subcommand("mint", "Mint names from a template");
  mint_cmd->add_option("--template", mint_opts.mask, "Mask over d, e and a final k")->capture_default_str();
  mint_cmd->add_option("--prefix", mint_opts.prefix, "Prefix for check characters, e.g. 99152/b4");
  mint_cmd->add_option("--mode", mint_opts.mode, "Minting order")
      ->check(CLI::IsMember({"sequential", "quasi_random"}))
      ->capture_default_str();
  mint_cmd->add_option("--seed", mint_opts.seed, "Quasi-random offset seed");
  mint_cmd->add_option("--count", mint_opts.count, "Number of names")->capture_default_str();
  mint_cmd->add_option("--state", mint_opts.state_path, "State file (created if absent)");

  // parse
  std::string parse_input, format = "anvl";
  auto* parse_cmd = app.add_subcommand("parse", "Parse and normalize an ARK");
  parse_cmd->add_option("ark", parse_input, "ARK or URI containing one")->required();
  parse_cmd->add_option("--format", format)->check(CLI::IsMember({"anvl", "json"}));

  // check
  std::string check_input;
  bool compute = false;
  auto* check_cmd = app.add_subcommand("check", "Verify (or compute) a check character");
  check_cmd->add_option("string", check_input, "e.g. 99152/b4k")->required();
  check_cmd->add_flag("--compute", compute, "Print the string with its check character appended");

  // registry lookup
  std::string registry_path, naan_arg;
  auto* registry_cmd = app.add_subcommand("registry", "NAAN registry operations");
  registry_cmd->require_subcommand(1);
  auto* lookup_cmd = registry_cmd->add_subcommand("lookup", "Look up one NAAN");
  lookup_cmd->add_option("--registry", registry_path, "Registry file")->required();
  lookup_cmd->add_option("naan", naan_arg)->required();
  lookup_cmd->add_option("--format", format)->check(CLI::IsMember({"anvl", "json"}));

  // vocab load / export
  std::string vocab_path, write_path, export_format = "nt", host = "n2t.net";
  auto* vocab_cmd = app.add_subcommand("vocab", "Vocabulary operations");
  vocab_cmd->require_subcommand(1);
  auto* load_cmd = vocab_cmd->add_subcommand("load", "Load, mint missing names, report");
  load_cmd->add_option("vocabulary", vocab_path, "Vocabulary JSON")->required();
  load_cmd->add_option("--state", mint_opts.state_path, "Minter state for unnamed terms");
  load_cmd->add_option("--write", write_path, "Write the named vocabulary JSON here");
  auto* export_cmd = vocab_cmd->add_subcommand("export", "Export linked data or records");
  export_cmd->add_option("vocabulary", vocab_path)->required();
  export_cmd->add_option("--format", export_format)->check(CLI::IsMember({"nt", "anvl", "json"}))->capture_default_str();
  export_cmd->add_option("--host", host, "Resolver host for subject URIs")->capture_default_str();

  // publish / verify
  std::string out_dir;
  auto* publish_cmd = app.add_subcommand("publish", "Write the static site tree");
  publish_cmd->add_option("vocabulary", vocab_path)->required();
  publish_cmd->add_option("--out", out_dir, "Output directory")->required();
  publish_cmd->add_option("--host", host, "Resolver host for links")->capture_default_str();
  auto* verify_cmd = app.add_subcommand("verify", "Compare a published tree with the vocabulary");
  verify_cmd->add_option("vocabulary", vocab_path)->required();
  verify_cmd->add_option("--out", out_dir, "Published directory")->required();

  // serve / trace
  ServeOptions serve_opts;
  auto add_resolver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", serve_opts.config_path, "Resolver config file");
    cmd->add_option("--listen", serve_opts.listen, "host:port");
    cmd->add_option("--host", serve_opts.host, "Public resolver hostname");
    cmd->add_option("--registry", serve_opts.registry, "NAAN registry file");
    cmd->add_option("--vocab", serve_opts.vocabs, "<id>=<path>")->allow_extra_args(false);
    cmd->add_option("--route", serve_opts.routes, "<naan>/<shoulder><subspace>=<vocab-id>")->allow_extra_args(false);
    cmd->add_option("--commitment-file", serve_opts.commitment_file, "Commitment statement text");
  };
  auto* serve_cmd = app.add_subcommand("serve", "Run the resolver");
  add_resolver_flags(serve_cmd);
  std::string trace_input;
  auto* trace_cmd = app.add_subcommand("trace", "Print the resolution hops for an ARK");
  trace_cmd->add_option("ark", trace_input)->required();
  add_resolver_flags(trace_cmd);

  // index / drift
  std::vector<std::string> doc_paths, vocab_paths;
  IndexOptions index_opts;
  std::string result_format = "lines";
  auto* index_cmd = app.add_subcommand("index", "Match documents against vocabularies");
  index_cmd->add_option("documents", doc_paths, "Text files ('-' for stdin)")->required();
  index_cmd->add_option("--vocab", vocab_paths, "Vocabulary JSON (repeatable)")->required()->allow_extra_args(false);
  index_cmd->add_option("--max-n", index_opts.max_n)->check(CLI::PositiveNumber)->capture_default_str();
  index_cmd->add_option("--top-k", index_opts.top_k, "0 = unlimited")->capture_default_str();
  index_cmd->add_option("--format", result_format)->check(CLI::IsMember({"lines", "json"}));

  std::string vocab_a, vocab_b, drift_mode = "both";
  std::size_t drift_top_k = 0;
  auto* drift_cmd = app.add_subcommand("drift", "Concept drift between two vocabularies");
  drift_cmd->add_option("documents", doc_paths)->required();
  drift_cmd->add_option("--vocab-a", vocab_a, "Historical vocabulary")->required();
  drift_cmd->add_option("--vocab-b", vocab_b, "Contemporary vocabulary")->required();
  drift_cmd->add_option("--mode", drift_mode)->check(CLI::IsMember({"exclusive", "absence", "both"}))->capture_default_str();
  drift_cmd->add_option("--max-n", index_opts.max_n)->check(CLI::PositiveNumber);
  drift_cmd->add_option("--top-k", drift_top_k, "0 = unlimited")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 2;
  }

  try {
    if (*mint_cmd) {
      std::optional<StateLock> lock;
      if (!mint_opts.state_path.empty()) lock.emplace(mint_opts.state_path);
      auto state = open_state(mint_opts);
      for (std::uint64_t i = 0; i < mint_opts.count; ++i) out << mint_next(state) << '\n';
      if (!mint_opts.state_path.empty()) save_state(state, mint_opts.state_path);
    } else if (*parse_cmd) {
      print_parse(parse(parse_input), format, out);
    } else if (*check_cmd) {
      if (compute) {
        out << check_input << check_char(check_input) << '\n';
      } else {
        const bool ok = verify_check(check_input);
        out << (ok ? "valid" : "invalid") << '\n';
        if (!ok) return 1;
      }
    } else if (*lookup_cmd) {
      const auto registry = load_registry(registry_path);
      const auto* record = registry.lookup(naan_arg);
      if (!record) {
        err << "naan-unknown: " << naan_arg << '\n';
        return 1;
      }
      if (format == "json") {
        nlohmann::ordered_json j;
        j["naan"] = record->naan;
        j["who"] = record->who;
        j["where"] = record->where;
        j["when"] = record->when;
        j["commitment"] = record->commitment;
        j["class"] = shared_class_name(classify_shared(record->naan));
        out << j.dump(2) << '\n';
      } else {
        out << naan_record_anvl(*record);
        if (!record->commitment.empty()) {
          std::string s;
          anvl::append_field(s, "commitment", record->commitment);
          out << s;
        }
      }
    } else if (*load_cmd) {
      std::optional<StateLock> lock;
      std::optional<MinterState> state;
      if (!mint_opts.state_path.empty()) {
        lock.emplace(mint_opts.state_path);
        state = load_state(mint_opts.state_path);
      }
      const auto loaded = load_vocabulary(read_file(vocab_path), state ? &*state : nullptr);
      if (state) save_state(*state, mint_opts.state_path);
      for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
      const auto& v = loaded.vocabulary;
      std::string s;
      anvl::append_field(s, "vocabulary", v.id);
      anvl::append_field(s, "title", v.title);
      anvl::append_field(s, "ark", "ark:/" + v.naan + "/" + v.assigned_name());
      anvl::append_field(s, "terms", std::to_string(v.terms().size()));
      anvl::append_field(s, "warnings", std::to_string(loaded.warnings.size()));
      for (const auto& [name, t] : v.terms()) anvl::append_field(s, "term", v.term_ark(name) + " " + t.pref_label);
      out << s;
      if (!write_path.empty()) {
        std::ofstream f(write_path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(Errc::io_failure, "cannot write " + write_path);
        f << to_document(v);
      }
    } else if (*export_cmd) {
      const auto loaded = load_vocabulary(read_file(vocab_path));
      const auto& v = loaded.vocabulary;
      if (export_format == "nt") {
        out << linked_data(v, host);
      } else if (export_format == "json") {
        out << to_document(v);
      } else {
        bool first = true;
        for (const auto& [name, t] : v.terms()) {
          if (!first) out << '\n';
          first = false;
          out << term_record(v, t);
        }
      }
    } else if (*publish_cmd) {
      const auto loaded = load_vocabulary(read_file(vocab_path));
      for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
      out << serialize_manifest(publish(loaded.vocabulary, out_dir, host));
    } else if (*verify_cmd) {
      const auto loaded = load_vocabulary(read_file(vocab_path));
      const auto report = verify_published(loaded.vocabulary, out_dir);
      out << verify_report_anvl(report);
      if (!report.clean()) return 1;
    } else if (*serve_cmd) {
      const auto resolver = Resolver::load(build_config(serve_opts));
      Server server(resolver, true);
      const auto& c = resolver.config();
      const int port = server.bind(c.listen_host, c.listen_port);
      if (port < 0) throw Error(Errc::io_failure, "cannot bind " + c.listen_host + ":" + std::to_string(c.listen_port));
      err << "listening on " << c.listen_host << ':' << port << '\n';
      if (!server.listen_after_bind()) return 1;
    } else if (*trace_cmd) {
      const auto resolver = Resolver::load(build_config(serve_opts));
      for (const auto& hop : resolver.resolve_chain(parse(trace_input))) out << hop << '\n';
    } else if (*index_cmd) {
      std::vector<Vocabulary> vocabs;
      for (const auto& p : vocab_paths) vocabs.push_back(load_vocabulary(read_file(p)).vocabulary);
      std::vector<const Vocabulary*> ptrs;
      for (const auto& v : vocabs) ptrs.push_back(&v);
      const auto results = index_corpus(read_documents(doc_paths), ptrs, index_opts);
      out << (result_format == "json" ? results_json(results) : results_lines(results));
    } else if (*drift_cmd) {
      const auto va = load_vocabulary(read_file(vocab_a)).vocabulary;
      const auto vb = load_vocabulary(read_file(vocab_b)).vocabulary;
      index_opts.top_k = drift_top_k;
      const auto docs = read_documents(doc_paths);
      const auto results_a = merge_results(index_corpus(docs, {&va}, index_opts));
      const auto results_b = merge_results(index_corpus(docs, {&vb}, index_opts));
      bool first = true;
      if (drift_mode != "absence") {
        out << drift_anvl(drift_exclusive(results_a, results_b));
        first = false;
      }
      if (drift_mode != "exclusive") {
        if (!first) out << '\n';
        out << drift_anvl(drift_vocab_absence(results_a, vb));
      }
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace arkvoc::cli
