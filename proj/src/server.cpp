#include <cstdio>

#include "arkvoc/resolver.hpp"
#include "httplib.h"

namespace arkvoc {

struct Server::Impl {
  const Resolver& resolver;
  httplib::Server http;

  Impl(const Resolver& r, bool access_log) : resolver(r) {
    auto handle = [this](const httplib::Request& req, httplib::Response& res) {
      const auto result = resolver.route(req.target, req.get_header_value("Accept"));
      res.status = result.status;
      if (!result.location.empty()) res.set_header("Location", result.location);
      res.set_content(result.body, result.content_type);
    };
    http.Get(".*", handle);
    if (!access_log) return;
    http.set_logger([](const httplib::Request& req, const httplib::Response& res) {
      std::printf("%s %s %d\n", req.method.c_str(), req.target.c_str(), res.status);
      std::fflush(stdout);
    });
  }
};

Server::Server(const Resolver& resolver, bool access_log)
    : impl_(std::make_unique<Impl>(resolver, access_log)) {}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace arkvoc
