#include "ayah/http.hpp"

#include "httplib.h"

#include "ayah/error.hpp"

namespace ayah::http {

Endpoint Endpoint::parse(std::string_view url) {
  auto scheme = url.find("://");
  if (scheme == std::string_view::npos || scheme == 0 ||
      scheme + 3 >= url.size())
    throw PreconditionError("endpoint \"" + std::string(url) +
                            "\" must look like http://host[:port][/path]");
  auto slash = url.find('/', scheme + 3);
  Endpoint e;
  e.origin = std::string(url.substr(0, slash));
  if (slash != std::string_view::npos) {
    e.prefix = std::string(url.substr(slash));
    while (!e.prefix.empty() && e.prefix.back() == '/')
      e.prefix.pop_back();
  }
  return e;
}

namespace {

httplib::Client make_client(const Endpoint &endpoint,
                            std::chrono::seconds timeout) {
  httplib::Client client(endpoint.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

} // namespace

std::optional<Response> post_json(const Endpoint &endpoint,
                                  const std::string &path,
                                  const std::string &body,
                                  std::chrono::seconds timeout,
                                  const Headers &headers) {
  auto client = make_client(endpoint, timeout);
  httplib::Headers h;
  for (const auto &[k, v] : headers)
    h.emplace(k, v);
  auto res = client.Post(endpoint.prefix + path, h, body,
                         "application/json; charset=utf-8");
  if (!res)
    return std::nullopt;
  return Response{res->status, res->body};
}

std::optional<Response> get(const Endpoint &endpoint, const std::string &path,
                            std::chrono::seconds timeout) {
  auto client = make_client(endpoint, timeout);
  auto res = client.Get(endpoint.prefix + path);
  if (!res)
    return std::nullopt;
  return Response{res->status, res->body};
}

} // namespace ayah::http
