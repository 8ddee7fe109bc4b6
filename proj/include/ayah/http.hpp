#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ayah::http {

/// "http://host:port/prefix" split into the origin cpp-httplib connects to
/// and a path prefix prepended to every request path.
struct Endpoint {
  std::string origin;
  std::string prefix;

  /// Throws PreconditionError on a URL without scheme or host.
  static Endpoint parse(std::string_view url);
};

struct Response {
  int status = 0;
  std::string body;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

/// nullopt when no HTTP response arrived (connect/read failure or timeout).
std::optional<Response> post_json(const Endpoint &endpoint,
                                  const std::string &path,
                                  const std::string &body,
                                  std::chrono::seconds timeout,
                                  const Headers &headers = {});

std::optional<Response> get(const Endpoint &endpoint, const std::string &path,
                            std::chrono::seconds timeout);

} // namespace ayah::http
