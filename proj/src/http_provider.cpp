#include "ayah/http_provider.hpp"

#include "json.hpp"

#include "ayah/error.hpp"

namespace ayah {

using json = nlohmann::json;

HttpProvider::HttpProvider(std::string url, std::string key,
                           std::chrono::seconds timeout)
    : url_(std::move(url)), endpoint_(http::Endpoint::parse(url_)),
      key_(std::move(key)), timeout_(timeout) {}

std::string HttpProvider::call(const std::string &path,
                               const std::string &body) const {
  http::Headers headers;
  if (!key_.empty())
    headers.emplace_back("Authorization", "Bearer " + key_);
  auto res = http::post_json(endpoint_, path, body, timeout_, headers);
  if (!res)
    throw ProviderError("provider " + url_ + path + " is unreachable");
  if (res->status != 200)
    throw ProviderError("provider " + url_ + path + " answered HTTP " +
                        std::to_string(res->status));
  return res->body;
}

std::string HttpProvider::translate(std::string_view text, std::string_view src,
                                    std::string_view tgt) const {
  json body{{"text", text}, {"src", src}, {"tgt", tgt}};
  auto parsed = json::parse(call("/translate", body.dump()), nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      !parsed.contains("output") || !parsed["output"].is_string())
    throw ProviderError("provider " + url_ +
                        "/translate: response lacks string \"output\"");
  return parsed["output"].get<std::string>();
}

std::vector<std::string> HttpProvider::paraphrase(std::string_view text,
                                                  std::string_view lang,
                                                  std::size_t n) const {
  json body{{"text", text}, {"lang", lang}, {"n", n}};
  auto parsed = json::parse(call("/paraphrase", body.dump()), nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      !parsed.contains("outputs") || !parsed["outputs"].is_array())
    throw ProviderError("provider " + url_ +
                        "/paraphrase: response lacks \"outputs\" array");
  std::vector<std::string> out;
  for (const auto &v : parsed["outputs"]) {
    if (!v.is_string())
      throw ProviderError("provider " + url_ +
                          "/paraphrase: non-string output");
    out.push_back(v.get<std::string>());
  }
  return out;
}

} // namespace ayah
