#pragma once

#include <chrono>
#include <string>

#include "ayah/augment.hpp"
#include "ayah/http.hpp"

namespace ayah {

/// Client for a translation/paraphrase service:
///   POST /translate  {"text","src","tgt"} -> {"output": s}
///   POST /paraphrase {"text","lang","n"}  -> {"outputs": [s...]}
/// A non-empty key is sent as "Authorization: Bearer <key>". Any failure,
/// including a non-200 status, raises ProviderError; retries belong to the
/// caller.
class HttpProvider final : public TranslationProvider,
                           public ParaphraseProvider {
public:
  HttpProvider(std::string url, std::string key = {},
               std::chrono::seconds timeout = std::chrono::seconds(60));

  std::string provider_id() const override { return "remote:" + url_; }
  std::string translate(std::string_view text, std::string_view src,
                        std::string_view tgt) const override;
  std::vector<std::string> paraphrase(std::string_view text,
                                      std::string_view lang,
                                      std::size_t n) const override;

private:
  std::string call(const std::string &path, const std::string &body) const;

  std::string url_;
  http::Endpoint endpoint_;
  std::string key_;
  std::chrono::seconds timeout_;
};

} // namespace ayah
