#include "ayah/scorer.hpp"

#include <cmath>
#include <thread>

#include "json.hpp"

#include "ayah/error.hpp"
#include "ayah/http.hpp"
#include "ayah/parallel.hpp"

namespace ayah {

using json = nlohmann::json;

RemoteScorer::RemoteScorer(std::string endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {
  (void)http::Endpoint::parse(endpoint_);
  if (options_.max_batch == 0)
    throw PreconditionError("remote scorer batch limit must be positive");
  if (options_.attempts < 1)
    options_.attempts = 1;
}

std::vector<double>
RemoteScorer::score_chunk(std::string_view question,
                          std::span<const Candidate> chunk) const {
  json body;
  body["question"] = question;
  body["passages"] = json::array();
  for (const auto &c : chunk)
    body["passages"].push_back(c.text);
  const std::string payload = body.dump();
  const auto endpoint = http::Endpoint::parse(endpoint_);

  std::string last_failure;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    if (attempt > 1)
      std::this_thread::sleep_for(options_.backoff * (1 << (attempt - 2)));
    auto res = http::post_json(endpoint, "/score", payload, options_.timeout);
    if (!res) {
      last_failure = "no response";
      continue;
    }
    if (res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw ProtocolError("scorer at " + endpoint_ + " answered HTTP " +
                          std::to_string(res->status));
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() ||
        !parsed.contains("scores") || !parsed["scores"].is_array())
      throw ProtocolError("scorer response lacks a \"scores\" array");
    const auto &arr = parsed["scores"];
    if (arr.size() != chunk.size())
      throw ProtocolError("scorer returned " + std::to_string(arr.size()) +
                          " scores for " + std::to_string(chunk.size()) +
                          " passages");
    std::vector<double> scores;
    scores.reserve(arr.size());
    for (const auto &v : arr) {
      if (!v.is_number())
        throw ProtocolError("scorer returned a non-numeric score");
      double x = v.get<double>();
      if (!std::isfinite(x))
        throw ProtocolError("scorer returned a non-finite score");
      scores.push_back(x);
    }
    return scores;
  }
  throw TransportError("scorer at " + endpoint_ + " failed after " +
                       std::to_string(options_.attempts) +
                       " attempts: " + last_failure);
}

std::vector<double>
RemoteScorer::score_batch(const ScoringQuery &query,
                          std::span<const Candidate> candidates) const {
  const std::size_t limit = options_.max_batch;
  const std::size_t chunks = (candidates.size() + limit - 1) / limit;
  std::vector<std::vector<double>> parts(chunks);
  parallel_for(chunks, options_.max_in_flight, [&](std::size_t i) {
    auto chunk = candidates.subspan(
        i * limit, std::min(limit, candidates.size() - i * limit));
    parts[i] = score_chunk(query.text, chunk);
  });
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (auto &p : parts)
    scores.insert(scores.end(), p.begin(), p.end());
  return scores;
}

std::string RemoteScorer::health() const {
  auto res = http::get(http::Endpoint::parse(endpoint_), "/health",
                       options_.timeout);
  if (!res)
    throw TransportError("scorer at " + endpoint_ + " is unreachable");
  if (res->status != 200)
    throw TransportError("scorer at " + endpoint_ + " is not ready (HTTP " +
                         std::to_string(res->status) + ")");
  json parsed = json::parse(res->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      parsed.value("status", "") != "ok")
    throw ProtocolError("malformed /health response from " + endpoint_);
  return parsed.value("model", "");
}

std::vector<double> remote_score_batch(std::string_view question_text,
                                       std::span<const std::string> passage_texts,
                                       const RemoteScorer &scorer) {
  std::vector<Candidate> candidates;
  candidates.reserve(passage_texts.size());
  for (const auto &t : passage_texts)
    candidates.push_back({{}, t});
  return scorer.score_batch({{}, question_text}, candidates);
}

} // namespace ayah
