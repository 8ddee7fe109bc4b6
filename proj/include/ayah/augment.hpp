#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ayah/dataset.hpp"

namespace ayah {

inline constexpr std::string_view kArabic = "ar";
inline constexpr std::string_view kEnglish = "en";

/// Machine translation behind a minimal contract. Implementations are
/// stateless per call and must be safe to call from several threads; they
/// throw ProviderError on failure and never return empty text for non-empty
/// input.
class TranslationProvider {
public:
  virtual ~TranslationProvider() = default;
  virtual std::string provider_id() const = 0;
  virtual std::string translate(std::string_view text, std::string_view src,
                                std::string_view tgt) const = 0;
};

/// Returns `n` rewordings of `text` in language `lang`.
class ParaphraseProvider {
public:
  virtual ~ParaphraseProvider() = default;
  virtual std::string provider_id() const = 0;
  virtual std::vector<std::string>
  paraphrase(std::string_view text, std::string_view lang,
             std::size_t n) const = 0;
};

/// Test provider: returns the input prefixed with "[<tgt>]".
class EchoTranslationProvider final : public TranslationProvider {
public:
  std::string provider_id() const override { return "echo"; }
  std::string translate(std::string_view text, std::string_view src,
                        std::string_view tgt) const override;
};

/// Test provider: the k-th paraphrase is the input prefixed with "[p<k>]".
class EchoParaphraseProvider final : public ParaphraseProvider {
public:
  std::string provider_id() const override { return "echo"; }
  std::vector<std::string> paraphrase(std::string_view text,
                                      std::string_view lang,
                                      std::size_t n) const override;
};

/// Persistent provider-output cache, keyed by (provider_id, src, tgt,
/// SHA-256 of the input). The JSONL file is append-only; when a key repeats,
/// the last line wins. Appends are serialized, lookups may run concurrently
/// with them.
class TranslationCache {
public:
  /// Memory-only cache.
  TranslationCache() = default;
  /// Loads `path` if it exists and appends new entries to it.
  explicit TranslationCache(const std::filesystem::path &path);

  std::optional<std::string> lookup(std::string_view provider_id,
                                    std::string_view src, std::string_view tgt,
                                    std::string_view input) const;
  void store(std::string_view provider_id, std::string_view src,
             std::string_view tgt, std::string_view input,
             std::string_view output);

  std::size_t size() const;

private:
  using Key = std::tuple<std::string, std::string, std::string, std::string>;

  mutable std::mutex mutex_;
  std::map<Key, std::string> entries_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
};

struct RetryPolicy {
  int attempts = 3;
  /// Delay before the second attempt; doubles for each further attempt.
  std::chrono::milliseconds backoff{500};
};

struct AugmentOptions {
  std::size_t max_in_flight = 4;
  RetryPolicy retry;
};

/// Fills text_en (Arabic -> English) for every question that lacks it.
/// Output order equals input order. Throws ProviderError naming the question.
std::vector<Question> translate_questions(const std::vector<Question> &questions,
                                          const TranslationProvider &provider,
                                          TranslationCache &cache,
                                          const AugmentOptions &options = {});

struct Expansion {
  std::vector<Question> questions;
  Qrels qrels;
};

/// Adds `n` paraphrases per input question, each placed right after its
/// parent with id "<parent>#p<k>", split and qtype inherited, and the
/// parent's judgments replicated. Paraphrasing happens on the Arabic text;
/// when `translator` is given the new variants are then translated.
/// Throws PreconditionError for paraphrase inputs or n == 0, ProviderError,
/// and DuplicateParaphrase.
Expansion paraphrase_and_expand(const std::vector<Question> &questions,
                                const Qrels &qrels,
                                const ParaphraseProvider &provider,
                                std::size_t n, TranslationCache &cache,
                                const AugmentOptions &options = {},
                                const TranslationProvider *translator = nullptr);

/// English -> Arabic rendering of a retrieved passage, cached like
/// translate. Throws PreconditionError on empty input.
std::string back_translate(std::string_view text_en,
                           const TranslationProvider &provider,
                           TranslationCache &cache,
                           const AugmentOptions &options = {});

struct Deduplicated {
  std::vector<Question> questions;
  std::vector<std::string> dropped;
};

/// Drops every question whose standardized text_ar equals that of an earlier
/// question. Kept questions are returned unmodified.
Deduplicated dedupe_questions(const std::vector<Question> &questions);

} // namespace ayah
