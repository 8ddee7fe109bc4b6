#include "ayah/augment.hpp"

#include <thread>
#include <unordered_set>

#include "json.hpp"

#include "ayah/digest.hpp"
#include "ayah/error.hpp"
#include "ayah/io.hpp"
#include "ayah/parallel.hpp"
#include "ayah/text.hpp"

namespace ayah {

using ordered_json = nlohmann::ordered_json;

std::string EchoTranslationProvider::translate(std::string_view text,
                                               std::string_view /*src*/,
                                               std::string_view tgt) const {
  return "[" + std::string(tgt) + "]" + std::string(text);
}

std::vector<std::string>
EchoParaphraseProvider::paraphrase(std::string_view text,
                                   std::string_view /*lang*/,
                                   std::size_t n) const {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= n; ++k)
    out.push_back("[p" + std::to_string(k) + "]" + std::string(text));
  return out;
}

// ---------------------------------------------------------------------------
// Cache

TranslationCache::TranslationCache(const std::filesystem::path &path)
    : path_(path) {
  if (std::filesystem::exists(path)) {
    const auto lines = io::read_lines(path);
    const std::string content = io::read_file(path);
    const bool unterminated = !content.empty() && content.back() != '\n';
    bool partial = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (text::trim(lines[i]).empty())
        continue;
      auto obj = ordered_json::parse(lines[i], nullptr, false);
      const bool valid = !obj.is_discarded() && obj.is_object() &&
                         obj.contains("provider_id") && obj.contains("src") &&
                         obj.contains("tgt") && obj.contains("digest") &&
                         obj.contains("output") && obj["output"].is_string();
      if (!valid) {
        // A crash mid-append can leave one partial final line behind.
        if (unterminated && i + 1 == lines.size()) {
          partial = true;
          break;
        }
        throw ParseError(path.string() + ":" + std::to_string(i + 1) +
                             ": malformed cache entry",
                         i + 1);
      }
      entries_[Key{obj["provider_id"].get<std::string>(),
                   obj["src"].get<std::string>(),
                   obj["tgt"].get<std::string>(),
                   obj["digest"].get<std::string>()}] =
          obj["output"].get<std::string>();
    }
    if (partial) {
      // Drop the partial line so it never ends up in the middle of the file.
      const auto keep = content.find_last_of('\n');
      std::filesystem::resize_file(
          path, keep == std::string::npos ? 0 : keep + 1);
    } else if (unterminated) {
      std::ofstream fix(path, std::ios::app | std::ios::binary);
      fix << '\n';
    }
  }
  out_.open(path, std::ios::app | std::ios::binary);
  if (!out_)
    throw IoError("cannot open cache \"" + path.string() + "\" for append");
}

std::optional<std::string>
TranslationCache::lookup(std::string_view provider_id, std::string_view src,
                         std::string_view tgt, std::string_view input) const {
  Key key{std::string(provider_id), std::string(src), std::string(tgt),
          sha256_hex(input)};
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end())
    return std::nullopt;
  return it->second;
}

void TranslationCache::store(std::string_view provider_id, std::string_view src,
                             std::string_view tgt, std::string_view input,
                             std::string_view output) {
  Key key{std::string(provider_id), std::string(src), std::string(tgt),
          sha256_hex(input)};
  ordered_json line;
  line["provider_id"] = std::get<0>(key);
  line["src"] = std::get<1>(key);
  line["tgt"] = std::get<2>(key);
  line["digest"] = std::get<3>(key);
  line["output"] = output;
  std::lock_guard lock(mutex_);
  entries_[key] = std::string(output);
  if (path_) {
    out_ << line.dump() << '\n';
    out_.flush();
    if (!out_)
      throw IoError("append to cache \"" + path_->string() + "\" failed");
  }
}

std::size_t TranslationCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

// ---------------------------------------------------------------------------
// Operations

namespace {

template <typename Fn>
auto with_retries(const RetryPolicy &policy, const std::string &what, Fn &&fn)
    -> decltype(fn()) {
  const int attempts = std::max(1, policy.attempts);
  std::string last;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1 && policy.backoff.count() > 0)
      std::this_thread::sleep_for(policy.backoff * (1 << (attempt - 2)));
    try {
      return fn();
    } catch (const ProviderError &e) {
      last = e.what();
    } catch (const TransportError &e) {
      last = e.what();
    }
  }
  throw ProviderError(what + ": failed after " + std::to_string(attempts) +
                      " attempts: " + last);
}

std::string cached_translate(std::string_view text, std::string_view src,
                             std::string_view tgt,
                             const TranslationProvider &provider,
                             TranslationCache &cache, const RetryPolicy &retry,
                             const std::string &what) {
  const auto id = provider.provider_id();
  if (auto hit = cache.lookup(id, src, tgt, text))
    return *hit;
  std::string out = with_retries(retry, what, [&] {
    std::string r = provider.translate(text, src, tgt);
    if (r.empty())
      throw ProviderError("provider " + id + " returned empty text");
    return r;
  });
  cache.store(id, src, tgt, text, out);
  return out;
}

std::string paraphrase_tag(std::string_view lang, std::size_t k,
                           std::size_t n) {
  return std::string(lang) + "#p" + std::to_string(k) + "/" +
         std::to_string(n);
}

std::vector<std::string> cached_paraphrase(std::string_view text,
                                           std::string_view lang, std::size_t n,
                                           const ParaphraseProvider &provider,
                                           TranslationCache &cache,
                                           const RetryPolicy &retry,
                                           const std::string &what) {
  const auto id = provider.provider_id();
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= n; ++k) {
    auto hit = cache.lookup(id, lang, paraphrase_tag(lang, k, n), text);
    if (!hit)
      break;
    out.push_back(std::move(*hit));
  }
  if (out.size() == n)
    return out;
  out = with_retries(retry, what, [&] {
    auto r = provider.paraphrase(text, lang, n);
    if (r.size() != n)
      throw ProviderError("provider " + id + " returned " +
                          std::to_string(r.size()) + " paraphrases, expected " +
                          std::to_string(n));
    for (const auto &s : r)
      if (s.empty())
        throw ProviderError("provider " + id + " returned an empty paraphrase");
    return r;
  });
  for (std::size_t k = 1; k <= n; ++k)
    cache.store(id, lang, paraphrase_tag(lang, k, n), text, out[k - 1]);
  return out;
}

} // namespace

std::vector<Question> translate_questions(const std::vector<Question> &questions,
                                          const TranslationProvider &provider,
                                          TranslationCache &cache,
                                          const AugmentOptions &options) {
  std::vector<Question> out = questions;
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!out[i].text_en)
      pending.push_back(i);
  parallel_for(pending.size(), options.max_in_flight, [&](std::size_t p) {
    Question &q = out[pending[p]];
    q.text_en = cached_translate(q.text_ar, kArabic, kEnglish, provider, cache,
                                 options.retry, "translating question " + q.id);
  });
  return out;
}

Expansion paraphrase_and_expand(const std::vector<Question> &questions,
                                const Qrels &qrels,
                                const ParaphraseProvider &provider,
                                std::size_t n, TranslationCache &cache,
                                const AugmentOptions &options,
                                const TranslationProvider *translator) {
  if (n == 0)
    throw PreconditionError("paraphrase count must be at least 1");
  for (const auto &q : questions)
    if (q.source == Source::Paraphrase)
      throw PreconditionError("question " + q.id +
                              " is already a paraphrase; expand originals only");

  std::vector<std::vector<std::string>> variants(questions.size());
  parallel_for(questions.size(), options.max_in_flight, [&](std::size_t i) {
    const Question &q = questions[i];
    auto raw = cached_paraphrase(q.text_ar, kArabic, n, provider, cache,
                                 options.retry, "paraphrasing question " + q.id);
    std::unordered_set<std::string> seen{standardize_text(q.text_ar, true)};
    for (auto &r : raw) {
      std::string s;
      try {
        s = standardize_text(r, true);
      } catch (const EmptyAfterCleaning &) {
        throw ProviderError("paraphrase of question " + q.id +
                            " is empty after cleaning");
      }
      if (!seen.insert(s).second)
        throw DuplicateParaphrase("provider " + provider.provider_id() +
                                  " returned non-distinct paraphrases for "
                                  "question " +
                                  q.id);
      variants[i].push_back(std::move(s));
    }
  });

  std::vector<Question> expanded;
  expanded.reserve(questions.size() * (n + 1));
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const Question &parent = questions[i];
    expanded.push_back(parent);
    for (std::size_t k = 1; k <= n; ++k) {
      Question p;
      p.id = parent.id + "#p" + std::to_string(k);
      p.text_ar = variants[i][k - 1];
      p.qtype = parent.qtype;
      p.split = parent.split;
      p.source = Source::Paraphrase;
      p.parent_id = parent.id;
      expanded.push_back(std::move(p));
    }
  }
  check_question_invariants(expanded);

  if (translator) {
    // Only the new variants lack text_en unless a parent did too.
    expanded = translate_questions(expanded, *translator, cache, options);
  }

  std::vector<Judgment> judgments = qrels.judgments();
  for (const auto &q : expanded) {
    if (!q.parent_id)
      continue;
    for (auto j : qrels.for_question(*q.parent_id)) {
      j.question_id = q.id;
      judgments.push_back(std::move(j));
    }
  }
  return {std::move(expanded), Qrels(std::move(judgments))};
}

std::string back_translate(std::string_view text_en,
                           const TranslationProvider &provider,
                           TranslationCache &cache,
                           const AugmentOptions &options) {
  if (text::trim(text_en).empty())
    throw PreconditionError("back-translation input is empty");
  return cached_translate(text_en, kEnglish, kArabic, provider, cache,
                          options.retry, "back-translating passage text");
}

Deduplicated dedupe_questions(const std::vector<Question> &questions) {
  Deduplicated out;
  std::unordered_set<std::string> seen;
  for (const auto &q : questions) {
    if (seen.insert(standardize_text(q.text_ar, true)).second)
      out.questions.push_back(q);
    else
      out.dropped.push_back(q.id);
  }
  return out;
}

} // namespace ayah
