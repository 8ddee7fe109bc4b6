#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ayah/corpus.hpp"
#include "ayah/run.hpp"

namespace ayah {

struct ScoringQuery {
  std::string_view id;
  std::string_view text;
};

struct Candidate {
  std::string_view id;
  std::string_view text;
};

/// Relevance-scoring boundary. Implementations return one finite score per
/// candidate, positionally aligned; higher means more relevant.
class Scorer {
public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  virtual std::vector<double>
  score_batch(const ScoringQuery &query,
              std::span<const Candidate> candidates) const = 0;
};

// ---------------------------------------------------------------------------
// Lexical baseline

/// Lowercases (ICU simple case mapping) and splits on every codepoint that is
/// not a letter or decimal digit. Nonspacing marks (Arabic harakat) and the
/// tatweel are removed before splitting so vocalized and plain Arabic spell
/// the same token. Invalid UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  /// Throws PreconditionError unless k1 > 0 and 0 <= b <= 1.
  void validate() const;
};

/// Document frequencies and average token length over a passage collection.
class CorpusStats {
public:
  CorpusStats() = default;
  static CorpusStats from_texts(std::span<const std::string> texts);
  static CorpusStats from_corpus(const Corpus &corpus);

  std::size_t document_count() const noexcept { return n_docs_; }
  double average_length() const noexcept { return avgdl_; }
  std::size_t document_frequency(const std::string &term) const;

private:
  std::size_t n_docs_ = 0;
  double avgdl_ = 0.0;
  std::unordered_map<std::string, std::size_t> df_;
};

/// Okapi BM25 with idf = ln((N - df + 0.5) / (df + 0.5) + 1). Every query
/// token occurrence contributes, so a repeated query term counts twice.
std::vector<double> bm25_score_batch(std::string_view question_text,
                                     std::span<const std::string> passage_texts,
                                     const Bm25Params &params,
                                     const CorpusStats &stats);

/// BM25 over the English side of a corpus.
class LexicalScorer final : public Scorer {
public:
  explicit LexicalScorer(const Corpus &corpus, Bm25Params params = {});

  std::string name() const override { return "lexical"; }
  std::vector<double>
  score_batch(const ScoringQuery &query,
              std::span<const Candidate> candidates) const override;

  const CorpusStats &stats() const noexcept { return stats_; }

private:
  struct Doc {
    std::unordered_map<std::string, std::size_t> tf;
    std::size_t length = 0;
  };
  static Doc make_doc(std::string_view text);
  double score_doc(const std::vector<std::string> &query, const Doc &doc) const;

  Bm25Params params_;
  CorpusStats stats_;
  std::unordered_map<std::string, Doc> docs_; // keyed by passage text
};

// ---------------------------------------------------------------------------
// Fixture replay

/// Score assigned to passages a fixture never recorded.
inline constexpr double kFixtureMissingScore = -1e9;

class FixtureScorer final : public Scorer {
public:
  using Table =
      std::unordered_map<std::string, std::unordered_map<std::string, double>>;

  explicit FixtureScorer(Table table) : table_(std::move(table)) {}
  /// Every question in the run is known, including NO-ANSWER ones.
  static FixtureScorer from_run(const RankedRun &run);

  std::string name() const override { return "fixture"; }
  std::vector<double>
  score_batch(const ScoringQuery &query,
              std::span<const Candidate> candidates) const override;

private:
  Table table_;
};

/// Throws FixtureMissingQuestion for an unrecorded question.
std::vector<double>
fixture_score_batch(std::string_view question_id,
                    std::span<const std::string> passage_ids,
                    const FixtureScorer &fixture);

// ---------------------------------------------------------------------------
// Remote cross-encoder

struct RemoteOptions {
  /// Client-enforced request size limit of the wire protocol.
  std::size_t max_batch = 128;
  std::size_t max_in_flight = 2;
  int attempts = 3;
  std::chrono::milliseconds backoff{200};
  std::chrono::seconds timeout{60};
};

/// Client for the sidecar protocol: POST /score
/// {"question": s, "passages": [s...]} -> {"scores": [x...]}.
class RemoteScorer final : public Scorer {
public:
  explicit RemoteScorer(std::string endpoint, RemoteOptions options = {});

  std::string name() const override { return "remote"; }
  std::vector<double>
  score_batch(const ScoringQuery &query,
              std::span<const Candidate> candidates) const override;

  /// GET /health; returns the reported model name. Throws TransportError or
  /// ProtocolError.
  std::string health() const;

  const RemoteOptions &options() const noexcept { return options_; }

private:
  std::vector<double> score_chunk(std::string_view question,
                                  std::span<const Candidate> chunk) const;

  std::string endpoint_;
  RemoteOptions options_;
};

/// Text-only convenience over RemoteScorer::score_batch.
std::vector<double> remote_score_batch(std::string_view question_text,
                                       std::span<const std::string> passage_texts,
                                       const RemoteScorer &scorer);

} // namespace ayah
