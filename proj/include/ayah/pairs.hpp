#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ayah/corpus.hpp"
#include "ayah/dataset.hpp"
#include "ayah/scorer.hpp"

namespace ayah {

enum class NegativeStrategy { Uniform, LexicalHard };

std::string_view to_token(NegativeStrategy s) noexcept;
/// Accepts "uniform" and "lexical-hard".
std::optional<NegativeStrategy> negative_strategy_from_token(std::string_view s);

struct SamplingConfig {
  /// Negatives per positive; a question with no positives still gets the
  /// quota of one.
  double neg_ratio = 2.0;
  std::uint64_t seed = 0;
  NegativeStrategy strategy = NegativeStrategy::Uniform;

  /// Throws PreconditionError for a negative or non-finite ratio.
  void validate() const;
};

struct TrainingPair {
  std::string question_id;
  PassageId passage_id;
  int label = 0;

  friend bool operator==(const TrainingPair &, const TrainingPair &) = default;
};

struct NegativeSample {
  std::vector<PassageId> passages;
  std::size_t requested = 0;
  /// Set when the non-positive pool was smaller than the quota; `passages`
  /// then holds the whole pool.
  bool insufficient_pool = false;
};

/// ceil(neg_ratio * max(1, positives)).
std::size_t negative_quota(double neg_ratio, std::size_t positives);

/// Negatives for one question, drawn from corpus passages that are not
/// relevance-1 for it.
///
/// Uniform: the pool in corpus order is partially Fisher-Yates shuffled with
/// the PCG32 stream keyed by (seed, "negatives", question id): for
/// i = 0..m-1, j = i + bounded(pool_size - i), swap(pool[i], pool[j]); the
/// first m entries are returned.
///
/// Lexical-hard: the m best non-positive passages under BM25 on the
/// question's English text, ties by passage id ascending. `lexical` may be
/// supplied to avoid rebuilding corpus statistics per call.
NegativeSample sample_negatives(const Question &question, const Corpus &corpus,
                                const Qrels &qrels, const SamplingConfig &cfg,
                                const LexicalScorer *lexical = nullptr);

struct PairSet {
  std::vector<TrainingPair> pairs;
  /// Questions whose negative quota could not be met.
  std::vector<std::string> short_pools;
};

/// Per question: every positive (label 1, qrels order) followed by its
/// sampled negatives (label 0), then shuffled with the stream keyed by
/// (seed, "shuffle", question id). Questions keep input order.
PairSet build_pairs(const std::vector<Question> &questions,
                    const Corpus &corpus, const Qrels &qrels,
                    const SamplingConfig &cfg);

struct PairRecord {
  std::string question_id;
  std::string passage_id;
  std::optional<std::string> question_en;
  std::string passage_en;
  int label = 0;

  friend bool operator==(const PairRecord &, const PairRecord &) = default;
};

/// JSONL with keys question_id, passage_id, question_en, passage_en, label.
/// Texts are copied verbatim from the dataset and corpus.
std::string format_pairs(const std::vector<TrainingPair> &pairs,
                         const std::vector<Question> &questions,
                         const Corpus &corpus);
void export_pairs(const std::vector<TrainingPair> &pairs,
                  const std::vector<Question> &questions, const Corpus &corpus,
                  const std::filesystem::path &path);
std::vector<PairRecord> read_pairs(const std::filesystem::path &path);

} // namespace ayah
