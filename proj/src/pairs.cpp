#include "ayah/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "ayah/error.hpp"
#include "ayah/io.hpp"
#include "ayah/random.hpp"
#include "ayah/text.hpp"

namespace ayah {

using ordered_json = nlohmann::ordered_json;

std::string_view to_token(NegativeStrategy s) noexcept {
  return s == NegativeStrategy::Uniform ? "uniform" : "lexical-hard";
}

std::optional<NegativeStrategy>
negative_strategy_from_token(std::string_view s) {
  if (s == "uniform")
    return NegativeStrategy::Uniform;
  if (s == "lexical-hard")
    return NegativeStrategy::LexicalHard;
  return std::nullopt;
}

void SamplingConfig::validate() const {
  if (!std::isfinite(neg_ratio) || neg_ratio < 0.0)
    throw PreconditionError("neg_ratio must be a non-negative number");
}

std::size_t negative_quota(double neg_ratio, std::size_t positives) {
  const double want =
      neg_ratio * static_cast<double>(std::max<std::size_t>(1, positives));
  // 0.1 * 30 is 3.0000000000000004 in binary; don't round that up to 4.
  return static_cast<std::size_t>(std::ceil(want - 1e-9));
}

NegativeSample sample_negatives(const Question &question, const Corpus &corpus,
                                const Qrels &qrels, const SamplingConfig &cfg,
                                const LexicalScorer *lexical) {
  cfg.validate();
  if (corpus.empty())
    throw PreconditionError("cannot sample negatives from an empty corpus");

  const auto positives = qrels.positives(question.id);
  std::unordered_set<std::string> positive_ids;
  for (const auto &p : positives)
    positive_ids.insert(p.str());

  std::vector<const Passage *> pool;
  for (const auto &p : corpus)
    if (!positive_ids.contains(p.id.str()))
      pool.push_back(&p);

  NegativeSample out;
  out.requested = negative_quota(cfg.neg_ratio, positives.size());
  const std::size_t m = std::min(out.requested, pool.size());
  out.insufficient_pool = pool.size() < out.requested;

  if (cfg.strategy == NegativeStrategy::Uniform) {
    Pcg32 rng = keyed_stream(cfg.seed, "negatives", question.id);
    for (std::size_t i = 0; i < m; ++i) {
      auto j = i + rng.bounded(static_cast<std::uint32_t>(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    for (std::size_t i = 0; i < m; ++i)
      out.passages.push_back(pool[i]->id);
    return out;
  }

  if (!question.text_en)
    throw MissingTranslation("question " + question.id +
                             " has no English text for lexical-hard sampling");
  std::optional<LexicalScorer> owned;
  if (!lexical)
    lexical = &owned.emplace(corpus);
  std::vector<Candidate> candidates;
  candidates.reserve(pool.size());
  for (const auto *p : pool)
    candidates.push_back({p->id.str(), p->text_en});
  auto scores = lexical->score_batch({question.id, *question.text_en},
                                     candidates);
  std::vector<RankedEntry> entries;
  entries.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    entries.push_back({pool[i]->id, scores[i], 0});
  for (auto &e : canonical_top_k(std::move(entries), m))
    out.passages.push_back(e.passage_id);
  return out;
}

PairSet build_pairs(const std::vector<Question> &questions,
                    const Corpus &corpus, const Qrels &qrels,
                    const SamplingConfig &cfg) {
  cfg.validate();
  std::optional<LexicalScorer> lexical;
  if (cfg.strategy == NegativeStrategy::LexicalHard)
    lexical.emplace(corpus);

  PairSet out;
  for (const auto &q : questions) {
    std::vector<TrainingPair> combined;
    for (const auto &p : qrels.positives(q.id))
      combined.push_back({q.id, p, 1});
    if (cfg.neg_ratio > 0.0) {
      auto negatives = sample_negatives(q, corpus, qrels, cfg,
                                        lexical ? &*lexical : nullptr);
      if (negatives.insufficient_pool)
        out.short_pools.push_back(q.id);
      for (auto &p : negatives.passages)
        combined.push_back({q.id, std::move(p), 0});
    }
    Pcg32 rng = keyed_stream(cfg.seed, "shuffle", q.id);
    shuffle(std::span<TrainingPair>(combined), rng);
    out.pairs.insert(out.pairs.end(), combined.begin(), combined.end());
  }
  return out;
}

std::string format_pairs(const std::vector<TrainingPair> &pairs,
                         const std::vector<Question> &questions,
                         const Corpus &corpus) {
  std::unordered_map<std::string, const Question *> by_id;
  for (const auto &q : questions)
    by_id.emplace(q.id, &q);
  std::unordered_set<std::string> seen;
  std::string out;
  for (const auto &p : pairs) {
    auto it = by_id.find(p.question_id);
    if (it == by_id.end())
      throw UnknownQuestion("pair references unknown question " +
                            p.question_id);
    if (!seen.insert(p.question_id + '\t' + p.passage_id.str()).second)
      throw InvariantViolation("pair (" + p.question_id + ", " +
                               p.passage_id.str() + ") is repeated");
    const auto &passage = corpus.get(p.passage_id);
    ordered_json line;
    line["question_id"] = p.question_id;
    line["passage_id"] = p.passage_id.str();
    line["question_en"] = it->second->text_en ? ordered_json(*it->second->text_en)
                                              : ordered_json(nullptr);
    line["passage_en"] = passage.text_en;
    line["label"] = p.label;
    out += line.dump();
    out += '\n';
  }
  return out;
}

void export_pairs(const std::vector<TrainingPair> &pairs,
                  const std::vector<Question> &questions, const Corpus &corpus,
                  const std::filesystem::path &path) {
  io::write_file_atomic(path, format_pairs(pairs, questions, corpus));
}

std::vector<PairRecord> read_pairs(const std::filesystem::path &path) {
  std::vector<PairRecord> records;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty())
      continue;
    const std::string prefix = path.string() + ":" + std::to_string(i + 1);
    auto obj = ordered_json::parse(lines[i], nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw ParseError(prefix + ": invalid JSON", i + 1);
    try {
      PairRecord r;
      r.question_id = obj.at("question_id").get<std::string>();
      r.passage_id = obj.at("passage_id").get<std::string>();
      if (!obj.at("question_en").is_null())
        r.question_en = obj.at("question_en").get<std::string>();
      r.passage_en = obj.at("passage_en").get<std::string>();
      r.label = obj.at("label").get<int>();
      if (r.label != 0 && r.label != 1)
        throw ParseError(prefix + ": label must be 0 or 1", i + 1);
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(prefix + ": " + e.what(), i + 1);
    }
  }
  return records;
}

} // namespace ayah
