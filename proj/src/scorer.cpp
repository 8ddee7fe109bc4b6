#include "ayah/scorer.hpp"

#include <cmath>
#include <unordered_set>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "ayah/error.hpp"

namespace ayah {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  const auto *s = reinterpret_cast<const std::uint8_t *>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      flush();
      continue;
    }
    if (u_charType(c) == U_NON_SPACING_MARK || c == 0x0640)
      continue;
    if (!u_isalnum(c)) {
      flush();
      continue;
    }
    UChar32 lower = u_tolower(c);
    char buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, lower);
    current.append(buf, static_cast<std::size_t>(n));
  }
  flush();
  return tokens;
}

void Bm25Params::validate() const {
  if (!(k1 > 0.0) || !std::isfinite(k1))
    throw PreconditionError("BM25 k1 must be a positive real");
  if (!(b >= 0.0 && b <= 1.0))
    throw PreconditionError("BM25 b must lie in [0,1]");
}

CorpusStats CorpusStats::from_texts(std::span<const std::string> texts) {
  CorpusStats stats;
  stats.n_docs_ = texts.size();
  std::size_t total = 0;
  for (const auto &t : texts) {
    auto tokens = tokenize(t);
    total += tokens.size();
    std::unordered_set<std::string> unique(tokens.begin(), tokens.end());
    for (const auto &term : unique)
      ++stats.df_[term];
  }
  stats.avgdl_ = texts.empty() ? 0.0
                               : static_cast<double>(total) /
                                     static_cast<double>(texts.size());
  return stats;
}

CorpusStats CorpusStats::from_corpus(const Corpus &corpus) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (const auto &p : corpus)
    texts.push_back(p.text_en);
  return from_texts(texts);
}

std::size_t CorpusStats::document_frequency(const std::string &term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

namespace {

double bm25_term(double idf, double tf, double dl, const Bm25Params &params,
                 double avgdl) {
  double norm = avgdl > 0.0 ? dl / avgdl : 0.0;
  return idf * tf * (params.k1 + 1.0) /
         (tf + params.k1 * (1.0 - params.b + params.b * norm));
}

double bm25_idf(std::size_t n_docs, std::size_t df) {
  const double n = static_cast<double>(n_docs);
  const double d = static_cast<double>(df);
  return std::log((n - d + 0.5) / (d + 0.5) + 1.0);
}

} // namespace

std::vector<double> bm25_score_batch(std::string_view question_text,
                                     std::span<const std::string> passage_texts,
                                     const Bm25Params &params,
                                     const CorpusStats &stats) {
  params.validate();
  const auto query = tokenize(question_text);
  std::vector<double> scores;
  scores.reserve(passage_texts.size());
  for (const auto &text : passage_texts) {
    const auto tokens = tokenize(text);
    std::unordered_map<std::string, std::size_t> tf;
    for (const auto &t : tokens)
      ++tf[t];
    double score = 0.0;
    for (const auto &term : query) {
      auto it = tf.find(term);
      if (it == tf.end())
        continue;
      score += bm25_term(bm25_idf(stats.document_count(),
                                  stats.document_frequency(term)),
                         static_cast<double>(it->second),
                         static_cast<double>(tokens.size()), params,
                         stats.average_length());
    }
    scores.push_back(score);
  }
  return scores;
}

LexicalScorer::LexicalScorer(const Corpus &corpus, Bm25Params params)
    : params_(params), stats_(CorpusStats::from_corpus(corpus)) {
  params_.validate();
  for (const auto &p : corpus)
    docs_.try_emplace(p.text_en, make_doc(p.text_en));
}

LexicalScorer::Doc LexicalScorer::make_doc(std::string_view text) {
  Doc doc;
  for (auto &t : tokenize(text)) {
    ++doc.tf[std::move(t)];
    ++doc.length;
  }
  return doc;
}

double LexicalScorer::score_doc(const std::vector<std::string> &query,
                                const Doc &doc) const {
  double score = 0.0;
  for (const auto &term : query) {
    auto it = doc.tf.find(term);
    if (it == doc.tf.end())
      continue;
    score += bm25_term(
        bm25_idf(stats_.document_count(), stats_.document_frequency(term)),
        static_cast<double>(it->second), static_cast<double>(doc.length),
        params_, stats_.average_length());
  }
  return score;
}

std::vector<double>
LexicalScorer::score_batch(const ScoringQuery &query,
                           std::span<const Candidate> candidates) const {
  const auto terms = tokenize(query.text);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto &c : candidates) {
    auto it = docs_.find(std::string(c.text));
    if (it != docs_.end())
      scores.push_back(score_doc(terms, it->second));
    else
      scores.push_back(score_doc(terms, make_doc(c.text)));
  }
  return scores;
}

FixtureScorer FixtureScorer::from_run(const RankedRun &run) {
  Table table;
  for (const auto &q : run.questions) {
    auto &row = table[q.question_id];
    for (const auto &e : q.entries)
      row[e.passage_id.str()] = e.score;
  }
  return FixtureScorer(std::move(table));
}

std::vector<double>
FixtureScorer::score_batch(const ScoringQuery &query,
                           std::span<const Candidate> candidates) const {
  auto it = table_.find(std::string(query.id));
  if (it == table_.end())
    throw FixtureMissingQuestion("fixture has no scores for question " +
                                 std::string(query.id));
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto &c : candidates) {
    auto found = it->second.find(std::string(c.id));
    scores.push_back(found == it->second.end() ? kFixtureMissingScore
                                               : found->second);
  }
  return scores;
}

std::vector<double>
fixture_score_batch(std::string_view question_id,
                    std::span<const std::string> passage_ids,
                    const FixtureScorer &fixture) {
  std::vector<Candidate> candidates;
  candidates.reserve(passage_ids.size());
  for (const auto &id : passage_ids)
    candidates.push_back({id, {}});
  return fixture.score_batch({question_id, {}}, candidates);
}

} // namespace ayah
