#include "ayah/retrieval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "ayah/error.hpp"
#include "ayah/parallel.hpp"

namespace ayah {

Threshold Threshold::parse(std::string_view s) {
  if (s == "none")
    return none();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw PreconditionError("threshold must be \"none\" or a finite real, "
                            "got \"" +
                            std::string(s) + "\"");
  return at(v);
}

std::string Threshold::str() const {
  if (!tau)
    return "none";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *tau);
  return buf;
}

std::vector<RankedEntry> rank(const Question &question, const Corpus &corpus,
                              const Scorer &scorer, std::size_t k) {
  if (k == 0)
    throw PreconditionError("k must be >= 1");
  if (corpus.empty())
    throw PreconditionError("cannot rank against an empty corpus");
  if (!question.text_en)
    throw MissingTranslation("question " + question.id +
                             " has no English text; run translate first");

  std::vector<Candidate> candidates;
  candidates.reserve(corpus.size());
  for (const auto &p : corpus)
    candidates.push_back({p.id.str(), p.text_en});
  const auto scores =
      scorer.score_batch({question.id, *question.text_en}, candidates);
  if (scores.size() != candidates.size())
    throw ProtocolError(scorer.name() + " scorer returned " +
                        std::to_string(scores.size()) + " scores for " +
                        std::to_string(candidates.size()) + " passages");

  std::vector<RankedEntry> entries;
  entries.reserve(scores.size());
  std::size_t i = 0;
  for (const auto &p : corpus) {
    if (!std::isfinite(scores[i]))
      throw ProtocolError(scorer.name() + " scorer returned a non-finite "
                                          "score for passage " +
                          p.id.str());
    entries.push_back({p.id, scores[i++], 0});
  }
  return canonical_top_k(std::move(entries), k);
}

std::vector<RankedEntry> apply_threshold(std::vector<RankedEntry> ranked,
                                         const Threshold &threshold) {
  if (threshold.is_none())
    return ranked;
  const double tau = *threshold.tau;
  std::erase_if(ranked, [tau](const RankedEntry &e) { return e.score < tau; });
  for (std::size_t i = 0; i < ranked.size(); ++i)
    ranked[i].rank = static_cast<int>(i + 1);
  return ranked;
}

RankedRun retrieve(const std::vector<Question> &questions, const Corpus &corpus,
                   const Scorer &scorer, const RetrieveOptions &options) {
  RankedRun run;
  run.tag = options.tag;
  run.k = options.k;
  run.questions.resize(questions.size());
  parallel_for(questions.size(), options.jobs, [&](std::size_t i) {
    run.questions[i].question_id = questions[i].id;
    run.questions[i].entries = apply_threshold(
        rank(questions[i], corpus, scorer, options.k), options.threshold);
  });
  return run;
}

TuningResult tune_threshold(const std::vector<Question> &dev_questions,
                            const Qrels &dev_qrels, const Corpus &corpus,
                            const Scorer &scorer, std::vector<double> grid,
                            const EvalConfig &config) {
  if (grid.empty())
    throw PreconditionError("threshold grid is empty");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::unordered_set<std::string> ids;
  for (const auto &q : dev_questions)
    ids.insert(q.id);
  std::vector<Judgment> kept;
  for (const auto &j : dev_qrels.judgments())
    if (ids.contains(j.question_id))
      kept.push_back(j);
  const Qrels qrels(std::move(kept));

  RetrieveOptions base_options;
  base_options.k = config.map_cutoff;
  base_options.tag = "tune";
  const RankedRun base = retrieve(dev_questions, corpus, scorer, base_options);

  TuningResult result;
  double best_map = -1.0;
  for (double tau : grid) {
    RankedRun run = base;
    for (auto &q : run.questions)
      q.entries = apply_threshold(std::move(q.entries), Threshold::at(tau));
    const double map = evaluate(run, qrels, dev_questions, config).mean.map10;
    result.grid_scores.emplace_back(tau, map);
    if (map > best_map) {
      best_map = map;
      result.best = Threshold::at(tau);
    }
  }
  return result;
}

} // namespace ayah
