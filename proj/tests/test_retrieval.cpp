#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>

#include "ayah/error.hpp"
#include "ayah/random.hpp"
#include "ayah/retrieval.hpp"

using namespace ayah;

namespace {

Corpus corpus_of(int n) {
  std::vector<Passage> ps;
  for (int i = 1; i <= n; ++i)
    ps.push_back({PassageId(1, i, i), "نص", "text " + std::to_string(i)});
  return Corpus(std::move(ps));
}

Question q(std::string id, QuestionType t = QuestionType::Single,
           Split s = Split::Dev) {
  Question x;
  x.id = std::move(id);
  x.text_ar = "س؟";
  x.text_en = "question?";
  x.qtype = t;
  x.split = s;
  return x;
}

std::vector<std::string> ids(const std::vector<RankedEntry> &es) {
  std::vector<std::string> out;
  for (const auto &e : es)
    out.push_back(e.passage_id.str());
  return out;
}

std::vector<RankedEntry> scored(std::initializer_list<double> scores) {
  std::vector<RankedEntry> out;
  int i = 1;
  for (double s : scores) {
    out.push_back({PassageId(1, i, i), s, i});
    ++i;
  }
  return out;
}

class BrokenScorer : public Scorer {
public:
  explicit BrokenScorer(bool drop) : drop_(drop) {}
  std::string name() const override { return "broken"; }
  std::vector<double>
  score_batch(const ScoringQuery &,
              std::span<const Candidate> c) const override {
    std::vector<double> s(c.size(), 1.0);
    if (drop_)
      s.pop_back();
    else
      s[0] = NAN;
    return s;
  }

private:
  bool drop_;
};

} // namespace

TEST(Threshold, ParseAndStr) {
  EXPECT_TRUE(Threshold::parse("none").is_none());
  EXPECT_EQ(Threshold::parse("0.5").tau, 0.5);
  EXPECT_EQ(Threshold::parse("-2").tau, -2.0);
  EXPECT_EQ(Threshold::parse("1e-3").tau, 1e-3);
  for (const char *bad : {"", "abc", "0.5x", "inf", "nan", "None", " 1"})
    EXPECT_THROW(Threshold::parse(bad), PreconditionError) << bad;
  EXPECT_EQ(Threshold::none().str(), "none");
  EXPECT_EQ(Threshold::at(0.5).str(), "0.5");
  EXPECT_EQ(Threshold::parse(Threshold::at(0.1).str()), Threshold::at(0.1));
}

TEST(Rank, KLargerThanCorpusRanksAll) {
  Corpus c = corpus_of(3);
  LexicalScorer s(c);
  auto r = rank(q("a"), c, s, 10);
  EXPECT_EQ(r.size(), 3u);
}

TEST(Rank, TiesByPassageIdAscending) {
  Corpus c({{PassageId(2, 1, 1), "أ", "x"}, {PassageId(10, 1, 1), "ب", "y"}});
  FixtureScorer f(FixtureScorer::Table{{"a", {{"2:1-1", 0.3}, {"10:1-1", 0.3}}}});
  EXPECT_EQ(ids(rank(q("a"), c, f)),
            (std::vector<std::string>{"10:1-1", "2:1-1"}));
}

TEST(Rank, FixtureScores) {
  Corpus c({{PassageId(1, 2, 2), "أ", "x"}, {PassageId(1, 1, 1), "ب", "y"}});
  FixtureScorer f(FixtureScorer::Table{{"a", {{"1:1-1", 0.9}, {"1:2-2", 0.4}}}});
  auto r = rank(q("a"), c, f, 10);
  EXPECT_EQ(ids(r), (std::vector<std::string>{"1:1-1", "1:2-2"}));
  EXPECT_EQ(r[0].rank, 1);
  EXPECT_EQ(r[1].rank, 2);
  EXPECT_EQ(r[0].score, 0.9);
}

TEST(Rank, Errors) {
  Corpus c = corpus_of(3);
  LexicalScorer s(c);
  Question x = q("a");
  x.text_en.reset();
  EXPECT_THROW(rank(x, c, s), MissingTranslation);
  EXPECT_THROW(rank(q("a"), c, s, 0), PreconditionError);
  EXPECT_THROW(rank(q("a"), c, BrokenScorer(true)), ProtocolError);
  EXPECT_THROW(rank(q("a"), c, BrokenScorer(false)), ProtocolError);
  FixtureScorer empty(FixtureScorer::Table{});
  EXPECT_THROW(rank(q("a"), c, empty), FixtureMissingQuestion);
}

TEST(Rank, InvariantToCorpusOrder) {
  std::vector<Passage> ps;
  const std::vector<std::string> words{"moses", "sea", "bee", "fig", "night"};
  auto rng = keyed_stream(5, "test", "perm-corpus");
  for (int i = 1; i <= 30; ++i) {
    std::string t;
    for (int w = 0; w < 4; ++w)
      t += words[rng.bounded(5)] + " ";
    ps.push_back({PassageId(3, i, i), "ن", t});
  }
  Question x = q("a");
  x.text_en = "moses sea night";
  const auto reference = rank(x, Corpus(ps), LexicalScorer(Corpus(ps)), 10);
  for (int trial = 0; trial < 10; ++trial) {
    auto shuffled = ps;
    shuffle(std::span<Passage>(shuffled), rng);
    Corpus c(shuffled);
    EXPECT_EQ(rank(x, c, LexicalScorer(c), 10), reference);
  }
}

TEST(ApplyThreshold, Examples) {
  auto none = apply_threshold(scored({0.8, 0.3}), Threshold::none());
  EXPECT_EQ(none, scored({0.8, 0.3}));
  auto one = apply_threshold(scored({0.8, 0.3}), Threshold::at(0.5));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].score, 0.8);
  EXPECT_EQ(one[0].rank, 1);
  EXPECT_TRUE(apply_threshold(scored({0.3, 0.2}), Threshold::at(0.5)).empty());
  // Equal to tau is kept.
  EXPECT_EQ(apply_threshold(scored({0.5}), Threshold::at(0.5)).size(), 1u);
}

TEST(ApplyThreshold, IdempotentAndMonotone) {
  auto rng = keyed_stream(8, "test", "threshold");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RankedEntry> es;
    const auto n = rng.bounded(11);
    for (std::uint32_t i = 0; i < n; ++i)
      es.push_back({PassageId(1, static_cast<int>(i) + 1,
                              static_cast<int>(i) + 1),
                    rng.bounded(100) / 10.0 - 5.0, 0});
    es = canonical_top_k(es, 10);
    const double t1 = rng.bounded(100) / 10.0 - 5.0;
    const double t2 = t1 + rng.bounded(30) / 10.0;
    auto once = apply_threshold(es, Threshold::at(t1));
    EXPECT_EQ(apply_threshold(once, Threshold::at(t1)), once);
    EXPECT_LE(apply_threshold(es, Threshold::at(t2)).size(), once.size());
    for (std::size_t i = 0; i < once.size(); ++i)
      EXPECT_EQ(once[i].rank, static_cast<int>(i + 1));
  }
}

TEST(Retrieve, OrderTagAndThreshold) {
  Corpus c = corpus_of(4);
  FixtureScorer f(FixtureScorer::Table{
      {"a", {{"1:1-1", 0.2}, {"1:2-2", 0.9}}},
      {"b", {{"1:3-3", 0.1}}},
  });
  RetrieveOptions o;
  o.k = 2;
  o.tag = "run1";
  auto run = retrieve({q("b"), q("a")}, c, f, o);
  EXPECT_EQ(run.tag, "run1");
  EXPECT_EQ(run.k, 2u);
  ASSERT_EQ(run.questions.size(), 2u);
  EXPECT_EQ(run.questions[0].question_id, "b");
  EXPECT_EQ(ids(run.questions[1].entries),
            (std::vector<std::string>{"1:2-2", "1:1-1"}));
  o.threshold = Threshold::at(0.15);
  run = retrieve({q("b"), q("a")}, c, f, o);
  EXPECT_TRUE(run.questions[0].entries.empty());
  EXPECT_EQ(run.questions[1].entries.size(), 2u);
  EXPECT_NO_THROW(check_run(run));
}

TEST(Retrieve, ParallelMatchesSerial) {
  Corpus c = corpus_of(40);
  LexicalScorer s(c);
  std::vector<Question> qs;
  for (int i = 0; i < 30; ++i) {
    Question x = q("q" + std::to_string(i));
    x.text_en = "text " + std::to_string(i % 7);
    qs.push_back(x);
  }
  RetrieveOptions serial;
  RetrieveOptions parallel;
  parallel.jobs = 6;
  EXPECT_EQ(retrieve(qs, c, s, serial), retrieve(qs, c, s, parallel));
}

namespace {

// Exhaustive reference for threshold tuning: evaluates every grid value with
// a hand-written MAP@10 and picks the first maximum in ascending order.
double oracle_map(const std::vector<Question> &qs, const Qrels &qrels,
                  const std::map<std::string, std::vector<RankedEntry>> &lists,
                  double tau) {
  double total = 0;
  for (const auto &x : qs) {
    std::vector<std::string> kept;
    for (const auto &e : lists.at(x.id))
      if (e.score >= tau)
        kept.push_back(e.passage_id.str());
    if (x.qtype == QuestionType::Zero) {
      total += kept.empty() ? 1.0 : 0.0;
      continue;
    }
    std::set<std::string> rel;
    for (const auto &p : qrels.positives(x.id))
      rel.insert(p.str());
    double hits = 0, sum = 0;
    for (std::size_t i = 0; i < kept.size() && i < 10; ++i)
      if (rel.contains(kept[i])) {
        hits += 1;
        sum += hits / static_cast<double>(i + 1);
      }
    total += sum / static_cast<double>(rel.size());
  }
  return total / static_cast<double>(qs.size());
}

} // namespace

TEST(TuneThreshold, SingleValueGrid) {
  Corpus c = corpus_of(3);
  FixtureScorer f(FixtureScorer::Table{{"a", {{"1:1-1", 0.9}}}});
  Qrels qrels({{"a", PassageId(1, 1, 1), 1}});
  auto r = tune_threshold({q("a")}, qrels, c, f, {0.7});
  EXPECT_EQ(r.best, Threshold::at(0.7));
  EXPECT_THROW(tune_threshold({q("a")}, qrels, c, f, {}), PreconditionError);
}

TEST(TuneThreshold, NoZeroAnswerQuestionsSmallestWins) {
  // 4 answerable questions: thresholding can only remove relevant passages.
  Corpus c = corpus_of(6);
  FixtureScorer f(FixtureScorer::Table{
      {"a", {{"1:1-1", 0.9}, {"1:2-2", 0.5}}},
      {"b", {{"1:3-3", 0.4}, {"1:1-1", 0.8}}},
      {"c", {{"1:4-4", 0.2}}},
      {"d", {{"1:5-5", 0.95}, {"1:6-6", 0.1}}},
  });
  Qrels qrels({{"a", PassageId(1, 2, 2), 1},
               {"b", PassageId(1, 3, 3), 1},
               {"c", PassageId(1, 4, 4), 1},
               {"d", PassageId(1, 6, 6), 1}});
  std::vector<Question> qs{q("a"), q("b"), q("c"), q("d")};
  const std::vector<double> grid{0.6, 0.05, 0.3, 0.15, 1.0};
  auto r = tune_threshold(qs, qrels, c, f, grid);
  EXPECT_EQ(r.best, Threshold::at(0.05));
  ASSERT_EQ(r.grid_scores.size(), 5u);
  EXPECT_EQ(r.grid_scores.front().first, 0.05);
  for (std::size_t i = 1; i < r.grid_scores.size(); ++i)
    EXPECT_LE(r.grid_scores[i].second, r.grid_scores[i - 1].second);
}

TEST(TuneThreshold, AllZeroAnswerPicksSmallestValueThatEmptiesEveryList) {
  Corpus c = corpus_of(3);
  FixtureScorer f(FixtureScorer::Table{
      {"z1", {{"1:1-1", 0.4}}},
      {"z2", {{"1:2-2", 0.7}, {"1:3-3", 0.2}}},
  });
  std::vector<Question> qs{q("z1", QuestionType::Zero),
                           q("z2", QuestionType::Zero)};
  Qrels qrels({{"z1", PassageId(1, 1, 1), 0}});
  // Unscored passages sit at -1e9, so the lists empty once tau > 0.7.
  auto r = tune_threshold(qs, qrels, c, f, {0.0, 0.5, 0.8, 2.0, 5.0});
  EXPECT_EQ(r.best, Threshold::at(0.8));
  EXPECT_EQ(r.grid_scores[2].second, 1.0);
  EXPECT_EQ(r.grid_scores[4].second, 1.0);
  EXPECT_LT(r.grid_scores[1].second, 1.0);
}

TEST(TuneThreshold, MatchesExhaustiveOracle) {
  auto rng = keyed_stream(31, "test", "tune");
  Corpus c = corpus_of(12);
  for (int trial = 0; trial < 60; ++trial) {
    FixtureScorer::Table table;
    std::vector<Question> qs;
    std::vector<Judgment> js;
    for (int i = 0; i < 6; ++i) {
      const std::string id = "q" + std::to_string(i);
      const bool zero = rng.bounded(3) == 0;
      qs.push_back(q(id, zero ? QuestionType::Zero : QuestionType::Multi));
      auto &row = table[id];
      for (int p = 1; p <= 12; ++p)
        row[PassageId(1, p, p).str()] = rng.bounded(21) / 20.0;
      if (!zero) {
        const int a = 1 + static_cast<int>(rng.bounded(12));
        const int b = 1 + (a % 12);
        js.push_back({id, PassageId(1, a, a), 1});
        js.push_back({id, PassageId(1, b, b), 1});
      }
    }
    FixtureScorer f(table);
    Qrels qrels(js);
    std::vector<double> grid;
    for (int g = 0; g < 8; ++g)
      grid.push_back(rng.bounded(22) / 20.0);

    std::map<std::string, std::vector<RankedEntry>> lists;
    for (const auto &x : qs)
      lists[x.id] = rank(x, c, f, 10);
    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    double best_tau = sorted.front();
    double best = -1;
    for (double tau : sorted) {
      double m = oracle_map(qs, qrels, lists, tau);
      if (m > best + 1e-12) {
        best = m;
        best_tau = tau;
      }
    }
    auto r = tune_threshold(qs, qrels, c, f, grid);
    EXPECT_EQ(r.best, Threshold::at(best_tau)) << "trial " << trial;
    for (const auto &[tau, map] : r.grid_scores)
      EXPECT_NEAR(map, oracle_map(qs, qrels, lists, tau), 1e-12);
  }
}

TEST(TuneThreshold, IgnoresJudgmentsOfOtherQuestions) {
  Corpus c = corpus_of(2);
  FixtureScorer f(FixtureScorer::Table{{"a", {{"1:1-1", 0.9}}}});
  Qrels qrels({{"a", PassageId(1, 1, 1), 1}, {"train-q", PassageId(1, 2, 2), 1}});
  EXPECT_NO_THROW(tune_threshold({q("a")}, qrels, c, f, {0.0, 1.0}));
}
