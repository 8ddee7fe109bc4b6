#include "ayah/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "json.hpp"

#include "ayah/error.hpp"

namespace ayah {

using ordered_json = nlohmann::ordered_json;

namespace {

void require_k(std::size_t k) {
  if (k == 0)
    throw PreconditionError("metric cutoff k must be >= 1");
}

void require_relevant(const RelevantSet &relevant, const char *metric) {
  if (relevant.empty())
    throw ZeroRelevant(std::string(metric) +
                       " needs at least one relevant passage");
}

std::size_t hits_at(std::span<const std::string> ranked,
                    const RelevantSet &relevant, std::size_t k) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i)
    hits += relevant.contains(ranked[i]) ? 1 : 0;
  return hits;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

} // namespace

double precision_at_k(std::span<const std::string> ranked,
                      const RelevantSet &relevant, std::size_t k) {
  require_k(k);
  return static_cast<double>(hits_at(ranked, relevant, k)) /
         static_cast<double>(k);
}

double recall_at_k(std::span<const std::string> ranked,
                   const RelevantSet &relevant, std::size_t k) {
  require_k(k);
  require_relevant(relevant, "recall");
  return static_cast<double>(hits_at(ranked, relevant, k)) /
         static_cast<double>(relevant.size());
}

double average_precision_at_k(std::span<const std::string> ranked,
                              const RelevantSet &relevant, std::size_t k) {
  require_k(k);
  require_relevant(relevant, "average precision");
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
    if (!relevant.contains(ranked[i]))
      continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

double reciprocal_rank_at_k(std::span<const std::string> ranked,
                            const RelevantSet &relevant, std::size_t k) {
  require_k(k);
  require_relevant(relevant, "reciprocal rank");
  for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i)
    if (relevant.contains(ranked[i]))
      return 1.0 / static_cast<double>(i + 1);
  return 0.0;
}

MetricReport evaluate(const RankedRun &run, const Qrels &qrels,
                      const std::vector<Question> &questions,
                      const EvalConfig &config) {
  std::unordered_map<std::string, const Question *> by_id;
  for (const auto &q : questions)
    by_id.emplace(q.id, &q);

  std::map<std::string, const QuestionRanking *> evaluated;
  for (const auto &qr : run.questions) {
    if (!by_id.contains(qr.question_id))
      throw UnknownQuestion("run contains question " + qr.question_id +
                            " which is not in the dataset");
    evaluated[qr.question_id] = &qr;
  }
  for (const auto &qid : qrels.question_ids()) {
    if (!by_id.contains(qid))
      throw UnknownQuestion("qrels contain question " + qid +
                            " which is not in the dataset");
    evaluated.try_emplace(qid, nullptr);
  }

  MetricReport report;
  report.run_tag = run.tag;
  report.config = config;
  std::array<double, 6> sums{};
  for (const auto &[qid, ranking] : evaluated) {
    QuestionMetrics qm;
    qm.question_id = qid;
    std::vector<std::string> ranked;
    if (ranking)
      for (const auto &e : ranking->entries)
        ranked.push_back(e.passage_id.str());

    if (by_id.at(qid)->qtype == QuestionType::Zero) {
      qm.zero_answer = true;
      ++report.zero_answer_count;
      const double v = ranked.empty() ? 1.0 : 0.0;
      qm.values = {v, v, v, v, v, v};
    } else {
      RelevantSet relevant;
      for (const auto &p : qrels.positives(qid))
        relevant.insert(p.str());
      if (relevant.empty())
        throw ZeroRelevant("answerable question " + qid +
                           " has no relevance-1 judgment");
      qm.values.map10 =
          average_precision_at_k(ranked, relevant, config.map_cutoff);
      qm.values.mrr = reciprocal_rank_at_k(ranked, relevant, config.mrr_cutoff);
      qm.values.rec5 = recall_at_k(ranked, relevant, config.short_cutoff);
      qm.values.rec10 = recall_at_k(ranked, relevant, config.long_cutoff);
      qm.values.pre5 = precision_at_k(ranked, relevant, config.short_cutoff);
      qm.values.pre10 = precision_at_k(ranked, relevant, config.long_cutoff);
    }
    auto v = qm.values.values();
    for (std::size_t i = 0; i < v.size(); ++i)
      sums[i] += v[i];
    report.per_question.push_back(std::move(qm));
  }
  report.question_count = report.per_question.size();
  if (report.question_count > 0) {
    const double n = static_cast<double>(report.question_count);
    report.mean = {sums[0] / n, sums[1] / n, sums[2] / n,
                   sums[3] / n, sums[4] / n, sums[5] / n};
  }
  return report;
}

namespace {

ordered_json values_json(const MetricValues &m) {
  ordered_json out;
  auto v = m.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    out[std::string(MetricValues::kNames[i])] = v[i];
  return out;
}

} // namespace

std::string report_to_json(const MetricReport &report, int indent) {
  ordered_json j;
  j["run_tag"] = report.run_tag;
  j["config"] = {{"short_cutoff", report.config.short_cutoff},
                 {"long_cutoff", report.config.long_cutoff},
                 {"map_cutoff", report.config.map_cutoff},
                 {"mrr_cutoff", report.config.mrr_cutoff},
                 {"zero_answer_policy", "all-or-nothing"}};
  j["question_count"] = report.question_count;
  j["zero_answer_count"] = report.zero_answer_count;
  j["aggregate"] = values_json(report.mean);
  j["per_question"] = ordered_json::array();
  for (const auto &q : report.per_question) {
    ordered_json row;
    row["question_id"] = q.question_id;
    row["zero_answer"] = q.zero_answer;
    row.update(values_json(q.values));
    j["per_question"].push_back(std::move(row));
  }
  return j.dump(indent) + "\n";
}

std::string render_report(const MetricReport &report) {
  std::string out = "run: " + report.run_tag + "\n";
  out += "questions: " + std::to_string(report.question_count) +
         " (zero-answer: " + std::to_string(report.zero_answer_count) + ")\n";
  auto v = report.mean.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string label(MetricValues::kLabels[i]);
    label.resize(8, ' ');
    out += label + fixed(v[i], 4) + "\n";
  }
  return out;
}

Comparison compare_runs(const MetricReport &base, const MetricReport &ours) {
  auto ids = [](const MetricReport &r) {
    std::vector<std::string> out;
    for (const auto &q : r.per_question)
      out.push_back(q.question_id);
    return out;
  };
  if (ids(base) != ids(ours))
    throw QuestionSetMismatch("base and ours reports cover different "
                              "question sets");
  Comparison cmp;
  cmp.base_tag = base.run_tag;
  cmp.ours_tag = ours.run_tag;
  cmp.question_count = base.question_count;
  auto b = base.mean.values();
  auto o = ours.mean.values();
  for (std::size_t i = 0; i < b.size(); ++i) {
    ComparisonRow row;
    row.metric = MetricValues::kLabels[i];
    row.base = b[i];
    row.ours = o[i];
    row.delta = o[i] - b[i];
    if (o[i] > b[i])
      row.winner = ComparisonRow::Winner::Ours;
    else if (b[i] > o[i])
      row.winner = ComparisonRow::Winner::Base;
    cmp.rows.push_back(row);
  }
  return cmp;
}

std::string render_comparison(const Comparison &cmp, int decimals) {
  auto cell = [&](double v, bool bold) {
    auto s = fixed(v, decimals);
    return bold ? "**" + s + "**" : s;
  };
  auto signed_delta = [&](double d) {
    auto s = fixed(d, decimals);
    // "-0.00" and "0.00" both read as no change.
    if (s.find_first_not_of("-0.") == std::string::npos)
      return fixed(0.0, decimals);
    return d > 0 ? "+" + s : s;
  };

  std::vector<std::string> model{"Model", "", cmp.ours_tag.empty()
                                                  ? std::string("ours")
                                                  : cmp.ours_tag,
                                 "Delta"};
  std::vector<std::vector<std::string>> columns{model};
  for (const auto &row : cmp.rows) {
    using W = ComparisonRow::Winner;
    columns.push_back({std::string(row.metric), "Base",
                       cell(row.base, row.winner == W::Base), ""});
    columns.push_back({"", "Ours", cell(row.ours, row.winner == W::Ours),
                       signed_delta(row.delta)});
  }
  std::vector<std::size_t> width;
  for (const auto &col : columns) {
    std::size_t w = 0;
    for (const auto &c : col)
      w = std::max(w, c.size());
    width.push_back(w);
  }
  std::string out;
  for (std::size_t line = 0; line < 4; ++line) {
    std::string text;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0)
        text += (c % 2 == 1) ? " | " : "  ";
      std::string v = columns[c][line];
      v.resize(width[c], ' ');
      text += v;
    }
    while (!text.empty() && text.back() == ' ')
      text.pop_back();
    out += text + "\n";
  }
  return out;
}

std::string comparison_to_json(const Comparison &cmp, int indent) {
  ordered_json j;
  j["base_tag"] = cmp.base_tag;
  j["ours_tag"] = cmp.ours_tag;
  j["question_count"] = cmp.question_count;
  j["rows"] = ordered_json::array();
  for (const auto &row : cmp.rows) {
    using W = ComparisonRow::Winner;
    j["rows"].push_back({{"metric", row.metric},
                         {"base", row.base},
                         {"ours", row.ours},
                         {"delta", row.delta},
                         {"bold", row.winner == W::Ours   ? "ours"
                                  : row.winner == W::Base ? "base"
                                                          : "none"}});
  }
  return j.dump(indent) + "\n";
}

} // namespace ayah
