#include "ayah/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ayah/error.hpp"
#include "ayah/io.hpp"
#include "ayah/text.hpp"

namespace ayah {

const QuestionRanking *RankedRun::find(std::string_view question_id) const {
  for (const auto &q : questions)
    if (q.question_id == question_id)
      return &q;
  return nullptr;
}

bool ranks_before(const RankedEntry &a, const RankedEntry &b) noexcept {
  if (a.score != b.score)
    return a.score > b.score;
  return a.passage_id < b.passage_id;
}

std::vector<RankedEntry> canonical_top_k(std::vector<RankedEntry> entries,
                                         std::size_t k) {
  std::sort(entries.begin(), entries.end(), ranks_before);
  if (entries.size() > k)
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(k), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i].rank = static_cast<int>(i + 1);
  return entries;
}

void check_run(const RankedRun &run, TieOrder ties) {
  std::unordered_set<std::string> qids;
  for (const auto &q : run.questions) {
    if (!qids.insert(q.question_id).second)
      throw InvariantViolation("run lists question " + q.question_id +
                               " twice");
    if (q.entries.size() > run.k)
      throw InvariantViolation("question " + q.question_id + " has " +
                               std::to_string(q.entries.size()) +
                               " entries, more than k=" +
                               std::to_string(run.k));
    std::unordered_set<std::string> pids;
    for (std::size_t i = 0; i < q.entries.size(); ++i) {
      const auto &e = q.entries[i];
      if (e.rank != static_cast<int>(i + 1))
        throw InvariantViolation("question " + q.question_id +
                                 ": ranks are not contiguous from 1");
      if (!std::isfinite(e.score))
        throw InvariantViolation("question " + q.question_id +
                                 ": non-finite score");
      if (!pids.insert(e.passage_id.str()).second)
        throw InvariantViolation("question " + q.question_id +
                                 ": duplicate passage " + e.passage_id.str());
      if (i > 0 && (ties == TieOrder::Canonical
                        ? ranks_before(e, q.entries[i - 1])
                        : e.score > q.entries[i - 1].score))
        throw InvariantViolation("question " + q.question_id +
                                 ": entries are not in canonical order");
    }
  }
}

namespace {

std::string format_score(double score) {
  if (std::abs(score) < 5e-7)
    score = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", score);
  return buf;
}

} // namespace

std::string format_run(const RankedRun &run) {
  check_run(run, TieOrder::Any);
  std::string out;
  for (const auto &q : run.questions) {
    if (q.entries.empty()) {
      out += q.question_id + " Q0 " + std::string(kNoAnswer) + " 1 " +
             format_score(0.0) + " " + run.tag + "\n";
      continue;
    }
    for (const auto &e : q.entries)
      out += q.question_id + " Q0 " + e.passage_id.str() + " " +
             std::to_string(e.rank) + " " + format_score(e.score) + " " +
             run.tag + "\n";
  }
  return out;
}

void write_run(const RankedRun &run, const std::filesystem::path &path) {
  io::write_file_atomic(path, format_run(run));
}

RankedRun parse_run(const std::vector<std::string> &lines,
                    const std::string &where) {
  struct Line {
    std::size_t line_no;
    std::string passage; // empty for NO-ANSWER
    int rank;
    double score;
  };
  RankedRun run;
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Line>> grouped;
  bool have_tag = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (text::trim(lines[i]).empty())
      continue;
    const std::string prefix = where + ":" + std::to_string(line_no) + ": ";
    auto f = text::split_whitespace(lines[i]);
    if (f.size() != 6)
      throw ParseError(prefix + "expected 6 fields, found " +
                           std::to_string(f.size()),
                       line_no);
    Line l{line_no, {}, 0, 0.0};
    auto rank_res = std::from_chars(f[3].data(), f[3].data() + f[3].size(),
                                    l.rank);
    if (rank_res.ec != std::errc() || rank_res.ptr != f[3].data() + f[3].size() ||
        l.rank < 1)
      throw ParseError(prefix + "invalid rank \"" + std::string(f[3]) + "\"",
                       line_no);
    auto score_res = std::from_chars(f[4].data(), f[4].data() + f[4].size(),
                                     l.score);
    if (score_res.ec != std::errc() ||
        score_res.ptr != f[4].data() + f[4].size() || !std::isfinite(l.score))
      throw ParseError(prefix + "invalid score \"" + std::string(f[4]) + "\"",
                       line_no);
    if (f[2] != kNoAnswer) {
      try {
        l.passage = PassageId::parse(f[2]).str();
      } catch (const Error &e) {
        throw ParseError(prefix + e.what(), line_no);
      }
    }
    if (!have_tag) {
      run.tag = std::string(f[5]);
      have_tag = true;
    } else if (run.tag != f[5]) {
      throw InvariantViolation(prefix + "run tag \"" + std::string(f[5]) +
                                   "\" differs from \"" + run.tag + "\"",
                               line_no);
    }
    std::string qid(f[0]);
    auto [it, inserted] = grouped.try_emplace(qid);
    if (inserted)
      order.push_back(qid);
    it->second.push_back(std::move(l));
  }

  std::size_t longest = 0;
  for (const auto &qid : order) {
    auto &ls = grouped[qid];
    QuestionRanking qr{qid, {}};
    bool no_answer = std::any_of(ls.begin(), ls.end(),
                                 [](const Line &l) { return l.passage.empty(); });
    if (no_answer) {
      if (ls.size() != 1 || ls.front().rank != 1)
        throw InvariantViolation(where + ": question " + qid + " mixes " +
                                     std::string(kNoAnswer) +
                                     " with ranked passages",
                                 ls.front().line_no);
      run.questions.push_back(std::move(qr));
      continue;
    }
    std::stable_sort(ls.begin(), ls.end(),
                     [](const Line &a, const Line &b) { return a.rank < b.rank; });
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const auto &l = ls[i];
      if (l.rank != static_cast<int>(i + 1))
        throw InvariantViolation(where + ":" + std::to_string(l.line_no) +
                                     ": question " + qid +
                                     " has non-contiguous ranks",
                                 l.line_no);
      if (!seen.insert(l.passage).second)
        throw InvariantViolation(where + ":" + std::to_string(l.line_no) +
                                     ": question " + qid +
                                     " lists passage " + l.passage + " twice",
                                 l.line_no);
      if (i > 0 && l.score > ls[i - 1].score)
        throw InvariantViolation(where + ":" + std::to_string(l.line_no) +
                                     ": question " + qid +
                                     " has scores increasing with rank",
                                 l.line_no);
      qr.entries.push_back({PassageId::parse(l.passage), l.score, l.rank});
    }
    longest = std::max(longest, qr.entries.size());
    run.questions.push_back(std::move(qr));
  }
  run.k = std::max<std::size_t>(10, longest);
  return run;
}

RankedRun read_run(const std::filesystem::path &path) {
  return parse_run(io::read_lines(path), path.string());
}

} // namespace ayah
