#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ayah/corpus.hpp"

namespace ayah {

struct RankedEntry {
  PassageId passage_id;
  double score = 0.0;
  int rank = 1;

  friend bool operator==(const RankedEntry &, const RankedEntry &) = default;
};

/// An empty entry list is a "no answer" prediction.
struct QuestionRanking {
  std::string question_id;
  std::vector<RankedEntry> entries;

  friend bool operator==(const QuestionRanking &,
                         const QuestionRanking &) = default;
};

struct RankedRun {
  std::string tag;
  std::size_t k = 10;
  std::vector<QuestionRanking> questions;

  const QuestionRanking *find(std::string_view question_id) const;

  friend bool operator==(const RankedRun &, const RankedRun &) = default;
};

/// Passage id used in run files for an empty (no-answer) prediction.
inline constexpr std::string_view kNoAnswer = "NO-ANSWER";

/// Canonical order: score descending, then passage id ascending.
bool ranks_before(const RankedEntry &a, const RankedEntry &b) noexcept;

/// Sorts canonically, keeps the first `k`, and renumbers ranks from 1.
std::vector<RankedEntry> canonical_top_k(std::vector<RankedEntry> entries,
                                         std::size_t k);

enum class TieOrder { Canonical, Any };

/// Checks the run invariants: unique question ids, list length <= k,
/// contiguous ranks, non-increasing finite scores, unique passages. With
/// TieOrder::Canonical equal scores must also be in passage id order.
/// Throws InvariantViolation.
void check_run(const RankedRun &run, TieOrder ties = TieOrder::Canonical);

/// TREC format `qid Q0 pid rank score tag`, score printed with 6 decimals.
std::string format_run(const RankedRun &run);
void write_run(const RankedRun &run, const std::filesystem::path &path);

/// Parses a run file. Ranks must be 1..n per question, passages unique per
/// question and scores non-increasing by rank (ties in rounded scores are
/// accepted in any passage order). Throws ParseError or InvariantViolation.
RankedRun parse_run(const std::vector<std::string> &lines,
                    const std::string &where = "run");
RankedRun read_run(const std::filesystem::path &path);

} // namespace ayah
