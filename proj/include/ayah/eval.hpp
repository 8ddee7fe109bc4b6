#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ayah/dataset.hpp"
#include "ayah/run.hpp"

namespace ayah {

using RelevantSet = std::set<std::string>;

/// |top-k ∩ relevant| / k. The denominator stays k when fewer than k
/// passages were retrieved.
double precision_at_k(std::span<const std::string> ranked,
                      const RelevantSet &relevant, std::size_t k);

/// |top-k ∩ relevant| / |relevant|. Throws ZeroRelevant.
double recall_at_k(std::span<const std::string> ranked,
                   const RelevantSet &relevant, std::size_t k);

/// Sum of P@i over relevant ranks i <= k, divided by |relevant| (uncapped,
/// so more than k relevant passages cannot reach 1). Throws ZeroRelevant.
double average_precision_at_k(std::span<const std::string> ranked,
                              const RelevantSet &relevant, std::size_t k = 10);

/// 1/r for the first relevant rank r <= k, else 0. Throws ZeroRelevant.
double reciprocal_rank_at_k(std::span<const std::string> ranked,
                            const RelevantSet &relevant, std::size_t k = 10);

/// How zero-answer questions are scored. AllOrNothing: every metric is 1 for
/// an empty prediction and 0 otherwise.
enum class ZeroAnswerPolicy { AllOrNothing };

struct EvalConfig {
  std::size_t short_cutoff = 5;
  std::size_t long_cutoff = 10;
  std::size_t map_cutoff = 10;
  std::size_t mrr_cutoff = 10;
  ZeroAnswerPolicy zero_answer_policy = ZeroAnswerPolicy::AllOrNothing;
};

struct MetricValues {
  double map10 = 0.0;
  double mrr = 0.0;
  double rec5 = 0.0;
  double rec10 = 0.0;
  double pre5 = 0.0;
  double pre10 = 0.0;

  static constexpr std::array<std::string_view, 6> kNames{
      "map10", "mrr", "rec5", "rec10", "pre5", "pre10"};
  /// Display names, in kNames order.
  static constexpr std::array<std::string_view, 6> kLabels{
      "MAP10", "MRR", "Rec5", "Rec10", "Pre5", "Pre10"};

  std::array<double, 6> values() const {
    return {map10, mrr, rec5, rec10, pre5, pre10};
  }

  friend bool operator==(const MetricValues &, const MetricValues &) = default;
};

struct QuestionMetrics {
  std::string question_id;
  bool zero_answer = false;
  MetricValues values;
};

struct MetricReport {
  std::string run_tag;
  EvalConfig config;
  /// Sorted by question id.
  std::vector<QuestionMetrics> per_question;
  MetricValues mean;
  std::size_t question_count = 0;
  std::size_t zero_answer_count = 0;
};

/// Scores every question in the run plus every question with judgments
/// (absent ones count as empty predictions). Means are accumulated in
/// question id order. Throws UnknownQuestion and ZeroRelevant.
MetricReport evaluate(const RankedRun &run, const Qrels &qrels,
                      const std::vector<Question> &questions,
                      const EvalConfig &config = {});

std::string report_to_json(const MetricReport &report, int indent = 2);
std::string render_report(const MetricReport &report);

struct ComparisonRow {
  std::string_view metric;
  double base = 0.0;
  double ours = 0.0;
  double delta = 0.0;
  enum class Winner { None, Base, Ours } winner = Winner::None;
};

struct Comparison {
  std::string base_tag;
  std::string ours_tag;
  std::size_t question_count = 0;
  std::vector<ComparisonRow> rows;
};

/// Throws QuestionSetMismatch unless both reports cover the same questions.
Comparison compare_runs(const MetricReport &base, const MetricReport &ours);

/// Plain-text table: Base and Ours columns per metric, the larger of each
/// pair wrapped in ** **, and a signed delta.
std::string render_comparison(const Comparison &cmp, int decimals = 2);
std::string comparison_to_json(const Comparison &cmp, int indent = 2);

} // namespace ayah
