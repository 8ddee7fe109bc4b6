#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ayah/corpus.hpp"
#include "ayah/dataset.hpp"
#include "ayah/eval.hpp"
#include "ayah/run.hpp"
#include "ayah/scorer.hpp"

namespace ayah {

/// No-answer score floor; an unset tau disables thresholding.
struct Threshold {
  std::optional<double> tau;

  static Threshold none() { return {}; }
  static Threshold at(double tau) { return {tau}; }
  bool is_none() const noexcept { return !tau.has_value(); }

  /// "none" or a finite real. Throws PreconditionError.
  static Threshold parse(std::string_view s);
  std::string str() const;

  friend bool operator==(const Threshold &, const Threshold &) = default;
};

/// Scores every corpus passage against the question's English text and
/// keeps the canonical top k. Throws MissingTranslation, ProtocolError when a
/// scorer breaks alignment or finiteness, and whatever the scorer throws.
std::vector<RankedEntry> rank(const Question &question, const Corpus &corpus,
                              const Scorer &scorer, std::size_t k = 10);

/// Drops entries scoring below tau and renumbers ranks; a list whose best
/// score is below tau becomes empty (no answer).
std::vector<RankedEntry> apply_threshold(std::vector<RankedEntry> ranked,
                                         const Threshold &threshold);

struct RetrieveOptions {
  std::size_t k = 10;
  Threshold threshold;
  std::string tag = "ours";
  /// Questions ranked concurrently; output order is input order regardless.
  std::size_t jobs = 1;
};

RankedRun retrieve(const std::vector<Question> &questions, const Corpus &corpus,
                   const Scorer &scorer, const RetrieveOptions &options = {});

struct TuningResult {
  Threshold best;
  /// (tau, dev MAP@10) for each grid value, ascending tau.
  std::vector<std::pair<double, double>> grid_scores;
};

/// Picks the grid value with the highest dev MAP@10 (ties go to the smaller
/// tau). Each question is ranked once at the MAP cutoff; only qrels of the
/// given questions are used. Throws PreconditionError on an empty grid.
TuningResult tune_threshold(const std::vector<Question> &dev_questions,
                            const Qrels &dev_qrels, const Corpus &corpus,
                            const Scorer &scorer, std::vector<double> grid,
                            const EvalConfig &config = {});

} // namespace ayah
