#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ayah/corpus.hpp"

namespace ayah {

enum class QuestionType { Single, Multi, Zero };
enum class Split { Train, Dev, Test };
enum class Source { Original, Literature, Paraphrase };

inline constexpr std::array kQuestionTypes{QuestionType::Single,
                                           QuestionType::Multi,
                                           QuestionType::Zero};
inline constexpr std::array kSplits{Split::Train, Split::Dev, Split::Test};
inline constexpr std::array kSources{Source::Original, Source::Literature,
                                     Source::Paraphrase};

/// Wire tokens: single|multi|zero, train|dev|test,
/// original|literature|paraphrase.
std::string_view to_token(QuestionType t) noexcept;
std::string_view to_token(Split s) noexcept;
std::string_view to_token(Source s) noexcept;
std::optional<QuestionType> question_type_from_token(std::string_view s);
std::optional<Split> split_from_token(std::string_view s);
std::optional<Source> source_from_token(std::string_view s);

struct Question {
  std::string id;
  std::string text_ar;
  std::optional<std::string> text_en;
  QuestionType qtype = QuestionType::Single;
  Split split = Split::Train;
  Source source = Source::Original;
  std::optional<std::string> parent_id;

  friend bool operator==(const Question &, const Question &) = default;
};

struct Judgment {
  std::string question_id;
  PassageId passage_id;
  int relevance = 0;

  friend bool operator==(const Judgment &, const Judgment &) = default;
};

/// Judgments in file order, with per-question lookup.
class Qrels {
public:
  Qrels() = default;
  /// Throws DuplicateJudgment on a repeated (question, passage) pair and
  /// InvariantViolation on relevance outside {0,1}.
  explicit Qrels(std::vector<Judgment> judgments);

  const std::vector<Judgment> &judgments() const noexcept { return judgments_; }
  std::size_t size() const noexcept { return judgments_.size(); }

  /// Relevance-1 passages for a question, in file order.
  std::vector<PassageId> positives(std::string_view question_id) const;
  /// All judgments for a question, in file order.
  std::vector<Judgment> for_question(std::string_view question_id) const;
  std::optional<int> relevance(std::string_view question_id,
                               const PassageId &passage) const;
  bool has_question(std::string_view question_id) const;

  /// Question ids in order of first appearance.
  std::vector<std::string> question_ids() const;

private:
  std::vector<Judgment> judgments_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_question_;
};

std::vector<Question> load_questions(const std::filesystem::path &path);
std::vector<Question> parse_questions(const std::vector<std::string> &lines,
                                      const std::string &where = "questions");
/// Checks the per-record and cross-record question invariants.
void check_question_invariants(const std::vector<Question> &questions);

std::string format_questions_jsonl(const std::vector<Question> &questions);
void write_questions(const std::vector<Question> &questions,
                     const std::filesystem::path &path);

Qrels load_judgments(const std::filesystem::path &path);
Qrels parse_judgments(const std::vector<std::string> &lines,
                      const std::string &where = "qrels");
std::string format_qrels(const Qrels &qrels);
void write_judgments(const Qrels &qrels, const std::filesystem::path &path);

/// One question id per line; blank lines and `#` comments ignored.
std::vector<std::string> load_exclusion_list(const std::filesystem::path &path);

struct Violation {
  enum class Kind {
    UnknownQuestion,
    UnknownPassage,
    ZeroAnswerHasPositive,
    SingleAnswerPositiveCount,
    MultiAnswerTooFewPositives,
    MissingParent,
    SplitLeakage,
  };
  Kind kind;
  std::string question_id;
  std::string message;

  friend bool operator==(const Violation &, const Violation &) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  friend bool operator==(const ValidationReport &,
                         const ValidationReport &) = default;
};

ValidationReport validate_dataset(const std::vector<Question> &questions,
                                  const Qrels &qrels, const Corpus &corpus);

/// Collapses whitespace and makes the text end in exactly one question mark
/// ('؟' for Arabic, '?' for English). Throws EmptyAfterCleaning.
Question standardize_question(const Question &q);
std::string standardize_text(std::string_view text, bool arabic);

struct DatasetStats {
  std::map<Split, std::size_t> per_split;
  std::map<QuestionType, std::size_t> per_qtype;
  std::map<Source, std::size_t> per_source;
  std::size_t total_questions = 0;
  std::size_t total_positive_judgments = 0;

  friend bool operator==(const DatasetStats &, const DatasetStats &) = default;
};

DatasetStats compute_stats(const std::vector<Question> &questions,
                           const Qrels &qrels);

/// Drops questions from `questions` whose ids appear in `excluded`, together
/// with their judgments.
struct Filtered {
  std::vector<Question> questions;
  Qrels qrels;
  std::vector<std::string> dropped;
};
Filtered apply_exclusions(const std::vector<Question> &questions,
                          const Qrels &qrels,
                          const std::vector<std::string> &excluded);

} // namespace ayah
