#include "ayah/dataset.hpp"

#include <unordered_set>

#include "json.hpp"

#include "ayah/error.hpp"
#include "ayah/io.hpp"
#include "ayah/text.hpp"

namespace ayah {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kArabicQuestionMark = "\xD8\x9F"; // U+061F

std::string at_line(const std::string &where, std::size_t line) {
  return where + ":" + std::to_string(line) + ": ";
}

std::string require_string(const json &obj, const char *key,
                           const std::string &prefix, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw ParseError(prefix + "field \"" + key + "\" must be a string", line);
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json &obj, const char *key,
                                           const std::string &prefix,
                                           std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null())
    return std::nullopt;
  if (!it->is_string())
    throw ParseError(prefix + "field \"" + key + "\" must be a string or null",
                     line);
  return it->get<std::string>();
}

template <typename Enum, std::size_t N>
Enum require_enum(const json &obj, const char *key,
                  const std::array<Enum, N> &allowed,
                  const std::string &prefix, std::size_t line) {
  std::string token = require_string(obj, key, prefix, line);
  for (Enum e : allowed)
    if (to_token(e) == token)
      return e;
  std::string listing;
  for (Enum e : allowed) {
    if (!listing.empty())
      listing += "|";
    listing += to_token(e);
  }
  throw ParseError(prefix + "field \"" + key + "\" has unknown value \"" +
                       token + "\" (allowed: " + listing + ")",
                   line);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

} // namespace

std::string_view to_token(QuestionType t) noexcept {
  switch (t) {
  case QuestionType::Single: return "single";
  case QuestionType::Multi: return "multi";
  case QuestionType::Zero: return "zero";
  }
  return "";
}

std::string_view to_token(Split s) noexcept {
  switch (s) {
  case Split::Train: return "train";
  case Split::Dev: return "dev";
  case Split::Test: return "test";
  }
  return "";
}

std::string_view to_token(Source s) noexcept {
  switch (s) {
  case Source::Original: return "original";
  case Source::Literature: return "literature";
  case Source::Paraphrase: return "paraphrase";
  }
  return "";
}

std::optional<QuestionType> question_type_from_token(std::string_view s) {
  for (auto t : kQuestionTypes)
    if (to_token(t) == s)
      return t;
  return std::nullopt;
}

std::optional<Split> split_from_token(std::string_view s) {
  for (auto t : kSplits)
    if (to_token(t) == s)
      return t;
  return std::nullopt;
}

std::optional<Source> source_from_token(std::string_view s) {
  for (auto t : kSources)
    if (to_token(t) == s)
      return t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Qrels

Qrels::Qrels(std::vector<Judgment> judgments)
    : judgments_(std::move(judgments)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < judgments_.size(); ++i) {
    const auto &j = judgments_[i];
    if (j.relevance != 0 && j.relevance != 1)
      throw InvariantViolation("judgment (" + j.question_id + ", " +
                               j.passage_id.str() +
                               "): relevance must be 0 or 1");
    if (!seen.insert(j.question_id + '\t' + j.passage_id.str()).second)
      throw DuplicateJudgment("duplicate judgment (" + j.question_id + ", " +
                              j.passage_id.str() + ")");
    by_question_[j.question_id].push_back(i);
  }
}

std::vector<PassageId> Qrels::positives(std::string_view question_id) const {
  std::vector<PassageId> out;
  auto it = by_question_.find(std::string(question_id));
  if (it == by_question_.end())
    return out;
  for (auto i : it->second)
    if (judgments_[i].relevance == 1)
      out.push_back(judgments_[i].passage_id);
  return out;
}

std::vector<Judgment> Qrels::for_question(std::string_view question_id) const {
  std::vector<Judgment> out;
  auto it = by_question_.find(std::string(question_id));
  if (it == by_question_.end())
    return out;
  for (auto i : it->second)
    out.push_back(judgments_[i]);
  return out;
}

std::optional<int> Qrels::relevance(std::string_view question_id,
                                    const PassageId &passage) const {
  auto it = by_question_.find(std::string(question_id));
  if (it == by_question_.end())
    return std::nullopt;
  for (auto i : it->second)
    if (judgments_[i].passage_id == passage)
      return judgments_[i].relevance;
  return std::nullopt;
}

bool Qrels::has_question(std::string_view question_id) const {
  return by_question_.contains(std::string(question_id));
}

std::vector<std::string> Qrels::question_ids() const {
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  for (const auto &j : judgments_)
    if (seen.insert(j.question_id).second)
      ids.push_back(j.question_id);
  return ids;
}

// ---------------------------------------------------------------------------
// Questions

std::vector<Question> parse_questions(const std::vector<std::string> &lines,
                                      const std::string &where) {
  std::vector<Question> questions;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (text::trim(lines[i]).empty())
      continue;
    const std::string prefix = at_line(where, line_no);
    json obj;
    try {
      obj = json::parse(lines[i]);
    } catch (const json::parse_error &e) {
      throw ParseError(prefix + "invalid JSON: " + e.what(), line_no);
    }
    if (!obj.is_object())
      throw ParseError(prefix + "expected a JSON object", line_no);

    Question q;
    q.id = require_string(obj, "id", prefix, line_no);
    q.text_ar = require_string(obj, "text_ar", prefix, line_no);
    q.text_en = optional_string(obj, "text_en", prefix, line_no);
    q.qtype = require_enum(obj, "qtype", kQuestionTypes, prefix, line_no);
    q.split = require_enum(obj, "split", kSplits, prefix, line_no);
    q.source = require_enum(obj, "source", kSources, prefix, line_no);
    q.parent_id = optional_string(obj, "parent_id", prefix, line_no);

    if (q.id.empty() || text::has_whitespace(q.id))
      throw InvariantViolation(prefix + "field \"id\" must be a non-empty "
                                        "token without whitespace",
                               line_no);
    if ((q.source == Source::Paraphrase) != q.parent_id.has_value())
      throw InvariantViolation(
          prefix + "field \"parent_id\" must be set iff source is paraphrase",
          line_no);
    try {
      (void)standardize_text(q.text_ar, true);
    } catch (const EmptyAfterCleaning &) {
      throw InvariantViolation(prefix + "field \"text_ar\" is empty", line_no);
    }
    questions.push_back(std::move(q));
  }
  check_question_invariants(questions);
  return questions;
}

void check_question_invariants(const std::vector<Question> &questions) {
  std::unordered_map<std::string, const Question *> by_id;
  for (const auto &q : questions) {
    if ((q.source == Source::Paraphrase) != q.parent_id.has_value())
      throw InvariantViolation("question " + q.id +
                               ": field \"parent_id\" must be set iff source "
                               "is paraphrase");
    if (!by_id.emplace(q.id, &q).second)
      throw InvariantViolation("question " + q.id + ": field \"id\" is not "
                                                    "unique");
  }
  for (const auto &q : questions) {
    if (!q.parent_id)
      continue;
    auto it = by_id.find(*q.parent_id);
    if (it == by_id.end())
      throw InvariantViolation("question " + q.id +
                               ": field \"parent_id\" references unknown "
                               "question " +
                               *q.parent_id);
    if (it->second->source == Source::Paraphrase)
      throw InvariantViolation("question " + q.id +
                               ": field \"parent_id\" references a "
                               "paraphrase (" +
                               *q.parent_id + ")");
  }
}

std::vector<Question> load_questions(const std::filesystem::path &path) {
  return parse_questions(io::read_lines(path), path.string());
}

std::string format_questions_jsonl(const std::vector<Question> &questions) {
  std::string out;
  for (const auto &q : questions) {
    json obj;
    obj["id"] = q.id;
    obj["text_ar"] = q.text_ar;
    obj["text_en"] = q.text_en ? json(*q.text_en) : json(nullptr);
    obj["qtype"] = to_token(q.qtype);
    obj["split"] = to_token(q.split);
    obj["source"] = to_token(q.source);
    obj["parent_id"] = q.parent_id ? json(*q.parent_id) : json(nullptr);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void write_questions(const std::vector<Question> &questions,
                     const std::filesystem::path &path) {
  io::write_file_atomic(path, format_questions_jsonl(questions));
}

// ---------------------------------------------------------------------------
// Judgments

Qrels parse_judgments(const std::vector<std::string> &lines,
                      const std::string &where) {
  std::vector<Judgment> judgments;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (text::trim(lines[i]).empty())
      continue;
    const std::string prefix = at_line(where, line_no);
    auto fields = text::split_whitespace(lines[i]);
    if (fields.size() != 4)
      throw ParseError(prefix + "expected 4 fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    Judgment j{std::string(fields[0]), PassageId(1, 1, 1), 0};
    try {
      j.passage_id = PassageId::parse(fields[2]);
    } catch (const Error &e) {
      throw ParseError(prefix + e.what(), line_no);
    }
    if (fields[3] == "0")
      j.relevance = 0;
    else if (fields[3] == "1")
      j.relevance = 1;
    else
      throw ParseError(prefix + "relevance must be 0 or 1, found \"" +
                           std::string(fields[3]) + "\"",
                       line_no);
    auto key = j.question_id + '\t' + j.passage_id.str();
    auto [it, inserted] = seen.emplace(key, line_no);
    if (!inserted)
      throw DuplicateJudgment(prefix + "duplicate judgment (" + j.question_id +
                                  ", " + j.passage_id.str() +
                                  "), first on line " +
                                  std::to_string(it->second),
                              line_no);
    judgments.push_back(std::move(j));
  }
  return Qrels(std::move(judgments));
}

Qrels load_judgments(const std::filesystem::path &path) {
  return parse_judgments(io::read_lines(path), path.string());
}

std::string format_qrels(const Qrels &qrels) {
  std::string out;
  for (const auto &j : qrels.judgments()) {
    out += j.question_id;
    out += "\t0\t";
    out += j.passage_id.str();
    out += '\t';
    out += j.relevance == 1 ? '1' : '0';
    out += '\n';
  }
  return out;
}

void write_judgments(const Qrels &qrels, const std::filesystem::path &path) {
  io::write_file_atomic(path, format_qrels(qrels));
}

std::vector<std::string> load_exclusion_list(const std::filesystem::path &path) {
  std::vector<std::string> ids;
  for (const auto &line : io::read_lines(path)) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    ids.emplace_back(t);
  }
  return ids;
}

Filtered apply_exclusions(const std::vector<Question> &questions,
                          const Qrels &qrels,
                          const std::vector<std::string> &excluded) {
  std::unordered_set<std::string> drop(excluded.begin(), excluded.end());
  Filtered out;
  for (const auto &q : questions) {
    if (drop.contains(q.id))
      out.dropped.push_back(q.id);
    else
      out.questions.push_back(q);
  }
  std::vector<Judgment> kept;
  for (const auto &j : qrels.judgments())
    if (!drop.contains(j.question_id))
      kept.push_back(j);
  out.qrels = Qrels(std::move(kept));
  return out;
}

// ---------------------------------------------------------------------------
// Validation, cleaning, stats

ValidationReport validate_dataset(const std::vector<Question> &questions,
                                  const Qrels &qrels, const Corpus &corpus) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, const std::string &qid,
                 std::string message) {
    report.violations.push_back({kind, qid, std::move(message)});
  };

  std::unordered_map<std::string, const Question *> by_id;
  for (const auto &q : questions)
    by_id.emplace(q.id, &q);

  for (const auto &j : qrels.judgments()) {
    if (!by_id.contains(j.question_id))
      add(Violation::Kind::UnknownQuestion, j.question_id,
          "judgment references unknown question " + j.question_id);
    if (!corpus.contains(j.passage_id))
      add(Violation::Kind::UnknownPassage, j.question_id,
          "judgment references passage " + j.passage_id.str() +
              " absent from corpus");
  }

  for (const auto &q : questions) {
    const auto positives = qrels.positives(q.id).size();
    switch (q.qtype) {
    case QuestionType::Zero:
      if (positives > 0)
        add(Violation::Kind::ZeroAnswerHasPositive, q.id,
            "zero-answer has positive (question " + q.id + ")");
      break;
    case QuestionType::Single:
      if (positives != 1)
        add(Violation::Kind::SingleAnswerPositiveCount, q.id,
            "single-answer question " + q.id + " has " +
                std::to_string(positives) + " positives (expected 1)");
      break;
    case QuestionType::Multi:
      if (positives < 2)
        add(Violation::Kind::MultiAnswerTooFewPositives, q.id,
            "multi-answer question " + q.id + " has " +
                std::to_string(positives) + " positives (expected >= 2)");
      break;
    }
    if (q.parent_id) {
      auto it = by_id.find(*q.parent_id);
      if (it == by_id.end())
        add(Violation::Kind::MissingParent, q.id,
            "paraphrase " + q.id + " references missing parent " +
                *q.parent_id);
      else if (it->second->split != q.split)
        add(Violation::Kind::SplitLeakage, q.id,
            "paraphrase " + q.id + " is in split " +
                std::string(to_token(q.split)) + " but its parent is in " +
                std::string(to_token(it->second->split)));
    }
  }
  return report;
}

std::string standardize_text(std::string_view input, bool arabic) {
  std::string s = text::collapse_whitespace(input);
  while (true) {
    if (ends_with(s, "?"))
      s.pop_back();
    else if (ends_with(s, kArabicQuestionMark))
      s.resize(s.size() - kArabicQuestionMark.size());
    else
      break;
    while (!s.empty() && s.back() == ' ')
      s.pop_back();
  }
  if (s.empty())
    throw EmptyAfterCleaning("question text is empty after cleaning");
  s += arabic ? std::string(kArabicQuestionMark) : std::string("?");
  return s;
}

Question standardize_question(const Question &q) {
  Question out = q;
  try {
    out.text_ar = standardize_text(q.text_ar, true);
    if (q.text_en)
      out.text_en = standardize_text(*q.text_en, false);
  } catch (const EmptyAfterCleaning &) {
    throw EmptyAfterCleaning("question " + q.id +
                             " is empty after cleaning");
  }
  return out;
}

DatasetStats compute_stats(const std::vector<Question> &questions,
                           const Qrels &qrels) {
  DatasetStats stats;
  for (auto s : kSplits)
    stats.per_split[s] = 0;
  for (auto t : kQuestionTypes)
    stats.per_qtype[t] = 0;
  for (auto s : kSources)
    stats.per_source[s] = 0;
  for (const auto &q : questions) {
    ++stats.per_split[q.split];
    ++stats.per_qtype[q.qtype];
    ++stats.per_source[q.source];
  }
  stats.total_questions = questions.size();
  for (const auto &j : qrels.judgments())
    if (j.relevance == 1)
      ++stats.total_positive_judgments;
  return stats;
}

} // namespace ayah
