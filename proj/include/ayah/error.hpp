#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ayah {

enum class ErrorKind {
  MalformedId,
  Range,
  Parse,
  Alignment,
  DuplicateId,
  NotFound,
  InvariantViolation,
  DuplicateJudgment,
  EmptyAfterCleaning,
  Provider,
  DuplicateParaphrase,
  Transport,
  Protocol,
  FixtureMissingQuestion,
  MissingTranslation,
  ZeroRelevant,
  UnknownQuestion,
  QuestionSetMismatch,
  Io,
  Precondition,
};

const char *to_string(ErrorKind kind);

/// Base of every error raised by the library. `line()` is the 1-based source
/// line for file-parsing errors and 0 otherwise.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message, std::size_t line = 0)
      : std::runtime_error(message), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

private:
  ErrorKind kind_;
  std::size_t line_;
};

template <ErrorKind K> class KindError : public Error {
public:
  explicit KindError(const std::string &message, std::size_t line = 0)
      : Error(K, message, line) {}
};

using MalformedId = KindError<ErrorKind::MalformedId>;
using RangeError = KindError<ErrorKind::Range>;
using ParseError = KindError<ErrorKind::Parse>;
using AlignmentError = KindError<ErrorKind::Alignment>;
using DuplicateId = KindError<ErrorKind::DuplicateId>;
using NotFound = KindError<ErrorKind::NotFound>;
using InvariantViolation = KindError<ErrorKind::InvariantViolation>;
using DuplicateJudgment = KindError<ErrorKind::DuplicateJudgment>;
using EmptyAfterCleaning = KindError<ErrorKind::EmptyAfterCleaning>;
using ProviderError = KindError<ErrorKind::Provider>;
using DuplicateParaphrase = KindError<ErrorKind::DuplicateParaphrase>;
using TransportError = KindError<ErrorKind::Transport>;
using ProtocolError = KindError<ErrorKind::Protocol>;
using FixtureMissingQuestion = KindError<ErrorKind::FixtureMissingQuestion>;
using MissingTranslation = KindError<ErrorKind::MissingTranslation>;
using ZeroRelevant = KindError<ErrorKind::ZeroRelevant>;
using UnknownQuestion = KindError<ErrorKind::UnknownQuestion>;
using QuestionSetMismatch = KindError<ErrorKind::QuestionSetMismatch>;
using IoError = KindError<ErrorKind::Io>;
using PreconditionError = KindError<ErrorKind::Precondition>;

} // namespace ayah
