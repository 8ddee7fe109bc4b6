#include "ayah/error.hpp"

namespace ayah {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::MalformedId: return "MalformedId";
  case ErrorKind::Range: return "RangeError";
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::Alignment: return "AlignmentError";
  case ErrorKind::DuplicateId: return "DuplicateId";
  case ErrorKind::NotFound: return "NotFound";
  case ErrorKind::InvariantViolation: return "InvariantViolation";
  case ErrorKind::DuplicateJudgment: return "DuplicateJudgment";
  case ErrorKind::EmptyAfterCleaning: return "EmptyAfterCleaning";
  case ErrorKind::Provider: return "ProviderError";
  case ErrorKind::DuplicateParaphrase: return "DuplicateParaphrase";
  case ErrorKind::Transport: return "TransportError";
  case ErrorKind::Protocol: return "ProtocolError";
  case ErrorKind::FixtureMissingQuestion: return "FixtureMissingQuestion";
  case ErrorKind::MissingTranslation: return "MissingTranslation";
  case ErrorKind::ZeroRelevant: return "ZeroRelevant";
  case ErrorKind::UnknownQuestion: return "UnknownQuestion";
  case ErrorKind::QuestionSetMismatch: return "QuestionSetMismatch";
  case ErrorKind::Io: return "IoError";
  case ErrorKind::Precondition: return "PreconditionError";
  }
  return "Error";
}

} // namespace ayah
