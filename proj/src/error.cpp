#include "wpgen/error.hpp"

namespace wpgen {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unbalanced: return "E_UNBALANCED";
    case ErrorCode::Lex: return "E_LEX";
    case ErrorCode::Elab: return "E_ELAB";
    case ErrorCode::Undeclared: return "E_UNDECLARED";
    case ErrorCode::Sort: return "E_SORT";
    case ErrorCode::Arity: return "E_ARITY";
    case ErrorCode::DupTarget: return "E_DUP_TARGET";
    case ErrorCode::DupAttr: return "E_DUP_ATTR";
    case ErrorCode::UnknownAttr: return "E_UNKNOWN_ATTR";
    case ErrorCode::Unsupported: return "E_UNSUPPORTED";
    case ErrorCode::OldContext: return "E_OLD_CONTEXT";
    case ErrorCode::NoPost: return "E_NO_POST";
    case ErrorCode::NoMeasure: return "E_NO_MEASURE";
    case ErrorCode::DiaLoop: return "E_DIA_LOOP";
    case ErrorCode::Usage: return "E_USAGE";
    case ErrorCode::Io: return "E_IO";
    case ErrorCode::Spawn: return "E_SPAWN";
  }
  return "E_UNKNOWN";
}

namespace {

std::string render(ErrorCode code, const std::string& message, Pos pos) {
  std::string out;
  if (pos.known()) {
    out += std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": ";
  }
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, Pos pos)
    : std::runtime_error(render(code, message, pos)),
      code_(code),
      message_(std::move(message)),
      pos_(pos) {}

Error Error::with_pos(Pos pos) const {
  if (pos_.known()) return *this;
  return Error(code_, message_, pos);
}

}  // namespace wpgen
