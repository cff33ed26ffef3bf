#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wpgen {

/// 1-based source position. Line 0 means "unknown".
struct Pos {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
  friend bool operator==(const Pos&, const Pos&) = default;
};

enum class ErrorCode {
  Unbalanced,
  Lex,
  Elab,
  Undeclared,
  Sort,
  Arity,
  DupTarget,
  DupAttr,
  UnknownAttr,
  Unsupported,
  OldContext,
  NoPost,
  NoMeasure,
  DiaLoop,
  Usage,
  Io,
  Spawn,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, Pos pos = {});

  ErrorCode code() const { return code_; }
  Pos pos() const { return pos_; }
  const std::string& message() const { return message_; }

  // Fills in a position if none was recorded yet.
  Error with_pos(Pos pos) const;

 private:
  ErrorCode code_;
  std::string message_;
  Pos pos_;
};

}  // namespace wpgen
