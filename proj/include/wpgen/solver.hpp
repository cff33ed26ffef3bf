#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace wpgen {

/// A backend SMT solver running as a child process, spoken to over its
/// standard input and output.
class SolverProcess {
 public:
  /// Resolves argv[0] through PATH. Throws E_SPAWN if it cannot be started.
  explicit SolverProcess(const std::vector<std::string>& argv);
  ~SolverProcess();

  SolverProcess(const SolverProcess&) = delete;
  SolverProcess& operator=(const SolverProcess&) = delete;

  /// Writes `text` followed by a newline. Returns false if the solver is gone.
  bool send(std::string_view text);

  /// Next output line without its terminator; nullopt on timeout or end of output.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

  /// Reads one balanced s-expression (possibly spanning lines).
  std::optional<std::string> read_sexpr(std::chrono::milliseconds timeout);

  bool at_eof() const { return eof_; }
  bool timed_out() const { return timed_out_; }

  void close_input();
  void kill();
  int wait();

 private:
  bool fill(std::chrono::steady_clock::time_point deadline);

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool eof_ = false;
  bool timed_out_ = false;
  bool reaped_ = false;
  int status_ = 0;
};

}  // namespace wpgen
