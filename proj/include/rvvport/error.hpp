#pragma once

#include <stdexcept>
#include <string>

namespace rvvport {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Corpus layout or manifest problems.
class CorpusError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration or a missing external tool. Aborts a run rather than
/// counting as a translation failure.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Source text the front end cannot handle. Carries a 1-based location.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(format(message, line, column)),
        bare_message_(message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& bare_message() const noexcept { return bare_message_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    return "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::string bare_message_;
  int line_;
  int column_;
};

/// Use/def extraction or dataflow problems (e.g. an undeclared name).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// LLM transport failures, exhausted replay scripts.
class LlmError : public Error {
 public:
  using Error::Error;
};

/// A response that carries no extractable code.
class NoCodeError : public Error {
 public:
  using Error::Error;
};

/// Unparsable benchmark output and similar execution-side failures.
class ExecError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (empty source, missing
/// feedback, out-of-range attempt count ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace rvvport
