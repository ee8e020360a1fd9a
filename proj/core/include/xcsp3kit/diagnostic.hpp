#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace xcsp3kit {

struct Location {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

// Coarse classes; the CLI maps them onto exit codes.
enum class ErrorKind {
  Xml,          // not well-formed, not XML at all
  Grammar,      // textual micro-grammar of contents and attributes
  Structure,    // skeleton, references, arities
  Unsupported,  // valid XCSP3 but outside the core subset handled here
  Evaluation,   // division by zero, overflow, ...
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, std::string message, Location loc = {});

  ErrorKind kind() const { return kind_; }
  // short stable tag such as "dangling-id" or "whitespace"
  const std::string& code() const { return code_; }
  const std::string& message() const { return message_; }
  const Location& location() const { return loc_; }

  // keeps an inner location if there is one
  Error at(Location loc) const;
  std::string describe() const;

 private:
  ErrorKind kind_;
  std::string code_;
  std::string message_;
  Location loc_;
};

[[noreturn]] void fail(ErrorKind kind, std::string code, std::string message, Location loc = {});
[[noreturn]] void unsupported(std::string what, Location loc = {});

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Warning;
  std::string code;
  std::string message;
  Location location;
  std::string describe() const;
};

using Warnings = std::vector<Diagnostic>;

void warn(Warnings* sink, std::string code, std::string message, Location loc = {});

}  // namespace xcsp3kit
