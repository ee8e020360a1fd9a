#include "xcsp3kit/diagnostic.hpp"

namespace xcsp3kit {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Xml: return "xml";
    case ErrorKind::Grammar: return "grammar";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Unsupported: return "unsupported feature";
    case ErrorKind::Evaluation: return "evaluation";
  }
  return "?";
}

static std::string where(const Location& loc) {
  if (!loc.known()) return "";
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
}

Error::Error(ErrorKind kind, std::string code, std::string message, Location loc)
    : std::runtime_error(where(loc) + message),
      kind_(kind),
      code_(std::move(code)),
      message_(std::move(message)),
      loc_(loc) {}

Error Error::at(Location loc) const {
  if (loc_.known()) return *this;
  return Error(kind_, code_, message_, loc);
}

std::string Error::describe() const {
  std::string s = where(loc_);
  if (kind_ == ErrorKind::Unsupported) s += "unsupported feature: ";
  return s + message_;
}

void fail(ErrorKind kind, std::string code, std::string message, Location loc) {
  throw Error(kind, std::move(code), std::move(message), loc);
}

void unsupported(std::string what, Location loc) {
  throw Error(ErrorKind::Unsupported, "unsupported", std::move(what), loc);
}

std::string Diagnostic::describe() const {
  return where(location) + (severity == Severity::Warning ? "warning: " : "error: ") + message;
}

void warn(Warnings* sink, std::string code, std::string message, Location loc) {
  if (!sink) return;
  sink->push_back({Diagnostic::Severity::Warning, std::move(code), std::move(message), loc});
}

}  // namespace xcsp3kit
