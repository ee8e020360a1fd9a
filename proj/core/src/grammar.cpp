#include "xcsp3kit/grammar.hpp"

#include <algorithm>
#include <charconv>

#include "xcsp3kit/xml.hpp"

namespace xcsp3kit {

namespace {

bool ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void bad(std::string code, std::string msg) {
  fail(ErrorKind::Grammar, std::move(code), std::move(msg));
}

void no_whitespace(std::string_view s, const char* what) {
  if (std::any_of(s.begin(), s.end(), ws))
    bad("whitespace", std::string("whitespace inside ") + what + " '" + std::string(s) + "'");
}

std::string q(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !letter(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return letter(c) || digit(c) || c == '_'; });
}

bool looks_like_integer(std::string_view s) {
  size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), digit);
}

int64_t parse_integer(std::string_view s) {
  if (!looks_like_integer(s)) bad("integer", "not an integer: " + q(s));
  std::string_view body = s[0] == '+' ? s.substr(1) : s;
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec == std::errc::result_out_of_range) bad("overflow", "integer out of 64-bit range: " + q(s));
  if (ec != std::errc() || ptr != body.data() + body.size()) bad("integer", "not an integer: " + q(s));
  // the two extremes stand for the infinities
  if (v == kMinusInfinity || v == kPlusInfinity) bad("overflow", "integer out of range: " + q(s));
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && ws(s[i])) ++i;
    size_t b = i;
    while (i < s.size() && !ws(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

// ---------------------------------------------------------------------------

IntInterval parse_interval(std::string_view text) {
  std::string_view t = trim(text);
  no_whitespace(t, "interval");
  size_t dots = t.find("..");
  if (dots == std::string_view::npos) bad("interval", "not an interval: " + q(t));
  std::string_view a = t.substr(0, dots), b = t.substr(dots + 2);
  IntInterval r;
  if (a == "-infinity") r.lo = kMinusInfinity;
  else if (a == "+infinity" || a == "infinity") bad("interval", "lower bound cannot be " + q(a));
  else r.lo = parse_integer(a);
  if (b == "+infinity") r.hi = kPlusInfinity;
  else if (b == "-infinity" || b == "infinity") bad("interval", "upper bound cannot be " + q(b));
  else r.hi = parse_integer(b);
  if (r.lo > r.hi) bad("interval", "empty interval " + q(t));
  return r;
}

Domain parse_domain(std::string_view text) {
  std::vector<IntInterval> ranges;
  for (std::string_view tok : split_ws(text)) {
    IntInterval r;
    if (tok.find("..") != std::string_view::npos) {
      r = parse_interval(tok);
    } else {
      int64_t v = parse_integer(tok);
      r = {v, v};
    }
    if (!ranges.empty() && ranges.back().hi >= r.lo)
      bad("domain-order", "domain values must be in strictly increasing order near " + q(tok));
    ranges.push_back(r);
  }
  return Domain(std::move(ranges));
}

// ---------------------------------------------------------------------------

const char* to_string(RelOp op) {
  switch (op) {
    case RelOp::lt: return "lt";
    case RelOp::le: return "le";
    case RelOp::ge: return "ge";
    case RelOp::gt: return "gt";
    case RelOp::eq: return "eq";
    case RelOp::ne: return "ne";
    case RelOp::in: return "in";
    case RelOp::notin: return "notin";
  }
  return "?";
}

std::optional<RelOp> rel_op_from(std::string_view t) {
  for (RelOp op : {RelOp::lt, RelOp::le, RelOp::ge, RelOp::gt, RelOp::eq, RelOp::ne, RelOp::in,
                   RelOp::notin})
    if (t == to_string(op)) return op;
  return std::nullopt;
}

namespace {

std::vector<int64_t> parse_set_literal(std::string_view t) {
  // set(1,2,3) or set()
  std::string_view inner = t.substr(4, t.size() - 5);
  std::vector<int64_t> out;
  if (inner.empty()) return out;
  size_t b = 0;
  while (true) {
    size_t c = inner.find(',', b);
    std::string_view part = inner.substr(b, c == std::string_view::npos ? inner.size() - b : c - b);
    out.push_back(parse_integer(part));
    if (c == std::string_view::npos) break;
    b = c + 1;
  }
  return out;
}

}  // namespace

Condition parse_condition(std::string_view text) {
  std::string_view t = trim(text);
  no_whitespace(t, "condition");
  if (t.size() < 5 || t.front() != '(' || t.back() != ')')
    bad("condition", "condition must have the form (operator,operand): " + q(t));
  std::string_view inner = t.substr(1, t.size() - 2);
  size_t comma = inner.find(',');
  if (comma == std::string_view::npos) bad("condition", "missing ',' in condition " + q(t));
  auto op = rel_op_from(inner.substr(0, comma));
  if (!op) bad("condition", "unknown operator " + q(inner.substr(0, comma)) + " in condition");
  std::string_view rhs = inner.substr(comma + 1);
  Condition c;
  c.op = *op;
  bool membership = *op == RelOp::in || *op == RelOp::notin;
  if (rhs.size() >= 5 && rhs.substr(0, 4) == "set(" && rhs.back() == ')') {
    c.operand.kind = Operand::Kind::Set;
    c.operand.set = parse_set_literal(rhs);
  } else if (rhs.find("..") != std::string_view::npos) {
    c.operand.kind = Operand::Kind::Interval;
    c.operand.interval = parse_interval(rhs);
  } else if (looks_like_integer(rhs)) {
    c.operand.kind = Operand::Kind::Value;
    c.operand.value = parse_integer(rhs);
  } else {
    VarAccess a = parse_var_access(rhs);
    if (!a.is_single_cell()) bad("condition", "condition operand must be a single variable: " + q(rhs));
    c.operand.kind = Operand::Kind::Variable;
    c.operand.variable = std::string(rhs);
  }
  bool set_like = c.operand.kind == Operand::Kind::Interval || c.operand.kind == Operand::Kind::Set;
  if (membership && !set_like)
    bad("condition", std::string("operator ") + to_string(*op) + " needs an interval or a set");
  if (!membership && set_like)
    bad("condition", std::string("operator ") + to_string(*op) + " needs a value or a variable");
  return c;
}

std::string to_string(const Condition& c) {
  std::string s = "(";
  s += to_string(c.op);
  s += ',';
  switch (c.operand.kind) {
    case Operand::Kind::Value: s += std::to_string(c.operand.value); break;
    case Operand::Kind::Variable: s += c.operand.variable; break;
    case Operand::Kind::Interval: s += to_string(c.operand.interval); break;
    case Operand::Kind::Set: {
      s += "set(";
      for (size_t i = 0; i < c.operand.set.size(); ++i)
        s += (i ? "," : "") + std::to_string(c.operand.set[i]);
      s += ')';
      break;
    }
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

bool TupleRow::has_star() const {
  return std::any_of(cells.begin(), cells.end(), [](const auto& c) { return !c.has_value(); });
}

std::vector<std::vector<std::string>> split_vectors(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  size_t i = 0;
  while (true) {
    while (i < text.size() && ws(text[i])) ++i;
    if (i >= text.size()) break;
    if (text[i] != '(') bad("tuple", "expected '(' in tuple list near " + q(text.substr(i, 12)));
    size_t close = text.find(')', i);
    if (close == std::string_view::npos) bad("tuple", "unterminated tuple near " + q(text.substr(i, 12)));
    std::string_view inner = text.substr(i + 1, close - i - 1);
    if (std::any_of(inner.begin(), inner.end(), ws))
      bad("whitespace", "whitespace inside tuple '(" + std::string(inner) + ")'");
    if (inner.find('(') != std::string_view::npos) bad("tuple", "nested '(' in tuple");
    std::vector<std::string> cells;
    size_t b = 0;
    while (true) {
      size_t c = inner.find(',', b);
      std::string_view part = inner.substr(b, c == std::string_view::npos ? inner.size() - b : c - b);
      if (part.empty()) bad("tuple", "empty cell in tuple '(" + std::string(inner) + ")'");
      cells.emplace_back(part);
      if (c == std::string_view::npos) break;
      b = c + 1;
    }
    out.push_back(std::move(cells));
    i = close + 1;
    if (i < text.size() && !ws(text[i]) && text[i] != '(')
      bad("tuple", "unexpected character after tuple near " + q(text.substr(i, 12)));
  }
  return out;
}

std::vector<TupleRow> parse_tuples(std::string_view text, const TupleOptions& opts) {
  std::vector<TupleRow> rows;
  std::optional<size_t> arity = opts.arity;
  for (auto& raw : split_vectors(text)) {
    if (raw.size() < 2) bad("tuple", "tuples must have at least two values");
    if (arity && raw.size() != *arity)
      bad("arity", "tuple of arity " + std::to_string(raw.size()) + " where " +
                       std::to_string(*arity) + " is expected");
    arity = raw.size();
    TupleRow row;
    for (auto& cell : raw) {
      if (cell == "*") {
        if (!opts.allow_star) bad("star", "'*' is not allowed here");
        row.cells.emplace_back(std::nullopt);
      } else {
        row.cells.emplace_back(parse_integer(cell));
      }
    }
    rows.push_back(std::move(row));
  }
  // ordering rule applies to ordinary tuples
  const TupleRow* prev = nullptr;
  for (const auto& r : rows) {
    if (r.has_star()) continue;
    if (prev && !(prev->cells < r.cells)) {
      std::string msg = "tuples not in strictly increasing lexicographic order at " + to_string({r});
      if (opts.order == OrderPolicy::Error) bad("tuple-order", msg);
      warn(opts.warnings, "tuple-order", msg);
    }
    prev = &r;
  }
  return rows;
}

std::string to_string(const std::vector<TupleRow>& rows) {
  std::string s;
  for (const auto& r : rows) {
    s += '(';
    for (size_t i = 0; i < r.cells.size(); ++i) {
      if (i) s += ',';
      s += r.cells[i] ? std::to_string(*r.cells[i]) : "*";
    }
    s += ')';
  }
  return s;
}

// ---------------------------------------------------------------------------

bool VarAccess::is_single_cell() const {
  return std::all_of(indexers.begin(), indexers.end(),
                     [](const Indexer& x) { return x.kind == Indexer::Kind::Single; });
}

VarAccess parse_var_access(std::string_view text) {
  std::string_view t = text;
  no_whitespace(t, "variable reference");
  size_t br = t.find('[');
  VarAccess a;
  a.base = std::string(t.substr(0, br));
  if (!is_identifier(a.base)) bad("identifier", "not a variable identifier: " + q(t));
  size_t i = br;
  while (i != std::string_view::npos && i < t.size()) {
    if (t[i] != '[') bad("brackets", "malformed brackets in " + q(t));
    size_t close = t.find(']', i);
    if (close == std::string_view::npos) bad("brackets", "unterminated '[' in " + q(t));
    std::string_view inner = t.substr(i + 1, close - i - 1);
    if (inner.find('[') != std::string_view::npos) bad("brackets", "malformed brackets in " + q(t));
    Indexer x;
    if (inner.empty()) {
      x.kind = Indexer::Kind::Full;
    } else if (size_t d = inner.find(".."); d != std::string_view::npos) {
      x.kind = Indexer::Kind::Range;
      std::string_view lo = inner.substr(0, d), hi = inner.substr(d + 2);
      if (!std::all_of(lo.begin(), lo.end(), digit) || !std::all_of(hi.begin(), hi.end(), digit) ||
          lo.empty() || hi.empty())
        bad("index", "index range must be non-negative integers in " + q(t));
      x.lo = parse_integer(lo);
      x.hi = parse_integer(hi);
      if (x.lo > x.hi) bad("index", "empty index range in " + q(t));
    } else {
      if (!std::all_of(inner.begin(), inner.end(), digit))
        bad("index", "index must be a non-negative integer in " + q(t));
      x.kind = Indexer::Kind::Single;
      x.lo = x.hi = parse_integer(inner);
    }
    a.indexers.push_back(x);
    i = close + 1;
  }
  return a;
}

std::string to_string(const VarAccess& a) {
  std::string s = a.base;
  for (const auto& x : a.indexers) {
    s += '[';
    if (x.kind == Indexer::Kind::Single) s += std::to_string(x.lo);
    else if (x.kind == Indexer::Kind::Range) s += std::to_string(x.lo) + ".." + std::to_string(x.hi);
    s += ']';
  }
  return s;
}

}  // namespace xcsp3kit
