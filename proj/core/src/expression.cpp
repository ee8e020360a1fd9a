#include "xcsp3kit/expression.hpp"

#include <algorithm>
#include <optional>

#include "xcsp3kit/diagnostic.hpp"
#include "xcsp3kit/grammar.hpp"
#include "xcsp3kit/xml.hpp"

namespace xcsp3kit {

namespace {

struct OpInfo {
  Op op;
  const char* name;
  int min_arity;
  int max_arity;  // -1 unbounded
};

constexpr OpInfo kOps[] = {
    {Op::neg, "neg", 1, 1},   {Op::abs, "abs", 1, 1},   {Op::add, "add", 2, -1},
    {Op::sub, "sub", 2, 2},   {Op::mul, "mul", 2, -1},  {Op::div, "div", 2, 2},
    {Op::mod, "mod", 2, 2},   {Op::sqr, "sqr", 1, 1},   {Op::pow, "pow", 2, 2},
    {Op::min, "min", 2, -1},  {Op::max, "max", 2, -1},  {Op::dist, "dist", 2, 2},
    {Op::lt, "lt", 2, 2},     {Op::le, "le", 2, 2},     {Op::ge, "ge", 2, 2},
    {Op::gt, "gt", 2, 2},     {Op::ne, "ne", 2, 2},     {Op::eq, "eq", 2, -1},
    {Op::set, "set", 0, -1},  {Op::in, "in", 2, 2},     {Op::not_, "not", 1, 1},
    {Op::and_, "and", 2, -1}, {Op::or_, "or", 2, -1},   {Op::xor_, "xor", 2, -1},
    {Op::iff, "iff", 2, -1},  {Op::imp, "imp", 2, 2},   {Op::if_, "if", 3, 3},
};

// operators of the set and real calculi
constexpr const char* kForeign[] = {
    "card", "union", "inter", "diff", "sdiff", "hull", "djoint", "subset", "subseq", "supseq",
    "supset", "convex", "fdiv", "fmod", "sqrt", "nroot", "exp", "ln", "log", "sin", "cos",
    "tan", "asin", "acos", "atan", "sinh", "cosh", "tanh"};

const OpInfo* find_op(std::string_view name) {
  for (const auto& info : kOps)
    if (name == info.name) return &info;
  return nullptr;
}

const OpInfo& info_of(Op op) {
  for (const auto& info : kOps)
    if (info.op == op) return info;
  return kOps[0];
}

bool letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool digit(char c) { return c >= '0' && c <= '9'; }
bool ident_char(char c) { return letter(c) || digit(c) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view s, bool allow_params) : s_(s), allow_params_(allow_params) {}

  ExprPtr run() {
    ExprPtr e = term();
    if (pos_ != s_.size()) err("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (e->kind == Expr::Kind::Apply && e->op == Op::set) err("set() must be the second argument of in");
    return e;
  }

 private:
  [[noreturn]] void err(const std::string& msg) {
    fail(ErrorKind::Grammar, "expression",
         msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  ExprPtr term() {
    if (pos_ >= s_.size()) err("unexpected end of expression");
    char c = s_[pos_];
    if (c == '%') return param();
    if (digit(c) || c == '+' || c == '-') return number();
    if (letter(c)) return named();
    err("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr param() {
    size_t b = pos_++;
    if (s_.substr(pos_, 3) == "...") err("%... cannot occur inside an expression");
    size_t d = pos_;
    while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
    if (pos_ == d) err("malformed parameter");
    if (!allow_params_)
      fail(ErrorKind::Grammar, "parameter",
           "parameter " + std::string(s_.substr(b, pos_ - b)) + " outside a template");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Param;
    e->param = static_cast<int>(parse_integer(s_.substr(d, pos_ - d)));
    return e;
  }

  ExprPtr number() {
    size_t b = pos_;
    if (s_[pos_] == '+' || s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == '.' || letter(s_[pos_]))) err("malformed number");
    return Expr::constant(parse_integer(s_.substr(b, pos_ - b)));
  }

  ExprPtr named() {
    size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    std::string_view id = s_.substr(b, pos_ - b);
    if (pos_ < s_.size() && s_[pos_] == '(') {
      const OpInfo* info = find_op(id);
      if (!info) {
        for (const char* f : kForeign)
          if (id == f) unsupported("operator '" + std::string(id) + "' (not an integer operator)");
        err("unknown operator '" + std::string(id) + "'");
      }
      ++pos_;
      std::vector<ExprPtr> args;
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(term());
          if (pos_ >= s_.size()) err("missing ')'");
          if (s_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (s_[pos_] == ')') {
            ++pos_;
            break;
          }
          err("expected ',' or ')'");
        }
      }
      int n = static_cast<int>(args.size());
      if (n < info->min_arity || (info->max_arity >= 0 && n > info->max_arity)) {
        std::string want = info->max_arity == info->min_arity
                               ? std::to_string(info->min_arity)
                               : (info->max_arity < 0 ? "at least " + std::to_string(info->min_arity)
                                                      : std::to_string(info->min_arity) + ".." +
                                                            std::to_string(info->max_arity));
        fail(ErrorKind::Grammar, "arity",
             "operator " + std::string(id) + " takes " + want + " arguments, got " +
                 std::to_string(n) + " in '" + std::string(s_) + "'");
      }
      for (size_t i = 0; i < args.size(); ++i) {
        bool is_set = args[i]->kind == Expr::Kind::Apply && args[i]->op == Op::set;
        bool set_slot = info->op == Op::in && i == 1;
        if (is_set && !set_slot) err("set() must be the second argument of in");
        if (!is_set && set_slot) err("second argument of in must be set(...)");
        if (info->op == Op::set && args[i]->kind != Expr::Kind::Const &&
            args[i]->kind != Expr::Kind::Param)
          err("set() may only contain constants");
      }
      return Expr::apply(info->op, std::move(args));
    }
    // plain variable reference, possibly indexed
    while (pos_ < s_.size() && s_[pos_] == '[') {
      size_t close = s_.find(']', pos_);
      if (close == std::string_view::npos) err("unterminated '['");
      std::string_view inner = s_.substr(pos_ + 1, close - pos_ - 1);
      if (inner.empty() || !std::all_of(inner.begin(), inner.end(), digit))
        err("only single-cell references are allowed in expressions");
      pos_ = close + 1;
    }
    return Expr::variable(std::string(s_.substr(b, pos_ - b)));
  }

  std::string_view s_;
  size_t pos_ = 0;
  bool allow_params_;
};

}  // namespace

const char* op_name(Op op) { return info_of(op).name; }

ExprPtr Expr::constant(int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->value = v;
  return e;
}

ExprPtr Expr::variable(std::string name, int var) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(name);
  e->var = var;
  return e;
}

ExprPtr Expr::apply(Op op, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Apply;
  e->op = op;
  e->args = std::move(args);
  return e;
}

ExprPtr parse_expression(std::string_view text, bool allow_params) {
  std::string_view t = trim(text);
  if (t.empty()) fail(ErrorKind::Grammar, "expression", "empty expression");
  for (char c : t)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      fail(ErrorKind::Grammar, "whitespace", "whitespace inside expression '" + std::string(t) + "'");
  return Parser(t, allow_params).run();
}

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: return std::to_string(e.value);
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Param: return e.param == Expr::kParamRest ? "%..." : "%" + std::to_string(e.param);
    case Expr::Kind::Apply: break;
  }
  std::string s = op_name(e.op);
  s += '(';
  for (size_t i = 0; i < e.args.size(); ++i) {
    if (i) s += ',';
    s += to_string(*e.args[i]);
  }
  return s + ")";
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Const: return a.value == b.value;
    case Expr::Kind::Var: return a.name == b.name;
    case Expr::Kind::Param: return a.param == b.param;
    case Expr::Kind::Apply: break;
  }
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

size_t node_count(const Expr& e) {
  size_t n = 1;
  for (const auto& a : e.args) n += node_count(*a);
  return n;
}

void collect_variable_names(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Var) out.push_back(e.name);
  for (const auto& a : e.args) collect_variable_names(*a, out);
}

void collect_vars(const Expr& e, std::vector<int>& out) {
  if (e.kind == Expr::Kind::Var) out.push_back(e.var);
  for (const auto& a : e.args) collect_vars(*a, out);
}

bool has_params(const Expr& e) {
  if (e.kind == Expr::Kind::Param) return true;
  return std::any_of(e.args.begin(), e.args.end(), [](const ExprPtr& a) { return has_params(*a); });
}

ExprPtr bind_variables(const ExprPtr& e, const std::function<int(const std::string&)>& resolve) {
  switch (e->kind) {
    case Expr::Kind::Const:
    case Expr::Kind::Param: return e;
    case Expr::Kind::Var: return Expr::variable(e->name, resolve(e->name));
    case Expr::Kind::Apply: break;
  }
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(bind_variables(a, resolve));
  return Expr::apply(e->op, std::move(args));
}

}  // namespace xcsp3kit
