#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace xcsp3kit {

enum class Op {
  neg, abs, add, sub, mul, div, mod, sqr, pow, min, max, dist,
  lt, le, ge, gt, ne, eq, set, in,
  not_, and_, or_, xor_, iff, imp, if_,
};

const char* op_name(Op op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Var, Param, Apply };
  static constexpr int kParamRest = -2;  // %...

  Kind kind = Kind::Const;
  int64_t value = 0;
  std::string name;  // textual variable reference
  int var = -1;      // bound variable index, -1 before binding
  int param = -1;
  Op op = Op::add;
  std::vector<ExprPtr> args;

  static ExprPtr constant(int64_t v);
  static ExprPtr variable(std::string name, int var = -1);
  static ExprPtr apply(Op op, std::vector<ExprPtr> args);
};

ExprPtr parse_expression(std::string_view text, bool allow_params = false);
std::string to_string(const Expr& e);

// same shape, same constants, same variable names
bool same_tree(const Expr& a, const Expr& b);
size_t node_count(const Expr& e);

void collect_variable_names(const Expr& e, std::vector<std::string>& out);
void collect_vars(const Expr& e, std::vector<int>& out);
bool has_params(const Expr& e);

// new tree with every Var node bound through resolve(name)
ExprPtr bind_variables(const ExprPtr& e, const std::function<int(const std::string&)>& resolve);

}  // namespace xcsp3kit
