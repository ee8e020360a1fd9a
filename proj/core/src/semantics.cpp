#include "xcsp3kit/semantics.hpp"

#include <algorithm>
#include <set>

namespace xcsp3kit {

namespace {

[[noreturn]] void eval_error(std::string code, std::string msg) {
  fail(ErrorKind::Evaluation, std::move(code), std::move(msg));
}

bool truth(int64_t v) { return v != 0; }

std::vector<int64_t> values_of(const std::vector<VarId>& xs, const Assignment& a) {
  std::vector<int64_t> out;
  out.reserve(xs.size());
  for (VarId x : xs) out.push_back(a[x]);
  return out;
}

bool relate(int64_t l, RelOp op, int64_t r) {
  switch (op) {
    case RelOp::lt: return l < r;
    case RelOp::le: return l <= r;
    case RelOp::ge: return l >= r;
    case RelOp::gt: return l > r;
    case RelOp::eq: return l == r;
    case RelOp::ne: return l != r;
    default: return false;
  }
}

}  // namespace

int64_t Assignment::operator[](VarId x) const {
  if (!has(x)) fail(ErrorKind::Evaluation, "unbound", "variable #" + std::to_string(x) + " is not assigned");
  return values_[static_cast<size_t>(x)];
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) eval_error("overflow", "arithmetic overflow in addition");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) eval_error("overflow", "arithmetic overflow in multiplication");
  return r;
}

static int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) eval_error("overflow", "arithmetic overflow in subtraction");
  return r;
}

int64_t eval_expression(const Expr& e, const Assignment& a) {
  switch (e.kind) {
    case Expr::Kind::Const: return e.value;
    case Expr::Kind::Var:
      if (e.var < 0) eval_error("unbound", "variable " + e.name + " is not bound to the instance");
      return a[e.var];
    case Expr::Kind::Param: eval_error("param", "template parameter in an evaluated expression");
    case Expr::Kind::Apply: break;
  }
  const auto& args = e.args;
  auto arg = [&](size_t i) { return eval_expression(*args[i], a); };
  switch (e.op) {
    case Op::neg: return checked_sub(0, arg(0));
    case Op::abs: {
      int64_t v = arg(0);
      return v < 0 ? checked_sub(0, v) : v;
    }
    case Op::add: {
      int64_t s = 0;
      for (size_t i = 0; i < args.size(); ++i) s = checked_add(s, arg(i));
      return s;
    }
    case Op::sub: return checked_sub(arg(0), arg(1));
    case Op::mul: {
      int64_t s = 1;
      for (size_t i = 0; i < args.size(); ++i) s = checked_mul(s, arg(i));
      return s;
    }
    case Op::div:
    case Op::mod: {
      int64_t x = arg(0), y = arg(1);
      if (y == 0) eval_error("division-by-zero", e.op == Op::div ? "division by zero" : "modulo by zero");
      if (x == kMinusInfinity && y == -1) eval_error("overflow", "arithmetic overflow in division");
      // C++ truncates toward zero, remainder has the sign of the dividend
      return e.op == Op::div ? x / y : x % y;
    }
    case Op::sqr: {
      int64_t v = arg(0);
      return checked_mul(v, v);
    }
    case Op::pow: {
      int64_t b = arg(0), x = arg(1);
      if (x < 0) eval_error("negative-exponent", "pow with a negative exponent");
      int64_t r = 1;
      while (x > 0) {
        if (x & 1) r = checked_mul(r, b);
        x >>= 1;
        if (x) b = checked_mul(b, b);
      }
      return r;
    }
    case Op::min:
    case Op::max: {
      int64_t m = arg(0);
      for (size_t i = 1; i < args.size(); ++i) m = e.op == Op::min ? std::min(m, arg(i)) : std::max(m, arg(i));
      return m;
    }
    case Op::dist: {
      int64_t d = checked_sub(arg(0), arg(1));
      return d < 0 ? checked_sub(0, d) : d;
    }
    case Op::lt: return arg(0) < arg(1);
    case Op::le: return arg(0) <= arg(1);
    case Op::ge: return arg(0) >= arg(1);
    case Op::gt: return arg(0) > arg(1);
    case Op::ne: return arg(0) != arg(1);
    case Op::eq: {
      int64_t f = arg(0);
      for (size_t i = 1; i < args.size(); ++i)
        if (arg(i) != f) return 0;
      return 1;
    }
    case Op::set: eval_error("set", "set() used as a value");
    case Op::in: {
      int64_t v = arg(0);
      for (const auto& s : args[1]->args)
        if (eval_expression(*s, a) == v) return 1;
      return 0;
    }
    case Op::not_: return !truth(arg(0));
    case Op::and_:
      for (size_t i = 0; i < args.size(); ++i)
        if (!truth(arg(i))) return 0;
      return 1;
    case Op::or_:
      for (size_t i = 0; i < args.size(); ++i)
        if (truth(arg(i))) return 1;
      return 0;
    case Op::xor_: {
      bool p = false;
      for (size_t i = 0; i < args.size(); ++i) p ^= truth(arg(i));
      return p;
    }
    case Op::iff: {
      bool f = truth(arg(0));
      for (size_t i = 1; i < args.size(); ++i)
        if (truth(arg(i)) != f) return 0;
      return 1;
    }
    case Op::imp: return !truth(arg(0)) || truth(arg(1));
    case Op::if_: return truth(arg(0)) ? arg(1) : arg(2);
  }
  eval_error("operator", "unknown operator");
}

bool eval_condition(int64_t lhs, const Cond& c, const Assignment& a) {
  if (c.op == RelOp::in || c.op == RelOp::notin) {
    bool member = c.is_interval ? c.range.contains(lhs) : std::binary_search(c.set.begin(), c.set.end(), lhs);
    return c.op == RelOp::in ? member : !member;
  }
  return relate(lhs, c.op, a.value(c.rhs));
}

// ---------------------------------------------------------------------------

bool check_intension(const IntensionC& p, const Assignment& a) { return eval_expression(*p.expr, a) == 1; }

bool check_extension(const ExtensionC& p, const Assignment& a) {
  if (p.unary) return p.unary_values.contains(a[p.scope[0]]) == p.supports;
  std::vector<int64_t> t = values_of(p.scope, a);
  bool found = false;
  for (const auto& row : p.rows) {
    bool match = true;
    for (size_t i = 0; i < t.size() && match; ++i) match = !row.cells[i] || *row.cells[i] == t[i];
    if (match) {
      found = true;
      break;
    }
  }
  return found == p.supports;
}

bool check_regular(const RegularC& p, const Assignment& a) {
  std::vector<char> cur(p.states.size(), 0), next;
  cur[static_cast<size_t>(p.start)] = 1;
  for (VarId x : p.scope) {
    int64_t v = a[x];
    next.assign(p.states.size(), 0);
    bool any = false;
    for (const auto& t : p.transitions)
      if (t.value == v && cur[static_cast<size_t>(t.from)]) {
        next[static_cast<size_t>(t.to)] = 1;
        any = true;
      }
    if (!any) return false;
    cur.swap(next);
  }
  for (int f : p.finals)
    if (cur[static_cast<size_t>(f)]) return true;
  return false;
}

bool check_mdd(const MddC& p, const Assignment& a) {
  std::vector<char> cur(p.nodes.size(), 0), next;
  cur[static_cast<size_t>(p.root)] = 1;
  for (VarId x : p.scope) {
    int64_t v = a[x];
    next.assign(p.nodes.size(), 0);
    bool any = false;
    for (const auto& t : p.transitions)
      if (t.value == v && cur[static_cast<size_t>(t.from)]) {
        next[static_cast<size_t>(t.to)] = 1;
        any = true;
      }
    if (!any) return false;
    cur.swap(next);
  }
  return cur[static_cast<size_t>(p.terminal)];
}

namespace {

bool distinct_except(const std::vector<int64_t>& v, const std::vector<int64_t>& except) {
  auto excepted = [&](int64_t x) { return std::find(except.begin(), except.end(), x) != except.end(); };
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j] && !excepted(v[i])) return false;
  return true;
}

std::vector<std::vector<VarId>> transpose(const std::vector<std::vector<VarId>>& m) {
  std::vector<std::vector<VarId>> t;
  if (m.empty()) return t;
  t.assign(m.front().size(), {});
  for (const auto& row : m)
    for (size_t j = 0; j < row.size(); ++j) t[j].push_back(row[j]);
  return t;
}

}  // namespace

bool check_all_different(const AllDifferentC& p, const Assignment& a) {
  std::vector<int64_t> v;
  v.reserve(p.terms.size());
  for (const auto& t : p.terms) v.push_back(eval_expression(*t, a));
  return distinct_except(v, p.except);
}

bool check_all_different(const AllDifferentListsC& p, const Assignment& a) {
  std::vector<std::vector<int64_t>> tuples;
  for (const auto& l : p.lists) tuples.push_back(values_of(l, a));
  auto excepted = [&](const std::vector<int64_t>& t) {
    return std::find(p.except.begin(), p.except.end(), t) != p.except.end();
  };
  for (size_t i = 0; i < tuples.size(); ++i)
    for (size_t j = i + 1; j < tuples.size(); ++j)
      if (tuples[i] == tuples[j] && !excepted(tuples[i])) return false;
  return true;
}

bool check_all_different(const AllDifferentMatrixC& p, const Assignment& a) {
  for (const auto& r : p.rows)
    if (!distinct_except(values_of(r, a), {})) return false;
  for (const auto& c : transpose(p.rows))
    if (!distinct_except(values_of(c, a), {})) return false;
  return true;
}

bool check_all_equal(const AllEqualC& p, const Assignment& a) {
  for (size_t i = 1; i < p.scope.size(); ++i)
    if (a[p.scope[i]] != a[p.scope[0]]) return false;
  return true;
}

bool check_ordered(const OrderedC& p, const Assignment& a) {
  for (size_t i = 0; i + 1 < p.scope.size(); ++i) {
    int64_t l = p.lengths.empty() ? 0 : a.value(p.lengths[i]);
    if (!relate(checked_add(a[p.scope[i]], l), p.op, a[p.scope[i + 1]])) return false;
  }
  return true;
}

bool lex_compare(const std::vector<int64_t>& x, const std::vector<int64_t>& y, RelOp op) {
  int c = x < y ? -1 : (x == y ? 0 : 1);
  return relate(c, op, 0);
}

bool check_lex(const LexListsC& p, const Assignment& a) {
  for (size_t i = 0; i + 1 < p.lists.size(); ++i)
    if (!lex_compare(values_of(p.lists[i], a), values_of(p.lists[i + 1], a), p.op)) return false;
  return true;
}

bool check_lex(const LexMatrixC& p, const Assignment& a) {
  LexListsC rows{p.rows, p.op};
  LexListsC cols{transpose(p.rows), p.op};
  return check_lex(rows, a) && check_lex(cols, a);
}

bool check_sum(const SumC& p, const Assignment& a) {
  int64_t s = 0;
  for (size_t i = 0; i < p.terms.size(); ++i) {
    int64_t c = p.coeffs.empty() ? 1 : a.value(p.coeffs[i]);
    s = checked_add(s, checked_mul(c, eval_expression(*p.terms[i], a)));
  }
  return eval_condition(s, p.cond, a);
}

bool check_count(const CountC& p, const Assignment& a) {
  std::vector<int64_t> vals;
  for (const auto& r : p.values) vals.push_back(a.value(r));
  int64_t n = 0;
  for (VarId x : p.scope) n += std::find(vals.begin(), vals.end(), a[x]) != vals.end();
  return eval_condition(n, p.cond, a);
}

bool check_n_values(const NValuesC& p, const Assignment& a) {
  std::set<int64_t> seen;
  for (VarId x : p.scope) seen.insert(a[x]);
  for (int64_t e : p.except) seen.erase(e);
  return eval_condition(static_cast<int64_t>(seen.size()), p.cond, a);
}

bool check_cardinality(const CardinalityC& p, const Assignment& a) {
  std::vector<int64_t> x = values_of(p.scope, a);
  std::vector<int64_t> vals;
  for (const auto& r : p.values) vals.push_back(a.value(r));
  for (size_t j = 0; j < vals.size(); ++j) {
    int64_t occ = std::count(x.begin(), x.end(), vals[j]);
    const Occurs& o = p.occurs[j];
    if (o.is_interval ? !o.range.contains(occ) : occ != a.value(o.ref)) return false;
  }
  if (p.closed)
    for (int64_t v : x)
      if (std::find(vals.begin(), vals.end(), v) == vals.end()) return false;
  return true;
}

bool check_extremum(const ExtremumC& p, const Assignment& a) {
  std::vector<int64_t> x = values_of(p.scope, a);
  int64_t m = p.maximum ? *std::max_element(x.begin(), x.end()) : *std::min_element(x.begin(), x.end());
  if (p.index >= 0) {
    int64_t i = a[p.index] - p.start_index;
    if (i < 0 || i >= static_cast<int64_t>(x.size()) || x[static_cast<size_t>(i)] != m) return false;
    auto first = std::find(x.begin(), x.end(), m) - x.begin();
    auto last = x.rend() - std::find(x.rbegin(), x.rend(), m) - 1;
    if (p.rank == Rank::First && i != first) return false;
    if (p.rank == Rank::Last && i != last) return false;
  }
  return !p.cond || eval_condition(m, *p.cond, a);
}

bool check_element(const ElementC& p, const Assignment& a) {
  std::vector<int64_t> x;
  for (const auto& r : p.list) x.push_back(a.value(r));
  int64_t v = a.value(p.value);
  if (p.index < 0) return std::find(x.begin(), x.end(), v) != x.end();
  int64_t i = a[p.index] - p.start_index;
  if (i < 0 || i >= static_cast<int64_t>(x.size()) || x[static_cast<size_t>(i)] != v) return false;
  auto first = std::find(x.begin(), x.end(), v) - x.begin();
  auto last = x.rend() - std::find(x.rbegin(), x.rend(), v) - 1;
  if (p.rank == Rank::First && i != first) return false;
  if (p.rank == Rank::Last && i != last) return false;
  return true;
}

bool check_channel(const ChannelC& p, const Assignment& a) {
  std::vector<int64_t> x = values_of(p.x, a);
  const int64_t nx = static_cast<int64_t>(x.size());
  switch (p.form) {
    case ChannelC::Form::One:
      // xi = j => xj = i; a value outside the index range makes no premise true
      for (int64_t i = 0; i < nx; ++i) {
        int64_t j = x[static_cast<size_t>(i)] - p.start_x;
        if (j >= 0 && j < nx && x[static_cast<size_t>(j)] != i + p.start_x) return false;
      }
      return true;
    case ChannelC::Form::Two: {
      std::vector<int64_t> y = values_of(p.y, a);
      const int64_t ny = static_cast<int64_t>(y.size());
      for (int64_t i = 0; i < nx; ++i) {
        int64_t j = x[static_cast<size_t>(i)] - p.start_y;
        if (j >= 0 && j < ny && y[static_cast<size_t>(j)] != i + p.start_x) return false;
      }
      if (nx == ny)
        for (int64_t j = 0; j < ny; ++j) {
          int64_t i = y[static_cast<size_t>(j)] - p.start_x;
          if (i >= 0 && i < nx && x[static_cast<size_t>(i)] != j + p.start_y) return false;
        }
      return true;
    }
    case ChannelC::Form::Value: {
      int64_t v = a[p.value];
      bool some = false;
      for (int64_t i = 0; i < nx; ++i) {
        bool one = x[static_cast<size_t>(i)] == 1;
        if (one != (v == i + p.start_x)) return false;
        some = some || one;
      }
      return some;
    }
  }
  return false;
}

bool check_no_overlap(const NoOverlapC& p, const Assignment& a) {
  const size_t n = p.origins.size();
  std::vector<std::vector<int64_t>> o(n), l(n);
  for (size_t i = 0; i < n; ++i) {
    o[i] = values_of(p.origins[i], a);
    for (const auto& r : p.lengths[i]) {
      int64_t v = a.value(r);
      if (v < 0) return false;  // lengths are non-negative
      l[i].push_back(v);
    }
  }
  auto zero = [&](size_t i) { return std::all_of(l[i].begin(), l[i].end(), [](int64_t v) { return v == 0; }); };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (p.zero_ignored && (zero(i) || zero(j))) continue;
      bool separated = false;
      for (size_t k = 0; k < o[i].size() && !separated; ++k)
        separated = checked_add(o[i][k], l[i][k]) <= o[j][k] || checked_add(o[j][k], l[j][k]) <= o[i][k];
      if (!separated) return false;
    }
  return true;
}

bool check_cumulative(const CumulativeC& p, const Assignment& a) {
  const size_t n = p.origins.size();
  std::vector<int64_t> o = values_of(p.origins, a), l, h, e;
  for (size_t i = 0; i < n; ++i) {
    l.push_back(a.value(p.lengths[i]));
    h.push_back(a.value(p.heights[i]));
    if (l[i] < 0) return false;
    e.push_back(checked_add(o[i], l[i]));
    if (!p.ends.empty() && a[p.ends[i]] != e[i]) return false;
  }
  // the load only changes at starts and ends
  std::vector<int64_t> events(o);
  events.insert(events.end(), e.begin(), e.end());
  for (int64_t t : events) {
    int64_t load = 0;
    bool running = false;
    for (size_t i = 0; i < n; ++i)
      if (o[i] <= t && t < e[i]) {
        running = true;
        load = checked_add(load, h[i]);
      }
    if (running && !eval_condition(load, p.cond, a)) return false;
  }
  return true;
}

bool check_circuit(const CircuitC& p, const Assignment& a) {
  std::vector<int64_t> x = values_of(p.scope, a);
  const int64_t n = static_cast<int64_t>(x.size());
  for (auto& v : x) {
    v -= p.start_index;
    if (v < 0 || v >= n) return false;
  }
  int64_t first = -1, active = 0;
  for (int64_t i = 0; i < n; ++i)
    if (x[static_cast<size_t>(i)] != i) {
      ++active;
      if (first < 0) first = i;
    }
  if (active < 2) return false;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  int64_t cur = first, steps = 0;
  do {
    if (seen[static_cast<size_t>(cur)] || x[static_cast<size_t>(cur)] == cur) return false;
    seen[static_cast<size_t>(cur)] = 1;
    cur = x[static_cast<size_t>(cur)];
    ++steps;
  } while (cur != first && steps <= n);
  if (cur != first || steps != active) return false;
  return !p.size || a.value(*p.size) == active;
}

bool check_instantiation(const InstantiationC& p, const Assignment& a) {
  for (size_t i = 0; i < p.scope.size(); ++i)
    if (a[p.scope[i]] != p.values[i]) return false;
  return true;
}

bool check_slide(const SlideC& p, const Assignment& a) {
  for (const auto& w : p.windows)
    if (!check_constraint(w, a)) return false;
  return true;
}

bool check_constraint(const Constraint& c, const Assignment& a) {
  return std::visit(
      [&](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, IntensionC>) return check_intension(p, a);
        else if constexpr (std::is_same_v<T, ExtensionC>) return check_extension(p, a);
        else if constexpr (std::is_same_v<T, RegularC>) return check_regular(p, a);
        else if constexpr (std::is_same_v<T, MddC>) return check_mdd(p, a);
        else if constexpr (std::is_same_v<T, AllDifferentC> || std::is_same_v<T, AllDifferentListsC> ||
                           std::is_same_v<T, AllDifferentMatrixC>)
          return check_all_different(p, a);
        else if constexpr (std::is_same_v<T, AllEqualC>) return check_all_equal(p, a);
        else if constexpr (std::is_same_v<T, OrderedC>) return check_ordered(p, a);
        else if constexpr (std::is_same_v<T, LexListsC> || std::is_same_v<T, LexMatrixC>) return check_lex(p, a);
        else if constexpr (std::is_same_v<T, SumC>) return check_sum(p, a);
        else if constexpr (std::is_same_v<T, CountC>) return check_count(p, a);
        else if constexpr (std::is_same_v<T, NValuesC>) return check_n_values(p, a);
        else if constexpr (std::is_same_v<T, CardinalityC>) return check_cardinality(p, a);
        else if constexpr (std::is_same_v<T, ExtremumC>) return check_extremum(p, a);
        else if constexpr (std::is_same_v<T, ElementC>) return check_element(p, a);
        else if constexpr (std::is_same_v<T, ChannelC>) return check_channel(p, a);
        else if constexpr (std::is_same_v<T, NoOverlapC>) return check_no_overlap(p, a);
        else if constexpr (std::is_same_v<T, CumulativeC>) return check_cumulative(p, a);
        else if constexpr (std::is_same_v<T, CircuitC>) return check_circuit(p, a);
        else if constexpr (std::is_same_v<T, InstantiationC>) return check_instantiation(p, a);
        else return check_slide(p, a);
      },
      c.payload);
}

}  // namespace xcsp3kit
