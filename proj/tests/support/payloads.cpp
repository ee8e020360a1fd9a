#include "payloads.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace payloads {

using oracle::Vals;

namespace {

struct Gen {
  std::mt19937_64& rng;

  int64_t R(int64_t a, int64_t b) { return std::uniform_int_distribution<int64_t>(a, b)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<size_t>(R(0, static_cast<int64_t>(v.size()) - 1))]; }

  // 1 to 4 distinct sorted values from lo..hi
  std::vector<int64_t> dom(int64_t lo, int64_t hi, int64_t max_size = 4) {
    std::vector<int64_t> all;
    for (int64_t v = lo; v <= hi; ++v) all.push_back(v);
    std::shuffle(all.begin(), all.end(), rng);
    int64_t k = R(1, std::min<int64_t>(max_size, static_cast<int64_t>(all.size())));
    all.resize(static_cast<size_t>(k));
    std::sort(all.begin(), all.end());
    return all;
  }
};

std::string name(int i) { return "x" + std::to_string(i); }

std::string join(const std::vector<int>& vs) {
  std::string s;
  for (size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + name(vs[i]);
  return s;
}

std::string join_ints(const std::vector<int64_t>& vs, const char* sep = " ") {
  std::string s;
  for (size_t i = 0; i < vs.size(); ++i) s += (i ? sep : "") + std::to_string(vs[i]);
  return s;
}

// a value or a variable
struct Ref {
  int var = -1;
  int64_t c = 0;
  int64_t at(const Vals& x) const { return var >= 0 ? x[static_cast<size_t>(var)] : c; }
  std::string text() const { return var >= 0 ? name(var) : std::to_string(c); }
};

std::vector<int64_t> at(const std::vector<Ref>& rs, const Vals& x) {
  std::vector<int64_t> out;
  for (const auto& r : rs) out.push_back(r.at(x));
  return out;
}

std::string join_refs(const std::vector<Ref>& rs) {
  std::string s;
  for (size_t i = 0; i < rs.size(); ++i) s += (i ? " " : "") + rs[i].text();
  return s;
}

Vals pick_vals(const std::vector<int>& scope, const Vals& x) {
  Vals out;
  for (int v : scope) out.push_back(x[static_cast<size_t>(v)]);
  return out;
}

Ref ref(Gen& g, int n, int64_t lo, int64_t hi, double pvar = 0.3) {
  Ref r;
  if (n > 0 && g.coin(pvar)) r.var = static_cast<int>(g.R(0, n - 1));
  else r.c = g.R(lo, hi);
  return r;
}

struct CondT {
  oracle::Condition c;
  int var = -1;
  oracle::Condition at(const Vals& x) const {
    oracle::Condition r = c;
    if (var >= 0) r.k = x[static_cast<size_t>(var)];
    return r;
  }
  std::string text() const {
    std::string s = std::string("(") + oracle::rel_name(c.op) + ",";
    if (c.op == oracle::Rel::in || c.op == oracle::Rel::notin) {
      s += c.is_set ? "set(" + join_ints(c.set, ",") + ")" : std::to_string(c.lo) + ".." + std::to_string(c.hi);
    } else {
      s += var >= 0 ? name(var) : std::to_string(c.k);
    }
    return s + ")";
  }
};

CondT cond(Gen& g, int n, int64_t lo, int64_t hi) {
  CondT t;
  t.c.op = static_cast<oracle::Rel>(g.R(0, 7));
  if (t.c.op == oracle::Rel::in || t.c.op == oracle::Rel::notin) {
    if (g.coin()) {
      t.c.lo = g.R(lo, hi);
      t.c.hi = g.R(t.c.lo, hi + 1);
    } else {
      t.c.is_set = true;
      t.c.set = g.dom(lo, hi, 3);
    }
  } else if (n > 0 && g.coin(0.3)) {
    t.var = static_cast<int>(g.R(0, n - 1));
  } else {
    t.c.k = g.R(lo, hi);
  }
  return t;
}

// distinct variables, k of the first n
std::vector<int> scope(Gen& g, int n, int k) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i) v.push_back(i);
  std::shuffle(v.begin(), v.end(), g.rng);
  v.resize(static_cast<size_t>(k));
  return v;
}

// variables drawn with replacement
std::vector<int> scope_rep(Gen& g, int n, int k) {
  std::vector<int> v;
  for (int i = 0; i < k; ++i) v.push_back(static_cast<int>(g.R(0, n - 1)));
  return v;
}

std::string rank_name(oracle::Rank r) {
  return r == oracle::Rank::first ? "first" : r == oracle::Rank::last ? "last" : "any";
}

// --- expression trees ------------------------------------------------------

struct OpSpec {
  const char* op;
  int lo, hi;
};

const std::vector<OpSpec> kArith = {{"neg", 1, 1}, {"abs", 1, 1}, {"add", 2, 3}, {"sub", 2, 2}, {"mul", 2, 2},
                                    {"div", 2, 2}, {"mod", 2, 2}, {"sqr", 1, 1}, {"pow", 2, 2}, {"min", 2, 3},
                                    {"max", 2, 3}, {"dist", 2, 2}, {"if", 3, 3}};
const std::vector<OpSpec> kBool = {{"lt", 2, 2},  {"le", 2, 2},  {"ge", 2, 2},  {"gt", 2, 2},  {"ne", 2, 2},
                                   {"eq", 2, 3},  {"in", 1, 1},  {"not", 1, 1}, {"and", 2, 3}, {"or", 2, 3},
                                   {"xor", 2, 3}, {"iff", 2, 3}, {"imp", 2, 2}};

oracle::Tree leaf(Gen& g, int n) {
  oracle::Tree t;
  if (g.coin(0.6)) t.var = static_cast<int>(g.R(0, n - 1));
  else t.c = g.R(-2, 3);
  return t;
}

oracle::Tree tree(Gen& g, int n, int depth, bool boolean) {
  if (depth == 0 || (!boolean && g.coin(0.3))) return leaf(g, n);
  const OpSpec& s = g.pick(boolean ? kBool : kArith);
  oracle::Tree t;
  t.op = s.op;
  int k = static_cast<int>(g.R(s.lo, s.hi));
  bool logic = t.op == "not" || t.op == "and" || t.op == "or" || t.op == "xor" || t.op == "iff" || t.op == "imp";
  for (int i = 0; i < k; ++i) {
    if (t.op == "pow" && i == 1) {
      // small exponent; a variable may still be negative
      oracle::Tree e;
      if (g.coin()) e.var = static_cast<int>(g.R(0, n - 1));
      else e.c = g.R(0, 3);
      t.kids.push_back(e);
    } else if (t.op == "if" && i == 0) {
      t.kids.push_back(tree(g, n, depth - 1, true));
    } else {
      t.kids.push_back(tree(g, n, depth - 1, logic && g.coin(0.8)));
    }
  }
  if (t.op == "in") t.set = g.dom(-2, 3, 3);
  return t;
}

bool has_var(const oracle::Tree& t) {
  if (t.op.empty()) return t.var >= 0;
  return std::any_of(t.kids.begin(), t.kids.end(), has_var);
}

// --- generators ------------------------------------------------------------

Case intension(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 4));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(-2, 3));
  oracle::Tree t = tree(g, n, static_cast<int>(g.R(1, 3)), g.coin(0.85));
  if (!has_var(t)) {
    oracle::Tree w;
    w.op = "eq";
    w.kids = {t, leaf(g, n)};
    w.kids[1].var = 0;
    t = w;
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(name(i));
  c.constraint_xml = "<intension> " + oracle::to_text(t, names) + " </intension>";
  c.oracle = [t](const Vals& x) -> std::optional<bool> {
    auto v = oracle::eval(t, x);
    if (!v) return std::nullopt;
    return *v == 1;
  };
  return c;
}

Case extension(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 4));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3));
  bool supports = g.coin();
  const char* tag = supports ? "supports" : "conflicts";
  std::vector<int> sc = scope(g, n, n);
  if (n == 1) {
    std::vector<int64_t> vals = g.dom(-1, 4);
    c.constraint_xml = "<extension><list> x0 </list><" + std::string(tag) + "> " + join_ints(vals) + " </" + tag + "></extension>";
    c.oracle = [vals, supports](const Vals& x) -> std::optional<bool> {
      bool m = std::find(vals.begin(), vals.end(), x[0]) != vals.end();
      return supports ? m : !m;
    };
    return c;
  }
  std::set<Vals> plain;
  int rows = static_cast<int>(g.R(1, 6));
  for (int r = 0; r < rows; ++r) {
    Vals t;
    for (int v : sc) t.push_back(g.coin(0.9) ? g.pick(c.domains[static_cast<size_t>(v)]) : g.R(-1, 4));
    plain.insert(t);
  }
  std::vector<oracle::Tuple> all;
  std::string text;
  for (const auto& t : plain) {
    all.emplace_back(t.begin(), t.end());
    text += "(" + join_ints(t, ",") + ")";
  }
  if (g.coin(0.3)) {
    int k = static_cast<int>(g.R(1, 2));
    for (int r = 0; r < k; ++r) {
      oracle::Tuple t;
      std::string s = "(";
      size_t forced = static_cast<size_t>(g.R(0, static_cast<int64_t>(sc.size()) - 1));
      for (size_t i = 0; i < sc.size(); ++i) {
        if (i == forced || g.coin(0.4)) {
          t.emplace_back(std::nullopt);
          s += "*";
        } else {
          t.emplace_back(g.pick(c.domains[static_cast<size_t>(sc[i])]));
          s += std::to_string(*t.back());
        }
        s += i + 1 < sc.size() ? "," : ")";
      }
      all.push_back(t);
      text += s;
    }
  }
  c.constraint_xml = "<extension><list> " + join(sc) + " </list><" + tag + "> " + text + " </" + tag + "></extension>";
  c.oracle = [sc, all, supports](const Vals& x) -> std::optional<bool> {
    return oracle::extension(pick_vals(sc, x), all, supports);
  };
  return c;
}

Case regular(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 4));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 2));
  int states = static_cast<int>(g.R(1, 3));
  std::vector<std::tuple<int, int64_t, int>> arcs;
  for (int a = 0; a < states; ++a)
    for (int64_t v = 0; v <= 2; ++v)
      for (int b = 0; b < states; ++b)
        if (g.coin(0.35)) arcs.emplace_back(a, v, b);
  if (arcs.empty()) arcs.emplace_back(0, g.R(0, 2), static_cast<int>(g.R(0, states - 1)));
  std::vector<int> finals;
  for (int q = 0; q < states; ++q)
    if (g.coin(0.4)) finals.push_back(q);
  if (finals.empty()) finals.push_back(static_cast<int>(g.R(0, states - 1)));
  int start = static_cast<int>(g.R(0, states - 1));
  std::string tr;
  for (const auto& [a, v, b] : arcs) tr += "(q" + std::to_string(a) + "," + std::to_string(v) + ",q" + std::to_string(b) + ")";
  std::string fin;
  for (int f : finals) fin += " q" + std::to_string(f);
  std::vector<int> sc = scope_rep(g, n, static_cast<int>(g.R(1, 4)));
  c.constraint_xml = "<regular><list> " + join(sc) + " </list><transitions> " + tr + " </transitions><start> q" +
                     std::to_string(start) + " </start><final>" + fin + " </final></regular>";
  c.oracle = [sc, arcs, start, finals](const Vals& x) -> std::optional<bool> {
    return oracle::regular(pick_vals(sc, x), arcs, start, finals);
  };
  return c;
}

Case mdd(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 4));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 2));
  // layer l holds nodes; layer 0 is the root, layer n the terminal
  std::vector<std::vector<int>> layers;
  std::vector<std::string> names;
  int next = 0;
  for (int l = 0; l <= n; ++l) {
    int k = (l == 0 || l == n) ? 1 : static_cast<int>(g.R(1, 2));
    std::vector<int> layer;
    for (int j = 0; j < k; ++j) {
      layer.push_back(next++);
      names.push_back(l == 0 ? "r" : l == n ? "t" : "n" + std::to_string(l) + "_" + std::to_string(j));
    }
    layers.push_back(layer);
  }
  std::set<std::tuple<int, int64_t, int>> arcs;
  for (int l = 0; l < n; ++l) {
    for (int u : layers[static_cast<size_t>(l)]) {
      int k = static_cast<int>(g.R(1, 3));
      for (int j = 0; j < k; ++j) arcs.emplace(u, g.R(0, 2), g.pick(layers[static_cast<size_t>(l) + 1]));
    }
    for (int v : layers[static_cast<size_t>(l) + 1]) {
      bool in = std::any_of(arcs.begin(), arcs.end(), [&](const auto& a) { return std::get<2>(a) == v; });
      if (!in) arcs.emplace(g.pick(layers[static_cast<size_t>(l)]), g.R(0, 2), v);
    }
  }
  std::vector<std::tuple<int, int64_t, int>> av(arcs.begin(), arcs.end());
  std::shuffle(av.begin(), av.end(), g.rng);
  std::string tr;
  for (const auto& [a, v, b] : av)
    tr += "(" + names[static_cast<size_t>(a)] + "," + std::to_string(v) + "," + names[static_cast<size_t>(b)] + ")";
  std::vector<int> sc = scope(g, n, n);
  c.constraint_xml = "<mdd><list> " + join(sc) + " </list><transitions> " + tr + " </transitions></mdd>";
  int root = layers.front().front(), terminal = layers.back().front();
  c.oracle = [sc, av, root, terminal](const Vals& x) -> std::optional<bool> {
    return oracle::mdd(pick_vals(sc, x), av, root, terminal);
  };
  return c;
}

Case all_different(Gen& g) {
  Case c;
  int form = static_cast<int>(g.R(0, 3));
  if (form == 2) {
    // lists
    int k = static_cast<int>(g.R(2, 2)), m = 2;
    int n = 4;
    for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 2, 3));
    std::vector<std::vector<int>> lists;
    for (int i = 0; i < k; ++i) lists.push_back(scope(g, n, m));
    std::string s = "<allDifferent>";
    for (const auto& l : lists) s += "<list> " + join(l) + " </list>";
    std::vector<Vals> except;
    if (g.coin()) {
      except.push_back({g.R(0, 2), g.R(0, 2)});
      s += "<except> (" + join_ints(except[0], ",") + ") </except>";
    }
    c.constraint_xml = s + "</allDifferent>";
    c.oracle = [lists, except](const Vals& x) -> std::optional<bool> {
      std::vector<Vals> ls;
      for (const auto& l : lists) ls.push_back(pick_vals(l, x));
      return oracle::all_different_lists(ls, except);
    };
    return c;
  }
  if (form == 3) {
    int rows = 2, cols = static_cast<int>(g.R(2, 2));
    int n = rows * cols;
    for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3, 3));
    std::vector<int> cells = scope(g, n, n);
    std::string s = "<allDifferent><matrix> ";
    std::vector<std::vector<int>> m(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      s += "(";
      for (int q = 0; q < cols; ++q) {
        int v = cells[static_cast<size_t>(r * cols + q)];
        m[static_cast<size_t>(r)].push_back(v);
        s += (q ? "," : "") + name(v);
      }
      s += ")";
    }
    c.constraint_xml = s + " </matrix></allDifferent>";
    c.oracle = [m](const Vals& x) -> std::optional<bool> {
      std::vector<Vals> mv;
      for (const auto& r : m) mv.push_back(pick_vals(r, x));
      return oracle::all_different_matrix(mv);
    };
    return c;
  }
  int n = static_cast<int>(g.R(2, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3));
  std::vector<int> sc = g.coin(0.15) ? scope_rep(g, n, static_cast<int>(g.R(2, 5))) : scope(g, n, static_cast<int>(g.R(2, n)));
  if (form == 1) {
    // expression terms add(x,k)
    std::vector<int64_t> shift;
    std::string s = "<allDifferent>";
    for (int v : sc) {
      shift.push_back(g.R(-1, 2));
      s += " add(" + name(v) + "," + std::to_string(shift.back()) + ")";
    }
    c.constraint_xml = s + " </allDifferent>";
    c.oracle = [sc, shift](const Vals& x) -> std::optional<bool> {
      Vals t = pick_vals(sc, x);
      for (size_t i = 0; i < t.size(); ++i) t[i] += shift[i];
      return oracle::all_different(t, {});
    };
    return c;
  }
  std::vector<int64_t> except;
  if (g.coin()) {
    except = g.dom(0, 3, 2);
    c.constraint_xml = "<allDifferent><list> " + join(sc) + " </list><except> " + join_ints(except) + " </except></allDifferent>";
  } else {
    c.constraint_xml = "<allDifferent> " + join(sc) + " </allDifferent>";
  }
  c.oracle = [sc, except](const Vals& x) -> std::optional<bool> { return oracle::all_different(pick_vals(sc, x), except); };
  return c;
}

Case all_equal(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 2, 3));
  std::vector<int> sc = n == 1 || g.coin(0.2) ? scope_rep(g, n, static_cast<int>(g.R(2, 4))) : scope(g, n, static_cast<int>(g.R(2, n)));
  c.constraint_xml = "<allEqual> " + join(sc) + " </allEqual>";
  c.oracle = [sc](const Vals& x) -> std::optional<bool> { return oracle::all_equal(pick_vals(sc, x)); };
  return c;
}

const std::vector<oracle::Rel> kOrder = {oracle::Rel::lt, oracle::Rel::le, oracle::Rel::ge, oracle::Rel::gt};

Case ordered(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(2, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(-1, 3));
  std::vector<int> sc = scope(g, n, static_cast<int>(g.R(2, n)));
  oracle::Rel op = g.pick(kOrder);
  std::vector<Ref> lengths;
  std::string s = "<ordered><list> " + join(sc) + " </list>";
  if (g.coin()) {
    for (size_t i = 0; i + 1 < sc.size(); ++i) lengths.push_back(ref(g, n, -1, 2));
    s += "<lengths> " + join_refs(lengths) + " </lengths>";
  }
  c.constraint_xml = s + "<operator> " + oracle::rel_name(op) + " </operator></ordered>";
  c.oracle = [sc, lengths, op](const Vals& x) -> std::optional<bool> {
    return oracle::ordered(pick_vals(sc, x), at(lengths, x), op);
  };
  return c;
}

Case lex(Gen& g) {
  Case c;
  oracle::Rel op = g.pick(kOrder);
  bool matrix = g.coin(0.35);
  int k = matrix ? 2 : static_cast<int>(g.R(2, 3));
  int m = matrix ? 2 : (k == 3 ? static_cast<int>(g.R(1, 1)) : 2);
  int n = static_cast<int>(g.R(std::max(2, m), 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 2, 3));
  std::vector<std::vector<int>> lists;
  for (int i = 0; i < k; ++i) lists.push_back(scope(g, n, m));
  std::string s = "<lex>";
  if (matrix) {
    s += "<matrix> ";
    for (const auto& l : lists) s += "(" + name(l[0]) + "," + name(l[1]) + ")";
    s += " </matrix>";
  } else {
    for (const auto& l : lists) s += "<list> " + join(l) + " </list>";
  }
  c.constraint_xml = s + "<operator> " + oracle::rel_name(op) + " </operator></lex>";
  c.oracle = [lists, op, matrix](const Vals& x) -> std::optional<bool> {
    std::vector<Vals> ls;
    for (const auto& l : lists) ls.push_back(pick_vals(l, x));
    return matrix ? oracle::lex_matrix(ls, op) : oracle::lex_chain(ls, op);
  };
  return c;
}

Case sum(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(-1, 3));
  int k = static_cast<int>(g.R(1, 4));
  // term: variable, eq(x,v) or add(x,y)
  struct Term {
    int kind, a, b;
    int64_t v;
  };
  std::vector<Term> terms;
  std::string list;
  for (int i = 0; i < k; ++i) {
    Term t{0, static_cast<int>(g.R(0, n - 1)), static_cast<int>(g.R(0, n - 1)), g.R(-1, 3)};
    double r = std::uniform_real_distribution<double>(0, 1)(g.rng);
    t.kind = r < 0.75 ? 0 : r < 0.9 ? 1 : 2;
    terms.push_back(t);
    list += i ? " " : "";
    list += t.kind == 0 ? name(t.a)
            : t.kind == 1 ? "eq(" + name(t.a) + "," + std::to_string(t.v) + ")"
                          : "add(" + name(t.a) + "," + name(t.b) + ")";
  }
  std::vector<Ref> coeffs;
  std::string s = "<sum><list> " + list + " </list>";
  if (g.coin(0.6)) {
    for (int i = 0; i < k; ++i) coeffs.push_back(ref(g, n, -2, 3, 0.15));
    s += "<coeffs> " + join_refs(coeffs) + " </coeffs>";
  }
  CondT ct = cond(g, n, -3, 6);
  c.constraint_xml = s + "<condition> " + ct.text() + " </condition></sum>";
  c.oracle = [terms, coeffs, ct](const Vals& x) -> std::optional<bool> {
    Vals tv;
    for (const auto& t : terms) {
      int64_t a = x[static_cast<size_t>(t.a)];
      tv.push_back(t.kind == 0 ? a : t.kind == 1 ? (a == t.v) : a + x[static_cast<size_t>(t.b)]);
    }
    return oracle::sum(tv, at(coeffs, x), ct.at(x));
  };
  return c;
}

Case count(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3));
  std::vector<int> sc = scope(g, n, static_cast<int>(g.R(1, n)));
  std::vector<Ref> values;
  int k = static_cast<int>(g.R(1, 3));
  for (int i = 0; i < k; ++i) values.push_back(ref(g, n, 0, 3, 0.25));
  CondT ct = cond(g, n, 0, 4);
  c.constraint_xml = "<count><list> " + join(sc) + " </list><values> " + join_refs(values) + " </values><condition> " +
                     ct.text() + " </condition></count>";
  c.oracle = [sc, values, ct](const Vals& x) -> std::optional<bool> {
    return oracle::count(pick_vals(sc, x), at(values, x), ct.at(x));
  };
  return c;
}

Case n_values(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3));
  std::vector<int> sc = scope(g, n, static_cast<int>(g.R(1, n)));
  std::vector<int64_t> except;
  std::string s = "<nValues><list> " + join(sc) + " </list>";
  if (g.coin(0.4)) {
    except = g.dom(0, 3, 2);
    s += "<except> " + join_ints(except) + " </except>";
  }
  CondT ct = cond(g, n, 0, 4);
  c.constraint_xml = s + "<condition> " + ct.text() + " </condition></nValues>";
  c.oracle = [sc, except, ct](const Vals& x) -> std::optional<bool> {
    return oracle::n_values(pick_vals(sc, x), except, ct.at(x));
  };
  return c;
}

Case cardinality(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(2, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 2, 3));
  std::vector<int> sc = scope(g, n, static_cast<int>(g.R(2, std::min(n, 4))));
  int k = static_cast<int>(g.R(1, 3));
  std::vector<Ref> values;
  std::vector<int64_t> pool = {0, 1, 2, 3};
  std::shuffle(pool.begin(), pool.end(), g.rng);
  for (int i = 0; i < k; ++i) {
    Ref r;
    if (g.coin(0.2)) r.var = static_cast<int>(g.R(0, n - 1));
    else r.c = pool[static_cast<size_t>(i)];
    values.push_back(r);
  }
  struct OccT {
    oracle::Occ o;
    int var = -1;
  };
  std::vector<OccT> occurs;
  std::string os;
  for (int i = 0; i < k; ++i) {
    OccT t;
    double r = std::uniform_real_distribution<double>(0, 1)(g.rng);
    if (r < 0.4) {
      t.o.v = g.R(0, 3);
      os += " " + std::to_string(t.o.v);
    } else if (r < 0.75) {
      t.o.interval = true;
      t.o.lo = g.R(0, 2);
      t.o.hi = g.R(t.o.lo, 3);
      os += " " + std::to_string(t.o.lo) + ".." + std::to_string(t.o.hi);
    } else {
      t.var = static_cast<int>(g.R(0, n - 1));
      os += " " + name(t.var);
    }
    occurs.push_back(t);
  }
  bool closed = g.coin(0.4);
  std::string closed_attr = closed ? " closed=\"true\"" : (g.coin(0.3) ? " closed=\"false\"" : "");
  c.constraint_xml = "<cardinality><list> " + join(sc) + " </list><values" + closed_attr + "> " + join_refs(values) +
                     " </values><occurs>" + os + " </occurs></cardinality>";
  c.oracle = [sc, values, occurs, closed](const Vals& x) -> std::optional<bool> {
    std::vector<oracle::Occ> os2;
    for (const auto& t : occurs) {
      oracle::Occ o = t.o;
      if (t.var >= 0) o.v = x[static_cast<size_t>(t.var)];
      os2.push_back(o);
    }
    return oracle::cardinality(pick_vals(sc, x), at(values, x), closed, os2);
  };
  return c;
}

Case extremum(Gen& g, bool maximum) {
  Case c;
  int n = static_cast<int>(g.R(2, 5));
  bool with_index = g.coin(0.5);
  int s = static_cast<int>(g.R(1, with_index ? n - 1 : n));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3));
  std::vector<int> sc = scope(g, with_index ? n - 1 : n, s);
  int64_t start = g.coin(0.3) ? 1 : 0;
  std::optional<int> index;
  oracle::Rank rank = oracle::Rank::any;
  const char* tag = maximum ? "maximum" : "minimum";
  std::string st = start ? " startIndex=\"1\"" : "";
  std::string x = std::string("<") + tag + "><list" + st + "> " + join(sc) + " </list>";
  if (with_index) {
    index = n - 1;
    c.domains.back() = g.dom(start - 1, start + s, 4);
    rank = static_cast<oracle::Rank>(g.R(0, 2));
    std::string ra = rank == oracle::Rank::any && g.coin() ? "" : " rank=\"" + rank_name(rank) + "\"";
    x += "<index" + ra + "> " + name(*index) + " </index>";
  }
  std::optional<CondT> ct;
  if (!with_index || g.coin(0.5)) {
    ct = cond(g, n, 0, 4);
    x += "<condition> " + ct->text() + " </condition>";
  }
  c.constraint_xml = x + "</" + tag + ">";
  c.oracle = [maximum, sc, start, index, rank, ct](const Vals& a) -> std::optional<bool> {
    std::optional<int64_t> iv;
    if (index) iv = a[static_cast<size_t>(*index)];
    std::optional<oracle::Condition> cc;
    if (ct) cc = ct->at(a);
    return oracle::extremum(maximum, pick_vals(sc, a), start, iv, rank, cc);
  };
  return c;
}

Case element(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(2, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(-1, 3));
  bool with_index = g.coin(0.7);
  int len = static_cast<int>(g.R(1, 4));
  std::vector<Ref> list;
  int usable = with_index ? n - 1 : n;
  for (int i = 0; i < len; ++i) list.push_back(ref(g, usable, -1, 3, 0.6));
  bool all_const = std::none_of(list.begin(), list.end(), [](const Ref& r) { return r.var >= 0; });
  if (all_const && !with_index) {
    list[0].var = 0;
  }
  int64_t start = g.coin(0.3) ? 1 : 0;
  std::string st = start ? " startIndex=\"1\"" : "";
  std::string x = "<element><list" + st + "> " + join_refs(list) + " </list>";
  std::optional<int> index;
  oracle::Rank rank = oracle::Rank::any;
  if (with_index) {
    index = n - 1;
    c.domains.back() = g.dom(start - 1, start + len, 4);
    rank = static_cast<oracle::Rank>(g.R(0, 2));
    std::string ra = rank == oracle::Rank::any && g.coin() ? "" : " rank=\"" + rank_name(rank) + "\"";
    x += "<index" + ra + "> " + name(*index) + " </index>";
  }
  Ref value = ref(g, usable, -1, 3, 0.6);
  c.constraint_xml = x + "<value> " + value.text() + " </value></element>";
  c.oracle = [list, start, index, rank, value](const Vals& a) -> std::optional<bool> {
    std::optional<int64_t> iv;
    if (index) iv = a[static_cast<size_t>(*index)];
    return oracle::element(at(list, a), start, iv, rank, value.at(a));
  };
  return c;
}

Case channel(Gen& g) {
  Case c;
  int form = static_cast<int>(g.R(0, 2));
  if (form == 0) {
    int n = static_cast<int>(g.R(2, 5));
    int64_t start = g.coin(0.3) ? 1 : 0;
    for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(start - (g.coin(0.2) ? 1 : 0), start + n - 1));
    std::vector<int> sc = scope(g, n, n);
    if (start || g.coin(0.3))
      c.constraint_xml = "<channel><list startIndex=\"" + std::to_string(start) + "\"> " + join(sc) + " </list></channel>";
    else
      c.constraint_xml = "<channel> " + join(sc) + " </channel>";
    c.oracle = [sc, start](const Vals& x) -> std::optional<bool> { return oracle::channel_one(pick_vals(sc, x), start); };
    return c;
  }
  if (form == 1) {
    int nx = 2, ny = static_cast<int>(g.R(2, 3));
    int64_t sx = g.coin(0.3) ? 1 : 0, sy = g.coin(0.3) ? 1 : 0;
    for (int i = 0; i < nx; ++i) c.domains.push_back(g.dom(sy, sy + ny - 1 + (g.coin(0.2) ? 1 : 0)));
    for (int i = 0; i < ny; ++i) c.domains.push_back(g.dom(sx, sx + nx - 1 + (g.coin(0.2) ? 1 : 0)));
    std::vector<int> X = {0, 1}, Y;
    for (int i = 0; i < ny; ++i) Y.push_back(2 + i);
    auto sa = [](int64_t s) { return s ? std::string(" startIndex=\"1\"") : std::string(); };
    c.constraint_xml = "<channel><list" + sa(sx) + "> " + join(X) + " </list><list" + sa(sy) + "> " + join(Y) +
                       " </list></channel>";
    c.oracle = [X, Y, sx, sy](const Vals& x) -> std::optional<bool> {
      return oracle::channel_two(pick_vals(X, x), sx, pick_vals(Y, x), sy);
    };
    return c;
  }
  int len = static_cast<int>(g.R(2, 4));
  int64_t start = g.coin(0.3) ? 1 : 0;
  for (int i = 0; i < len; ++i) c.domains.push_back(g.coin(0.8) ? std::vector<int64_t>{0, 1} : g.dom(0, 1));
  c.domains.push_back(g.dom(start - 1, start + len, 4));
  std::vector<int> X;
  for (int i = 0; i < len; ++i) X.push_back(i);
  std::string st = start ? " startIndex=\"1\"" : "";
  c.constraint_xml = "<channel><list" + st + "> " + join(X) + " </list><value> " + name(len) + " </value></channel>";
  c.oracle = [X, start, len](const Vals& x) -> std::optional<bool> {
    return oracle::channel_value(pick_vals(X, x), start, x[static_cast<size_t>(len)]);
  };
  return c;
}

Case no_overlap(Gen& g) {
  Case c;
  bool kdim = g.coin(0.4);
  std::string zi;
  bool zero_ignored = true;
  if (g.coin(0.5)) {
    zero_ignored = g.coin();
    zi = zero_ignored ? " zeroIgnored=\"true\"" : " zeroIgnored=\"false\"";
  }
  std::vector<std::vector<int>> origins;
  std::vector<std::vector<Ref>> lengths;
  int n = 0;
  if (kdim) {
    // two boxes in two dimensions, constant lengths
    n = 4;
    for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(0, 3));
    origins = {{0, 1}, {2, 3}};
    for (int b = 0; b < 2; ++b) {
      std::vector<Ref> l;
      for (int d = 0; d < 2; ++d) l.push_back(Ref{-1, g.R(0, 2)});
      lengths.push_back(l);
    }
    std::string o = "(x0,x1)(x2,x3)";
    std::string ls;
    for (const auto& l : lengths) ls += "(" + l[0].text() + "," + l[1].text() + ")";
    c.constraint_xml = "<noOverlap" + zi + "><origins> " + o + " </origins><lengths> " + ls + " </lengths></noOverlap>";
  } else {
    int boxes = static_cast<int>(g.R(2, 3));
    n = boxes + static_cast<int>(g.R(0, 5 - boxes));
    for (int i = 0; i < n; ++i) c.domains.push_back(i < boxes ? g.dom(0, 4) : g.dom(-1, 2));
    std::vector<Ref> ls;
    for (int b = 0; b < boxes; ++b) {
      origins.push_back({b});
      Ref r;
      if (n > boxes && g.coin(0.4)) r.var = static_cast<int>(g.R(boxes, n - 1));
      else r.c = g.R(0, 3);
      lengths.push_back({r});
      ls.push_back(r);
    }
    std::vector<int> o;
    for (int b = 0; b < boxes; ++b) o.push_back(b);
    c.constraint_xml = "<noOverlap" + zi + "><origins> " + join(o) + " </origins><lengths> " + join_refs(ls) +
                       " </lengths></noOverlap>";
  }
  c.oracle = [origins, lengths, zero_ignored](const Vals& x) -> std::optional<bool> {
    std::vector<Vals> ov, lv;
    for (const auto& o : origins) ov.push_back(pick_vals(o, x));
    for (const auto& l : lengths) lv.push_back(at(l, x));
    return oracle::no_overlap(ov, lv, zero_ignored);
  };
  return c;
}

Case cumulative(Gen& g) {
  Case c;
  int tasks = static_cast<int>(g.R(2, 3));
  bool with_ends = tasks == 2 && g.coin(0.3);
  int n = tasks + (with_ends ? tasks : 0);
  int spare = 5 - n;
  int extra = static_cast<int>(g.R(0, spare));
  for (int i = 0; i < tasks; ++i) c.domains.push_back(g.dom(0, 3));
  if (with_ends)
    for (int i = 0; i < tasks; ++i) c.domains.push_back(g.dom(0, 5));
  for (int i = 0; i < extra; ++i) c.domains.push_back(g.dom(-1, 3));
  int total = n + extra;
  auto aux = [&](int64_t lo, int64_t hi) {
    Ref r;
    if (extra > 0 && g.coin(0.3)) r.var = static_cast<int>(g.R(n, total - 1));
    else r.c = g.R(lo, hi);
    return r;
  };
  std::vector<int> origins, ends;
  std::vector<Ref> lengths, heights;
  for (int i = 0; i < tasks; ++i) {
    origins.push_back(i);
    lengths.push_back(aux(0, 3));
    heights.push_back(aux(0, 3));
  }
  if (with_ends)
    for (int i = 0; i < tasks; ++i) ends.push_back(tasks + i);
  CondT ct = cond(g, total, 0, 6);
  std::string s = "<cumulative><origins> " + join(origins) + " </origins><lengths> " + join_refs(lengths) + " </lengths>";
  if (with_ends) s += "<ends> " + join(ends) + " </ends>";
  s += "<heights> " + join_refs(heights) + " </heights><condition> " + ct.text() + " </condition></cumulative>";
  c.constraint_xml = s;
  c.oracle = [origins, lengths, ends, heights, ct, with_ends](const Vals& x) -> std::optional<bool> {
    std::optional<Vals> ev;
    if (with_ends) ev = pick_vals(ends, x);
    return oracle::cumulative(pick_vals(origins, x), at(lengths, x), ev, at(heights, x), ct.at(x));
  };
  return c;
}

Case circuit(Gen& g) {
  Case c;
  int len = static_cast<int>(g.R(2, 4));
  int64_t start = g.coin(0.3) ? 1 : 0;
  for (int i = 0; i < len; ++i) c.domains.push_back(g.dom(start - (g.coin(0.15) ? 1 : 0), start + len - 1));
  std::vector<int> sc = scope(g, len, len);
  std::optional<Ref> size;
  std::string st = start ? " startIndex=\"1\"" : "";
  std::string s;
  double r = std::uniform_real_distribution<double>(0, 1)(g.rng);
  if (r < 0.3) {
    s = "<circuit> " + join(sc) + " </circuit>";
    if (start) s = "<circuit><list" + st + "> " + join(sc) + " </list></circuit>";
  } else {
    s = "<circuit><list" + st + "> " + join(sc) + " </list>";
    if (r < 0.65) {
      size = Ref{-1, g.R(1, len)};
    } else {
      size = Ref{len, 0};
      c.domains.push_back(g.dom(0, len));
    }
    s += "<size> " + size->text() + " </size></circuit>";
  }
  c.constraint_xml = s;
  c.oracle = [sc, start, size](const Vals& x) -> std::optional<bool> {
    std::optional<int64_t> sv;
    if (size) sv = size->at(x);
    return oracle::circuit(pick_vals(sc, x), start, sv);
  };
  return c;
}

Case instantiation(Gen& g) {
  Case c;
  int n = static_cast<int>(g.R(1, 5));
  for (int i = 0; i < n; ++i) c.domains.push_back(g.dom(-1, 2));
  std::vector<int> sc = scope(g, n, static_cast<int>(g.R(1, n)));
  std::vector<int64_t> values;
  for (size_t i = 0; i < sc.size(); ++i) values.push_back(g.R(-1, 2));
  c.constraint_xml = "<instantiation><list> " + join(sc) + " </list><values> " + join_ints(values) + " </values></instantiation>";
  c.oracle = [sc, values](const Vals& x) -> std::optional<bool> { return oracle::instantiation(pick_vals(sc, x), values); };
  return c;
}

}  // namespace

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k = {
      "intension", "extension", "regular", "mdd",   "allDifferent", "allEqual", "ordered",
      "lex",       "sum",       "count",   "nValues", "cardinality", "maximum", "minimum",
      "element",   "channel",   "noOverlap", "cumulative", "circuit", "instantiation"};
  return k;
}

Case random_case(const std::string& kind, std::mt19937_64& rng) {
  Gen g{rng};
  Case c;
  if (kind == "intension") c = intension(g);
  else if (kind == "extension") c = extension(g);
  else if (kind == "regular") c = regular(g);
  else if (kind == "mdd") c = mdd(g);
  else if (kind == "allDifferent") c = all_different(g);
  else if (kind == "allEqual") c = all_equal(g);
  else if (kind == "ordered") c = ordered(g);
  else if (kind == "lex") c = lex(g);
  else if (kind == "sum") c = sum(g);
  else if (kind == "count") c = count(g);
  else if (kind == "nValues") c = n_values(g);
  else if (kind == "cardinality") c = cardinality(g);
  else if (kind == "maximum") c = extremum(g, true);
  else if (kind == "minimum") c = extremum(g, false);
  else if (kind == "element") c = element(g);
  else if (kind == "channel") c = channel(g);
  else if (kind == "noOverlap") c = no_overlap(g);
  else if (kind == "cumulative") c = cumulative(g);
  else if (kind == "circuit") c = circuit(g);
  else if (kind == "instantiation") c = instantiation(g);
  c.kind = kind;
  return c;
}

std::string instance_xml(const Case& c) {
  std::ostringstream s;
  s << "<instance format=\"XCSP3\" type=\"CSP\">\n  <variables>\n";
  for (size_t i = 0; i < c.domains.size(); ++i)
    s << "    <var id=\"" << name(static_cast<int>(i)) << "\"> " << join_ints(c.domains[i]) << " </var>\n";
  s << "  </variables>\n  <constraints>\n    " << c.constraint_xml << "\n  </constraints>\n</instance>\n";
  return s.str();
}

}  // namespace payloads
