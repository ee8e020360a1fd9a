// Construction of normalized constraints from their XML elements.
#include <algorithm>
#include <map>
#include <set>

#include "xcsp3kit/model.hpp"

namespace xcsp3kit {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Intension: return "intension";
    case Kind::Extension: return "extension";
    case Kind::Regular: return "regular";
    case Kind::Mdd: return "mdd";
    case Kind::AllDifferent:
    case Kind::AllDifferentLists:
    case Kind::AllDifferentMatrix: return "allDifferent";
    case Kind::AllEqual: return "allEqual";
    case Kind::Ordered: return "ordered";
    case Kind::LexLists:
    case Kind::LexMatrix: return "lex";
    case Kind::Sum: return "sum";
    case Kind::Count: return "count";
    case Kind::NValues: return "nValues";
    case Kind::Cardinality: return "cardinality";
    case Kind::Minimum: return "minimum";
    case Kind::Maximum: return "maximum";
    case Kind::Element: return "element";
    case Kind::Channel: return "channel";
    case Kind::NoOverlap: return "noOverlap";
    case Kind::Cumulative: return "cumulative";
    case Kind::Circuit: return "circuit";
    case Kind::Instantiation: return "instantiation";
    case Kind::Slide: return "slide";
  }
  return "?";
}

const char* kind_label(Kind k) {
  switch (k) {
    case Kind::AllDifferentLists: return "allDifferent-list";
    case Kind::AllDifferentMatrix: return "allDifferent-matrix";
    case Kind::LexLists: return "lex";
    case Kind::LexMatrix: return "lex-matrix";
    default: return kind_name(k);
  }
}

namespace {

constexpr const char* kOutOfScope[] = {
    "smart", "grammar", "allDistant", "allIncomparable", "balance", "spread", "deviation",
    "sumCosts", "sequence", "permutation", "precedence", "stretch", "binPacking", "knapsack",
    "networkFlow", "nCircuits", "path", "nPaths", "tree", "nTrees", "clause", "allIntersecting",
    "range", "roots", "partition", "arbo", "nArbos", "nCliques", "seqbin", "and", "or", "not",
    "ifThen", "ifThenElse", "cube", "allDisjoint", "allDifferentList", "lexMatrix"};

[[noreturn]] void structure(std::string code, std::string msg, Location loc = {}) {
  fail(ErrorKind::Structure, std::move(code), std::move(msg), loc);
}

}  // namespace

bool is_out_of_scope_constraint(std::string_view tag) {
  for (const char* o : kOutOfScope)
    if (tag == o) return true;
  return false;
}

namespace {

class Builder {
 public:
  Builder(const RawElement& e, const Instance& ctx, Warnings* w, OrderPolicy order)
      : e_(e), ctx_(ctx), w_(w), order_(order) {}

  Constraint build();

 private:
  // --- element helpers ---
  void attributes(std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : e_.attributes) {
      if (k == "type" || k == "violable" || k == "defaultCost")
        unsupported("soft constraint (attribute " + k + " on <" + e_.name + ">)", e_.location);
      bool ok = k == "id" || k == "note" || k == "class";
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) warn(w_, "unknown-attribute", "unknown attribute '" + k + "' on <" + e_.name + ">", e_.location);
    }
  }

  void children(std::initializer_list<const char*> allowed) {
    for (const auto& c : e_.children) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || c.name == a;
      if (!ok) structure("child", "unexpected <" + c.name + "> in <" + e_.name + ">", c.location);
    }
  }

  const RawElement& need(const char* name) {
    const RawElement* c = e_.child(name);
    if (!c) structure("child", "<" + e_.name + "> needs a <" + name + "> element", e_.location);
    return *c;
  }

  const RawElement* opt(const char* name) { return e_.child(name); }

  static const std::string& leaf_text(const RawElement& c) {
    if (!c.children.empty())
      structure("child", "<" + c.name + "> cannot have child elements", c.location);
    return c.text;
  }

  // text of the single <list> child, or the bare content
  const std::string& list_or_bare(const char* name = "list") {
    if (const RawElement* c = e_.child(name)) return leaf_text(*c);
    return e_.text;
  }

  bool bare() const { return e_.children.empty(); }

  // --- value helpers ---
  std::vector<VarId> vars(std::string_view text) {
    std::vector<VarId> out;
    for (auto tok : split_ws(text)) {
      if (looks_like_integer(tok) || tok.find('(') != std::string_view::npos)
        structure("reference", "expected a variable, got '" + std::string(tok) + "'");
      auto xs = ctx_.expand(tok);
      out.insert(out.end(), xs.begin(), xs.end());
    }
    return out;
  }

  std::vector<IntRef> refs(std::string_view text) {
    std::vector<IntRef> out;
    for (auto tok : split_ws(text)) {
      if (looks_like_integer(tok)) {
        out.push_back(IntRef::constant(parse_integer(tok)));
        continue;
      }
      if (tok.find('(') != std::string_view::npos)
        structure("reference", "expected a value or a variable, got '" + std::string(tok) + "'");
      for (VarId x : ctx_.expand(tok)) out.push_back(IntRef::variable(x));
    }
    return out;
  }

  IntRef single_ref(std::string_view text) {
    auto r = refs(text);
    if (r.size() != 1) structure("reference", "expected one value or variable, got '" + std::string(trim(text)) + "'");
    return r.front();
  }

  VarId single_var(std::string_view text) {
    auto v = vars(text);
    if (v.size() != 1) structure("reference", "expected one variable, got '" + std::string(trim(text)) + "'");
    return v.front();
  }

  std::vector<ExprPtr> terms(std::string_view text) {
    std::vector<ExprPtr> out;
    for (auto tok : split_ws(text)) {
      if (tok.find('(') != std::string_view::npos) {
        out.push_back(bind(parse_expression(tok)));
        continue;
      }
      if (looks_like_integer(tok))
        structure("reference", "expected a variable or an expression, got '" + std::string(tok) + "'");
      for (VarId x : ctx_.expand(tok)) out.push_back(Expr::variable(ctx_.vars[static_cast<size_t>(x)].name, x));
    }
    return out;
  }

  std::vector<int64_t> ints(std::string_view text) {
    std::vector<int64_t> out;
    for (auto tok : split_ws(text)) out.push_back(parse_integer(tok));
    return out;
  }

  ExprPtr bind(const ExprPtr& e) {
    return bind_variables(e, [&](const std::string& n) { return ctx_.resolve(n); });
  }

  Cond cond(std::string_view text) {
    Condition c = parse_condition(text);
    Cond out;
    out.op = c.op;
    switch (c.operand.kind) {
      case Operand::Kind::Value: out.rhs = IntRef::constant(c.operand.value); break;
      case Operand::Kind::Variable: out.rhs = IntRef::variable(ctx_.resolve(c.operand.variable)); break;
      case Operand::Kind::Interval:
        out.is_interval = true;
        out.range = c.operand.interval;
        break;
      case Operand::Kind::Set:
        out.set = c.operand.set;
        std::sort(out.set.begin(), out.set.end());
        out.set.erase(std::unique(out.set.begin(), out.set.end()), out.set.end());
        break;
    }
    return out;
  }

  Cond need_cond() {
    const RawElement& c = need("condition");
    try {
      return cond(leaf_text(c));
    } catch (const Error& err) {
      throw err.at(c.location);
    }
  }

  RelOp order_op(std::string_view text) {
    auto op = rel_op_from(trim(text));
    if (!op || !(*op == RelOp::lt || *op == RelOp::le || *op == RelOp::ge || *op == RelOp::gt))
      structure("operator", "operator must be lt, le, ge or gt, got '" + std::string(trim(text)) + "'");
    return *op;
  }

  int64_t start_index(const RawElement* c) {
    if (!c) return 0;
    const std::string* s = c->attr("startIndex");
    return s ? parse_integer(*s) : 0;
  }

  Rank rank(const RawElement& c) {
    const std::string* r = c.attr("rank");
    if (!r || *r == "any") return Rank::Any;
    if (*r == "first") return Rank::First;
    if (*r == "last") return Rank::Last;
    structure("rank", "rank must be any, first or last", c.location);
  }

  // explicit tuples "(x,y)(z,w)" or one compact list in matrix context
  std::vector<std::vector<VarId>> matrix(const RawElement& c) {
    const std::string& text = leaf_text(c);
    std::vector<std::vector<VarId>> rows;
    if (text.find('(') != std::string::npos) {
      for (auto& row : split_vectors(text)) {
        std::vector<VarId> r;
        for (auto& cell : row) r.push_back(ctx_.resolve(cell));
        rows.push_back(std::move(r));
      }
      return rows;
    }
    auto toks = split_ws(text);
    if (toks.size() != 1) structure("matrix", "expected a two-dimensional compact list or tuples", c.location);
    VarAccess a = parse_var_access(toks[0]);
    const VariableDecl* d = ctx_.find_decl(a.base);
    if (!d) structure("unknown-variable", "unknown variable '" + a.base + "'", c.location);
    for (auto& row : expand_compact_list(a, ListContext::Matrix, *d)) {
      std::vector<VarId> r;
      for (size_t cell : row) {
        if (d->cells[cell] < 0)
          structure("undefined-variable", "variable " + d->cell_name(cell) + " is undefined but used");
        r.push_back(d->cells[cell]);
      }
      rows.push_back(std::move(r));
    }
    return rows;
  }

  static bool two_dimensional(std::string_view text) {
    if (text.find('(') != std::string_view::npos) return true;
    for (auto tok : split_ws(text)) {
      if (looks_like_integer(tok)) continue;
      VarAccess a = parse_var_access(tok);
      int free = 0;
      for (const auto& x : a.indexers) free += x.kind != Indexer::Kind::Single;
      if (free >= 2) return true;
    }
    return false;
  }

  std::vector<std::vector<IntRef>> ref_matrix(const RawElement& c) {
    const std::string& text = leaf_text(c);
    std::vector<std::vector<IntRef>> rows;
    if (text.find('(') != std::string::npos) {
      for (auto& row : split_vectors(text)) {
        std::vector<IntRef> r;
        for (auto& cell : row)
          r.push_back(looks_like_integer(cell) ? IntRef::constant(parse_integer(cell))
                                               : IntRef::variable(ctx_.resolve(cell)));
        rows.push_back(std::move(r));
      }
      return rows;
    }
    for (auto& vr : matrix(c)) {
      std::vector<IntRef> r;
      for (VarId x : vr) r.push_back(IntRef::variable(x));
      rows.push_back(std::move(r));
    }
    return rows;
  }

  // --- kinds ---
  Payload intension();
  Payload extension();
  Payload regular();
  Payload mdd();
  Payload all_different(Kind& kind);
  Payload all_equal();
  Payload ordered();
  Payload lex(Kind& kind);
  Payload sum();
  Payload count();
  Payload n_values();
  Payload cardinality();
  Payload extremum(bool maximum);
  Payload element();
  Payload channel();
  Payload no_overlap();
  Payload cumulative();
  Payload circuit();
  Payload instantiation();
  Payload slide();

  const RawElement& e_;
  const Instance& ctx_;
  Warnings* w_;
  OrderPolicy order_;
};

Payload Builder::intension() {
  attributes({});
  children({"function"});
  const std::string& text = list_or_bare("function");
  return IntensionC{bind(parse_expression(text))};
}

Payload Builder::extension() {
  attributes({});
  children({"list", "supports", "conflicts"});
  ExtensionC p;
  p.scope = vars(leaf_text(need("list")));
  const RawElement* s = opt("supports");
  const RawElement* c = opt("conflicts");
  if (!!s == !!c) structure("extension", "extension needs exactly one of <supports> or <conflicts>", e_.location);
  const RawElement& t = s ? *s : *c;
  p.supports = s != nullptr;
  const std::string& text = leaf_text(t);
  if (text.find('{') != std::string::npos) unsupported("compressed tuples", t.location);
  if (p.scope.empty()) structure("extension", "extension over an empty list", e_.location);
  try {
    if (p.scope.size() == 1) {
      p.unary = true;
      p.unary_values = parse_domain(text);
    } else {
      TupleOptions o;
      o.allow_star = true;
      o.arity = p.scope.size();
      o.order = order_;
      o.warnings = w_;
      p.rows = parse_tuples(text, o);
    }
  } catch (const Error& err) {
    throw err.at(t.location);
  }
  return p;
}

Payload Builder::regular() {
  attributes({});
  children({"list", "transitions", "start", "final"});
  RegularC p;
  p.scope = vars(leaf_text(need("list")));
  std::map<std::string, int> ids;
  auto state = [&](const std::string& s) {
    if (!is_identifier(s)) structure("regular", "state '" + s + "' is not an identifier");
    auto [it, fresh] = ids.emplace(s, static_cast<int>(p.states.size()));
    if (fresh) p.states.push_back(s);
    return it->second;
  };
  for (auto& t : split_vectors(leaf_text(need("transitions")))) {
    if (t.size() != 3) structure("regular", "transitions are triples (state,value,state)");
    p.transitions.push_back({state(t[0]), parse_integer(t[1]), state(t[2])});
  }
  auto st = split_ws(leaf_text(need("start")));
  if (st.size() != 1) structure("regular", "exactly one start state is needed", e_.location);
  p.start = state(std::string(st[0]));
  for (auto f : split_ws(leaf_text(need("final")))) p.finals.push_back(state(std::string(f)));
  return p;
}

Payload Builder::mdd() {
  attributes({});
  children({"list", "transitions"});
  MddC p;
  p.scope = vars(leaf_text(need("list")));
  std::map<std::string, int> ids;
  auto node = [&](const std::string& s) {
    if (!is_identifier(s)) structure("mdd", "node '" + s + "' is not an identifier");
    auto [it, fresh] = ids.emplace(s, static_cast<int>(p.nodes.size()));
    if (fresh) p.nodes.push_back(s);
    return it->second;
  };
  for (auto& t : split_vectors(leaf_text(need("transitions")))) {
    if (t.size() != 3) structure("mdd", "transitions are triples (node,value,node)");
    p.transitions.push_back({node(t[0]), parse_integer(t[1]), node(t[2])});
  }
  size_t n = p.nodes.size();
  if (n == 0) structure("mdd", "MDD without transitions", e_.location);
  std::vector<int> in(n, 0), out(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (const auto& t : p.transitions) {
    ++out[static_cast<size_t>(t.from)];
    ++in[static_cast<size_t>(t.to)];
    succ[static_cast<size_t>(t.from)].push_back(t.to);
  }
  std::vector<int> roots, terminals;
  for (size_t i = 0; i < n; ++i) {
    if (!in[i]) roots.push_back(static_cast<int>(i));
    if (!out[i]) terminals.push_back(static_cast<int>(i));
  }
  if (roots.size() != 1) structure("mdd", "an MDD has exactly one root node", e_.location);
  if (terminals.size() != 1) structure("mdd", "an MDD has exactly one terminal node", e_.location);
  p.root = roots[0];
  p.terminal = terminals[0];
  // layers: every arc goes one level down, the terminal sits at |list|
  std::vector<int> depth(n, -1);
  depth[static_cast<size_t>(p.root)] = 0;
  std::vector<int> queue{p.root};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v : succ[static_cast<size_t>(u)]) {
      int dv = depth[static_cast<size_t>(u)] + 1;
      if (depth[static_cast<size_t>(v)] < 0) {
        depth[static_cast<size_t>(v)] = dv;
        queue.push_back(v);
      } else if (depth[static_cast<size_t>(v)] != dv) {
        structure("mdd", "MDD is not layered (or has a cycle) at node " + p.nodes[static_cast<size_t>(v)], e_.location);
      }
    }
  }
  if (depth[static_cast<size_t>(p.terminal)] != static_cast<int>(p.scope.size()))
    structure("mdd", "MDD depth does not match the length of the list", e_.location);
  return p;
}

Payload Builder::all_different(Kind& kind) {
  attributes({});
  for (const auto& c : e_.children)
    if (c.name == "set" || c.name == "mset") unsupported("allDifferent over <" + c.name + ">", c.location);
  children({"list", "except", "matrix"});
  auto lists = e_.children_named("list");
  const RawElement* except = opt("except");
  if (const RawElement* m = opt("matrix")) {
    if (!lists.empty()) structure("allDifferent", "<matrix> cannot be combined with <list>", e_.location);
    if (except) unsupported("allDifferent-matrix with <except>", except->location);
    kind = Kind::AllDifferentMatrix;
    AllDifferentMatrixC p{matrix(*m)};
    for (const auto& r : p.rows)
      if (r.size() != p.rows.front().size()) structure("matrix", "matrix rows of different lengths", m->location);
    return p;
  }
  if (lists.size() >= 2) {
    kind = Kind::AllDifferentLists;
    AllDifferentListsC p;
    for (const RawElement* l : lists) p.lists.push_back(vars(leaf_text(*l)));
    for (const auto& l : p.lists)
      if (l.size() != p.lists.front().size())
        structure("allDifferent", "lists of allDifferent must have the same length", e_.location);
    if (except) {
      for (auto& t : split_vectors(leaf_text(*except))) {
        std::vector<int64_t> row;
        for (auto& v : t) row.push_back(parse_integer(v));
        if (row.size() != p.lists.front().size())
          structure("allDifferent", "except tuples must match the list length", except->location);
        p.except.push_back(std::move(row));
      }
    }
    return p;
  }
  kind = Kind::AllDifferent;
  AllDifferentC p;
  p.terms = terms(list_or_bare());
  if (except) p.except = ints(leaf_text(*except));
  return p;
}

Payload Builder::all_equal() {
  attributes({});
  children({"list"});
  return AllEqualC{vars(list_or_bare())};
}

Payload Builder::ordered() {
  attributes({"case"});
  children({"list", "lengths", "operator"});
  OrderedC p;
  p.scope = vars(list_or_bare());
  if (const std::string* c = e_.attr("case")) {
    if (opt("operator")) structure("ordered", "attribute case and <operator> are exclusive", e_.location);
    if (*c == "increasing") p.op = RelOp::le;
    else if (*c == "strictlyIncreasing") p.op = RelOp::lt;
    else if (*c == "decreasing") p.op = RelOp::ge;
    else if (*c == "strictlyDecreasing") p.op = RelOp::gt;
    else structure("ordered", "unknown case '" + *c + "'", e_.location);
  } else {
    p.op = order_op(leaf_text(need("operator")));
  }
  if (const RawElement* l = opt("lengths")) {
    p.lengths = refs(leaf_text(*l));
    if (p.lengths.size() + 1 != p.scope.size())
      structure("ordered", "ordered needs |list| - 1 lengths", l->location);
  }
  return p;
}

Payload Builder::lex(Kind& kind) {
  attributes({});
  children({"list", "matrix", "operator"});
  RelOp op = order_op(leaf_text(need("operator")));
  if (const RawElement* m = opt("matrix")) {
    if (opt("list")) structure("lex", "<matrix> cannot be combined with <list>", e_.location);
    kind = Kind::LexMatrix;
    LexMatrixC p{matrix(*m), op};
    for (const auto& r : p.rows)
      if (r.size() != p.rows.front().size()) structure("matrix", "matrix rows of different lengths", m->location);
    return p;
  }
  kind = Kind::LexLists;
  LexListsC p;
  p.op = op;
  for (const RawElement* l : e_.children_named("list")) p.lists.push_back(vars(leaf_text(*l)));
  if (p.lists.size() < 2) structure("lex", "lex needs at least two lists", e_.location);
  for (const auto& l : p.lists)
    if (l.size() != p.lists.front().size()) structure("lex", "lists of lex must have the same length", e_.location);
  return p;
}

Payload Builder::sum() {
  attributes({});
  children({"list", "coeffs", "condition"});
  SumC p;
  p.terms = terms(leaf_text(need("list")));
  if (const RawElement* c = opt("coeffs")) {
    p.coeffs = refs(leaf_text(*c));
    if (p.coeffs.size() != p.terms.size())
      structure("sum", "sum has " + std::to_string(p.terms.size()) + " terms but " +
                           std::to_string(p.coeffs.size()) + " coefficients",
                c->location);
  }
  p.cond = need_cond();
  return p;
}

Payload Builder::count() {
  attributes({});
  children({"list", "values", "condition"});
  CountC p;
  p.scope = vars(leaf_text(need("list")));
  p.values = refs(leaf_text(need("values")));
  p.cond = need_cond();
  return p;
}

Payload Builder::n_values() {
  attributes({});
  if (e_.children_named("list").size() > 1) unsupported("nValues over several lists", e_.location);
  children({"list", "except", "condition"});
  NValuesC p;
  p.scope = vars(leaf_text(need("list")));
  if (const RawElement* x = opt("except")) p.except = ints(leaf_text(*x));
  p.cond = need_cond();
  return p;
}

Payload Builder::cardinality() {
  attributes({});
  for (const char* m : {"matrix", "rowOccurs", "colOccurs"})
    if (const RawElement* c = opt(m)) unsupported("cardinality over a matrix", c->location);
  children({"list", "values", "occurs"});
  CardinalityC p;
  p.scope = vars(leaf_text(need("list")));
  const RawElement& v = need("values");
  if (const std::string* closed = v.attr("closed")) {
    if (*closed == "true") p.closed = true;
    else if (*closed != "false") structure("cardinality", "closed must be true or false", v.location);
  }
  p.values = refs(leaf_text(v));
  for (auto tok : split_ws(leaf_text(need("occurs")))) {
    Occurs o;
    if (tok.find("..") != std::string_view::npos) {
      o.is_interval = true;
      o.range = parse_interval(tok);
    } else if (looks_like_integer(tok)) {
      o.ref = IntRef::constant(parse_integer(tok));
    } else {
      for (VarId x : ctx_.expand(tok)) p.occurs.push_back({false, IntRef::variable(x), {}});
      continue;
    }
    p.occurs.push_back(o);
  }
  if (p.values.empty() || p.values.size() != p.occurs.size())
    structure("cardinality", "cardinality needs as many <occurs> entries as <values>", e_.location);
  return p;
}

Payload Builder::extremum(bool maximum) {
  attributes({});
  children({"list", "index", "condition"});
  ExtremumC p;
  p.maximum = maximum;
  const RawElement& l = need("list");
  p.scope = vars(leaf_text(l));
  p.start_index = start_index(&l);
  if (p.scope.empty()) structure(e_.name, e_.name + " over an empty list", e_.location);
  if (const RawElement* i = opt("index")) {
    p.index = single_var(leaf_text(*i));
    p.rank = rank(*i);
  }
  if (opt("condition")) p.cond = need_cond();
  if (!p.cond && p.index < 0) structure(e_.name, e_.name + " needs a <condition> or an <index>", e_.location);
  return p;
}

Payload Builder::element() {
  attributes({});
  children({"list", "index", "value"});
  ElementC p;
  const RawElement& l = need("list");
  p.list = refs(leaf_text(l));
  p.start_index = start_index(&l);
  if (p.list.empty()) structure("element", "element over an empty list", e_.location);
  if (const RawElement* i = opt("index")) {
    p.index = single_var(leaf_text(*i));
    p.rank = rank(*i);
  }
  bool all_values = std::none_of(p.list.begin(), p.list.end(), [](const IntRef& r) { return r.is_var(); });
  if (all_values && p.index < 0) structure("element", "element over values needs an <index>", e_.location);
  p.value = single_ref(leaf_text(need("value")));
  return p;
}

Payload Builder::channel() {
  attributes({});
  children({"list", "value"});
  ChannelC p;
  auto lists = e_.children_named("list");
  if (lists.size() > 2) structure("channel", "channel takes one or two lists", e_.location);
  if (lists.empty()) {
    if (opt("value")) structure("channel", "<value> needs a <list>", e_.location);
    p.x = vars(e_.text);
    return p;
  }
  p.x = vars(leaf_text(*lists[0]));
  p.start_x = start_index(lists[0]);
  if (lists.size() == 2) {
    if (opt("value")) structure("channel", "<value> cannot be combined with two lists", e_.location);
    p.form = ChannelC::Form::Two;
    p.y = vars(leaf_text(*lists[1]));
    p.start_y = start_index(lists[1]);
    if (p.x.size() > p.y.size()) structure("channel", "the first list of channel cannot be longer than the second", e_.location);
  } else if (const RawElement* v = opt("value")) {
    p.form = ChannelC::Form::Value;
    p.value = single_var(leaf_text(*v));
  }
  return p;
}

Payload Builder::no_overlap() {
  attributes({"zeroIgnored"});
  children({"origins", "lengths"});
  NoOverlapC p;
  if (const std::string* z = e_.attr("zeroIgnored")) {
    if (*z == "false") p.zero_ignored = false;
    else if (*z != "true") structure("noOverlap", "zeroIgnored must be true or false", e_.location);
  }
  const RawElement& o = need("origins");
  const RawElement& l = need("lengths");
  bool ko = two_dimensional(leaf_text(o));
  bool kl = two_dimensional(leaf_text(l));
  if (ko != kl)
    structure("noOverlap", "origins and lengths of noOverlap must both be one or both be k-dimensional", e_.location);
  p.kdim = ko;
  if (p.kdim) {
    p.origins = matrix(o);
    p.lengths = ref_matrix(l);
    for (const auto& r : p.origins)
      if (r.size() != p.origins.front().size()) structure("noOverlap", "boxes of different dimensions", o.location);
    for (const auto& r : p.lengths)
      if (r.size() != p.origins.front().size()) structure("noOverlap", "lengths do not match the box dimension", l.location);
  } else {
    for (VarId x : vars(leaf_text(o))) p.origins.push_back({x});
    for (IntRef r : refs(leaf_text(l))) p.lengths.push_back({r});
  }
  if (p.origins.size() != p.lengths.size())
    structure("noOverlap", "noOverlap needs as many lengths as origins", e_.location);
  for (const auto& row : p.lengths)
    for (const auto& r : row)
      if (!r.is_var() && r.value < 0) structure("noOverlap", "negative length", l.location);
  return p;
}

Payload Builder::cumulative() {
  attributes({});
  if (const RawElement* m = opt("machines")) unsupported("cumulative with <machines>", m->location);
  children({"origins", "lengths", "ends", "heights", "condition"});
  CumulativeC p;
  const RawElement& o = need("origins");
  const RawElement& l = need("lengths");
  const RawElement& h = need("heights");
  for (const RawElement* c : {&o, &l, &h})
    if (two_dimensional(leaf_text(*c)))
      structure("cumulative", "cumulative takes one-dimensional lists", c->location);
  p.origins = vars(leaf_text(o));
  p.lengths = refs(leaf_text(l));
  p.heights = refs(leaf_text(h));
  if (const RawElement* en = opt("ends")) p.ends = vars(leaf_text(*en));
  p.cond = need_cond();
  size_t n = p.origins.size();
  if (p.lengths.size() != n || p.heights.size() != n || (!p.ends.empty() && p.ends.size() != n))
    structure("cumulative", "lists of cumulative must have the same length", e_.location);
  for (const auto& r : p.lengths)
    if (!r.is_var() && r.value < 0) structure("cumulative", "negative length", l.location);
  return p;
}

Payload Builder::circuit() {
  attributes({});
  children({"list", "size"});
  CircuitC p;
  const RawElement* l = opt("list");
  p.scope = vars(l ? leaf_text(*l) : e_.text);
  p.start_index = start_index(l);
  if (const RawElement* s = opt("size")) p.size = single_ref(leaf_text(*s));
  return p;
}

Payload Builder::instantiation() {
  // type and cost are those of solutions; ignored when posted as a constraint
  for (const auto& [k, v] : e_.attributes)
    if (k != "id" && k != "note" && k != "class" && k != "type" && k != "cost")
      warn(w_, "unknown-attribute", "unknown attribute '" + k + "' on <instantiation>", e_.location);
  children({"list", "values"});
  InstantiationC p;
  p.scope = vars(leaf_text(need("list")));
  p.values = ints(leaf_text(need("values")));
  if (p.scope.size() != p.values.size())
    structure("instantiation", "instantiation needs as many values as variables", e_.location);
  std::vector<VarId> s = p.scope;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    structure("instantiation", "a variable occurs twice in an instantiation", e_.location);
  if (p.scope.empty()) structure("instantiation", "empty instantiation", e_.location);
  return p;
}

Payload Builder::slide() {
  attributes({"circular"});
  SlideC p;
  if (const std::string* c = e_.attr("circular")) {
    if (*c == "true") p.circular = true;
    else if (*c != "false") structure("slide", "circular must be true or false", e_.location);
  }
  const RawElement* tmpl = nullptr;
  std::vector<const RawElement*> lists;
  for (const auto& c : e_.children) {
    if (c.name == "list") {
      if (tmpl) structure("slide", "<list> after the template in <slide>", c.location);
      lists.push_back(&c);
    } else {
      if (tmpl) structure("slide", "slide has exactly one constraint template", c.location);
      tmpl = &c;
    }
  }
  if (!tmpl) structure("slide", "slide without a constraint template", e_.location);
  if (lists.empty()) structure("slide", "slide without <list>", e_.location);
  if (tmpl->name == "group" || tmpl->name == "slide" || tmpl->name == "block" || tmpl->name == "seqbin")
    structure("nesting", "<" + tmpl->name + "> cannot occur inside <slide>", tmpl->location);
  bool rest = false;
  p.arity = template_arity(*tmpl, &rest);
  if (rest) structure("param-rest", "%... cannot occur in a slide template", tmpl->location);
  if (p.arity == 0) structure("slide", "slide template without parameters", tmpl->location);
  p.tmpl = *tmpl;
  size_t q = static_cast<size_t>(p.arity);

  for (const RawElement* l : lists) {
    for (const auto& [k, v] : l->attributes)
      if (k != "offset" && k != "collect")
        warn(w_, "unknown-attribute", "unknown attribute '" + k + "' on <list>", l->location);
    SlideList sl;
    sl.vars = vars(leaf_text(*l));
    int64_t off = l->attr("offset") ? parse_integer(*l->attr("offset")) : 1;
    int64_t def_collect = lists.size() == 1 ? static_cast<int64_t>(q) : 1;
    int64_t col = l->attr("collect") ? parse_integer(*l->attr("collect")) : def_collect;
    if (off < 1 || col < 1) structure("slide", "offset and collect must be positive", l->location);
    sl.offset = static_cast<int>(off);
    sl.collect = static_cast<int>(col);
    p.lists.push_back(std::move(sl));
  }
  size_t collected = 0;
  for (const auto& sl : p.lists) collected += static_cast<size_t>(sl.collect);
  if (collected != q)
    structure("slide", "slide collects " + std::to_string(collected) + " variables per window but the template has " +
                           std::to_string(q) + " parameters",
              e_.location);

  // windows, each a vector of variable names
  std::vector<std::vector<VarId>> windows;
  if (p.circular) {
    if (p.lists.size() != 1 || p.lists[0].offset != 1)
      unsupported("circular slide with several lists or an offset", e_.location);
    const auto& xs = p.lists[0].vars;
    size_t n = xs.size();
    if (n < q) structure("slide", "slide list shorter than the template arity", e_.location);
    for (size_t i = 0; i + q <= n + 1; ++i) {
      std::vector<VarId> w;
      for (size_t j = 0; j < q; ++j) w.push_back(xs[(i + j) % n]);
      windows.push_back(std::move(w));
    }
  } else if (p.lists.size() == 1) {
    const auto& sl = p.lists[0];
    size_t n = sl.vars.size();
    if (n < q) structure("slide", "slide list shorter than the template arity", e_.location);
    size_t os = static_cast<size_t>(sl.offset);
    for (size_t i = 0; i <= (n - q) / os; ++i)
      windows.emplace_back(sl.vars.begin() + static_cast<long>(i * os), sl.vars.begin() + static_cast<long>(i * os + q));
  } else {
    std::optional<size_t> iters;
    for (const auto& sl : p.lists) {
      size_t n = sl.vars.size(), c = static_cast<size_t>(sl.collect), o = static_cast<size_t>(sl.offset);
      if (n < c || (n - c) % o != 0)
        structure("slide", "ragged final window in a slide list", e_.location);
      size_t k = (n - c) / o + 1;
      if (iters && *iters != k) structure("slide", "slide lists give different numbers of windows", e_.location);
      iters = k;
    }
    for (size_t i = 0; i < *iters; ++i) {
      std::vector<VarId> w;
      for (const auto& sl : p.lists)
        for (int j = 0; j < sl.collect; ++j) w.push_back(sl.vars[i * static_cast<size_t>(sl.offset) + static_cast<size_t>(j)]);
      windows.push_back(std::move(w));
    }
  }
  std::string base = e_.attr("id") ? *e_.attr("id") : "slide";
  for (size_t i = 0; i < windows.size(); ++i) {
    std::vector<std::string> args;
    for (VarId x : windows[i]) args.push_back(ctx_.vars[static_cast<size_t>(x)].name);
    Constraint c = build_constraint(substitute_template(*tmpl, args), ctx_, w_, order_);
    c.provenance = base + "[" + std::to_string(i) + "]";
    p.windows.push_back(std::move(c));
  }
  return p;
}

// --- scope collection ---

struct ScopeOf {
  std::vector<VarId>& out;
  void add(const std::vector<VarId>& v) { out.insert(out.end(), v.begin(), v.end()); }
  void add(const IntRef& r) {
    if (r.is_var()) out.push_back(r.var);
  }
  void add(const std::vector<IntRef>& v) {
    for (const auto& r : v) add(r);
  }
  void add(const ExprPtr& e) {
    std::vector<int> vs;
    collect_vars(*e, vs);
    out.insert(out.end(), vs.begin(), vs.end());
  }
  void add(const Cond& c) { add(c.rhs); }

  void operator()(const IntensionC& p) { add(p.expr); }
  void operator()(const ExtensionC& p) { add(p.scope); }
  void operator()(const RegularC& p) { add(p.scope); }
  void operator()(const MddC& p) { add(p.scope); }
  void operator()(const AllDifferentC& p) {
    for (const auto& t : p.terms) add(t);
  }
  void operator()(const AllDifferentListsC& p) {
    for (const auto& l : p.lists) add(l);
  }
  void operator()(const AllDifferentMatrixC& p) {
    for (const auto& l : p.rows) add(l);
  }
  void operator()(const AllEqualC& p) { add(p.scope); }
  void operator()(const OrderedC& p) {
    add(p.scope);
    add(p.lengths);
  }
  void operator()(const LexListsC& p) {
    for (const auto& l : p.lists) add(l);
  }
  void operator()(const LexMatrixC& p) {
    for (const auto& l : p.rows) add(l);
  }
  void operator()(const SumC& p) {
    for (const auto& t : p.terms) add(t);
    add(p.coeffs);
    add(p.cond);
  }
  void operator()(const CountC& p) {
    add(p.scope);
    add(p.values);
    add(p.cond);
  }
  void operator()(const NValuesC& p) {
    add(p.scope);
    add(p.cond);
  }
  void operator()(const CardinalityC& p) {
    add(p.scope);
    add(p.values);
    for (const auto& o : p.occurs)
      if (!o.is_interval) add(o.ref);
  }
  void operator()(const ExtremumC& p) {
    add(p.scope);
    if (p.index >= 0) out.push_back(p.index);
    if (p.cond) add(*p.cond);
  }
  void operator()(const ElementC& p) {
    add(p.list);
    if (p.index >= 0) out.push_back(p.index);
    add(p.value);
  }
  void operator()(const ChannelC& p) {
    add(p.x);
    add(p.y);
    if (p.value >= 0) out.push_back(p.value);
  }
  void operator()(const NoOverlapC& p) {
    for (const auto& r : p.origins) add(r);
    for (const auto& r : p.lengths) add(r);
  }
  void operator()(const CumulativeC& p) {
    add(p.origins);
    add(p.lengths);
    add(p.ends);
    add(p.heights);
    add(p.cond);
  }
  void operator()(const CircuitC& p) {
    add(p.scope);
    if (p.size) add(*p.size);
  }
  void operator()(const InstantiationC& p) { add(p.scope); }
  void operator()(const SlideC& p) {
    for (const auto& w : p.windows) add(w.scope);
  }
};

Constraint Builder::build() {
  Constraint c;
  c.location = e_.location;
  if (const std::string* id = e_.attr("id")) c.provenance = *id;
  if (const std::string* n = e_.attr("note")) c.note = *n;
  if (const std::string* k = e_.attr("class"))
    for (auto t : split_ws(*k)) c.classes.emplace_back(t);

  const std::string& n = e_.name;
  Kind kind = Kind::Intension;
  Payload p;
  if (n == "intension") p = intension(), kind = Kind::Intension;
  else if (n == "extension") p = extension(), kind = Kind::Extension;
  else if (n == "regular") p = regular(), kind = Kind::Regular;
  else if (n == "mdd") p = mdd(), kind = Kind::Mdd;
  else if (n == "allDifferent") p = all_different(kind);
  else if (n == "allEqual") p = all_equal(), kind = Kind::AllEqual;
  else if (n == "ordered") p = ordered(), kind = Kind::Ordered;
  else if (n == "lex") p = lex(kind);
  else if (n == "sum") p = sum(), kind = Kind::Sum;
  else if (n == "count") p = count(), kind = Kind::Count;
  else if (n == "nValues") p = n_values(), kind = Kind::NValues;
  else if (n == "cardinality") p = cardinality(), kind = Kind::Cardinality;
  else if (n == "maximum") p = extremum(true), kind = Kind::Maximum;
  else if (n == "minimum") p = extremum(false), kind = Kind::Minimum;
  else if (n == "element") p = element(), kind = Kind::Element;
  else if (n == "channel") p = channel(), kind = Kind::Channel;
  else if (n == "noOverlap") p = no_overlap(), kind = Kind::NoOverlap;
  else if (n == "cumulative") p = cumulative(), kind = Kind::Cumulative;
  else if (n == "circuit") p = circuit(), kind = Kind::Circuit;
  else if (n == "instantiation") p = instantiation(), kind = Kind::Instantiation;
  else if (n == "slide") p = slide(), kind = Kind::Slide;
  else {
    for (const char* o : kOutOfScope)
      if (n == o) unsupported("constraint <" + n + ">", e_.location);
    if (n == "group" || n == "block") structure("nesting", "<" + n + "> is not allowed here", e_.location);
    structure("unknown-constraint", "unknown constraint <" + n + ">", e_.location);
  }
  c.kind = kind;
  c.payload = std::move(p);
  std::visit(ScopeOf{c.scope}, c.payload);
  std::sort(c.scope.begin(), c.scope.end());
  c.scope.erase(std::unique(c.scope.begin(), c.scope.end()), c.scope.end());
  return c;
}

}  // namespace

Constraint build_constraint(const RawElement& e, const Instance& ctx, Warnings* warnings, OrderPolicy order) {
  try {
    return Builder(e, ctx, warnings, order).build();
  } catch (const Error& err) {
    throw err.at(e.location);
  }
}

}  // namespace xcsp3kit
