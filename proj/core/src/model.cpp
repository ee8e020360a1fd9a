#include "xcsp3kit/model.hpp"

#include <algorithm>
#include <set>

namespace xcsp3kit {

namespace {

[[noreturn]] void structure(std::string code, std::string msg, Location loc = {}) {
  fail(ErrorKind::Structure, std::move(code), std::move(msg), loc);
}

std::vector<std::string> split_classes(const std::string* s) {
  std::vector<std::string> out;
  if (!s) return out;
  for (auto t : split_ws(*s)) out.emplace_back(t);
  return out;
}

void check_attributes(const RawElement& e, std::initializer_list<const char*> allowed, Warnings* w) {
  for (const auto& [k, v] : e.attributes) {
    bool ok = k == "id" || k == "note" || k == "class";
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) warn(w, "unknown-attribute", "unknown attribute '" + k + "' on <" + e.name + ">", e.location);
  }
}

const char* kForeignTypes[] = {"symbolic", "real", "set", "symbolic set", "graph", "stochastic",
                               "qualitative", "symbolic stochastic", "directed graph",
                               "undirected graph", "point", "interval", "region"};

void check_var_type(const RawElement& e) {
  const std::string* type = e.attr("type");
  if (!type || *type == "integer") return;
  for (const char* t : kForeignTypes)
    if (*type == t) unsupported("variables of type '" + *type + "'", e.location);
  structure("var-type", "unknown variable type '" + *type + "'", e.location);
}

std::vector<int64_t> parse_size(const std::string& s, Location loc) {
  std::vector<int64_t> dims;
  size_t i = 0;
  if (s.empty()) structure("size", "empty size attribute", loc);
  while (i < s.size()) {
    if (s[i] != '[') fail(ErrorKind::Grammar, "size", "size must look like [n][m]..., got '" + s + "'", loc);
    size_t close = s.find(']', i);
    if (close == std::string::npos)
      fail(ErrorKind::Grammar, "size", "size must look like [n][m]..., got '" + s + "'", loc);
    int64_t n = 0;
    try {
      n = parse_integer(std::string_view(s).substr(i + 1, close - i - 1));
    } catch (const Error& err) {
      throw err.at(loc);
    }
    if (n <= 0) structure("size", "array dimensions must be positive in '" + s + "'", loc);
    dims.push_back(n);
    i = close + 1;
  }
  return dims;
}

constexpr uint64_t kMaxCells = 50'000'000;

}  // namespace

// ---------------------------------------------------------------------------

std::string VariableDecl::cell_name(size_t cell) const {
  if (!is_array) return id;
  std::vector<int64_t> idx(dims.size());
  for (size_t k = dims.size(); k-- > 0;) {
    idx[k] = static_cast<int64_t>(cell % static_cast<size_t>(dims[k]));
    cell /= static_cast<size_t>(dims[k]);
  }
  std::string s = id;
  for (int64_t i : idx) s += "[" + std::to_string(i + start_index) + "]";
  return s;
}

std::optional<size_t> VariableDecl::cell_of(const std::vector<int64_t>& index) const {
  if (!is_array) return index.empty() ? std::optional<size_t>(0) : std::nullopt;
  if (index.size() != dims.size()) return std::nullopt;
  size_t cell = 0;
  for (size_t k = 0; k < dims.size(); ++k) {
    int64_t i = index[k] - start_index;
    if (i < 0 || i >= dims[k]) return std::nullopt;
    cell = cell * static_cast<size_t>(dims[k]) + static_cast<size_t>(i);
  }
  return cell;
}

const char* form_name(ObjectiveForm f) {
  switch (f) {
    case ObjectiveForm::Expression: return "expression";
    case ObjectiveForm::Sum: return "sum";
    case ObjectiveForm::Product: return "product";
    case ObjectiveForm::Minimum: return "minimum";
    case ObjectiveForm::Maximum: return "maximum";
    case ObjectiveForm::NValues: return "nValues";
    case ObjectiveForm::Lex: return "lex";
  }
  return "?";
}

const VariableDecl* Instance::find_decl(const std::string& id) const {
  auto it = decl_index_.find(id);
  return it == decl_index_.end() ? nullptr : &decls[static_cast<size_t>(it->second)];
}

void Instance::add_decl(VariableDecl d) {
  if (decl_index_.count(d.id)) structure("duplicate-id", "variable '" + d.id + "' declared twice", d.location);
  int di = static_cast<int>(decls.size());
  d.cells.assign(d.cell_count(), -1);
  for (size_t c = 0; c < d.cell_count(); ++c) {
    if (!d.cell_domains[c]) continue;
    VarId x = static_cast<VarId>(vars.size());
    d.cells[c] = x;
    vars.push_back({d.cell_name(c), *d.cell_domains[c], di});
    by_name_[vars.back().name] = x;
  }
  decl_index_[d.id] = di;
  decls.push_back(std::move(d));
}

std::optional<VarId> Instance::find(std::string_view ref) const {
  auto it = by_name_.find(std::string(ref));
  if (it != by_name_.end()) return it->second;
  return std::nullopt;
}

VarId Instance::resolve(std::string_view ref) const {
  if (auto x = find(ref)) return *x;
  VarAccess a = parse_var_access(ref);
  const VariableDecl* d = find_decl(a.base);
  if (!d) structure("unknown-variable", "unknown variable '" + std::string(ref) + "'");
  if (!a.is_single_cell() || (d->is_array && a.indexers.size() != d->dims.size()) ||
      (!d->is_array && !a.indexers.empty()))
    structure("reference", "'" + std::string(ref) + "' does not denote a single variable");
  std::vector<int64_t> idx;
  for (const auto& x : a.indexers) idx.push_back(x.lo);
  auto cell = d->cell_of(idx);
  if (!cell) structure("index-bounds", "index out of bounds in '" + std::string(ref) + "'");
  if (d->cells[*cell] < 0)
    structure("undefined-variable", "variable " + d->cell_name(*cell) + " is undefined but used");
  return d->cells[*cell];
}

std::vector<VarId> Instance::expand(std::string_view token) const {
  if (auto x = find(token)) return {*x};
  VarAccess a = parse_var_access(token);
  const VariableDecl* d = find_decl(a.base);
  if (!d) structure("unknown-variable", "unknown variable '" + std::string(token) + "'");
  Expansion ex = expand_compact_list(a, ListContext::List, *d);
  std::vector<VarId> out;
  for (size_t cell : ex.front()) {
    if (d->cells[cell] < 0)
      structure("undefined-variable", "variable " + d->cell_name(cell) + " is undefined but used");
    out.push_back(d->cells[cell]);
  }
  return out;
}

std::vector<VarId> Instance::useless() const {
  std::vector<VarId> out;
  for (size_t i = 0; i < useful.size(); ++i)
    if (!useful[i]) out.push_back(static_cast<VarId>(i));
  return out;
}

// ---------------------------------------------------------------------------

Expansion expand_compact_list(const VarAccess& access, ListContext ctx, const VariableDecl& decl) {
  if (access.base != decl.id)
    structure("reference", "'" + to_string(access) + "' does not refer to '" + decl.id + "'");
  if (!decl.is_array) {
    if (!access.indexers.empty())
      structure("reference", "'" + decl.id + "' is not an array: " + to_string(access));
    if (ctx == ListContext::Matrix)
      structure("matrix-context", "a two-dimensional compact list is needed, got '" + decl.id + "'");
    return {{0}};
  }
  const size_t n = decl.dims.size();
  if (access.indexers.size() > n)
    structure("reference", "too many indices in '" + to_string(access) + "'");
  std::vector<int64_t> lo(n), hi(n);
  std::vector<bool> free_dim(n, true);
  for (size_t k = 0; k < n; ++k) {
    Indexer x = k < access.indexers.size() ? access.indexers[k] : Indexer{};
    if (x.kind == Indexer::Kind::Full) {
      lo[k] = 0;
      hi[k] = decl.dims[k] - 1;
      continue;
    }
    lo[k] = x.lo - decl.start_index;
    hi[k] = x.hi - decl.start_index;
    if (lo[k] < 0 || hi[k] >= decl.dims[k])
      structure("index-bounds", "index out of bounds in '" + to_string(access) + "'");
    free_dim[k] = x.kind == Indexer::Kind::Range;
  }
  size_t first_free = n;
  size_t nfree = 0;
  for (size_t k = 0; k < n; ++k)
    if (free_dim[k]) {
      if (first_free == n) first_free = k;
      ++nfree;
    }
  if (ctx == ListContext::Matrix && nfree < 2)
    structure("matrix-context", "a two-dimensional compact list is needed, got '" + to_string(access) + "'");

  Expansion out;
  if (ctx == ListContext::List) out.emplace_back();
  std::vector<int64_t> cur = lo;
  int64_t row_key = -1;
  while (true) {
    size_t cell = 0;
    for (size_t k = 0; k < n; ++k) cell = cell * static_cast<size_t>(decl.dims[k]) + static_cast<size_t>(cur[k]);
    if (ctx == ListContext::Matrix && cur[first_free] != row_key) {
      out.emplace_back();
      row_key = cur[first_free];
    }
    out.back().push_back(cell);
    size_t k = n;
    while (k-- > 0) {
      if (cur[k] < hi[k]) {
        ++cur[k];
        break;
      }
      cur[k] = lo[k];
    }
    if (k == static_cast<size_t>(-1)) break;
  }
  return out;
}

VariableDecl resolve_mixed_domains(const RawElement& e) {
  VariableDecl d;
  d.is_array = true;
  d.location = e.location;
  const std::string* id = e.attr("id");
  if (!id || !is_identifier(*id)) structure("id", "array needs an identifier id", e.location);
  d.id = *id;
  const std::string* size = e.attr("size");
  if (!size) structure("size", "array '" + d.id + "' has no size", e.location);
  d.dims = parse_size(*size, e.location);
  if (const std::string* s = e.attr("startIndex")) d.start_index = parse_integer(*s);
  uint64_t cells = 1;
  for (int64_t n : d.dims)
    if (__builtin_mul_overflow(cells, static_cast<uint64_t>(n), &cells) || cells > kMaxCells)
      structure("size", "array '" + d.id + "' is too large", e.location);
  d.cell_domains.assign(cells, std::nullopt);

  auto domain_of = [&](const RawElement& src) {
    try {
      return parse_domain(src.text);
    } catch (const Error& err) {
      throw err.at(src.location);
    }
  };

  if (e.children.empty()) {
    Domain dom = domain_of(e);
    for (auto& c : d.cell_domains) c = dom;
    return d;
  }
  if (!is_blank(e.text))
    structure("mixed-domain", "array '" + d.id + "' mixes text and <domain> children", e.location);
  std::vector<bool> taken(cells, false);
  bool seen_others = false;
  for (const auto& c : e.children) {
    if (c.name != "domain")
      structure("mixed-domain", "unexpected <" + c.name + "> in array '" + d.id + "'", c.location);
    if (seen_others)
      structure("mixed-domain", "<domain for=\"others\"> must come last", c.location);
    const std::string* pat = c.attr("for");
    if (!pat) structure("mixed-domain", "<domain> without attribute for", c.location);
    Domain dom = domain_of(c);
    if (*pat == "others") {
      seen_others = true;
      for (size_t i = 0; i < cells; ++i)
        if (!taken[i]) {
          taken[i] = true;
          d.cell_domains[i] = dom;
        }
      continue;
    }
    for (auto tok : split_ws(*pat)) {
      Expansion ex;
      try {
        VarAccess a = parse_var_access(tok);
        ex = expand_compact_list(a, ListContext::List, d);
      } catch (const Error& err) {
        throw err.at(c.location);
      }
      for (size_t cell : ex.front()) {
        if (taken[cell])
          structure("mixed-domain", "overlapping domain patterns at " + d.cell_name(cell), c.location);
        taken[cell] = true;
        d.cell_domains[cell] = dom;
      }
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// templates

namespace {

void scan_params(std::string_view s, int& max_index, bool& rest) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') continue;
    if (s.substr(i + 1, 3) == "...") {
      rest = true;
      continue;
    }
    size_t j = i + 1;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j > i + 1) max_index = std::max(max_index, static_cast<int>(parse_integer(s.substr(i + 1, j - i - 1))));
  }
}

void scan_tree(const RawElement& e, int& max_index, bool& rest) {
  scan_params(e.text, max_index, rest);
  for (const auto& [k, v] : e.attributes) scan_params(v, max_index, rest);
  for (const auto& c : e.children) scan_tree(c, max_index, rest);
}

bool is_expression_holder(const RawElement& e, const RawElement* parent) {
  if (e.name == "intension" || e.name == "function") return true;
  return parent && parent->name == "intension";
}

void rest_only_as_token(const RawElement& e, const RawElement* parent) {
  if (e.text.find("%...") != std::string::npos) {
    if (is_expression_holder(e, parent))
      structure("param-rest", "%... cannot occur inside an expression", e.location);
    for (auto tok : split_ws(e.text))
      if (tok != "%..." && tok.find("%...") != std::string_view::npos)
        structure("param-rest", "%... cannot occur inside an expression ('" + std::string(tok) + "')",
                  e.location);
  }
  for (const auto& c : e.children) rest_only_as_token(c, &e);
}

std::string substitute(std::string_view s, const std::vector<std::string>& args, size_t fixed,
                       Location loc) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (s.substr(i + 1, 3) == "...") {
      for (size_t k = fixed; k < args.size(); ++k) {
        if (k > fixed) out += ' ';
        out += args[k];
      }
      i += 3;
      continue;
    }
    size_t j = i + 1;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j == i + 1) structure("param", "stray '%' in template", loc);
    size_t k = static_cast<size_t>(parse_integer(s.substr(i + 1, j - i - 1)));
    out += args[k];
    i = j - 1;
  }
  return out;
}

void substitute_tree(RawElement& e, const std::vector<std::string>& args, size_t fixed) {
  e.text = substitute(e.text, args, fixed, e.location);
  for (auto& [k, v] : e.attributes) v = substitute(v, args, fixed, e.location);
  for (auto& c : e.children) substitute_tree(c, args, fixed);
}

void no_residual(const RawElement& e) {
  bool bad = e.text.find('%') != std::string::npos;
  for (const auto& [k, v] : e.attributes) bad = bad || v.find('%') != std::string::npos;
  if (bad) structure("param", "residual '%' after template substitution", e.location);
  for (const auto& c : e.children) no_residual(c);
}

}  // namespace

int template_arity(const RawElement& tmpl, bool* rest) {
  int max_index = -1;
  bool r = false;
  scan_tree(tmpl, max_index, r);
  if (rest) *rest = r;
  return max_index + 1;
}

RawElement substitute_template(const RawElement& tmpl, const std::vector<std::string>& args) {
  bool rest = false;
  int p = template_arity(tmpl, &rest);
  rest_only_as_token(tmpl, nullptr);
  if (args.size() < static_cast<size_t>(p))
    structure("template-args", "template needs " + std::to_string(p) + " arguments, got " +
                                   std::to_string(args.size()),
              tmpl.location);
  if (!rest && args.size() > static_cast<size_t>(p))
    structure("template-args", "template takes " + std::to_string(p) + " arguments, got " +
                                   std::to_string(args.size()),
              tmpl.location);
  for (const auto& a : args)
    if (a.find('%') != std::string::npos) structure("param", "argument '" + a + "' contains '%'", tmpl.location);
  RawElement out = tmpl;
  substitute_tree(out, args, static_cast<size_t>(p));
  no_residual(out);
  return out;
}

Constraint instantiate_template(const RawElement& tmpl, const std::vector<std::string>& args,
                                const Instance& ctx) {
  return build_constraint(substitute_template(tmpl, args), ctx);
}

namespace {

void append_unique(std::vector<std::string>& into, const std::vector<std::string>& more) {
  for (const auto& m : more)
    if (std::find(into.begin(), into.end(), m) == into.end()) into.push_back(m);
}

std::vector<Constraint> expand_group_impl(const RawElement& g, const Instance& ctx, Warnings* w,
                                          OrderPolicy order) {
  check_attributes(g, {}, w);
  const RawElement* tmpl = nullptr;
  std::vector<const RawElement*> args;
  for (const auto& c : g.children) {
    if (c.name == "args") {
      args.push_back(&c);
      continue;
    }
    if (tmpl) structure("group", "a group has exactly one constraint template", c.location);
    tmpl = &c;
  }
  if (!tmpl) structure("group", "group without a constraint template", g.location);
  if (tmpl->name == "not") unsupported("negated constraint template in <group>", tmpl->location);
  if (tmpl->name == "group" || tmpl->name == "slide" || tmpl->name == "block")
    structure("nesting", "<" + tmpl->name + "> cannot occur inside <group>", tmpl->location);
  if (args.empty()) structure("group", "group without <args>", g.location);
  std::vector<Constraint> out;
  const std::string* id = g.attr("id");
  std::vector<std::string> classes = split_classes(g.attr("class"));
  for (size_t i = 0; i < args.size(); ++i) {
    std::vector<std::string> toks;
    for (auto t : split_ws(args[i]->text)) toks.emplace_back(t);
    Constraint c;
    try {
      c = build_constraint(substitute_template(*tmpl, toks), ctx, w, order);
    } catch (const Error& err) {
      throw err.at(args[i]->location);
    }
    c.provenance = id ? *id + "[" + std::to_string(i) + "]" : "";
    c.location = args[i]->location;
    append_unique(c.classes, classes);
    if (c.note.empty() && g.attr("note")) c.note = *g.attr("note");
    out.push_back(std::move(c));
  }
  return out;
}

void flatten_into(const RawElement& block, const Instance& ctx, const BuildOptions& opts,
                  const std::vector<std::string>& inherited, std::vector<Constraint>& out,
                  Warnings* w) {
  for (const auto& c : block.children) {
    if (c.name == "block") {
      check_attributes(c, {}, w);
      std::vector<std::string> classes = inherited;
      append_unique(classes, split_classes(c.attr("class")));
      flatten_into(c, ctx, opts, classes, out, w);
      continue;
    }
    std::vector<Constraint> made;
    if (c.name == "group") {
      made = expand_group_impl(c, ctx, w, opts.tuple_order);
    } else {
      made.push_back(build_constraint(c, ctx, w, opts.tuple_order));
    }
    for (auto& m : made) {
      append_unique(m.classes, inherited);
      bool drop = std::any_of(m.classes.begin(), m.classes.end(), [&](const std::string& k) {
        return std::find(opts.drop_classes.begin(), opts.drop_classes.end(), k) != opts.drop_classes.end();
      });
      if (drop) continue;
      if (m.note.empty() && block.name == "block" && block.attr("note")) m.note = *block.attr("note");
      if (m.provenance.empty()) m.provenance = "#" + std::to_string(out.size());
      out.push_back(std::move(m));
    }
  }
  if (!is_blank(block.text))
    structure("skeleton", "unexpected text in <" + block.name + ">", block.location);
}

}  // namespace

std::vector<Constraint> expand_group(const RawElement& group, const Instance& ctx) {
  return expand_group_impl(group, ctx, nullptr, OrderPolicy::Error);
}

std::vector<Constraint> flatten_blocks(const RawElement& constraints_block, const Instance& ctx,
                                       const BuildOptions& opts) {
  std::vector<Constraint> out;
  flatten_into(constraints_block, ctx, opts, {}, out, nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// objectives

namespace {

std::vector<ExprPtr> objective_terms(std::string_view text, const Instance& ctx) {
  std::vector<ExprPtr> out;
  for (auto tok : split_ws(text)) {
    if (tok.find('(') != std::string_view::npos) {
      out.push_back(bind_variables(parse_expression(tok), [&](const std::string& n) { return ctx.resolve(n); }));
      continue;
    }
    for (VarId x : ctx.expand(tok)) out.push_back(Expr::variable(ctx.vars[static_cast<size_t>(x)].name, x));
  }
  return out;
}

Objective build_objective(const RawElement& e, const Instance& ctx, Warnings* w) {
  check_attributes(e, {"type"}, w);
  Objective o;
  o.minimize = e.name == "minimize";
  o.location = e.location;
  if (auto id = e.attr("id")) o.id = *id;
  if (auto n = e.attr("note")) o.note = *n;
  std::string type = e.attr("type") ? *e.attr("type") : "expression";
  static const std::pair<const char*, ObjectiveForm> forms[] = {
      {"expression", ObjectiveForm::Expression}, {"sum", ObjectiveForm::Sum},
      {"product", ObjectiveForm::Product},       {"minimum", ObjectiveForm::Minimum},
      {"maximum", ObjectiveForm::Maximum},       {"nValues", ObjectiveForm::NValues},
      {"lex", ObjectiveForm::Lex}};
  bool known = false;
  for (const auto& [name, f] : forms)
    if (type == name) {
      o.form = f;
      known = true;
    }
  if (!known) structure("objective", "unknown objective type '" + type + "'", e.location);
  auto resolve = [&](const std::string& n) { return ctx.resolve(n); };
  if (o.form == ObjectiveForm::Expression) {
    if (!e.children.empty()) structure("objective", "expression objective with child elements", e.location);
    o.expr = bind_variables(parse_expression(e.text), resolve);
    std::vector<int> vs;
    collect_vars(*o.expr, vs);
    o.scope.assign(vs.begin(), vs.end());
  } else {
    const RawElement* list = e.child("list");
    const RawElement* coeffs = e.child("coeffs");
    for (const auto& c : e.children)
      if (c.name != "list" && c.name != "coeffs")
        structure("objective", "unexpected <" + c.name + "> in objective", c.location);
    if (!list && coeffs) structure("objective", "<coeffs> without <list>", e.location);
    o.list = objective_terms(list ? list->text : e.text, ctx);
    if (coeffs) {
      for (auto t : split_ws(coeffs->text)) o.coeffs.push_back(parse_integer(t));
      if (o.coeffs.size() != o.list.size())
        structure("objective", "objective has " + std::to_string(o.list.size()) + " terms but " +
                                   std::to_string(o.coeffs.size()) + " coefficients",
                  coeffs->location);
    }
    if (o.list.empty()) structure("objective", "objective over an empty list", e.location);
    for (const auto& t : o.list) {
      std::vector<int> vs;
      collect_vars(*t, vs);
      o.scope.insert(o.scope.end(), vs.begin(), vs.end());
    }
  }
  std::sort(o.scope.begin(), o.scope.end());
  o.scope.erase(std::unique(o.scope.begin(), o.scope.end()), o.scope.end());
  return o;
}

}  // namespace

// ---------------------------------------------------------------------------

Instance build_instance(const DocumentFrame& frame, const BuildOptions& opts) {
  Instance inst;
  inst.framework = frame.framework;
  inst.warnings = frame.warnings;
  Warnings* w = &inst.warnings;

  for (const auto& c : frame.variables->children) {
    try {
      if (c.name == "var") {
        check_attributes(c, {"type"}, w);
        check_var_type(c);
        if (!c.children.empty()) structure("var", "<var> cannot have child elements", c.location);
        VariableDecl d;
        const std::string* id = c.attr("id");
        if (!id || !is_identifier(*id)) structure("id", "variable needs an identifier id", c.location);
        d.id = *id;
        d.location = c.location;
        d.cell_domains.push_back(parse_domain(c.text));
        if (auto n = c.attr("note")) d.note = *n;
        d.classes = split_classes(c.attr("class"));
        inst.add_decl(std::move(d));
      } else if (c.name == "array") {
        check_attributes(c, {"type", "size", "startIndex"}, w);
        check_var_type(c);
        VariableDecl d = resolve_mixed_domains(c);
        if (auto n = c.attr("note")) d.note = *n;
        d.classes = split_classes(c.attr("class"));
        inst.add_decl(std::move(d));
      } else {
        structure("variables", "unexpected <" + c.name + "> in <variables>", c.location);
      }
    } catch (const Error& err) {
      throw err.at(c.location);
    }
  }

  if (frame.constraints) {
    std::vector<Constraint> out;
    try {
      flatten_into(*frame.constraints, inst, opts, {}, out, w);
    } catch (const Error& err) {
      throw err.at(frame.constraints->location);
    }
    inst.constraints = std::move(out);
  }

  if (frame.objectives) {
    const RawElement& objs = *frame.objectives;
    check_attributes(objs, {"combination"}, w);
    for (const auto& c : objs.children) {
      if (c.name != "minimize" && c.name != "maximize")
        structure("objectives", "unexpected <" + c.name + "> in <objectives>", c.location);
      try {
        inst.objectives.push_back(build_objective(c, inst, w));
      } catch (const Error& err) {
        throw err.at(c.location);
      }
    }
    if (const std::string* comb = objs.attr("combination")) {
      if (inst.objectives.size() == 1)
        structure("combination", "attribute combination is forbidden with a single objective", objs.location);
      if (*comb == "lexico") inst.combination = Combination::Lexico;
      else if (*comb == "pareto") inst.combination = Combination::Pareto;
      else structure("combination", "combination must be lexico or pareto", objs.location);
      inst.combination_given = true;
    }
  }

  if (frame.annotations) inst.annotations = *frame.annotations;

  inst.useful.assign(inst.vars.size(), false);
  for (const auto& c : inst.constraints)
    for (VarId x : c.scope) inst.useful[static_cast<size_t>(x)] = true;
  for (const auto& o : inst.objectives)
    for (VarId x : o.scope) inst.useful[static_cast<size_t>(x)] = true;
  return inst;
}

Instance load_instance(std::string_view bytes, const BuildOptions& opts) {
  return build_instance(read_frame(bytes), opts);
}

Instance load_instance_file(const std::string& path, const BuildOptions& opts) {
  return build_instance(read_frame_file(path), opts);
}

}  // namespace xcsp3kit
