#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "xcsp3kit/diagnostic.hpp"
#include "xcsp3kit/domain.hpp"
#include "xcsp3kit/expression.hpp"
#include "xcsp3kit/grammar.hpp"
#include "xcsp3kit/xml.hpp"

namespace xcsp3kit {

using VarId = int;

// a value or a variable, as in "(intVal | intVar)"
struct IntRef {
  VarId var = -1;
  int64_t value = 0;
  bool is_var() const { return var >= 0; }
  static IntRef constant(int64_t v) { return {-1, v}; }
  static IntRef variable(VarId x) { return {x, 0}; }
};

// condition with its operand resolved against the instance
struct Cond {
  RelOp op = RelOp::eq;
  IntRef rhs;                 // relational operators
  bool is_interval = false;   // in / notin
  IntInterval range;
  std::vector<int64_t> set;   // sorted, for in / notin over set(...)
};

enum class Rank { Any, First, Last };

struct Transition {
  int from = 0;
  int64_t value = 0;
  int to = 0;
};

struct IntensionC {
  ExprPtr expr;
};

struct ExtensionC {
  std::vector<VarId> scope;
  bool supports = true;
  bool unary = false;
  Domain unary_values;         // arity 1
  std::vector<TupleRow> rows;  // arity >= 2
};

struct RegularC {
  std::vector<VarId> scope;
  std::vector<std::string> states;
  std::vector<Transition> transitions;
  int start = 0;
  std::vector<int> finals;
};

struct MddC {
  std::vector<VarId> scope;
  std::vector<std::string> nodes;
  std::vector<Transition> transitions;
  int root = 0;
  int terminal = 0;
};

struct AllDifferentC {
  std::vector<ExprPtr> terms;
  std::vector<int64_t> except;
};

struct AllDifferentListsC {
  std::vector<std::vector<VarId>> lists;
  std::vector<std::vector<int64_t>> except;
};

struct AllDifferentMatrixC {
  std::vector<std::vector<VarId>> rows;
};

struct AllEqualC {
  std::vector<VarId> scope;
};

struct OrderedC {
  std::vector<VarId> scope;
  std::vector<IntRef> lengths;  // empty, or |scope| - 1
  RelOp op = RelOp::le;
};

struct LexListsC {
  std::vector<std::vector<VarId>> lists;
  RelOp op = RelOp::le;
};

struct LexMatrixC {
  std::vector<std::vector<VarId>> rows;
  RelOp op = RelOp::le;
};

struct SumC {
  std::vector<ExprPtr> terms;
  std::vector<IntRef> coeffs;  // empty means all 1
  Cond cond;
};

struct CountC {
  std::vector<VarId> scope;
  std::vector<IntRef> values;
  Cond cond;
};

struct NValuesC {
  std::vector<VarId> scope;
  std::vector<int64_t> except;
  Cond cond;
};

struct Occurs {
  bool is_interval = false;
  IntRef ref;
  IntInterval range;
};

struct CardinalityC {
  std::vector<VarId> scope;
  std::vector<IntRef> values;
  bool closed = false;
  std::vector<Occurs> occurs;
};

struct ExtremumC {
  bool maximum = true;
  std::vector<VarId> scope;
  int64_t start_index = 0;
  VarId index = -1;
  Rank rank = Rank::Any;
  std::optional<Cond> cond;
};

struct ElementC {
  std::vector<IntRef> list;
  int64_t start_index = 0;
  VarId index = -1;
  Rank rank = Rank::Any;
  IntRef value;
};

struct ChannelC {
  enum class Form { One, Two, Value };
  Form form = Form::One;
  std::vector<VarId> x, y;
  int64_t start_x = 0, start_y = 0;
  VarId value = -1;
};

struct NoOverlapC {
  bool kdim = false;
  bool zero_ignored = true;
  std::vector<std::vector<VarId>> origins;  // one row per box, 1 column when 1-D
  std::vector<std::vector<IntRef>> lengths;
};

struct CumulativeC {
  std::vector<VarId> origins;
  std::vector<IntRef> lengths;
  std::vector<VarId> ends;  // optional
  std::vector<IntRef> heights;
  Cond cond;
};

struct CircuitC {
  std::vector<VarId> scope;
  int64_t start_index = 0;
  std::optional<IntRef> size;
};

struct InstantiationC {
  std::vector<VarId> scope;
  std::vector<int64_t> values;
};

struct Constraint;

struct SlideList {
  std::vector<VarId> vars;
  int offset = 1;
  int collect = 1;
};

struct SlideC {
  bool circular = false;
  std::vector<SlideList> lists;
  int arity = 0;                    // q, number of template parameters
  RawElement tmpl;                  // unexpanded template
  std::vector<Constraint> windows;  // instantiated once at build
};

enum class Kind {
  Intension, Extension, Regular, Mdd, AllDifferent, AllDifferentLists, AllDifferentMatrix,
  AllEqual, Ordered, LexLists, LexMatrix, Sum, Count, NValues, Cardinality, Minimum, Maximum,
  Element, Channel, NoOverlap, Cumulative, Circuit, Instantiation, Slide,
};

const char* kind_name(Kind k);  // XML tag, e.g. "allDifferent" for all three forms
const char* kind_label(Kind k);  // distinguishes forms, e.g. "allDifferent-matrix"

// valid XCSP3 constraint tags this library rejects as unsupported
bool is_out_of_scope_constraint(std::string_view tag);

using Payload =
    std::variant<IntensionC, ExtensionC, RegularC, MddC, AllDifferentC, AllDifferentListsC,
                 AllDifferentMatrixC, AllEqualC, OrderedC, LexListsC, LexMatrixC, SumC, CountC,
                 NValuesC, CardinalityC, ExtremumC, ElementC, ChannelC, NoOverlapC, CumulativeC,
                 CircuitC, InstantiationC, SlideC>;

struct Constraint {
  Kind kind = Kind::Intension;
  Payload payload;
  std::string provenance;  // id, "g[3]", or "#n" for anonymous ones
  std::string note;
  std::vector<std::string> classes;
  Location location;
  std::vector<VarId> scope;  // sorted, distinct
};

struct Variable {
  std::string name;
  Domain domain;
  int decl = 0;
};

struct VariableDecl {
  std::string id;
  bool is_array = false;
  std::vector<int64_t> dims;  // arrays only
  int64_t start_index = 0;
  std::vector<std::optional<Domain>> cell_domains;  // nullopt is UNDEFINED
  std::vector<VarId> cells;                         // -1 for UNDEFINED
  std::string note;
  std::vector<std::string> classes;
  Location location;

  size_t cell_count() const { return cell_domains.size(); }
  const std::optional<Domain>& domain_of(size_t cell) const { return cell_domains[cell]; }
  std::string cell_name(size_t cell) const;
  // declared indices -> flat cell, nullopt if out of bounds
  std::optional<size_t> cell_of(const std::vector<int64_t>& index) const;
};

enum class ObjectiveForm { Expression, Sum, Product, Minimum, Maximum, NValues, Lex };
const char* form_name(ObjectiveForm f);

struct Objective {
  bool minimize = true;
  ObjectiveForm form = ObjectiveForm::Expression;
  ExprPtr expr;                // expression form
  std::vector<ExprPtr> list;   // specialized forms
  std::vector<int64_t> coeffs;  // empty means all 1
  std::string id;
  std::string note;
  Location location;
  std::vector<VarId> scope;
};

enum class Combination { Pareto, Lexico };

struct BuildOptions {
  std::vector<std::string> drop_classes;
  OrderPolicy tuple_order = OrderPolicy::Error;
};

class Instance {
 public:
  Framework framework = Framework::CSP;
  std::vector<VariableDecl> decls;
  std::vector<Variable> vars;
  std::vector<Constraint> constraints;
  std::vector<Objective> objectives;
  Combination combination = Combination::Pareto;
  bool combination_given = false;
  std::optional<RawElement> annotations;
  std::vector<bool> useful;
  Warnings warnings;

  const VariableDecl* find_decl(const std::string& id) const;
  // single cell reference such as "x[2][0]"; throws on unknown or UNDEFINED
  VarId resolve(std::string_view ref) const;
  std::optional<VarId> find(std::string_view ref) const;
  // compact list in list context
  std::vector<VarId> expand(std::string_view token) const;
  std::vector<VarId> useless() const;

  // registration used while building
  void add_decl(VariableDecl d);

 private:
  std::unordered_map<std::string, int> decl_index_;
  std::unordered_map<std::string, VarId> by_name_;
};

enum class ListContext { List, Matrix };

// flat cell positions; one row in list context, one row per first-dimension
// index in matrix context
using Expansion = std::vector<std::vector<size_t>>;
Expansion expand_compact_list(const VarAccess& access, ListContext ctx, const VariableDecl& decl);

VariableDecl resolve_mixed_domains(const RawElement& array_elem);

// textual %k / %... substitution, then ordinary construction
RawElement substitute_template(const RawElement& tmpl, const std::vector<std::string>& args);
Constraint instantiate_template(const RawElement& tmpl, const std::vector<std::string>& args,
                                const Instance& ctx);
std::vector<Constraint> expand_group(const RawElement& group, const Instance& ctx);
std::vector<Constraint> flatten_blocks(const RawElement& constraints_block, const Instance& ctx,
                                       const BuildOptions& opts = {});
Constraint build_constraint(const RawElement& e, const Instance& ctx, Warnings* warnings = nullptr,
                            OrderPolicy order = OrderPolicy::Error);

Instance build_instance(const DocumentFrame& frame, const BuildOptions& opts = {});
Instance load_instance(std::string_view bytes, const BuildOptions& opts = {});
Instance load_instance_file(const std::string& path, const BuildOptions& opts = {});

// largest %k index plus one, 0 when there is none; sets rest if %... occurs
int template_arity(const RawElement& tmpl, bool* rest = nullptr);

}  // namespace xcsp3kit
