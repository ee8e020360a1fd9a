#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xcsp3kit/diagnostic.hpp"
#include "xcsp3kit/domain.hpp"

namespace xcsp3kit {

// --- tokens -----------------------------------------------------------------

bool is_identifier(std::string_view s);
bool looks_like_integer(std::string_view s);
int64_t parse_integer(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);

// --- intervals and domains --------------------------------------------------

IntInterval parse_interval(std::string_view text);
Domain parse_domain(std::string_view text);

// --- conditions -------------------------------------------------------------

enum class RelOp { lt, le, ge, gt, eq, ne, in, notin };

const char* to_string(RelOp op);
std::optional<RelOp> rel_op_from(std::string_view token);

struct Operand {
  enum class Kind { Value, Variable, Interval, Set };
  Kind kind = Kind::Value;
  int64_t value = 0;
  std::string variable;
  IntInterval interval;
  std::vector<int64_t> set;
  bool operator==(const Operand&) const = default;
};

struct Condition {
  RelOp op = RelOp::eq;
  Operand operand;
  bool operator==(const Condition&) const = default;
};

Condition parse_condition(std::string_view text);
std::string to_string(const Condition& c);

// --- tuples -----------------------------------------------------------------

struct TupleRow {
  std::vector<std::optional<int64_t>> cells;  // nullopt is '*'
  bool has_star() const;
  bool operator==(const TupleRow&) const = default;
};

enum class OrderPolicy { Error, Warn };

struct TupleOptions {
  bool allow_star = false;
  std::optional<size_t> arity;
  OrderPolicy order = OrderPolicy::Error;
  Warnings* warnings = nullptr;
};

std::vector<TupleRow> parse_tuples(std::string_view text, const TupleOptions& opts = {});
std::string to_string(const std::vector<TupleRow>& rows);

// Raw "(a,b,c)(d,e,f)" splitting, no whitespace tolerated inside a vector.
std::vector<std::vector<std::string>> split_vectors(std::string_view text);

// --- variable accesses ------------------------------------------------------

struct Indexer {
  enum class Kind { Single, Range, Full };
  Kind kind = Kind::Full;
  int64_t lo = 0;
  int64_t hi = 0;
  bool operator==(const Indexer&) const = default;
};

struct VarAccess {
  std::string base;
  std::vector<Indexer> indexers;
  bool is_single_cell() const;
  bool operator==(const VarAccess&) const = default;
};

VarAccess parse_var_access(std::string_view text);
std::string to_string(const VarAccess& a);

}  // namespace xcsp3kit
