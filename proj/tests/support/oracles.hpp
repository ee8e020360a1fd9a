#pragma once

// Direct transcriptions of the constraint definitions over plain integer
// vectors. Nothing here calls into the library.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Vals = std::vector<int64_t>;
using Tuple = std::vector<std::optional<int64_t>>;  // nullopt is '*'

// relational operator applied as "lhs op rhs"
enum class Rel { lt, le, ge, gt, eq, ne, in, notin };
const char* rel_name(Rel r);

struct Condition {
  Rel op = Rel::eq;
  int64_t k = 0;            // relational
  int64_t lo = 0, hi = 0;   // interval membership
  bool is_set = false;
  std::vector<int64_t> set;  // set membership
};
bool holds(int64_t lhs, const Condition& c);

bool extension(const Vals& t, const std::vector<Tuple>& rows, bool supports);
bool regular(const Vals& word, const std::vector<std::tuple<int, int64_t, int>>& arcs, int start,
             const std::vector<int>& finals);
bool mdd(const Vals& word, const std::vector<std::tuple<int, int64_t, int>>& arcs, int root, int terminal);

bool all_different(const Vals& x, const std::vector<int64_t>& except);
bool all_different_lists(const std::vector<Vals>& lists, const std::vector<Vals>& except);
bool all_different_matrix(const std::vector<Vals>& m);
bool all_equal(const Vals& x);
bool ordered(const Vals& x, const Vals& lengths, Rel op);  // lengths empty or |x|-1
bool lex_less(const Vals& a, const Vals& b, Rel op);
bool lex_chain(const std::vector<Vals>& lists, Rel op);
bool lex_matrix(const std::vector<Vals>& m, Rel op);
bool sum(const Vals& terms, const Vals& coeffs, const Condition& c);
bool count(const Vals& x, const Vals& values, const Condition& c);
bool n_values(const Vals& x, const std::vector<int64_t>& except, const Condition& c);

struct Occ {
  bool interval = false;
  int64_t v = 0, lo = 0, hi = 0;
};
bool cardinality(const Vals& x, const Vals& values, bool closed, const std::vector<Occ>& occurs);

enum class Rank { any, first, last };
// index < 0 when absent
bool extremum(bool maximum, const Vals& x, int64_t start, std::optional<int64_t> index, Rank rank,
              const std::optional<Condition>& c);
bool element(const Vals& list, int64_t start, std::optional<int64_t> index, Rank rank, int64_t value);
bool channel_one(const Vals& x, int64_t start);
bool channel_two(const Vals& x, int64_t sx, const Vals& y, int64_t sy);
bool channel_value(const Vals& x, int64_t start, int64_t v);
// boxes: per box one origin and one length vector of equal dimension
bool no_overlap(const std::vector<Vals>& origins, const std::vector<Vals>& lengths, bool zero_ignored);
bool cumulative(const Vals& origins, const Vals& lengths, const std::optional<Vals>& ends, const Vals& heights,
                const Condition& c);
bool circuit(const Vals& x, int64_t start, std::optional<int64_t> size);
bool instantiation(const Vals& x, const Vals& values);

// --- expressions -----------------------------------------------------------

struct Tree {
  std::string op;  // "" for a leaf
  int64_t c = 0;
  int var = -1;    // leaf: variable index, or -1 for constant c
  std::vector<Tree> kids;
  std::vector<int64_t> set;  // for "in"
};
std::string to_text(const Tree& t, const std::vector<std::string>& names);
// nullopt on an evaluation error (division by zero, negative exponent);
// and/or/imp/if evaluate left to right and stop early
std::optional<int64_t> eval(const Tree& t, const Vals& x);

}  // namespace oracle
