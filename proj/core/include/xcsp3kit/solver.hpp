#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "xcsp3kit/checker.hpp"
#include "xcsp3kit/model.hpp"
#include "xcsp3kit/semantics.hpp"

namespace xcsp3kit {

struct SearchConfig {
  enum class Mode { FindOne, Count, Optimize };
  Mode mode = Mode::FindOne;
  uint64_t count_limit = std::numeric_limits<uint64_t>::max();
  uint64_t node_budget = 2'000'000'000ULL;
  double time_budget = 60.0;  // seconds
  size_t keep_witnesses = 1;  // count mode
  // count mode: only solutions whose (single, scalar) objective is strictly
  // better than this value are counted
  std::optional<int64_t> better_than;
};

const char* to_string(SearchConfig::Mode m);

struct SolveResult {
  enum class Status { Sat, Unsat, Optimum, BudgetExhausted };
  Status status = Status::Unsat;
  std::vector<Assignment> witnesses;
  uint64_t solution_count = 0;
  uint64_t nodes = 0;
  std::vector<ObjectiveValue> objective;  // optimize mode, one per objective
  std::optional<int64_t> cost;            // what a cost attribute would carry
  bool branch_and_bound = false;
  std::vector<std::string> notes;
};

const char* to_string(SolveResult::Status s);

// Chronological backtracking, declaration order, ascending values. Throws
// Unsupported "unbounded-domain" when a domain is infinite.
SolveResult solve(const Instance& inst, const SearchConfig& cfg = {});
uint64_t count_solutions(const Instance& inst, uint64_t limit = std::numeric_limits<uint64_t>::max());
SolveResult prove_optimality(const Instance& inst, const SearchConfig& cfg = {});

// product of all domain sizes, +inf when some domain is infinite
double search_space(const Instance& inst);

// the cost attribute value for an objective vector, if one is defined
std::optional<int64_t> cost_of(const Instance& inst, const std::vector<ObjectiveValue>& values);

// <instantiation> text for a witness
std::string witness_xml(const Instance& inst, const Assignment& a, const SolveResult& r);

}  // namespace xcsp3kit

namespace xcsp3kit {

// <0 when a is strictly better than b under the instance's objectives and
// lexico combination, 0 when tied, >0 when worse
int compare_objectives(const Instance& inst, const std::vector<ObjectiveValue>& a,
                       const std::vector<ObjectiveValue>& b);

}  // namespace xcsp3kit
