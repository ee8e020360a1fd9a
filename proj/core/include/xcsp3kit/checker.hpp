#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xcsp3kit/model.hpp"
#include "xcsp3kit/semantics.hpp"

namespace xcsp3kit {

struct Binding {
  std::string name;  // as written, one cell
  VarId var = -1;
  std::optional<int64_t> value;  // nullopt is '*'
};

struct SolutionDoc {
  enum class Type { Solution, Optimum };
  Type type = Type::Solution;
  std::optional<int64_t> cost;
  std::vector<Binding> bindings;
  Location location;
};

SolutionDoc parse_solution(const RawElement& doc, const Instance& inst);
SolutionDoc parse_solution_text(std::string_view xml, const Instance& inst);
SolutionDoc parse_solution_file(const std::string& path, const Instance& inst);

struct BoundAssignment {
  Assignment assignment;
  std::vector<VarId> ignored;  // useless variables omitted or starred
};

// throws when a useful variable is missing or starred
BoundAssignment bind_assignment(const SolutionDoc& sol, const Instance& inst);

// integer for every form except lex, which yields a tuple
struct ObjectiveValue {
  bool is_tuple = false;
  int64_t scalar = 0;
  std::vector<int64_t> tuple;
  std::string to_string() const;
  bool operator==(const ObjectiveValue&) const = default;
};

ObjectiveValue eval_objective(const Objective& obj, const Assignment& a);

struct CostCheck {
  enum class Status { NotApplicable, Match, Mismatch, Refused };
  Status status = Status::NotApplicable;
  std::optional<int64_t> expected;  // computed from the assignment
  std::optional<int64_t> declared;
  std::string reason;
};

const char* to_string(CostCheck::Status s);

// throws for a cost on a satisfaction instance
CostCheck verify_cost(const SolutionDoc& sol, const Instance& inst, const Assignment& a);

struct ConstraintResult {
  enum class Status { Sat, Violated };
  std::string provenance;
  std::string kind;
  Status status = Status::Sat;
  std::string detail;  // evaluation error, if any
};

struct Verdict {
  enum class AssignmentStatus { Complete, MissingVars, OutOfDomain };
  enum class Optimality { NotApplicable, Proved, Refuted, Unverified };

  AssignmentStatus assignment_status = AssignmentStatus::Complete;
  std::vector<std::string> var_issues;
  std::vector<ConstraintResult> per_constraint;
  std::vector<ObjectiveValue> objective_values;
  CostCheck cost;
  Optimality optimality = Optimality::NotApplicable;
  std::optional<ObjectiveValue> best_known;  // filled when refuted
  std::vector<std::string> ignored;  // names of useless variables left out

  size_t violations() const;
  bool accepted() const;
};

const char* to_string(Verdict::AssignmentStatus s);
const char* to_string(Verdict::Optimality o);

// domain membership of every bound variable, then every constraint
Verdict check_solution(const Instance& inst, const Assignment& a);

struct CertifyOptions {
  bool prove_optimality = true;
  // largest product of domain sizes for which optimality is searched
  double optimality_space = 1e6;
};

// the whole pipeline; a binding failure becomes MissingVars
Verdict certify(const Instance& inst, const SolutionDoc& sol, const CertifyOptions& opts = {});

}  // namespace xcsp3kit
