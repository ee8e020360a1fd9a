#include "xcsp3kit/checker.hpp"

#include <algorithm>
#include <set>

#include "xcsp3kit/solver.hpp"

namespace xcsp3kit {

namespace {

[[noreturn]] void structure(std::string code, std::string msg, Location loc = {}) {
  fail(ErrorKind::Structure, std::move(code), std::move(msg), loc);
}

}  // namespace

SolutionDoc parse_solution(const RawElement& doc, const Instance& inst) {
  if (doc.name != "instantiation")
    structure("not-instantiation", "expected <instantiation>, found <" + doc.name + ">", doc.location);
  SolutionDoc sol;
  sol.location = doc.location;
  if (const std::string* t = doc.attr("type")) {
    if (*t == "solution") sol.type = SolutionDoc::Type::Solution;
    else if (*t == "optimum") sol.type = SolutionDoc::Type::Optimum;
    else structure("solution-type", "instantiation type must be solution or optimum, not '" + *t + "'", doc.location);
  }
  if (const std::string* c = doc.attr("cost")) {
    try {
      sol.cost = parse_integer(*c);
    } catch (const Error& e) {
      throw e.at(doc.location);
    }
  }
  if (sol.type == SolutionDoc::Type::Optimum && !sol.cost)
    structure("missing-cost", "an optimum instantiation needs a cost", doc.location);

  const RawElement* list = doc.child("list");
  const RawElement* values = doc.child("values");
  if (!list || !values) structure("instantiation", "<instantiation> needs <list> and <values>", doc.location);
  for (const auto& c : doc.children)
    if (c.name != "list" && c.name != "values")
      structure("instantiation", "unexpected <" + c.name + "> in <instantiation>", c.location);

  std::vector<VarId> vars;
  try {
    for (auto tok : split_ws(list->text)) {
      auto xs = inst.expand(tok);
      vars.insert(vars.end(), xs.begin(), xs.end());
    }
  } catch (const Error& e) {
    throw e.at(list->location);
  }
  std::vector<std::optional<int64_t>> vals;
  try {
    for (auto tok : split_ws(values->text)) {
      if (tok == "*") vals.emplace_back();
      else vals.emplace_back(parse_integer(tok));
    }
  } catch (const Error& e) {
    throw e.at(values->location);
  }
  if (vars.size() != vals.size())
    structure("length-mismatch",
              "<list> has " + std::to_string(vars.size()) + " variables but <values> has " +
                  std::to_string(vals.size()) + " values",
              values->location);
  std::set<VarId> seen;
  for (size_t i = 0; i < vars.size(); ++i) {
    const std::string& name = inst.vars[static_cast<size_t>(vars[i])].name;
    if (!seen.insert(vars[i]).second)
      structure("duplicate-variable", "variable " + name + " occurs several times", list->location);
    sol.bindings.push_back({name, vars[i], vals[i]});
  }
  return sol;
}

SolutionDoc parse_solution_text(std::string_view xml, const Instance& inst) {
  return parse_solution(load_document(xml), inst);
}

SolutionDoc parse_solution_file(const std::string& path, const Instance& inst) {
  return parse_solution(load_file(path), inst);
}

BoundAssignment bind_assignment(const SolutionDoc& sol, const Instance& inst) {
  BoundAssignment out{Assignment(inst.vars.size()), {}};
  std::vector<char> starred(inst.vars.size(), 0);
  for (const auto& b : sol.bindings) {
    if (b.var < 0 || static_cast<size_t>(b.var) >= inst.vars.size())
      structure("unknown-variable", "binding to unknown variable " + b.name, sol.location);
    if (b.value) out.assignment.set(b.var, *b.value);
    else starred[static_cast<size_t>(b.var)] = 1;
  }
  std::vector<std::string> missing, stars;
  for (size_t i = 0; i < inst.vars.size(); ++i) {
    VarId x = static_cast<VarId>(i);
    if (out.assignment.has(x)) continue;
    if (!inst.useful[i]) {
      out.ignored.push_back(x);
      continue;
    }
    (starred[i] ? stars : missing).push_back(inst.vars[i].name);
  }
  auto names = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size() && i < 8; ++i) s += (i ? " " : "") + v[i];
    if (v.size() > 8) s += " ...";
    return s;
  };
  if (!stars.empty()) structure("star-on-useful", "'*' given for useful variable(s): " + names(stars), sol.location);
  if (!missing.empty()) structure("missing-variable", "no value for useful variable(s): " + names(missing), sol.location);
  return out;
}

std::string ObjectiveValue::to_string() const {
  if (!is_tuple) return std::to_string(scalar);
  std::string s = "(";
  for (size_t i = 0; i < tuple.size(); ++i) s += (i ? "," : "") + std::to_string(tuple[i]);
  return s + ")";
}

ObjectiveValue eval_objective(const Objective& obj, const Assignment& a) {
  ObjectiveValue r;
  if (obj.form == ObjectiveForm::Expression) {
    r.scalar = eval_expression(*obj.expr, a);
    return r;
  }
  std::vector<int64_t> v;
  for (size_t i = 0; i < obj.list.size(); ++i) {
    int64_t c = obj.coeffs.empty() ? 1 : obj.coeffs[i];
    v.push_back(checked_mul(c, eval_expression(*obj.list[i], a)));
  }
  switch (obj.form) {
    case ObjectiveForm::Sum:
      r.scalar = 0;
      for (int64_t x : v) r.scalar = checked_add(r.scalar, x);
      break;
    case ObjectiveForm::Product:
      r.scalar = 1;
      for (int64_t x : v) r.scalar = checked_mul(r.scalar, x);
      break;
    case ObjectiveForm::Minimum: r.scalar = *std::min_element(v.begin(), v.end()); break;
    case ObjectiveForm::Maximum: r.scalar = *std::max_element(v.begin(), v.end()); break;
    case ObjectiveForm::NValues: r.scalar = static_cast<int64_t>(std::set<int64_t>(v.begin(), v.end()).size()); break;
    case ObjectiveForm::Lex:
      r.is_tuple = true;
      r.tuple = v;
      break;
    case ObjectiveForm::Expression: break;
  }
  return r;
}

const char* to_string(CostCheck::Status s) {
  switch (s) {
    case CostCheck::Status::NotApplicable: return "n/a";
    case CostCheck::Status::Match: return "match";
    case CostCheck::Status::Mismatch: return "mismatch";
    case CostCheck::Status::Refused: return "refused";
  }
  return "?";
}

CostCheck verify_cost(const SolutionDoc& sol, const Instance& inst, const Assignment& a) {
  CostCheck r;
  if (!sol.cost) return r;
  r.declared = sol.cost;
  if (inst.framework != Framework::COP || inst.objectives.empty())
    structure("cost-on-csp", "a cost is given but the instance has no objective", sol.location);
  if (inst.objectives.size() > 1 && inst.combination == Combination::Pareto) {
    r.status = CostCheck::Status::Refused;
    r.reason = "no cost encoding is defined for pareto combinations";
    return r;
  }
  // lexico: the cost is read as the value of the first objective
  ObjectiveValue v = eval_objective(inst.objectives.front(), a);
  if (v.is_tuple) {
    r.status = CostCheck::Status::Refused;
    r.reason = "a lex objective has no single cost";
    return r;
  }
  r.expected = v.scalar;
  r.status = v.scalar == *sol.cost ? CostCheck::Status::Match : CostCheck::Status::Mismatch;
  return r;
}

size_t Verdict::violations() const {
  return static_cast<size_t>(std::count_if(per_constraint.begin(), per_constraint.end(), [](const ConstraintResult& c) {
    return c.status == ConstraintResult::Status::Violated;
  }));
}

bool Verdict::accepted() const {
  return assignment_status == AssignmentStatus::Complete && violations() == 0 &&
         (cost.status == CostCheck::Status::NotApplicable || cost.status == CostCheck::Status::Match) &&
         optimality != Optimality::Refuted;
}

const char* to_string(Verdict::AssignmentStatus s) {
  switch (s) {
    case Verdict::AssignmentStatus::Complete: return "complete";
    case Verdict::AssignmentStatus::MissingVars: return "missing-vars";
    case Verdict::AssignmentStatus::OutOfDomain: return "out-of-domain";
  }
  return "?";
}

const char* to_string(Verdict::Optimality o) {
  switch (o) {
    case Verdict::Optimality::NotApplicable: return "n/a";
    case Verdict::Optimality::Proved: return "proved";
    case Verdict::Optimality::Refuted: return "refuted";
    case Verdict::Optimality::Unverified: return "unverified";
  }
  return "?";
}

Verdict check_solution(const Instance& inst, const Assignment& a) {
  Verdict v;
  for (size_t i = 0; i < inst.vars.size(); ++i) {
    VarId x = static_cast<VarId>(i);
    const Variable& var = inst.vars[i];
    if (!a.has(x)) {
      if (inst.useful[i]) {
        v.assignment_status = Verdict::AssignmentStatus::MissingVars;
        v.var_issues.push_back(var.name + " has no value");
      }
      continue;
    }
    if (!var.domain.contains(a[x])) {
      if (v.assignment_status == Verdict::AssignmentStatus::Complete)
        v.assignment_status = Verdict::AssignmentStatus::OutOfDomain;
      v.var_issues.push_back(var.name + "=" + std::to_string(a[x]) + " is not in " + var.domain.to_string());
    }
  }
  for (const auto& c : inst.constraints) {
    ConstraintResult r{c.provenance, kind_label(c.kind), ConstraintResult::Status::Sat, {}};
    bool bound = std::all_of(c.scope.begin(), c.scope.end(), [&](VarId x) { return a.has(x); });
    if (!bound) {
      r.status = ConstraintResult::Status::Violated;
      r.detail = "scope not fully assigned";
    } else {
      try {
        if (!check_constraint(c, a)) r.status = ConstraintResult::Status::Violated;
      } catch (const Error& e) {
        r.status = ConstraintResult::Status::Violated;
        r.detail = e.message();
      }
    }
    v.per_constraint.push_back(std::move(r));
  }
  for (const auto& o : inst.objectives) {
    try {
      v.objective_values.push_back(eval_objective(o, a));
    } catch (const Error&) {
      v.objective_values.clear();
      break;
    }
  }
  return v;
}

Verdict certify(const Instance& inst, const SolutionDoc& sol, const CertifyOptions& opts) {
  BoundAssignment b;
  try {
    b = bind_assignment(sol, inst);
  } catch (const Error& e) {
    Verdict v;
    v.assignment_status = Verdict::AssignmentStatus::MissingVars;
    v.var_issues.push_back(e.message());
    return v;
  }
  Verdict v = check_solution(inst, b.assignment);
  for (VarId x : b.ignored) v.ignored.push_back(inst.vars[static_cast<size_t>(x)].name);
  try {
    v.cost = verify_cost(sol, inst, b.assignment);
  } catch (const Error& e) {
    v.cost.status = CostCheck::Status::Refused;
    v.cost.declared = sol.cost;
    v.cost.reason = e.message();
  }
  if (sol.type != SolutionDoc::Type::Optimum || inst.framework != Framework::COP) return v;
  v.optimality = Verdict::Optimality::Unverified;
  if (!opts.prove_optimality || !v.accepted() || v.objective_values.size() != inst.objectives.size()) return v;
  if (inst.objectives.size() > 1 && inst.combination == Combination::Pareto) return v;
  if (search_space(inst) > opts.optimality_space) return v;
  try {
    SolveResult r = prove_optimality(inst);
    if (r.status != SolveResult::Status::Optimum) return v;
    if (compare_objectives(inst, r.objective, v.objective_values) < 0) {
      v.optimality = Verdict::Optimality::Refuted;
      v.best_known = r.objective.front();
    } else {
      v.optimality = Verdict::Optimality::Proved;
    }
  } catch (const Error&) {
    // leave it unverified
  }
  return v;
}

}  // namespace xcsp3kit
