#include "xcsp3kit/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace xcsp3kit {

const char* to_string(SearchConfig::Mode m) {
  switch (m) {
    case SearchConfig::Mode::FindOne: return "find-one";
    case SearchConfig::Mode::Count: return "count";
    case SearchConfig::Mode::Optimize: return "optimize";
  }
  return "?";
}

const char* to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Sat: return "SAT";
    case SolveResult::Status::Unsat: return "UNSAT";
    case SolveResult::Status::Optimum: return "OPTIMUM";
    case SolveResult::Status::BudgetExhausted: return "BUDGET-EXHAUSTED";
  }
  return "?";
}

double search_space(const Instance& inst) {
  double s = 1;
  for (const auto& v : inst.vars) {
    auto n = v.domain.size();
    if (!n) return INFINITY;
    s *= static_cast<double>(*n);
  }
  return s;
}

std::optional<int64_t> cost_of(const Instance& inst, const std::vector<ObjectiveValue>& values) {
  if (values.empty() || values.size() != inst.objectives.size()) return std::nullopt;
  if (values.size() > 1 && inst.combination == Combination::Pareto) return std::nullopt;
  if (values.front().is_tuple) return std::nullopt;
  return values.front().scalar;
}

int compare_objectives(const Instance& inst, const std::vector<ObjectiveValue>& a,
                       const std::vector<ObjectiveValue>& b) {
  for (size_t i = 0; i < inst.objectives.size() && i < a.size() && i < b.size(); ++i) {
    int dir = inst.objectives[i].minimize ? 1 : -1;
    int c = 0;
    if (a[i].is_tuple) c = a[i].tuple < b[i].tuple ? -1 : (a[i].tuple == b[i].tuple ? 0 : 1);
    else c = a[i].scalar < b[i].scalar ? -1 : (a[i].scalar == b[i].scalar ? 0 : 1);
    if (c) return c * dir;
  }
  return 0;
}

namespace {

using Clock = std::chrono::steady_clock;

class Search {
 public:
  Search(const Instance& inst, const SearchConfig& cfg) : inst_(inst), cfg_(cfg), a_(inst.vars.size()) {}

  SolveResult run() {
    const size_t n = inst_.vars.size();
    for (const auto& v : inst_.vars)
      if (!v.domain.finite())
        fail(ErrorKind::Unsupported, "unbounded-domain", "unbounded domain for variable " + v.name);
    if (cfg_.mode == SearchConfig::Mode::Optimize) {
      if (inst_.objectives.empty())
        fail(ErrorKind::Structure, "no-objective", "optimize mode needs an objective");
      if (inst_.objectives.size() > 1 && inst_.combination == Combination::Pareto)
        fail(ErrorKind::Unsupported, "pareto", "pareto optimization");
      setup_bound();
    }
    if (cfg_.better_than && (inst_.objectives.size() != 1 || inst_.objectives[0].form == ObjectiveForm::Lex))
      fail(ErrorKind::Structure, "cost-cap", "a cost cap needs a single scalar objective");
    for (const auto& v : inst_.vars)
      if (v.domain.empty()) {
        res_.notes.push_back("empty domain for variable " + v.name);
        res_.status = SolveResult::Status::Unsat;
        return std::move(res_);
      }

    by_depth_.assign(n + 1, {});
    for (const auto& c : inst_.constraints) schedule(c);

    deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg_.time_budget));
    if (consistent(0)) dfs(0);

    switch (cfg_.mode) {
      case SearchConfig::Mode::FindOne:
        res_.status = res_.solution_count ? SolveResult::Status::Sat
                      : exhausted_        ? SolveResult::Status::BudgetExhausted
                                          : SolveResult::Status::Unsat;
        break;
      case SearchConfig::Mode::Count:
        res_.status = exhausted_ ? SolveResult::Status::BudgetExhausted
                      : res_.solution_count ? SolveResult::Status::Sat
                                            : SolveResult::Status::Unsat;
        break;
      case SearchConfig::Mode::Optimize:
        res_.status = exhausted_   ? SolveResult::Status::BudgetExhausted
                      : have_best_ ? SolveResult::Status::Optimum
                                   : SolveResult::Status::Unsat;
        if (have_best_) {
          res_.objective = best_;
          res_.cost = cost_of(inst_, best_);
        }
        res_.branch_and_bound = bnb_;
        if (!bnb_) res_.notes.push_back("no bound for this objective, search was exhaustive");
        break;
    }
    if (exhausted_) res_.notes.push_back(timed_out_ ? "time budget exhausted" : "node budget exhausted");
    if (objective_errors_) res_.notes.push_back("objective could not be evaluated on some solutions");
    return std::move(res_);
  }

 private:
  void schedule(const Constraint& c) {
    if (const auto* s = std::get_if<SlideC>(&c.payload)) {
      for (const auto& w : s->windows) schedule(w);
      return;
    }
    size_t depth = c.scope.empty() ? 0 : static_cast<size_t>(c.scope.back()) + 1;
    by_depth_[depth].push_back(&c);
  }

  bool consistent(size_t depth) {
    for (const Constraint* c : by_depth_[depth]) {
      try {
        if (!check_constraint(*c, a_)) return false;
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  }

  void setup_bound() {
    if (inst_.objectives.size() != 1) return;
    const Objective& o = inst_.objectives[0];
    if (o.form != ObjectiveForm::Sum && o.form != ObjectiveForm::Minimum && o.form != ObjectiveForm::Maximum) return;
    for (const auto& t : o.list)
      if (t->kind != Expr::Kind::Var || t->var < 0) return;
    bnb_ = true;
  }

  // optimistic value of the objective given variables below depth
  bool promising(size_t depth) {
    if (!bnb_ || !have_best_) return true;
    const Objective& o = inst_.objectives[0];
    try {
      int64_t acc = 0;
      bool first = true;
      for (size_t i = 0; i < o.list.size(); ++i) {
        VarId x = o.list[i]->var;
        int64_t c = o.coeffs.empty() ? 1 : o.coeffs[i];
        int64_t v;
        if (static_cast<size_t>(x) < depth) {
          v = checked_mul(c, a_[x]);
        } else {
          const Domain& d = inst_.vars[static_cast<size_t>(x)].domain;
          int64_t p = checked_mul(c, d.min()), q = checked_mul(c, d.max());
          v = o.minimize ? std::min(p, q) : std::max(p, q);
        }
        if (o.form == ObjectiveForm::Sum) acc = checked_add(acc, v);
        else if (first) acc = v;
        else acc = o.form == ObjectiveForm::Minimum ? std::min(acc, v) : std::max(acc, v);
        first = false;
      }
      int64_t best = best_[0].scalar;
      return o.minimize ? acc < best : acc > best;
    } catch (const Error&) {
      return true;
    }
  }

  bool out_of_budget() {
    if (++res_.nodes > cfg_.node_budget) {
      exhausted_ = stop_ = true;
      return true;
    }
    if ((res_.nodes & 4095) == 0 && Clock::now() > deadline_) {
      exhausted_ = stop_ = timed_out_ = true;
      return true;
    }
    return false;
  }

  void dfs(size_t depth) {
    if (depth == inst_.vars.size()) {
      leaf();
      return;
    }
    VarId x = static_cast<VarId>(depth);
    for (const auto& r : inst_.vars[depth].domain.ranges()) {
      for (int64_t v = r.lo;; ++v) {
        if (out_of_budget()) return;
        a_.set(x, v);
        if (consistent(depth + 1) && promising(depth + 1)) dfs(depth + 1);
        if (stop_) return;
        if (v == r.hi) break;
      }
    }
    a_.unset(x);
  }

  void leaf() {
    switch (cfg_.mode) {
      case SearchConfig::Mode::FindOne:
        res_.solution_count = 1;
        res_.witnesses.push_back(a_);
        stop_ = true;
        return;
      case SearchConfig::Mode::Count:
        if (cfg_.better_than) {
          try {
            int64_t v = eval_objective(inst_.objectives[0], a_).scalar;
            bool better = inst_.objectives[0].minimize ? v < *cfg_.better_than : v > *cfg_.better_than;
            if (!better) return;
          } catch (const Error&) {
            ++objective_errors_;
            return;
          }
        }
        ++res_.solution_count;
        if (res_.witnesses.size() < cfg_.keep_witnesses) res_.witnesses.push_back(a_);
        if (res_.solution_count >= cfg_.count_limit) stop_ = true;
        return;
      case SearchConfig::Mode::Optimize: {
        std::vector<ObjectiveValue> vals;
        try {
          for (const auto& o : inst_.objectives) vals.push_back(eval_objective(o, a_));
        } catch (const Error&) {
          ++objective_errors_;
          return;
        }
        ++res_.solution_count;
        if (!have_best_ || compare_objectives(inst_, vals, best_) < 0) {
          best_ = std::move(vals);
          have_best_ = true;
          res_.witnesses.assign(1, a_);
        }
        return;
      }
    }
  }

  const Instance& inst_;
  SearchConfig cfg_;
  Assignment a_;
  SolveResult res_;
  std::vector<std::vector<const Constraint*>> by_depth_;
  Clock::time_point deadline_;
  bool stop_ = false, exhausted_ = false, timed_out_ = false;
  bool bnb_ = false, have_best_ = false;
  std::vector<ObjectiveValue> best_;
  uint64_t objective_errors_ = 0;
};

}  // namespace

SolveResult solve(const Instance& inst, const SearchConfig& cfg) { return Search(inst, cfg).run(); }

uint64_t count_solutions(const Instance& inst, uint64_t limit) {
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::Count;
  cfg.count_limit = limit;
  cfg.keep_witnesses = 0;
  SolveResult r = solve(inst, cfg);
  if (r.status == SolveResult::Status::BudgetExhausted)
    fail(ErrorKind::Evaluation, "budget", "search budget exhausted while counting");
  return r.solution_count;
}

SolveResult prove_optimality(const Instance& inst, const SearchConfig& cfg) {
  SearchConfig c = cfg;
  c.mode = SearchConfig::Mode::Optimize;
  return solve(inst, c);
}

std::string witness_xml(const Instance& inst, const Assignment& a, const SolveResult& r) {
  std::vector<ObjectiveValue> vals;
  try {
    for (const auto& o : inst.objectives) vals.push_back(eval_objective(o, a));
  } catch (const Error&) {
    vals.clear();
  }
  std::optional<int64_t> cost = cost_of(inst, vals);
  std::ostringstream out;
  out << "<instantiation type=\"" << (r.status == SolveResult::Status::Optimum ? "optimum" : "solution") << "\"";
  if (cost) out << " cost=\"" << *cost << "\"";
  out << ">\n  <list>";
  for (size_t i = 0; i < inst.vars.size(); ++i)
    if (a.has(static_cast<VarId>(i))) out << ' ' << inst.vars[i].name;
  out << " </list>\n  <values>";
  for (size_t i = 0; i < inst.vars.size(); ++i)
    if (a.has(static_cast<VarId>(i))) out << ' ' << a[static_cast<VarId>(i)];
  out << " </values>\n</instantiation>\n";
  return out.str();
}

}  // namespace xcsp3kit
