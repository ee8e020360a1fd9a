#include "cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xcsp3kit/xcsp3kit.hpp"

namespace xcsp3kit::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Style {
  bool color = false;
  std::string paint(const std::string& s, const char* code) const {
    return color ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
  }
  std::string error() const { return paint("error:", "1;31"); }
  std::string warning() const { return paint("warning:", "1;33"); }
};

Style style_for(std::ostream& err) {
  const char* env = std::getenv("XCSP3KIT_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return {true};
  if (mode == "never") return {false};
  return {&err == &std::cerr && isatty(STDERR_FILENO)};
}

int exit_for(const Error& e) {
  if (e.kind() == ErrorKind::Unsupported || e.code() == "io") return kUsage;
  if (e.code() == "budget") return kInternal;
  return kReject;
}

std::string where(const std::string& path, const Location& loc) {
  std::string s = path + ":";
  if (loc.known()) s += std::to_string(loc.line) + ":" + std::to_string(loc.column) + ":";
  return s;
}

std::string diagnostic_line(const Style& st, const std::string& path, const Error& e) {
  return where(path, e.location()) + " " + st.error() + " " + (e.kind() == ErrorKind::Unsupported ? "unsupported feature: " : "") +
         e.message() + " [" + e.code() + "]\n";
}

void warnings_to(std::ostream& err, const Style& st, const std::string& path, const Warnings& ws) {
  for (const auto& w : ws) err << where(path, w.location) << " " << st.warning() << " " << w.message << " [" << w.code << "]\n";
}

Json error_json(const Error& e) {
  Json j;
  j["kind"] = kind_name(e.kind());
  j["code"] = e.code();
  j["message"] = e.message();
  if (e.location().known()) j["location"] = {{"line", e.location().line}, {"column", e.location().column}};
  return j;
}

bool write_report(const std::string& path, const Json& j, std::ostream& err) {
  if (path.empty()) return true;
  std::ofstream f(path);
  if (!f) {
    err << "cannot write report " << path << "\n";
    return false;
  }
  f << j.dump(2) << "\n";
  return true;
}

// constraint tags under <constraints>, looking through blocks, groups and slides
void scan_tags(const RawElement& e, std::map<std::string, int>& tags) {
  for (const auto& c : e.children) {
    if (c.name == "args" || c.name == "list" || c.name == "supports" || c.name == "conflicts") continue;
    if (c.name == "block" || c.name == "group" || c.name == "slide") {
      ++tags[c.name];
      scan_tags(c, tags);
    } else if (is_out_of_scope_constraint(c.name) || c.name == "intension" || c.name == "extension" ||
               c.name == "regular" || c.name == "mdd" || c.name == "allDifferent" || c.name == "allEqual" ||
               c.name == "ordered" || c.name == "lex" || c.name == "sum" || c.name == "count" ||
               c.name == "nValues" || c.name == "cardinality" || c.name == "maximum" || c.name == "minimum" ||
               c.name == "element" || c.name == "channel" || c.name == "noOverlap" || c.name == "cumulative" ||
               c.name == "circuit" || c.name == "instantiation") {
      ++tags[c.name];
    }
  }
}

std::string join_counts(const std::map<std::string, int>& m) {
  std::string s;
  for (const auto& [k, n] : m) s += (s.empty() ? "" : ", ") + k + "×" + std::to_string(n);
  return s;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::vector<std::string> files;
  std::vector<std::string> drop;
  bool warn_order = false;
  std::string report;
};

struct FileReport {
  std::string out, err;
  int code = kOk;
  Json json;
};

FileReport validate_one(const std::string& path, const ValidateArgs& args, const Style& st) {
  FileReport r;
  std::ostringstream out, err;
  r.json["file"] = path;
  std::map<std::string, int> tags;
  try {
    RawElement raw = load_file(path);
    for (const auto& c : raw.children)
      if (c.name == "constraints") scan_tags(c, tags);
    BuildOptions opts;
    opts.drop_classes = args.drop;
    opts.tuple_order = args.warn_order ? OrderPolicy::Warn : OrderPolicy::Error;
    Instance inst = build_instance(validate_skeleton(resolve_aliases(raw)), opts);
    std::map<std::string, int> kinds;
    for (const auto& c : inst.constraints) ++kinds[kind_name(c.kind)];
    size_t useful = static_cast<size_t>(std::count(inst.useful.begin(), inst.useful.end(), true));
    out << path << ": valid " << (inst.framework == Framework::COP ? "COP" : "CSP") << "\n";
    out << "  " << inst.constraints.size() << " constraints after expansion";
    if (!kinds.empty()) out << ": " << join_counts(kinds);
    out << "\n  " << inst.vars.size() << " variables, " << useful << " useful\n";
    if (!inst.objectives.empty()) {
      out << "  objectives:";
      for (const auto& o : inst.objectives) out << ' ' << (o.minimize ? "minimize" : "maximize") << '(' << form_name(o.form) << ')';
      if (inst.objectives.size() > 1) out << ' ' << (inst.combination == Combination::Lexico ? "lexico" : "pareto");
      out << "\n";
    }
    warnings_to(err, st, path, inst.warnings);
    r.json["status"] = "valid";
    r.json["framework"] = inst.framework == Framework::COP ? "COP" : "CSP";
    r.json["constraints"] = inst.constraints.size();
    r.json["kinds"] = kinds;
    r.json["variables"] = inst.vars.size();
    r.json["useful"] = useful;
    Json ws = Json::array();
    for (const auto& w : inst.warnings) ws.push_back({{"code", w.code}, {"message", w.message}});
    r.json["warnings"] = ws;
  } catch (const Error& e) {
    r.code = exit_for(e);
    const char* status = e.kind() == ErrorKind::Unsupported ? "unsupported" : (e.code() == "io" ? "unreadable" : "invalid");
    out << path << ": " << status << "\n";
    err << diagnostic_line(st, path, e);
    r.json["status"] = status;
    r.json["error"] = error_json(e);
  }
  if (!tags.empty()) {
    std::map<std::string, int> rejected;
    for (const auto& [k, n] : tags)
      if (is_out_of_scope_constraint(k)) rejected[k] = n;
    out << "  tags: " << join_counts(tags) << "\n";
    if (!rejected.empty()) out << "  out of scope: " << join_counts(rejected) << "\n";
    r.json["tags"] = tags;
  }
  r.out = out.str();
  r.err = err.str();
  return r;
}

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err, const Style& st) {
  std::vector<std::future<FileReport>> jobs;
  for (const auto& f : args.files) jobs.push_back(std::async(std::launch::async, validate_one, f, std::cref(args), std::cref(st)));
  int code = kOk;
  Json all = Json::array();
  for (auto& j : jobs) {
    FileReport r = j.get();
    out << r.out;
    err << r.err;
    code = std::max(code, r.code);
    all.push_back(std::move(r.json));
  }
  if (!write_report(args.report, all, err)) return kInternal;
  return code;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string instance, solution, report;
  bool no_optimality = false;
  double space = 1e6;
};

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err, const Style& st) {
  Instance inst;
  try {
    inst = load_instance_file(args.instance);
  } catch (const Error& e) {
    err << diagnostic_line(st, args.instance, e);
    out << "status: error\n";
    return exit_for(e);
  }
  warnings_to(err, st, args.instance, inst.warnings);
  SolutionDoc sol;
  try {
    sol = parse_solution_file(args.solution, inst);
  } catch (const Error& e) {
    err << diagnostic_line(st, args.solution, e);
    out << "status: reject\n";
    return e.code() == "io" ? kUsage : kReject;
  }
  CertifyOptions co;
  co.prove_optimality = !args.no_optimality;
  co.optimality_space = args.space;
  Verdict v = certify(inst, sol, co);

  Json j;
  out << "status: " << (v.accepted() ? "accept" : "reject") << "\n";
  out << "assignment: " << to_string(v.assignment_status) << "\n";
  for (const auto& s : v.var_issues) out << "  " << s << "\n";
  size_t violated = v.violations();
  out << "constraints: " << v.per_constraint.size() - violated << " sat, " << violated << " violated\n";
  Json pc = Json::array();
  for (const auto& c : v.per_constraint) {
    bool ok = c.status == ConstraintResult::Status::Sat;
    if (!ok) {
      out << "violated: " << c.provenance << " (" << c.kind << ")";
      if (!c.detail.empty()) out << " " << c.detail;
      out << "\n";
    }
    pc.push_back({{"id", c.provenance}, {"kind", c.kind}, {"status", ok ? "sat" : "violated"}});
  }
  Json objv = Json::array();
  if (!v.objective_values.empty()) {
    out << "objective:";
    for (const auto& o : v.objective_values) {
      out << ' ' << o.to_string();
      objv.push_back(o.to_string());
    }
    out << "\n";
  }
  out << "cost: " << to_string(v.cost.status);
  switch (v.cost.status) {
    case CostCheck::Status::Match: out << ' ' << *v.cost.expected; break;
    case CostCheck::Status::Mismatch: out << " expected " << *v.cost.expected << " declared " << *v.cost.declared; break;
    case CostCheck::Status::Refused: out << ' ' << v.cost.reason; break;
    case CostCheck::Status::NotApplicable: break;
  }
  out << "\n";
  if (v.optimality != Verdict::Optimality::NotApplicable) {
    out << "optimality: " << to_string(v.optimality);
    if (v.best_known) out << " (better: " << v.best_known->to_string() << ")";
    out << "\n";
  }
  if (!v.ignored.empty()) {
    out << "useless ignored:";
    for (const auto& n : v.ignored) out << ' ' << n;
    out << "\n";
  }
  j["status"] = v.accepted() ? "accept" : "reject";
  j["assignment"] = to_string(v.assignment_status);
  j["issues"] = v.var_issues;
  j["constraints"] = pc;
  j["objective"] = objv;
  j["cost"] = {{"status", to_string(v.cost.status)}};
  if (v.cost.expected) j["cost"]["expected"] = *v.cost.expected;
  if (v.cost.declared) j["cost"]["declared"] = *v.cost.declared;
  j["optimality"] = to_string(v.optimality);
  j["ignored"] = v.ignored;
  if (!write_report(args.report, j, err)) return kInternal;
  return v.accepted() ? kOk : kReject;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string instance, mode = "one", report;
  uint64_t limit = 0, nodes = 0;
  double seconds = 60;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err, const Style& st) {
  Instance inst;
  SolveResult r;
  SearchConfig cfg;
  if (args.mode == "one" || args.mode == "find-one") cfg.mode = SearchConfig::Mode::FindOne;
  else if (args.mode == "count" || args.mode == "count-all") cfg.mode = SearchConfig::Mode::Count;
  else cfg.mode = SearchConfig::Mode::Optimize;
  if (args.limit) cfg.count_limit = args.limit;
  if (args.nodes) cfg.node_budget = args.nodes;
  cfg.time_budget = args.seconds;
  try {
    inst = load_instance_file(args.instance);
    warnings_to(err, st, args.instance, inst.warnings);
    r = solve(inst, cfg);
  } catch (const Error& e) {
    err << diagnostic_line(st, args.instance, e);
    return exit_for(e);
  }
  out << "<!-- status: " << to_string(r.status) << " -->\n";
  if (cfg.mode == SearchConfig::Mode::Count) out << "<!-- count: " << r.solution_count << " -->\n";
  if (r.cost) out << "<!-- cost: " << *r.cost << " -->\n";
  else if (!r.objective.empty()) {
    out << "<!-- objective:";
    for (const auto& o : r.objective) out << ' ' << o.to_string();
    out << " -->\n";
  }
  out << "<!-- nodes: " << r.nodes << " -->\n";
  for (const auto& n : r.notes) out << "<!-- note: " << n << " -->\n";
  if (!r.witnesses.empty()) out << witness_xml(inst, r.witnesses.front(), r);

  Json j;
  j["status"] = to_string(r.status);
  j["mode"] = to_string(cfg.mode);
  j["count"] = r.solution_count;
  j["nodes"] = r.nodes;
  if (r.cost) j["cost"] = *r.cost;
  j["notes"] = r.notes;
  if (!r.witnesses.empty()) {
    Json w = Json::object();
    const Assignment& a = r.witnesses.front();
    for (size_t i = 0; i < inst.vars.size(); ++i)
      if (a.has(static_cast<VarId>(i))) w[inst.vars[i].name] = a[static_cast<VarId>(i)];
    j["witness"] = w;
  }
  if (!write_report(args.report, j, err)) return kInternal;
  switch (r.status) {
    case SolveResult::Status::Sat:
    case SolveResult::Status::Optimum: return kOk;
    case SolveResult::Status::Unsat: return kReject;
    case SolveResult::Status::BudgetExhausted: return kInternal;
  }
  return kInternal;
}

// ---------------------------------------------------------------------------

struct JsonArgs {
  std::string file;
  bool safe = false, aliases = false;
};

int cmd_tojson(const JsonArgs& args, std::ostream& out, std::ostream& err, const Style& st) {
  try {
    RawElement raw = load_file(args.file);
    JsonOptions o;
    o.safe_mode = args.safe;
    o.resolve_aliases = args.aliases;
    out << to_json(raw, o);
  } catch (const Error& e) {
    err << diagnostic_line(st, args.file, e);
    return exit_for(e);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"XCSP3-core instance toolkit", "xcsp3kit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "xcsp3kit 0.1.0");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "parse and normalize instances, report diagnostics");
  validate->add_option("files", va.files, "instance files")->required();
  validate->add_option("--drop-class", va.drop, "ignore constraints tagged with this class");
  validate->add_flag("--warn-tuple-order", va.warn_order, "unordered tuples are a warning, not an error");
  validate->add_option("--report", va.report, "write a JSON report");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "check a solution against an instance");
  check->add_option("instance", ca.instance)->required();
  check->add_option("solution", ca.solution)->required();
  check->add_flag("--no-optimality", ca.no_optimality, "do not try to prove optimum claims");
  check->add_option("--optimality-space", ca.space, "largest search space explored to prove an optimum");
  check->add_option("--report", ca.report, "write a JSON report");

  SolveArgs sa;
  auto* solvec = app.add_subcommand("solve", "exhaustive backtracking search");
  solvec->add_option("instance", sa.instance)->required();
  solvec->add_option("--mode", sa.mode)
      ->check(CLI::IsMember({"one", "find-one", "count", "count-all", "optimize"}));
  solvec->add_option("--limit", sa.limit, "stop counting after this many solutions")->check(CLI::PositiveNumber);
  solvec->add_option("--nodes", sa.nodes, "node budget")->check(CLI::PositiveNumber);
  solvec->add_option("--seconds", sa.seconds, "time budget")->check(CLI::PositiveNumber);
  solvec->add_option("--report", sa.report, "write a JSON report");

  JsonArgs ja;
  auto* tojson = app.add_subcommand("tojson", "print the JSON rendition of a document");
  tojson->add_option("file", ja.file)->required();
  tojson->add_flag("--safe-mode", ja.safe, "group same-name siblings, no duplicate keys");
  tojson->add_flag("--resolve-aliases", ja.aliases, "expand 'as' references first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  Style st = style_for(err);
  try {
    if (*validate) return cmd_validate(va, out, err, st);
    if (*check) return cmd_check(ca, out, err, st);
    if (*solvec) return cmd_solve(sa, out, err, st);
    if (*tojson) return cmd_tojson(ja, out, err, st);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace xcsp3kit::cli
