#ifndef DRLSOFT_TOOLS_CLI_HPP
#define DRLSOFT_TOOLS_CLI_HPP

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "drlsoft/drlsoft.hpp"

namespace drlsoft::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kNegative = 2, kAxiomFailure = 3 };

namespace detail {

using json = nlohmann::json;

inline bool is_algebra_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPartialOrder:
    case ErrorCode::NotALattice:
    case ErrorCode::NotBounded:
    case ErrorCode::NotDistributive:
    case ErrorCode::ResiduationFails:
    case ErrorCode::NotACIS:
    case ErrorCode::AxiomViolation:
      return true;
    default:
      return false;
  }
}

inline std::string join_ids(const std::vector<std::size_t>& ids) {
  std::string s = "(";
  for (std::size_t j = 0; j < ids.size(); ++j) s += (j ? "," : "") + std::to_string(ids[j]);
  return s + ")";
}

inline std::string triple_string(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

inline void emit(std::ostream& out, const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

inline std::size_t carrier_cap_from_env() {
  if (const char* env = std::getenv("DRL_SOFT_CARRIER_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "DRL_SOFT_CARRIER_CAP must be a positive integer");
    }
  }
  return kDefaultCarrierCap;
}

inline FiniteDRL load_algebra_file(const std::string& path, AlgebraCheck check = AlgebraCheck::Full) {
  return load_algebra(read_file(path), check);
}

inline RawProblem load_raw_problem_file(const std::string& path) {
  ProblemSource source;
  source.base_dir = std::filesystem::path(path).parent_path();
  if (source.base_dir.empty()) source.base_dir = ".";
  return parse_problem(read_file(path), source);
}

inline json report_json(const AxiomReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je{{"axiom", e.axiom}, {"pass", e.pass}};
    if (e.counterexample) je["counterexample"] = *e.counterexample;
    entries.push_back(std::move(je));
  }
  return {{"profile", std::string(to_string(r.profile))}, {"pass", r.all_pass()}, {"entries", entries}};
}

inline json counters_json(const EnforcementCounters& c) {
  return {{"main_loop_iterations", c.main_loop_iterations},
          {"project_calls", c.project_calls},
          {"inner_tuple_iterations", c.inner_tuple_iterations},
          {"queue_pushes", c.queue_pushes}};
}

}  // namespace detail

/// Runs one CLI invocation. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using detail::json;
  CLI::App app{"Soft constraint solving over finite divisible residuated lattices", "drlsoft"};
  app.require_subcommand(1);
  bool as_json = false;
  unsigned threads = 1;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--threads", threads, "Worker threads for brute-force enumeration")->check(CLI::PositiveNumber);

  // algebra make|check|classify
  auto* algebra_cmd = app.add_subcommand("algebra", "Build, check and classify algebras");
  algebra_cmd->require_subcommand(1);

  std::string kind, lattice_file, left_file, right_file, out_file;
  std::size_t n_param = 0;
  std::optional<std::size_t> cap;
  auto* make_cmd = algebra_cmd->add_subcommand("make", "Write a builtin algebra");
  make_cmd->add_option("--kind", kind, "boolean|godel|lukasiewicz|weighted|heyting|product")->required();
  make_cmd->add_option("--n", n_param, "Chain length, or maximal cost for weighted");
  make_cmd->add_option("--cap", cap, "Carrier cap for products");
  make_cmd->add_option("--lattice", lattice_file, "Lattice order file for heyting");
  make_cmd->add_option("--left", left_file, "Left factor for product");
  make_cmd->add_option("--right", right_file, "Right factor for product");
  make_cmd->add_option("-o,--output", out_file, "Output file (default stdout)");

  std::string algebra_file, profile_name = "drl";
  auto* check_cmd = algebra_cmd->add_subcommand("check", "Exhaustively check axioms");
  check_cmd->add_option("file", algebra_file)->required();
  check_cmd->add_option("--profile", profile_name, "drl|derived|cis-reduct");
  auto* classify_cmd = algebra_cmd->add_subcommand("classify", "Report variety flags");
  classify_cmd->add_option("file", algebra_file)->required();

  std::string problem_file, strategy_name = "maximal-lex";
  std::size_t k = 2;
  bool show_counters = false, raw = false;
  auto* enforce_cmd = app.add_subcommand("enforce", "Enforce k-hyperarc consistency");
  enforce_cmd->add_option("--problem", problem_file)->required();
  enforce_cmd->add_option("--k", k)->required();
  enforce_cmd->add_option("--strategy", strategy_name, "maximal-lex|maximal-seeded:SEED|join");
  enforce_cmd->add_flag("--counters", show_counters, "Print instrumentation counters");
  enforce_cmd->add_option("-o,--output", out_file, "Output file (default stdout)");

  std::vector<std::size_t> project_scope;
  std::size_t project_var = 0;
  auto* project_cmd = app.add_subcommand("project", "Apply a single projection step");
  project_cmd->add_option("--problem", problem_file)->required();
  project_cmd->add_option("--scope", project_scope, "Scope variables, e.g. 0,1")->required()->delimiter(',');
  project_cmd->add_option("--var", project_var, "Variable receiving the projection")->required();
  project_cmd->add_option("--strategy", strategy_name, "maximal-lex|maximal-seeded:SEED|join");
  project_cmd->add_option("-o,--output", out_file, "Output file (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "Brute-force optimal solutions");
  solve_cmd->add_option("--problem", problem_file)->required();
  solve_cmd->add_flag("--raw", raw, "Do not normalize on load");

  auto* consistency_cmd = app.add_subcommand("consistency", "Check k-hyperarc consistency");
  consistency_cmd->add_option("--problem", problem_file)->required();
  consistency_cmd->add_option("--k", k)->required();

  std::string a_file, b_file;
  auto* equiv_cmd = app.add_subcommand("equiv", "Check equivalence of two problems");
  equiv_cmd->add_option("--a", a_file)->required();
  equiv_cmd->add_option("--b", b_file)->required();
  equiv_cmd->add_flag("--raw", raw, "Do not normalize on load");

  GenParams gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random problem");
  gen_cmd->add_option("--algebra", algebra_file)->required();
  gen_cmd->add_option("--vars", gen.variables)->required();
  gen_cmd->add_option("--dom", gen.domain)->required();
  gen_cmd->add_option("--constraints", gen.constraints)->required();
  gen_cmd->add_option("--max-arity", gen.max_arity)->required();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("-o,--output", out_file, "Output file (default stdout)");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  const OracleOptions oracle{kDefaultTupleCap, threads};
  // Loads a problem for commands that need a normalized one; nullopt when
  // normalization already proves it inconsistent.
  auto load_normalized = [&](const std::string& path) {
    return normalize(detail::load_raw_problem_file(path));
  };

  try {
    if (make_cmd->parsed()) {
      auto parsed_kind = parse_builtin_kind(kind);
      if (!parsed_kind) throw Error(ErrorCode::BadParams, "unknown kind " + kind);
      BuiltinParams params;
      params.n = n_param;
      params.carrier_cap = cap ? *cap : detail::carrier_cap_from_env();
      std::optional<FiniteDRL> left, right;
      if (*parsed_kind == BuiltinKind::Heyting) {
        if (lattice_file.empty()) throw Error(ErrorCode::BadParams, "heyting needs --lattice");
        params.lattice = load_order(read_file(lattice_file));
      }
      if (*parsed_kind == BuiltinKind::Product) {
        if (left_file.empty() || right_file.empty())
          throw Error(ErrorCode::BadParams, "product needs --left and --right");
        left = detail::load_algebra_file(left_file);
        right = detail::load_algebra_file(right_file);
        params.left = &*left;
        params.right = &*right;
      }
      detail::emit(out, save_algebra(make_builtin(*parsed_kind, params)), out_file);
      return kOk;
    }

    if (check_cmd->parsed()) {
      auto profile = parse_profile(profile_name);
      if (!profile) throw Error(ErrorCode::BadParams, "unknown profile " + profile_name);
      const auto algebra = detail::load_algebra_file(algebra_file, AlgebraCheck::Structure);
      const auto report = check_axioms(algebra, *profile);
      if (as_json) {
        out << detail::report_json(report).dump() << "\n";
      } else {
        for (const auto& e : report.entries) {
          out << (e.pass ? "PASS " : "FAIL ") << e.axiom;
          if (e.counterexample) out << " counterexample " << detail::triple_string(*e.counterexample);
          out << "\n";
        }
        out << (report.all_pass() ? "all axioms hold" : std::to_string(report.failures()) + " axiom(s) fail")
            << "\n";
      }
      return report.all_pass() ? kOk : kAxiomFailure;
    }

    if (classify_cmd->parsed()) {
      const auto flags = classify(detail::load_algebra_file(algebra_file));
      if (as_json) {
        out << json{{"prelinear", flags.prelinear},
                    {"idempotent", flags.idempotent},
                    {"involutive", flags.involutive},
                    {"chain", flags.chain},
                    {"variety", std::string(to_string(flags.variety))}}
                   .dump()
            << "\n";
      } else {
        out << std::boolalpha << "prelinear: " << flags.prelinear << "\nidempotent: " << flags.idempotent
            << "\ninvolutive: " << flags.involutive << "\nchain: " << flags.chain
            << "\nvariety: " << to_string(flags.variety) << "\n";
      }
      return kOk;
    }

    if (enforce_cmd->parsed()) {
      auto strategy = parse_strategy(strategy_name);
      if (!strategy) throw Error(ErrorCode::BadParams, "unknown strategy " + strategy_name);
      if (k < 2) throw Error(ErrorCode::BadK, "k must be at least 2", {k});
      auto normalized = load_normalized(problem_file);
      EnforcementOutcome outcome;
      if (normalized.inconsistent())
        outcome.failed_variable = normalized.emptied_variable;
      else
        outcome = enforce_k_hyperarc(*normalized.problem, k, *strategy);

      const bool to_stdout = out_file.empty() || out_file == "-";
      if (as_json) {
        json status{{"status", outcome.inconsistent() ? "inconsistent" : "consistent"}};
        if (outcome.failed_variable) status["variable"] = *outcome.failed_variable;
        if (show_counters) status["counters"] = detail::counters_json(outcome.counters);
        (to_stdout ? err : out) << status.dump() << "\n";
      } else {
        std::ostream& log = to_stdout ? err : out;
        if (outcome.inconsistent())
          log << "inconsistent: every value of variable " << *outcome.failed_variable << " is bottom\n";
        else
          log << "consistent\n";
        if (show_counters) {
          const auto& c = outcome.counters;
          log << "main_loop_iterations " << c.main_loop_iterations << "\nproject_calls " << c.project_calls
              << "\ninner_tuple_iterations " << c.inner_tuple_iterations << "\nqueue_pushes " << c.queue_pushes
              << "\n";
        }
      }
      if (outcome.inconsistent()) return kNegative;
      detail::emit(out, save_problem(*outcome.problem), out_file);
      return kOk;
    }

    if (project_cmd->parsed()) {
      auto strategy = parse_strategy(strategy_name);
      if (!strategy) throw Error(ErrorCode::BadParams, "unknown strategy " + strategy_name);
      auto normalized = load_normalized(problem_file);
      if (normalized.inconsistent())
        throw Error(ErrorCode::BadParams, "problem normalizes to an empty domain");
      Problem p = std::move(*normalized.problem);
      const bool shrinks = project(p, project_scope, project_var, *strategy);
      const bool to_stdout = out_file.empty() || out_file == "-";
      std::ostream& log = to_stdout ? err : out;
      if (as_json)
        log << json{{"domain_shrinks", shrinks}}.dump() << "\n";
      else
        log << "domain shrinks: " << std::boolalpha << shrinks << "\n";
      detail::emit(out, save_problem(p), out_file);
      return kOk;
    }

    if (solve_cmd->parsed()) {
      auto rawp = detail::load_raw_problem_file(problem_file);
      SolutionSet solved;
      if (raw) {
        solved = brute_force_solve(rawp, oracle);
      } else {
        auto normalized = normalize(rawp);
        if (normalized.inconsistent())
          solved = SolutionSet{{rawp.algebra->bottom}, {}, true};
        else
          solved = brute_force_solve(*normalized.problem, oracle);
      }
      if (as_json) {
        out << json{{"optimal_values", solved.optimal_values},
                    {"solutions", solved.solutions},
                    {"inconsistent", solved.inconsistent}}
                   .dump()
            << "\n";
      } else {
        out << "optimal values:";
        for (Element v : solved.optimal_values) out << " " << v;
        out << "\n" << (solved.inconsistent ? "inconsistent\n" : "");
        out << "solutions: " << solved.solutions.size() << "\n";
        if (!solved.inconsistent)
          for (const auto& t : solved.solutions) out << "  " << detail::join_ids(t) << "\n";
      }
      return kOk;
    }

    if (consistency_cmd->parsed()) {
      auto normalized = load_normalized(problem_file);
      if (normalized.inconsistent())
        throw Error(ErrorCode::BadParams, "problem normalizes to an empty domain");
      const auto violation = find_hyperarc_violation(*normalized.problem, k);
      if (as_json) {
        json j{{"ok", !violation}};
        if (violation)
          j["violation"] = {{"scope", violation->scope}, {"variable", violation->variable}, {"value", violation->value}};
        out << j.dump() << "\n";
      } else if (!violation) {
        out << "OK\n";
      } else {
        out << "violation: scope " << scope_to_string(violation->scope) << " variable " << violation->variable
            << " value " << violation->value << "\n";
      }
      return violation ? kNegative : kOk;
    }

    if (equiv_cmd->parsed()) {
      auto load = [&](const std::string& path) {
        auto r = detail::load_raw_problem_file(path);
        if (raw) return r;
        auto normalized = normalize(r);
        if (normalized.inconsistent())
          throw Error(ErrorCode::BadParams, path + " normalizes to an empty domain; use --raw");
        return normalized.problem->to_raw();
      };
      const auto a = load(a_file), b = load(b_file);
      const auto result = check_equivalent(a, b, oracle);
      if (as_json) {
        json j{{"equal", result.equal}};
        if (!result.equal) j["counterexample"] = {{"tuple", result.tuple}, {"a", result.value_a}, {"b", result.value_b}};
        out << j.dump() << "\n";
      } else if (result.equal) {
        out << "Equal\n";
      } else {
        out << "Counterexample " << detail::join_ids(result.tuple) << ": a=" << result.value_a
            << " b=" << result.value_b << "\n";
      }
      return result.equal ? kOk : kNegative;
    }

    if (gen_cmd->parsed()) {
      auto algebra = std::make_shared<const FiniteDRL>(detail::load_algebra_file(algebra_file));
      detail::emit(out, save_problem(gen_random_problem(algebra, gen)), out_file);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::is_algebra_failure(e.code()) ? kAxiomFailure : kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace drlsoft::cli

#endif  // DRLSOFT_TOOLS_CLI_HPP
