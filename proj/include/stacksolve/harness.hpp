#pragma once
// Evaluation engine: runs one method over benchmark items and totalizes every
// failure into a scored outcome, then aggregates per-condition success rates.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <fstream>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "stacksolve/benchgen.hpp"
#include "stacksolve/core.hpp"
#include "stacksolve/dataset.hpp"
#include "stacksolve/grammar.hpp"
#include "stacksolve/llm.hpp"
#include "stacksolve/pddl.hpp"
#include "stacksolve/planner.hpp"

namespace stacksolve::harness {

/// Oracle: planner on the symbolic problem.
/// PsGrammar: grammar parser, then planner.
/// PsLlm: language-model parser (goal, optionally init), then planner.
/// LlmPlanner: language-model plan, reparsed through the inverse grammar.
enum class Method { Oracle, PsGrammar, PsLlm, LlmPlanner };

inline constexpr std::array<Method, 4> kMethods{Method::Oracle, Method::PsGrammar, Method::PsLlm,
                                                Method::LlmPlanner};

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::PsGrammar: return "ps-grammar";
    case Method::PsLlm: return "ps-llm";
    case Method::LlmPlanner: return "llm-planner";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  for (auto m : kMethods)
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown method '" + s + "'");
}

inline bool uses_llm(Method m) { return m == Method::PsLlm || m == Method::LlmPlanner; }

struct EvalDeps {
  PlannerConfig planner{SearchStrategy::BFS, 1'000'000, 0, std::chrono::milliseconds(10'000)};
  llm::Transport* transport = nullptr;  // required for LLM methods
  std::vector<llm::FewShotExample> planner_examples = llm::planner_examples();
  llm::ParserMode parser_mode = llm::ParserMode::GoalOnly;
  std::vector<llm::FewShotExample> parser_examples = llm::parser_examples(llm::ParserMode::GoalOnly);
  /// Score transport failures as unparseable instead of aborting.
  bool fail_open = false;
  Vocabulary vocabulary = Vocabulary::builtin();
};

struct EvalOutcome {
  std::string item_id;
  std::size_t family = 0;
  Condition condition = Condition::Initial;
  Method method = Method::Oracle;
  bool parse_ok = false;
  std::optional<Plan> plan;
  SimOutcome outcome;
  std::optional<SolveResult::Status> solver_status;  // P+S and oracle only
  std::optional<std::string> completion;             // raw LLM text, if any
  double wall_time_ms = 0;
};

namespace detail {

inline void score_solution(EvalOutcome& out, const Problem& parsed, const Problem& truth, const EvalDeps& deps) {
  const auto result = solve(parsed, deps.planner);
  out.solver_status = result.status;
  if (result.solved()) {
    out.plan = result.plan;
    out.outcome = validate(truth, result.plan);
  } else {
    out.outcome = {0, SimOutcome::Reason::GoalUnmet, 0, std::string("no plan: ") + to_string(result.status)};
  }
}

inline void mark_unparseable(EvalOutcome& out, const std::string& why) {
  out.parse_ok = false;
  out.plan.reset();
  out.outcome = validate(Problem{}, ParseFailure{why});
}

}  // namespace detail

inline EvalOutcome run_item(Method method, const BenchmarkItem& item, const EvalDeps& deps) {
  const auto start = std::chrono::steady_clock::now();
  EvalOutcome out;
  out.item_id = item.id;
  out.family = item.family;
  out.condition = item.condition;
  out.method = method;
  if (uses_llm(method) && !deps.transport) throw std::invalid_argument("LLM method needs a transport");

  auto query = [&](const std::string& prompt, const llm::CompletionParams& params) -> std::optional<std::string> {
    try {
      auto text = llm::complete(prompt, params, *deps.transport);
      out.completion = text;
      return text;
    } catch (const Error& e) {
      if (!deps.fail_open) throw;
      detail::mark_unparseable(out, e.what());
      return std::nullopt;
    }
  };

  switch (method) {
    case Method::Oracle:
      out.parse_ok = true;
      detail::score_solution(out, item.problem, item.problem, deps);
      break;

    case Method::PsGrammar:
      try {
        const auto parsed = grammar::parse_problem_nl(item.nl_text, item.id, deps.vocabulary);
        out.parse_ok = true;
        detail::score_solution(out, parsed, item.problem, deps);
      } catch (const Error& e) {
        detail::mark_unparseable(out, e.what());
      }
      break;

    case Method::PsLlm: {
      const auto prompt = llm::build_parser_prompt(deps.parser_examples, item, deps.parser_mode);
      const auto text = query(prompt, llm::parser_params());
      if (!text) break;
      try {
        Problem parsed;
        if (deps.parser_mode == llm::ParserMode::GoalOnly) {
          parsed = grammar::parse_problem_nl(item.nl_text, item.id, deps.vocabulary);
          parsed.goal = pddl::parse_pddl_goal("(" + *text, parsed.object_names());
        } else {
          parsed = pddl::parse_pddl_problem("(" + *text, deps.vocabulary);
        }
        check_problem(parsed);
        out.parse_ok = true;
        detail::score_solution(out, parsed, item.problem, deps);
      } catch (const Error& e) {
        detail::mark_unparseable(out, e.what());
      }
      break;
    }

    case Method::LlmPlanner: {
      const auto prompt = llm::build_planner_prompt(deps.planner_examples, item);
      const auto text = query(prompt, llm::planner_params());
      if (!text) break;
      try {
        auto plan = grammar::parse_plan_nl(*text, item.problem.init);
        out.parse_ok = true;
        out.plan = plan;
        out.outcome = validate(item.problem, plan);
      } catch (const Error& e) {
        detail::mark_unparseable(out, e.what());
      }
      break;
    }
  }
  out.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline bool outcome_order(const EvalOutcome& l, const EvalOutcome& r) {
  return std::tie(l.method, l.family, l.condition, l.item_id) < std::tie(r.method, r.family, r.condition, r.item_id);
}

/// Evaluates every (method, item) pair on up to `jobs` worker threads. The
/// result is sorted by method, family and condition regardless of scheduling.
inline std::vector<EvalOutcome> run_all(const std::vector<Method>& methods, const std::vector<BenchmarkItem>& items,
                                        const EvalDeps& deps, unsigned jobs = 1) {
  std::vector<std::pair<Method, const BenchmarkItem*>> work;
  for (auto m : methods)
    for (const auto& item : items) work.emplace_back(m, &item);
  std::vector<EvalOutcome> out(work.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < work.size();) {
      try {
        out[i] = run_item(work[i].first, *work[i].second, deps);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = work.size();
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(out.begin(), out.end(), outcome_order);
  return out;
}

// ----------------------------------------------------------------------------
// Aggregation
// ----------------------------------------------------------------------------

struct ResultRow {
  std::size_t n = 0;
  std::size_t successes = 0;
  std::size_t exhausted = 0;  // solver hit its expansion or time budget
  double rate() const { return n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0; }
};

using ResultTable = std::map<std::pair<Method, Condition>, ResultRow>;

inline ResultTable aggregate(const std::vector<EvalOutcome>& outcomes) {
  ResultTable table;
  for (const auto& o : outcomes) {
    auto& row = table[{o.method, o.condition}];
    ++row.n;
    row.successes += o.outcome.success;
    if (o.solver_status == SolveResult::Status::ResourceExhausted) ++row.exhausted;
  }
  return table;
}

// ----------------------------------------------------------------------------
// Results file
// ----------------------------------------------------------------------------

using Json = nlohmann::ordered_json;

inline Json plan_to_json(const Plan& plan) {
  Json out = Json::array();
  for (const auto& a : plan) {
    Json step = Json::array({action_name(a.kind)});
    for (const auto& arg : a.arguments()) step.push_back(arg);
    out.push_back(std::move(step));
  }
  return out;
}

inline Plan plan_from_json(const Json& j) {
  Plan plan;
  for (const auto& step : j) {
    const auto name = step.at(0).get<std::string>();
    if (name == "unstack" && step.size() == 3)
      plan.push_back(GroundAction::unstack(step[1], step[2]));
    else if (name == "stackfromtable" && step.size() == 3)
      plan.push_back(GroundAction::stack_from_table(step[1], step[2]));
    else if (name == "stack" && step.size() == 4)
      plan.push_back(GroundAction::stack(step[1], step[2], step[3]));
    else
      throw std::invalid_argument("bad plan step " + step.dump());
  }
  return plan;
}

inline SimOutcome::Reason parse_reason(const std::string& s) {
  for (auto r : {SimOutcome::Reason::None, SimOutcome::Reason::Unparseable, SimOutcome::Reason::PreconditionViolation,
                 SimOutcome::Reason::GoalUnmet})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown failure reason '" + s + "'");
}

inline SolveResult::Status parse_status(const std::string& s) {
  for (auto st : {SolveResult::Status::Solved, SolveResult::Status::Unsolvable,
                  SolveResult::Status::ResourceExhausted})
    if (s == to_string(st)) return st;
  throw std::invalid_argument("unknown solver status '" + s + "'");
}

inline Json outcome_to_json(const EvalOutcome& o) {
  Json j;
  j["item_id"] = o.item_id;
  j["family"] = o.family;
  j["condition"] = to_string(o.condition);
  j["method"] = to_string(o.method);
  j["parse_ok"] = o.parse_ok;
  j["plan"] = o.plan ? plan_to_json(*o.plan) : Json(nullptr);
  j["success"] = o.outcome.success;
  j["failure_reason"] = to_string(o.outcome.reason);
  j["failed_step"] = o.outcome.step;
  j["detail"] = o.outcome.detail;
  j["solver_status"] = o.solver_status ? Json(to_string(*o.solver_status)) : Json(nullptr);
  j["completion"] = o.completion ? Json(*o.completion) : Json(nullptr);
  j["wall_time_ms"] = o.wall_time_ms;
  return j;
}

inline EvalOutcome outcome_from_json(const Json& j) {
  EvalOutcome o;
  o.item_id = j.at("item_id").get<std::string>();
  o.family = j.at("family").get<std::size_t>();
  o.condition = parse_condition(j.at("condition").get<std::string>());
  o.method = parse_method(j.at("method").get<std::string>());
  o.parse_ok = j.at("parse_ok").get<bool>();
  if (!j.at("plan").is_null()) o.plan = plan_from_json(j.at("plan"));
  o.outcome.success = j.at("success").get<int>();
  o.outcome.reason = parse_reason(j.at("failure_reason").get<std::string>());
  o.outcome.step = j.at("failed_step").get<std::size_t>();
  o.outcome.detail = j.value("detail", "");
  if (j.contains("solver_status") && !j["solver_status"].is_null())
    o.solver_status = parse_status(j["solver_status"].get<std::string>());
  if (j.contains("completion") && !j["completion"].is_null()) o.completion = j["completion"].get<std::string>();
  o.wall_time_ms = j.value("wall_time_ms", 0.0);
  return o;
}

inline void write_results(const std::vector<EvalOutcome>& outcomes, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const auto& o : outcomes) out << outcome_to_json(o).dump() << "\n";
  if (!out) throw IoError("error writing " + path);
}

inline std::vector<EvalOutcome> read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<EvalOutcome> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(outcome_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw SchemaError(lineno, e.what());
    }
  }
  return out;
}

}  // namespace stacksolve::harness
