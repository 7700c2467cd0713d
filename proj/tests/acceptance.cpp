// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
// Everything runs offline against committed fixtures and fixed seeds.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fisher_oracle.hpp"
#include "oracles.hpp"
#include "stacksolve/benchgen.hpp"
#include "stacksolve/dataset.hpp"
#include "stacksolve/grammar.hpp"
#include "stacksolve/harness.hpp"
#include "stacksolve/llm.hpp"
#include "stacksolve/pddl.hpp"
#include "stacksolve/planner.hpp"
#include "stacksolve/report.hpp"
#include "stacksolve/stats.hpp"
#include "test_util.hpp"

using namespace stacksolve;
using harness::Method;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kGenSeed = 0;
constexpr std::uint64_t kPropertySeed = 20240611;
constexpr double kFisherRelTol = 1e-9;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

std::string serialize(const std::vector<BenchmarkItem>& items) {
  std::ostringstream os;
  dataset::write_dataset(os, items);
  return os.str();
}

// The default-config dataset is shared by criteria 1, 3 and 6.
const std::vector<BenchmarkItem>& default_dataset() {
  static const auto items = [] {
    GenConfig cfg;
    cfg.seed = kGenSeed;
    return generate_benchmark(cfg);
  }();
  return items;
}

std::string criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  GenConfig cfg;
  cfg.seed = kGenSeed;
  require(cfg.count == 100 && cfg.n_objects == 4 && cfg.n_many == 4, "defaults are not 100/4/4");
  const auto& items = default_dataset();
  require(items.size() == 300, "item count " + std::to_string(items.size()));
  for (auto c : kConditions) {
    const auto k = std::count_if(items.begin(), items.end(), [&](const auto& i) { return i.condition == c; });
    require(k == 100, std::string(to_string(c)) + " has " + std::to_string(k));
  }
  for (const auto& item : items) require(solve(item.problem).solved(), item.id + " not solved by BFS");
  const auto again = generate_benchmark(cfg);
  require(serialize(items) == serialize(again), "regeneration differs");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(secs < 60.0, "took " + std::to_string(secs) + " s");
  return "300 items, 100 per condition, all solved, byte-identical";
}

std::string criterion2() {
  auto text = testutil::read_text(testutil::data_path("supplement/problem.txt"));
  const auto p = grammar::parse_problem_nl(text, "supplement");
  const FactSet expected = {Fact::on_table("writing pad"), Fact::on("notebook", "writing pad"),
                            Fact::on("tissue box", "notebook"), Fact::clear("tissue box"),
                            Fact::on_table("tablet"), Fact::clear("tablet")};
  require(p.init.facts() == expected, "parsed state is not the canonical 6-fact state");
  require(p.goal == Goal{Fact::clear("notebook")}, "goal mismatch");

  const auto bfs = solve(p);
  require(bfs.solved() && bfs.plan == Plan{GroundAction::unstack("tissue box", "notebook")}, "BFS plan mismatch");
  require(validate(p, bfs.plan).success == 1, "BFS plan does not validate");

  const auto item = dataset::read_dataset(testutil::data_path("supplement/dataset.jsonl")).at(0);
  llm::ReplayTransport replay(testutil::data_path("supplement/transcript.jsonl"));
  harness::EvalDeps deps;
  deps.transport = &replay;
  const auto out = harness::run_item(Method::LlmPlanner, item, deps);
  require(out.plan && grammar::render_plan(*out.plan) == "Move the tablet onto the notebook.", "replayed plan differs");
  require(out.outcome.success == 0, "LLM plan succeeded");
  require(out.outcome.reason == SimOutcome::Reason::PreconditionViolation, "reason is not PreconditionViolation");
  return "6 facts, BFS [Unstack(tissue box, notebook)] ok, LLM plan PreconditionViolation";
}

std::string criterion3() {
  harness::EvalDeps deps;
  const auto table = harness::aggregate(harness::run_all({Method::Oracle, Method::PsGrammar}, default_dataset(), deps));
  for (auto m : {Method::Oracle, Method::PsGrammar})
    for (auto c : kConditions) {
      const auto& row = table.at({m, c});
      require(row.n == 100 && row.successes == row.n,
              std::string(harness::to_string(m)) + "/" + to_string(c) + " " + std::to_string(row.successes) + "/" +
                  std::to_string(row.n));
    }
  return "oracle and ps-grammar 1.000 in every condition";
}

std::string criterion4() {
  const auto items = dataset::read_dataset(testutil::data_path("pilot/dataset.jsonl"));
  std::set<std::size_t> families;
  for (const auto& i : items) families.insert(i.family);
  require(families.size() >= 10, "only " + std::to_string(families.size()) + " pilot families");
  llm::ReplayTransport replay(testutil::data_path("pilot/transcript.jsonl"));
  harness::EvalDeps deps;
  deps.transport = &replay;
  const std::vector<Method> methods(harness::kMethods.begin(), harness::kMethods.end());
  const auto table = harness::aggregate(harness::run_all(methods, items, deps));
  const auto dir = (fs::temp_directory_path() / "stacksolve_acceptance_report").string();
  report::emit_report(table, report::pairwise_tests(table), dir);
  const bool md = testutil::read_text(dir + "/report.md") ==
                  testutil::read_text(testutil::data_path("pilot/golden/report.md"));
  const bool csv = testutil::read_text(dir + "/results.csv") ==
                   testutil::read_text(testutil::data_path("pilot/golden/results.csv"));
  fs::remove_all(dir);
  require(md, "report.md differs from golden");
  require(csv, "results.csv differs from golden");
  const auto& many = table.at({Method::LlmPlanner, Condition::ManyConstraints});
  require(many.n == families.size() && many.successes == 0,
          "llm-planner many " + std::to_string(many.successes) + "/" + std::to_string(many.n));
  return "golden report byte-identical, llm-planner many 0/" + std::to_string(many.n);
}

std::string criterion5() {
  std::size_t failures = 0;
  {
    Rng rng = substream(kPropertySeed, 101);
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto p = testutil::random_problem(rng, i);
      const auto text = grammar::render_problem(p);
      try {
        const auto back = grammar::parse_problem_nl(text, p.id);
        if (!(back == p) || back.objects != p.objects || grammar::render_problem(back) != text) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  require(failures == 0, std::to_string(failures) + " NL problem failures");
  {
    Rng rng = substream(kPropertySeed, 102);
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto p = testutil::random_problem(rng, i);
      const auto text = pddl::emit_problem(p);
      try {
        const auto back = pddl::parse_pddl_problem(text);
        if (!(back == p) || pddl::emit_problem(back) != text) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  require(failures == 0, std::to_string(failures) + " PDDL problem failures");
  {
    Rng rng = substream(kPropertySeed, 103);
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto p = testutil::random_problem(rng, i);
      const auto plan = testutil::random_resolvable_plan(rng, p, uniform_index(rng, 8));
      try {
        const auto back = grammar::parse_plan_nl(grammar::render_plan(plan), p.init);
        if (!(validate(p, back) == validate(p, plan))) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  require(failures == 0, std::to_string(failures) + " plan NL failures");
  return "3 x 1000 cases, 0 failures";
}

std::string criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> objs = {"plate", "mug", "bowl", "vase"};
  const auto states = enumerate_configurations(objs);
  require(states.size() == 73, "enumerate(4) = " + std::to_string(states.size()));
  std::set<std::map<std::string, std::string>> seen;
  for (const auto& s : states) seen.insert(oracle::support_map(s));
  require(seen == oracle::brute_force_configurations(objs), "enumeration differs from brute force");

  const auto atoms = oracle::all_atoms(objs);
  std::size_t checked = 0;
  for (const auto& init : states) {
    const auto dist = oracle::distances_from(init, objs);
    for (const auto& atom : atoms) {
      std::size_t best = SIZE_MAX;
      for (const auto& [s, d] : dist)
        if (s.holds(atom)) best = std::min(best, d);
      Problem p;
      p.id = "single";
      for (const auto& o : objs) p.objects.push_back({o, false});
      p.init = init;
      p.goal = {atom};
      const auto r = solve(p);
      require(r.solved() && r.plan.size() == best, "BFS length differs from exhaustive distance");
      ++checked;
    }
  }
  for (const auto& item : default_dataset()) {
    const auto r = solve(item.problem);
    require(r.solved() && r.plan.size() <= 2 * item.problem.objects.size(), item.id + " plan longer than 2n");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(secs < 120.0, "took " + std::to_string(secs) + " s");
  return "73 states, " + std::to_string(checked) + " single-atom problems optimal, dataset plans <= 2n";
}

std::string criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t tables = 0;
  double worst = 0.0;
  oracle::for_each_table(12, [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    const double got = stats::fisher_exact({{{a, b}, {c, d}}});
    const long double want = oracle::fisher_two_sided(a, b, c, d);
    const double rel = static_cast<double>(std::fabs(static_cast<long double>(got) - want) / want);
    worst = std::max(worst, rel);
    ++tables;
  });
  require(worst <= kFisherRelTol, "max relative error " + std::to_string(worst));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(secs < 30.0, "took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << tables << " tables, max relative error " << std::scientific << std::setprecision(2) << worst;
  return os.str();
}

std::string criterion8() {
  const auto sup = dataset::read_dataset(testutil::data_path("supplement/dataset.jsonl")).at(0);
  const auto pilot = dataset::read_dataset(testutil::data_path("pilot/dataset.jsonl")).at(0);
  const std::vector<std::tuple<BenchmarkItem, std::string, std::string>> cases = {
      {sup, "supplement/planner_prompt.txt", "supplement/parser_prompt.txt"},
      {pilot, "pilot/golden/planner_prompt.txt", "pilot/golden/parser_prompt.txt"}};
  for (const auto& [item, planner_golden, parser_golden] : cases) {
    const auto planner = llm::build_planner_prompt(llm::planner_examples(), item);
    const auto parser = llm::build_parser_prompt(llm::parser_examples(), item);
    require(planner == testutil::read_text(testutil::data_path(planner_golden)), planner_golden + " differs");
    require(parser == testutil::read_text(testutil::data_path(parser_golden)), parser_golden + " differs");
    require(planner.ends_with("Actions:\n"), "planner prompt ending");
    require(parser.ends_with("("), "parser prompt ending");
  }
  return "4 goldens byte-identical, endings ok";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"1 dataset reproduction", criterion1},   {"2 supplement end to end", criterion2},
      {"3 grammar P+S dominance", criterion3},  {"4 pilot golden report", criterion4},
      {"5 round-trip properties", criterion5},  {"6 oracle equivalences", criterion6},
      {"7 fisher exact sweep", criterion7},     {"8 prompt goldens", criterion8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string status, detail;
    try {
      detail = run();
      status = "PASS";
    } catch (const std::exception& e) {
      detail = e.what();
      status = "FAIL";
      ++failed;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << status << "  criterion " << name << " (" << std::fixed << std::setprecision(2) << secs
              << " s): " << detail << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (criteria.size() - failed) << "/" << criteria.size()
            << std::endl;
  return failed ? 1 : 0;
}
