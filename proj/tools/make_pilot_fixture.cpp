// Writes the committed replay fixtures: a small pilot dataset, transcripts of
// emulated model completions for it, prompt goldens, the golden report, and
// the supplement example. The completions are synthetic stand-ins for a real
// model; they follow fixed rules so the fixture is reproducible.
//
// usage: make_pilot_fixture <data-dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "stacksolve/benchgen.hpp"
#include "stacksolve/dataset.hpp"
#include "stacksolve/grammar.hpp"
#include "stacksolve/harness.hpp"
#include "stacksolve/llm.hpp"
#include "stacksolve/pddl.hpp"
#include "stacksolve/report.hpp"

namespace fs = std::filesystem;
using namespace stacksolve;

namespace {

constexpr std::uint64_t kPilotSeed = 7;
constexpr std::size_t kPilotFamilies = 12;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

// A plan that chases the first goal atom only, the way a model that ignores
// the remaining constraints would.
std::string naive_plan(const Problem& p) {
  const Fact& g = p.goal.front();
  switch (g.kind) {
    case Fact::Kind::Clear: {
      for (const auto& o : p.object_names())
        if (o != g.a && p.init.is_clear(o) && p.init.occupant_of(g.a) != o)
          return "Move the " + o + " onto the " + g.a + ".";
      return "Move the " + g.a + " onto the table.";
    }
    case Fact::Kind::OnTable: return "Move the " + g.a + " onto the table.";
    case Fact::Kind::On: return "Move the " + g.a + " onto the " + g.b + ".";
  }
  return {};
}

std::string planner_completion(const BenchmarkItem& item) {
  const bool competent = item.condition == Condition::Initial ? item.family % 4 != 3
                         : item.condition == Condition::SingleConstraint ? item.family % 2 == 0
                                                                          : false;
  std::string text;
  if (competent) {
    text = grammar::render_plan(solve(item.problem).plan);
  } else {
    text = naive_plan(item.problem);
    const auto plan = grammar::parse_plan_nl(text, item.problem.init);
    if (validate(item.problem, plan).success) text = "Rearrange the " + item.problem.objects.front().name + ".";
  }
  // The model keeps going with a new problem; the stop string cuts it off.
  return text + "\n\nInitially:\nThe plate rests on the table.";
}

std::string parser_completion(const BenchmarkItem& item) {
  Goal goal = item.problem.goal;
  if (item.condition == Condition::ManyConstraints) {
    if (item.family % 4 == 1) {
      goal.pop_back();  // drops a constraint
    } else if (item.family % 4 == 2) {
      for (const auto& o : item.problem.objects) {
        if (!o.ood) continue;
        // Misspells an unusual object name.
        auto text = llm::goal_sexpr(goal);
        const auto token = pddl::hyphenate(o.name);
        text.replace(text.find(token), token.size(), token + "s");
        return text.substr(1) + ";\n";
      }
    }
  }
  return llm::goal_sexpr(goal).substr(1) + ";\n";
}

BenchmarkItem supplement_item() {
  BenchmarkItem item;
  item.id = "supplement";
  item.condition = Condition::Initial;
  item.nl_text =
      "Initially:\n"
      "The writing pad rests on the table.\n"
      "The notebook is on the writing pad.\n"
      "The tissue box is on the notebook.\n"
      "There is nothing on the tissue box.\n"
      "The tablet rests on the table.\n"
      "There is nothing on the tablet.\n"
      "Goal:\n"
      "There is nothing on the notebook.";
  item.problem = grammar::parse_problem_nl(item.nl_text, item.id);
  return item;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_pilot_fixture <data-dir>\n";
    return 2;
  }
  try {
    const fs::path root(argv[1]);
    const auto pilot = root / "pilot";
    const auto golden = pilot / "golden";
    const auto sup = root / "supplement";
    for (const auto& d : {pilot, golden, sup}) fs::create_directories(d);

    GenConfig cfg;
    cfg.seed = kPilotSeed;
    cfg.count = kPilotFamilies;
    const auto items = generate_benchmark(cfg);
    dataset::write_dataset(items, (pilot / "dataset.jsonl").string());

    const auto planner_ex = llm::planner_examples();
    const auto parser_ex = llm::parser_examples();
    std::vector<llm::TranscriptEntry> entries;
    for (const auto& item : items) {
      entries.push_back(llm::make_entry(llm::build_planner_prompt(planner_ex, item), llm::planner_params(),
                                        planner_completion(item)));
      entries.push_back(llm::make_entry(llm::build_parser_prompt(parser_ex, item), llm::parser_params(),
                                        parser_completion(item)));
    }
    llm::write_transcript(entries, (pilot / "transcript.jsonl").string());
    write_text(golden / "planner_prompt.txt", llm::build_planner_prompt(planner_ex, items.front()));
    write_text(golden / "parser_prompt.txt", llm::build_parser_prompt(parser_ex, items.front()));

    llm::ReplayTransport replay(entries);
    harness::EvalDeps deps;
    deps.transport = &replay;
    const std::vector<harness::Method> methods(harness::kMethods.begin(), harness::kMethods.end());
    const auto table = harness::aggregate(harness::run_all(methods, items, deps));
    report::emit_report(table, report::pairwise_tests(table), golden.string());

    const auto s = supplement_item();
    write_text(sup / "problem.txt", s.nl_text + "\n");
    dataset::write_dataset({s}, (sup / "dataset.jsonl").string());
    llm::write_transcript(
        {llm::make_entry(llm::build_planner_prompt(planner_ex, s), llm::planner_params(),
                         "Move the tablet onto the notebook.\nInitially:\nThe mug rests on the table."),
         llm::make_entry(llm::build_parser_prompt(parser_ex, s), llm::parser_params(), "and (clear notebook));")},
        (sup / "transcript.jsonl").string());
    write_text(sup / "planner_prompt.txt", llm::build_planner_prompt(planner_ex, s));
    write_text(sup / "parser_prompt.txt", llm::build_parser_prompt(parser_ex, s));
    std::cerr << "wrote fixtures under " << root.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "make_pilot_fixture: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
