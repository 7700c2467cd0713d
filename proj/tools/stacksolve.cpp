// stacksolve: generate stacking benchmarks, render them as text or PDDL,
// solve PDDL problems, evaluate methods, and report success rates.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stacksolve/benchgen.hpp"
#include "stacksolve/dataset.hpp"
#include "stacksolve/grammar.hpp"
#include "stacksolve/harness.hpp"
#include "stacksolve/http_transport.hpp"
#include "stacksolve/llm.hpp"
#include "stacksolve/pddl.hpp"
#include "stacksolve/planner.hpp"
#include "stacksolve/report.hpp"

namespace fs = std::filesystem;
using namespace stacksolve;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUnsolvable = 10;
constexpr int kExitExhausted = 11;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("error writing " + path.string());
}

struct GenOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t objects = 4;
  std::size_t many = 4;
  std::string vocab;
  std::string out;
};

int run_gen(const GenOptions& o) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.count = o.count;
  cfg.n_objects = o.objects;
  cfg.n_many = o.many;
  if (!o.vocab.empty()) cfg.vocabulary = load_vocabulary(o.vocab);
  const auto items = generate_benchmark(cfg);
  dataset::write_dataset(items, o.out);
  std::cerr << "wrote " << items.size() << " items to " << o.out << "\n";
  return 0;
}

struct RenderOptions {
  std::string in;
  std::string format = "nl";
  std::string outdir;
};

int run_render(const RenderOptions& o) {
  const auto items = dataset::read_dataset(o.in);
  fs::create_directories(o.outdir);
  if (o.format == "pddl") write_file(fs::path(o.outdir) / "domain.pddl", pddl::emit_domain());
  for (const auto& item : items) {
    if (o.format == "nl")
      write_file(fs::path(o.outdir) / (item.id + ".txt"), grammar::render_problem(item.problem) + "\n");
    else
      write_file(fs::path(o.outdir) / (item.id + ".pddl"), pddl::emit_problem(item.problem));
  }
  std::cerr << "rendered " << items.size() << " problems to " << o.outdir << "\n";
  return 0;
}

struct SolveOptions {
  std::string problem;
  std::string strategy = "bfs";
  std::string out;
  std::size_t max_expansions = 1'000'000;
};

int run_solve(const SolveOptions& o) {
  const auto problem = pddl::parse_pddl_problem(read_file(o.problem));
  PlannerConfig cfg;
  cfg.strategy = o.strategy == "astar" ? SearchStrategy::AStarGoalCount : SearchStrategy::BFS;
  cfg.max_expansions = o.max_expansions;
  const auto result = solve(problem, cfg);
  std::cerr << problem.id << ": " << to_string(result.status) << " after " << result.expansions
            << " expansions\n";
  switch (result.status) {
    case SolveResult::Status::Solved: {
      const auto text = pddl::emit_plan(result.plan);
      if (o.out.empty())
        std::cout << text;
      else
        write_file(o.out, text);
      return 0;
    }
    case SolveResult::Status::Unsolvable: return kExitUnsolvable;
    case SolveResult::Status::ResourceExhausted: return kExitExhausted;
  }
  return kExitError;
}

struct EvalOptions {
  std::string in;
  std::vector<std::string> methods;
  std::string transport = "replay";
  std::string transcript;
  std::string out;
  std::string strategy = "bfs";
  bool llm_parses_init = false;
  bool fail_open = false;
  unsigned jobs = 1;
  std::string vocab;
};

int run_eval(const EvalOptions& o) {
  const auto items = dataset::read_dataset(o.in);
  std::vector<harness::Method> methods;
  for (const auto& m : o.methods) methods.push_back(harness::parse_method(m));

  harness::EvalDeps deps;
  if (!o.vocab.empty()) deps.vocabulary = load_vocabulary(o.vocab);
  deps.planner.strategy = o.strategy == "astar" ? SearchStrategy::AStarGoalCount : SearchStrategy::BFS;
  deps.fail_open = o.fail_open;
  if (o.llm_parses_init) {
    deps.parser_mode = llm::ParserMode::FullProblem;
    deps.parser_examples = llm::parser_examples(llm::ParserMode::FullProblem);
  }

  std::shared_ptr<llm::Transport> transport;
  const bool needs_llm = std::any_of(methods.begin(), methods.end(), harness::uses_llm);
  if (needs_llm) {
    if (o.transport == "replay") {
      if (o.transcript.empty()) throw std::invalid_argument("--transcript is required for replay");
      transport = std::make_shared<llm::ReplayTransport>(o.transcript);
    } else {
      auto live = std::make_shared<llm::LiveTransport>(llm::Endpoint::from_environment());
      if (o.transport == "record") {
        if (o.transcript.empty()) throw std::invalid_argument("--transcript is required for record");
        transport = std::make_shared<llm::RecordTransport>(live, o.transcript);
      } else {
        transport = live;
      }
    }
    deps.transport = transport.get();
  }

  const auto outcomes = harness::run_all(methods, items, deps, o.jobs);
  harness::write_results(outcomes, o.out);
  for (const auto& [key, row] : harness::aggregate(outcomes))
    std::cerr << harness::to_string(key.first) << " " << to_string(key.second) << ": " << row.successes << "/"
              << row.n << "\n";
  return 0;
}

int run_report(const std::string& in, const std::string& outdir) {
  const auto table = harness::aggregate(harness::read_results(in));
  report::emit_report(table, report::pairwise_tests(table), outdir);
  std::cerr << "wrote " << (fs::path(outdir) / "report.md").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stacking-domain planning benchmark: generate, parse, solve, evaluate."};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark dataset");
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->required();
  gen_cmd->add_option("--count", gen.count, "Number of problem families")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--objects", gen.objects, "Household objects per problem");
  gen_cmd->add_option("--many", gen.many, "Constraints in the heaviest condition");
  gen_cmd->add_option("--vocab", gen.vocab, "Vocabulary file")->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen.out, "Output dataset (JSONL)")->required();

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Render dataset problems as text or PDDL files");
  render_cmd->add_option("--in", render.in, "Dataset (JSONL)")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--format", render.format, "nl or pddl")->check(CLI::IsMember({"nl", "pddl"}));
  render_cmd->add_option("--outdir", render.outdir, "Output directory")->required();

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a PDDL problem (exit 10 unsolvable, 11 exhausted)");
  solve_cmd->add_option("--problem", solve_opts.problem, "Problem file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--strategy", solve_opts.strategy, "bfs or astar")
      ->check(CLI::IsMember({"bfs", "astar"}));
  solve_cmd->add_option("--max-expansions", solve_opts.max_expansions, "Search budget")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve_opts.out, "Plan file (default: stdout)");

  EvalOptions eval;
  eval.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate methods on a dataset");
  eval_cmd->add_option("--in", eval.in, "Dataset (JSONL)")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--method", eval.methods, "oracle, ps-grammar, ps-llm, llm-planner (repeatable)")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"oracle", "ps-grammar", "ps-llm", "llm-planner"}));
  eval_cmd->add_option("--transport", eval.transport, "live, replay or record")
      ->check(CLI::IsMember({"live", "replay", "record"}));
  eval_cmd->add_option("--transcript", eval.transcript, "Transcript file (JSONL)");
  eval_cmd->add_option("--out", eval.out, "Results file (JSONL)")->required();
  eval_cmd->add_option("--strategy", eval.strategy, "bfs or astar")->check(CLI::IsMember({"bfs", "astar"}));
  eval_cmd->add_flag("--llm-parses-init", eval.llm_parses_init, "LLM parser emits the whole problem");
  eval_cmd->add_flag("--fail-open", eval.fail_open, "Score transport failures as unparseable");
  eval_cmd->add_option("--jobs", eval.jobs, "Worker threads")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--vocab", eval.vocab, "Vocabulary file")->check(CLI::ExistingFile);

  std::string report_in, report_out;
  auto* report_cmd = app.add_subcommand("report", "Write CSV and Markdown success-rate reports");
  report_cmd->add_option("--in", report_in, "Results file (JSONL)")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*render_cmd) return run_render(render);
    if (*solve_cmd) return run_solve(solve_opts);
    if (*eval_cmd) return run_eval(eval);
    if (*report_cmd) return run_report(report_in, report_out);
  } catch (const std::exception& e) {
    std::cerr << "stacksolve: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
