#pragma once
// Few-shot prompt assembly for the two language-model roles (planner and
// parser), stop-string handling, and the completion transports: live HTTP
// (see http_transport.hpp), recording, and offline replay of transcripts.

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "stacksolve/benchgen.hpp"
#include "stacksolve/core.hpp"
#include "stacksolve/grammar.hpp"
#include "stacksolve/pddl.hpp"
#include "stacksolve/planner.hpp"

namespace stacksolve::llm {

class TransportError : public Error {
 public:
  using Error::Error;
};

class ReplayMiss : public Error {
 public:
  explicit ReplayMiss(const std::string& hash) : Error("no transcript entry for prompt " + hash), hash_(hash) {}
  const std::string& prompt_hash() const noexcept { return hash_; }

 private:
  std::string hash_;
};

class TranscriptError : public Error {
 public:
  using Error::Error;
};

struct CompletionParams {
  double temperature = 0.0;
  int max_tokens = 128;
  std::vector<std::string> stop;

  friend bool operator==(const CompletionParams&, const CompletionParams&) = default;
};

inline CompletionParams planner_params() { return {0.05, 256, {"Initially:"}}; }
inline CompletionParams parser_params() { return {0.0, 128, {";"}}; }

/// Cuts `text` at the earliest occurrence of any stop string.
inline std::string truncate_at_stop(std::string_view text, const std::vector<std::string>& stop) {
  std::size_t cut = text.size();
  for (const auto& s : stop) {
    if (s.empty()) continue;
    if (auto pos = text.find(s); pos != std::string_view::npos) cut = std::min(cut, pos);
  }
  return std::string(text.substr(0, cut));
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// ----------------------------------------------------------------------------
// Prompts
// ----------------------------------------------------------------------------

struct FewShotExample {
  Problem problem;
  std::string solution_text;  // NL plan, or a PDDL fragment without the ';'
};

enum class ParserMode { GoalOnly, FullProblem };

inline constexpr std::size_t kFewShotCount = 3;
inline constexpr std::string_view kActionsHeader = "Actions:";

inline std::string_view parser_header(ParserMode mode) {
  return mode == ParserMode::GoalOnly ? "Goal predicate:" : "PDDL problem:";
}

inline std::string build_planner_prompt(const std::vector<FewShotExample>& examples, const BenchmarkItem& item) {
  if (examples.size() != kFewShotCount) throw std::invalid_argument("planner prompt needs exactly 3 examples");
  std::string out;
  for (const auto& ex : examples) {
    out += grammar::render_problem(ex.problem);
    out += "\n";
    out += kActionsHeader;
    out += "\n" + ex.solution_text + "\n";
  }
  out += grammar::render_problem(item.problem);
  out += "\n";
  out += kActionsHeader;
  out += "\n";
  return out;
}

/// The query ends with an open parenthesis; the completion continues the
/// s-expression and is cut at ';'.
inline std::string build_parser_prompt(const std::vector<FewShotExample>& examples, const BenchmarkItem& item,
                                       ParserMode mode = ParserMode::GoalOnly) {
  if (examples.size() != kFewShotCount) throw std::invalid_argument("parser prompt needs exactly 3 examples");
  const auto header = parser_header(mode);
  std::string out;
  for (const auto& ex : examples) {
    out += grammar::render_problem(ex.problem);
    out += "\n";
    out += header;
    out += "\n" + ex.solution_text + ";\n";
  }
  out += grammar::render_problem(item.problem);
  out += "\n";
  out += header;
  out += "\n(";
  return out;
}

inline std::string goal_sexpr(const Goal& goal) {
  std::string out = "(and";
  for (const auto& f : goal) {
    std::ostringstream os;
    pddl::detail::write_fact(os, f);
    out += " " + os.str();
  }
  return out + ")";
}

/// The three fixed training problems shown in every prompt header. They use
/// household objects only and are never part of a generated benchmark
/// (their ids are "train-*").
inline std::vector<Problem> training_problems() {
  auto make = [](std::string id, std::vector<std::string> names, FactSet init, Goal goal) {
    Problem p;
    p.id = std::move(id);
    for (auto& n : names) p.objects.push_back({n, false});
    p.init = canonicalize(init, names);
    p.goal = std::move(goal);
    check_problem(p);
    return p;
  };
  return {
      make("train-0", {"plate", "mug", "bowl"},
           {Fact::on_table("plate"), Fact::on("mug", "plate"), Fact::on_table("bowl")},
           {Fact::clear("plate")}),
      make("train-1", {"keyboard", "laptop", "lamp", "vase"},
           {Fact::on_table("keyboard"), Fact::on("laptop", "keyboard"), Fact::on_table("lamp"),
            Fact::on("vase", "lamp")},
           {Fact::on("vase", "laptop"), Fact::clear("lamp")}),
      make("train-2", {"candle", "coaster", "napkin", "magazine"},
           {Fact::on_table("candle"), Fact::on("coaster", "candle"), Fact::on("napkin", "coaster"),
            Fact::on_table("magazine")},
           {Fact::on("napkin", "magazine"), Fact::on("coaster", "napkin"), Fact::clear("candle")}),
  };
}

inline std::vector<FewShotExample> planner_examples() {
  std::vector<FewShotExample> out;
  for (auto& p : training_problems()) {
    const auto result = solve(p);
    if (!result.solved()) throw Error("training problem " + p.id + " is unsolvable");
    out.push_back({p, grammar::render_plan(result.plan)});
  }
  return out;
}

inline std::vector<FewShotExample> parser_examples(ParserMode mode = ParserMode::GoalOnly) {
  std::vector<FewShotExample> out;
  for (auto& p : training_problems()) {
    std::string text = mode == ParserMode::GoalOnly ? goal_sexpr(p.goal) : pddl::emit_problem(p);
    while (!text.empty() && text.back() == '\n') text.pop_back();
    out.push_back({p, std::move(text)});
  }
  return out;
}

// ----------------------------------------------------------------------------
// Transcripts
// ----------------------------------------------------------------------------

struct TranscriptEntry {
  std::string prompt_hash;
  std::string prompt;
  CompletionParams params;
  std::string completion;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

using Json = nlohmann::ordered_json;

inline Json params_to_json(const CompletionParams& p) {
  return Json{{"temperature", p.temperature}, {"max_tokens", p.max_tokens}, {"stop", p.stop}};
}

inline CompletionParams params_from_json(const Json& j) {
  return {j.at("temperature").get<double>(), j.at("max_tokens").get<int>(),
          j.at("stop").get<std::vector<std::string>>()};
}

inline std::string entry_to_line(const TranscriptEntry& e) {
  Json j{{"prompt_hash", e.prompt_hash},
         {"prompt", e.prompt},
         {"params", params_to_json(e.params)},
         {"completion", e.completion}};
  return j.dump();
}

inline TranscriptEntry entry_from_line(const std::string& line) {
  const auto j = Json::parse(line);
  TranscriptEntry e{j.at("prompt_hash").get<std::string>(), j.at("prompt").get<std::string>(),
                    params_from_json(j.at("params")), j.at("completion").get<std::string>()};
  if (sha256_hex(e.prompt) != e.prompt_hash) throw TranscriptError("prompt_hash does not match prompt");
  return e;
}

inline TranscriptEntry make_entry(std::string prompt, CompletionParams params, std::string completion) {
  TranscriptEntry e;
  e.prompt_hash = sha256_hex(prompt);
  e.prompt = std::move(prompt);
  e.params = std::move(params);
  e.completion = std::move(completion);
  return e;
}

inline std::vector<TranscriptEntry> read_transcript(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptError("cannot open transcript " + path);
  std::vector<TranscriptEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(entry_from_line(line));
    } catch (const std::exception& e) {
      throw TranscriptError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline void write_transcript(const std::vector<TranscriptEntry>& entries, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TranscriptError("cannot open transcript " + path + " for writing");
  for (const auto& e : entries) out << entry_to_line(e) << "\n";
}

// ----------------------------------------------------------------------------
// Transports
// ----------------------------------------------------------------------------

class Transport {
 public:
  virtual ~Transport() = default;
  /// Raw completion text for `prompt`; stop truncation is applied by complete().
  virtual std::string fetch(const std::string& prompt, const CompletionParams& params) = 0;
};

/// Serves completions from a transcript; never touches the network.
class ReplayTransport : public Transport {
 public:
  explicit ReplayTransport(const std::vector<TranscriptEntry>& entries) {
    for (const auto& e : entries) by_hash_[e.prompt_hash] = e.completion;
  }
  explicit ReplayTransport(const std::string& path) : ReplayTransport(read_transcript(path)) {}

  std::string fetch(const std::string& prompt, const CompletionParams&) override {
    const auto hash = sha256_hex(prompt);
    auto it = by_hash_.find(hash);
    if (it == by_hash_.end()) throw ReplayMiss(hash);
    return it->second;
  }

 private:
  std::map<std::string, std::string> by_hash_;
};

/// Forwards to another transport and appends every exchange to a transcript
/// file (stop-truncated completion). Appends are serialized.
class RecordTransport : public Transport {
 public:
  RecordTransport(std::shared_ptr<Transport> inner, std::string path)
      : inner_(std::move(inner)), path_(std::move(path)) {}

  std::string fetch(const std::string& prompt, const CompletionParams& params) override {
    auto completion = truncate_at_stop(inner_->fetch(prompt, params), params.stop);
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw TranscriptError("cannot append to transcript " + path_);
    out << entry_to_line(make_entry(prompt, params, completion)) << "\n";
    return completion;
  }

 private:
  std::shared_ptr<Transport> inner_;
  std::string path_;
  std::mutex mutex_;
};

inline std::string complete(const std::string& prompt, const CompletionParams& params, Transport& transport) {
  if (params.stop.empty()) throw std::invalid_argument("completion params need at least one stop string");
  return truncate_at_stop(transport.fetch(prompt, params), params.stop);
}

}  // namespace stacksolve::llm
