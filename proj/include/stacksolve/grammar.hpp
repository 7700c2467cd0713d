#pragma once
// The synthetic English grammar for stacking problems and plans, with its
// exact inverse.
//
//   The {x} rests on the table.   OnTable(x)
//   The {x} is on the {y}.        On(x, y)
//   There is nothing on the {x}.  Clear(x)
//   Move the {x} onto the {y}.    StackFromTable(x, y) or Stack(x, _, y)
//   Move the {x} onto the table.  Unstack(x, _)

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stacksolve/core.hpp"
#include "stacksolve/vocabulary.hpp"

namespace stacksolve {

class UnparseableSentence : public ParseError {
 public:
  explicit UnparseableSentence(std::string line)
      : ParseError("unparseable sentence: \"" + line + "\""), line_(std::move(line)) {}
  const std::string& line() const noexcept { return line_; }

 private:
  std::string line_;
};

class UnparseablePlan : public ParseError {
 public:
  UnparseablePlan(std::string sentence, const std::string& why)
      : ParseError("unparseable plan sentence \"" + sentence + "\": " + why),
        sentence_(std::move(sentence)) {}
  const std::string& sentence() const noexcept { return sentence_; }

 private:
  std::string sentence_;
};

namespace grammar {

inline constexpr std::string_view kInitHeader = "Initially:";
inline constexpr std::string_view kGoalHeader = "Goal:";

inline std::string render_fact(const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::OnTable: return "The " + f.a + " rests on the table.";
    case Fact::Kind::On: return "The " + f.a + " is on the " + f.b + ".";
    case Fact::Kind::Clear: return "There is nothing on the " + f.a + ".";
  }
  return {};
}

/// "Initially:" block (init facts in presentation order), "Goal:" block (goal
/// atoms in goal order). One sentence per line, no trailing newline.
inline std::string render_problem(const Problem& p) {
  std::ostringstream os;
  os << kInitHeader << "\n";
  for (const auto& f : p.init.ordered_facts(p.object_names())) os << render_fact(f) << "\n";
  os << kGoalHeader;
  for (const auto& f : p.goal) os << "\n" << render_fact(f);
  return os.str();
}

inline std::string render_action(const GroundAction& a) {
  if (a.kind == GroundAction::Kind::Unstack) return "Move the " + a.x + " onto the table.";
  return "Move the " + a.x + " onto the " + a.destination() + ".";
}

inline std::string render_plan(const Plan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (i) out += "\n";
    out += render_action(plan[i]);
  }
  return out;
}

namespace detail {

inline bool consume_prefix(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

inline bool consume_suffix(std::string_view& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.substr(s.size() - suffix.size()) != suffix) return false;
  s.remove_suffix(suffix.size());
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<std::pair<std::string, std::string>> split_names(std::string_view body,
                                                                        std::string_view sep) {
  auto pos = body.find(sep);
  if (pos == std::string_view::npos) return std::nullopt;
  std::string a(body.substr(0, pos)), b(body.substr(pos + sep.size()));
  if (!valid_object_name(a) || !valid_object_name(b)) return std::nullopt;
  return std::pair{std::move(a), std::move(b)};
}

inline std::vector<std::string> nonempty_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(start, end - start));
    if (!line.empty()) out.emplace_back(line);
    start = end + 1;
  }
  return out;
}

}  // namespace detail

/// Parses one fact sentence, or nullopt if no template matches.
inline std::optional<Fact> parse_fact(std::string_view sentence) {
  using namespace detail;
  std::string_view s = trim(sentence);
  std::string_view body = s;
  if (consume_prefix(body, "There is nothing on the ") && consume_suffix(body, ".")) {
    std::string name(body);
    if (valid_object_name(name)) return Fact::clear(std::move(name));
    return std::nullopt;
  }
  body = s;
  if (!consume_prefix(body, "The ") || !consume_suffix(body, ".")) return std::nullopt;
  std::string_view table_body = body;
  if (consume_suffix(table_body, " rests on the table")) {
    std::string name(table_body);
    if (valid_object_name(name)) return Fact::on_table(std::move(name));
    return std::nullopt;
  }
  if (auto names = split_names(body, " is on the ")) return Fact::on(names->first, names->second);
  return std::nullopt;
}

/// Inverse of render_problem. Objects are listed in order of first mention and
/// flagged out-of-distribution according to `vocab`.
inline Problem parse_problem_nl(std::string_view text, std::string id = {},
                                const Vocabulary& vocab = Vocabulary::builtin()) {
  const auto lines = detail::nonempty_lines(text);
  if (lines.empty() || lines.front() != kInitHeader)
    throw UnparseableSentence(lines.empty() ? std::string{} : lines.front());

  Problem p;
  p.id = std::move(id);
  FactSet init_facts;
  std::vector<std::string> order;
  auto mention = [&](const std::string& name) {
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  };
  auto note_fact = [&](const Fact& f) {
    mention(f.a);
    if (f.kind == Fact::Kind::On) mention(f.b);
  };

  std::size_t i = 1;
  for (; i < lines.size() && lines[i] != kGoalHeader; ++i) {
    auto f = parse_fact(lines[i]);
    if (!f) throw UnparseableSentence(lines[i]);
    note_fact(*f);
    init_facts.insert(*f);
  }
  if (i == lines.size()) throw UnparseableSentence(std::string(kGoalHeader) + " (missing)");
  if (init_facts.empty()) throw UnparseableSentence(lines[i]);
  for (++i; i < lines.size(); ++i) {
    auto f = parse_fact(lines[i]);
    if (!f) throw UnparseableSentence(lines[i]);
    note_fact(*f);
    p.goal.push_back(*f);
  }
  if (p.goal.empty()) throw UnparseableSentence(std::string(kGoalHeader) + " (no goal sentences)");

  p.init = canonicalize(init_facts, order);
  for (const auto& name : order) p.objects.push_back(vocab.object(name));
  check_problem(p);
  return p;
}

/// Parses a natural-language plan. Each sentence must be a move template; the
/// schema is resolved against the state obtained by simulating the preceding
/// moves. Moves whose preconditions fail are still returned (the simulator
/// rejects them); the tracked state then stays where it was.
inline Plan parse_plan_nl(std::string_view text, const WorldState& init) {
  using namespace detail;
  std::vector<std::string> sentences;
  std::string current;
  for (char c : text) {
    current.push_back(c == '\n' || c == '\r' || c == '\t' ? ' ' : c);
    if (c == '.') {
      auto s = trim(current);
      sentences.emplace_back(s);
      current.clear();
    }
  }
  if (auto rest = trim(current); !rest.empty()) throw UnparseablePlan(std::string(rest), "no template match");

  Plan plan;
  WorldState state = init;
  for (const auto& sentence : sentences) {
    std::string_view body = sentence;
    if (!consume_prefix(body, "Move the ") || !consume_suffix(body, "."))
      throw UnparseablePlan(sentence, "no template match");
    auto sep = body.find(" onto the ");
    if (sep == std::string_view::npos) throw UnparseablePlan(sentence, "no template match");
    std::string x(body.substr(0, sep));
    std::string dest(body.substr(sep + std::string_view(" onto the ").size()));
    if (!valid_object_name(x) || (dest != "table" && !valid_object_name(dest)))
      throw UnparseablePlan(sentence, "no template match");
    if (!state.has_object(x)) throw UnparseablePlan(sentence, "unknown object '" + x + "'");

    const auto& support = state.support_of(x);
    GroundAction action;
    if (dest == "table") {
      if (!support) throw UnparseablePlan(sentence, "'" + x + "' is already on the table");
      action = GroundAction::unstack(x, *support);
    } else {
      if (!state.has_object(dest)) throw UnparseablePlan(sentence, "unknown object '" + dest + "'");
      if (dest == x) throw UnparseablePlan(sentence, "object moved onto itself");
      action = support ? GroundAction::stack(x, *support, dest) : GroundAction::stack_from_table(x, dest);
    }
    plan.push_back(action);
    try {
      state = apply(state, action);
    } catch (const PreconditionViolation&) {
    }
  }
  return plan;
}

}  // namespace grammar
}  // namespace stacksolve
