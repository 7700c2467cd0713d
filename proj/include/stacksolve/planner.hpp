#pragma once
// Forward state-space search over stacking states, and the plan validator
// that scores a plan 1 (reaches the goal through legal moves) or 0.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <variant>
#include <vector>

#include "stacksolve/core.hpp"

namespace stacksolve {

enum class SearchStrategy { BFS, AStarGoalCount };

struct PlannerConfig {
  SearchStrategy strategy = SearchStrategy::BFS;
  std::size_t max_expansions = 1'000'000;
  /// 0 means 2 * number of objects.
  std::size_t max_plan_length = 0;
  /// Wall-clock budget; zero disables it.
  std::chrono::milliseconds time_budget{0};
};

struct SolveResult {
  enum class Status { Solved, Unsolvable, ResourceExhausted };

  Status status = Status::Unsolvable;
  Plan plan;                  // set iff Solved
  std::size_t expansions = 0;

  bool solved() const { return status == Status::Solved; }
};

inline const char* to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::Solved: return "solved";
    case SolveResult::Status::Unsolvable: return "unsolvable";
    case SolveResult::Status::ResourceExhausted: return "exhausted";
  }
  return "?";
}

namespace detail {

// Compact encoding: 4 bits per object holding the index of its support, or
// kTable. Supports at most 15 objects.
inline constexpr std::uint8_t kTable = 0xF;
inline constexpr std::size_t kMaxSearchObjects = 15;

struct CompactAction {
  GroundAction::Kind kind;
  std::uint8_t x, y, z;
};

class CompactDomain {
 public:
  explicit CompactDomain(const Problem& p) : names_(p.object_names()) {
    if (names_.size() > kMaxSearchObjects)
      throw std::invalid_argument("planner supports at most 15 objects");
    for (const auto& f : p.goal) goal_.push_back({f.kind, index(f.a), f.kind == Fact::Kind::On ? index(f.b) : kTable});
  }

  std::size_t size() const { return names_.size(); }

  std::uint64_t encode(const WorldState& s) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& below = s.support_of(names_[i]);
      key |= std::uint64_t{below ? index(*below) : kTable} << (4 * i);
    }
    return key;
  }

  std::uint8_t support(std::uint64_t key, std::size_t i) const {
    return static_cast<std::uint8_t>((key >> (4 * i)) & 0xF);
  }

  std::uint64_t with_support(std::uint64_t key, std::size_t i, std::uint8_t below) const {
    key &= ~(std::uint64_t{0xF} << (4 * i));
    return key | (std::uint64_t{below} << (4 * i));
  }

  /// Bit i set iff object i has nothing on it.
  std::uint32_t clear_mask(std::uint64_t key) const {
    std::uint32_t mask = (1u << names_.size()) - 1;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (auto b = support(key, i); b != kTable) mask &= ~(1u << b);
    return mask;
  }

  std::size_t unsatisfied(std::uint64_t key) const {
    const auto clear = clear_mask(key);
    std::size_t n = 0;
    for (const auto& g : goal_) {
      bool ok = false;
      switch (g.kind) {
        case Fact::Kind::On: ok = support(key, g.a) == g.b; break;
        case Fact::Kind::OnTable: ok = support(key, g.a) == kTable; break;
        case Fact::Kind::Clear: ok = (clear >> g.a) & 1u; break;
      }
      n += !ok;
    }
    return n;
  }

  /// Successors in a fixed order: movable objects by index; to the table
  /// first, then onto each clear destination by index.
  template <class Fn>
  void for_each_successor(std::uint64_t key, Fn&& fn) const {
    const auto clear = clear_mask(key);
    const auto n = static_cast<std::uint8_t>(names_.size());
    for (std::uint8_t x = 0; x < n; ++x) {
      if (!((clear >> x) & 1u)) continue;
      const std::uint8_t below = support(key, x);
      if (below != kTable) fn(CompactAction{GroundAction::Kind::Unstack, x, below, 0}, with_support(key, x, kTable));
      for (std::uint8_t z = 0; z < n; ++z) {
        if (z == x || z == below || !((clear >> z) & 1u)) continue;
        CompactAction a = below == kTable ? CompactAction{GroundAction::Kind::StackFromTable, x, z, 0}
                                          : CompactAction{GroundAction::Kind::Stack, x, below, z};
        fn(a, with_support(key, x, z));
      }
    }
  }

  GroundAction expand(const CompactAction& a) const {
    switch (a.kind) {
      case GroundAction::Kind::Unstack: return GroundAction::unstack(names_[a.x], names_[a.y]);
      case GroundAction::Kind::StackFromTable: return GroundAction::stack_from_table(names_[a.x], names_[a.y]);
      case GroundAction::Kind::Stack: return GroundAction::stack(names_[a.x], names_[a.y], names_[a.z]);
    }
    return {};
  }

 private:
  struct GoalAtom {
    Fact::Kind kind;
    std::uint8_t a, b;
  };

  std::uint8_t index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<std::uint8_t>(i);
    throw std::invalid_argument("unknown object '" + name + "'");
  }

  std::vector<std::string> names_;
  std::vector<GoalAtom> goal_;
};

}  // namespace detail

/// Breadth-first search returns a shortest plan. A* orders the frontier by
/// g + (number of unsatisfied goal atoms); ties are FIFO in both modes. States
/// are deduplicated on first generation.
inline SolveResult solve(const Problem& problem, const PlannerConfig& config = {}) {
  if (config.max_expansions < 1) throw std::invalid_argument("max_expansions must be >= 1");
  check_problem(problem);
  const detail::CompactDomain dom(problem);
  const std::size_t max_len = config.max_plan_length ? config.max_plan_length : 2 * dom.size();
  const auto deadline = std::chrono::steady_clock::now() + config.time_budget;

  struct Node {
    std::uint64_t key;
    std::size_t parent;
    detail::CompactAction action;
    std::size_t g;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::uint64_t> seen;

  // (f, insertion order, node index); min-heap, FIFO among equal f.
  using Entry = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::deque<std::size_t> fifo;
  std::size_t inserted = 0;
  const bool astar = config.strategy == SearchStrategy::AStarGoalCount;

  auto push = [&](Node node) {
    const std::size_t f = astar ? node.g + dom.unsatisfied(node.key) : 0;
    nodes.push_back(node);
    if (astar)
      heap.emplace(f, inserted++, nodes.size() - 1);
    else
      fifo.push_back(nodes.size() - 1);
  };

  const auto root = dom.encode(problem.init);
  seen.insert(root);
  push({root, SIZE_MAX, {}, 0});

  SolveResult result;
  bool truncated = false;
  while (astar ? !heap.empty() : !fifo.empty()) {
    std::size_t idx;
    if (astar) {
      idx = std::get<2>(heap.top());
      heap.pop();
    } else {
      idx = fifo.front();
      fifo.pop_front();
    }
    if (result.expansions >= config.max_expansions) {
      result.status = SolveResult::Status::ResourceExhausted;
      return result;
    }
    ++result.expansions;
    if (config.time_budget.count() > 0 && (result.expansions & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      result.status = SolveResult::Status::ResourceExhausted;
      return result;
    }

    const Node node = nodes[idx];
    if (dom.unsatisfied(node.key) == 0) {
      for (std::size_t i = idx; nodes[i].parent != SIZE_MAX; i = nodes[i].parent)
        result.plan.push_back(dom.expand(nodes[i].action));
      std::reverse(result.plan.begin(), result.plan.end());
      result.status = SolveResult::Status::Solved;
      return result;
    }
    dom.for_each_successor(node.key, [&](const detail::CompactAction& a, std::uint64_t next) {
      if (seen.count(next)) return;
      if (node.g >= max_len) {
        truncated = true;
        return;
      }
      seen.insert(next);
      push({next, idx, a, node.g + 1});
    });
  }
  result.status = truncated ? SolveResult::Status::ResourceExhausted : SolveResult::Status::Unsolvable;
  return result;
}

// ----------------------------------------------------------------------------
// Validation
// ----------------------------------------------------------------------------

/// Marker for a plan (or problem) that could not be parsed.
struct ParseFailure {
  std::string message;
};

using PlanOrError = std::variant<Plan, ParseFailure>;

struct SimOutcome {
  enum class Reason { None, Unparseable, PreconditionViolation, GoalUnmet };

  int success = 0;
  Reason reason = Reason::GoalUnmet;
  std::size_t step = 0;  // failing step for PreconditionViolation
  std::string detail;

  friend bool operator==(const SimOutcome&, const SimOutcome&) = default;
};

inline const char* to_string(SimOutcome::Reason r) {
  switch (r) {
    case SimOutcome::Reason::None: return "none";
    case SimOutcome::Reason::Unparseable: return "unparseable";
    case SimOutcome::Reason::PreconditionViolation: return "precondition-violation";
    case SimOutcome::Reason::GoalUnmet: return "goal-unmet";
  }
  return "?";
}

inline SimOutcome validate(const Problem& problem, const PlanOrError& plan_or_error) {
  if (const auto* err = std::get_if<ParseFailure>(&plan_or_error))
    return {0, SimOutcome::Reason::Unparseable, 0, err->message};
  const auto ex = execute_plan(problem.init, std::get<Plan>(plan_or_error));
  if (!ex.status.ok) return {0, SimOutcome::Reason::PreconditionViolation, ex.status.failed_step, ex.status.error};
  if (!satisfies(ex.final_state, problem.goal)) return {0, SimOutcome::Reason::GoalUnmet, 0, {}};
  return {1, SimOutcome::Reason::None, 0, {}};
}

}  // namespace stacksolve
