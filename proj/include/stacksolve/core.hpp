#pragma once
// World-state representation and action semantics for the object-stacking
// domain. Objects form disjoint stacks on a table of unbounded capacity and
// exactly one clear object moves per action.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stacksolve {

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed or constructed facts that do not describe a legal world state.
class InconsistentState : public Error {
 public:
  explicit InconsistentState(const std::string& reason)
      : Error("inconsistent state: " + reason), reason_(reason) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

/// Base for every failure to turn text into symbols.
class ParseError : public Error {
 public:
  using Error::Error;
};

class TooManyObjects : public Error {
 public:
  explicit TooManyObjects(std::size_t n)
      : Error("too many objects to enumerate: " + std::to_string(n)) {}
};

// ----------------------------------------------------------------------------
// Objects and facts
// ----------------------------------------------------------------------------

struct ObjectId {
  std::string name;
  bool ood = false;

  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
  friend bool operator==(const ObjectId&, const ObjectId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const ObjectId& o) {
  return os << o.name << (o.ood ? " (ood)" : "");
}

struct Fact {
  enum class Kind { On, OnTable, Clear };

  Kind kind = Kind::OnTable;
  std::string a;  // the object the fact is about (the upper one for On)
  std::string b;  // the lower object for On, empty otherwise

  static Fact on(std::string above, std::string below) {
    return {Kind::On, std::move(above), std::move(below)};
  }
  static Fact on_table(std::string obj) { return {Kind::OnTable, std::move(obj), {}}; }
  static Fact clear(std::string obj) { return {Kind::Clear, std::move(obj), {}}; }

  friend auto operator<=>(const Fact&, const Fact&) = default;
  friend bool operator==(const Fact&, const Fact&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::On: return os << "On(" << f.a << ", " << f.b << ")";
    case Fact::Kind::OnTable: return os << "OnTable(" << f.a << ")";
    case Fact::Kind::Clear: return os << "Clear(" << f.a << ")";
  }
  return os;
}

using FactSet = std::set<Fact>;

// ----------------------------------------------------------------------------
// WorldState
// ----------------------------------------------------------------------------

/// A canonical world state. Instances are only produced by canonicalize() and
/// apply(), so every instance satisfies the stacking invariants: one support
/// per object, at most one occupant per object, no cycles. Clear facts are
/// derived from the support relation.
class WorldState {
 public:
  WorldState() = default;

  /// Support of `obj`: nullopt for the table. Throws std::out_of_range for
  /// unknown objects.
  const std::optional<std::string>& support_of(const std::string& obj) const {
    return support_.at(obj);
  }

  bool has_object(const std::string& obj) const { return support_.count(obj) != 0; }

  /// The object directly on top of `obj`, if any.
  std::optional<std::string> occupant_of(const std::string& obj) const {
    auto it = occupant_.find(obj);
    if (it == occupant_.end()) return std::nullopt;
    return it->second;
  }

  bool is_clear(const std::string& obj) const {
    return has_object(obj) && occupant_.count(obj) == 0;
  }

  bool on_table(const std::string& obj) const {
    auto it = support_.find(obj);
    return it != support_.end() && !it->second.has_value();
  }

  bool holds(const Fact& f) const {
    switch (f.kind) {
      case Fact::Kind::On: {
        auto it = support_.find(f.a);
        return it != support_.end() && it->second == f.b;
      }
      case Fact::Kind::OnTable: return on_table(f.a);
      case Fact::Kind::Clear: return is_clear(f.a);
    }
    return false;
  }

  /// Object names in lexicographic order.
  std::vector<std::string> objects() const {
    std::vector<std::string> out;
    out.reserve(support_.size());
    for (const auto& [name, _] : support_) out.push_back(name);
    return out;
  }

  std::size_t size() const { return support_.size(); }

  /// Full sorted fact set, including the derived Clear facts.
  FactSet facts() const {
    FactSet out;
    for (const auto& [obj, below] : support_) {
      out.insert(below ? Fact::on(obj, *below) : Fact::on_table(obj));
      if (occupant_.count(obj) == 0) out.insert(Fact::clear(obj));
    }
    return out;
  }

  /// Stacks listed bottom to top, ordered by the position of each stack's
  /// bottom object in `order`. Objects missing from `order` come last, by name.
  std::vector<std::vector<std::string>> stacks(const std::vector<std::string>& order) const {
    std::vector<std::string> bottoms;
    for (const auto& name : order) {
      if (on_table(name) &&
          std::find(bottoms.begin(), bottoms.end(), name) == bottoms.end())
        bottoms.push_back(name);
    }
    for (const auto& [name, below] : support_) {
      if (!below && std::find(bottoms.begin(), bottoms.end(), name) == bottoms.end())
        bottoms.push_back(name);
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& bottom : bottoms) {
      std::vector<std::string> stack{bottom};
      for (auto top = occupant_of(bottom); top; top = occupant_of(*top)) stack.push_back(*top);
      out.push_back(std::move(stack));
    }
    return out;
  }

  /// Facts in presentation order: per stack bottom to top, each object's
  /// support fact followed by Clear for the top object.
  std::vector<Fact> ordered_facts(const std::vector<std::string>& order) const {
    std::vector<Fact> out;
    for (const auto& stack : stacks(order)) {
      for (std::size_t i = 0; i < stack.size(); ++i) {
        out.push_back(i == 0 ? Fact::on_table(stack[i]) : Fact::on(stack[i], stack[i - 1]));
      }
      out.push_back(Fact::clear(stack.back()));
    }
    return out;
  }

  friend bool operator==(const WorldState& l, const WorldState& r) {
    return l.support_ == r.support_;
  }
  friend bool operator<(const WorldState& l, const WorldState& r) {
    return l.support_ < r.support_;
  }

 private:
  friend WorldState canonicalize(const FactSet&, const std::vector<std::string>&);
  template <class It>
  friend WorldState from_supports_unchecked(It, It);
  friend class StateEditor;

  void rebuild_occupants() {
    occupant_.clear();
    for (const auto& [obj, below] : support_)
      if (below) occupant_[*below] = obj;
  }

  std::map<std::string, std::optional<std::string>> support_;
  std::map<std::string, std::string> occupant_;
};

inline std::ostream& operator<<(std::ostream& os, const WorldState& s) {
  os << "{";
  bool first = true;
  for (const auto& f : s.facts()) {
    os << (first ? "" : ", ") << f;
    first = false;
  }
  return os << "}";
}

/// Validates a fact set over `objects` and returns the canonical state.
inline WorldState canonicalize(const FactSet& facts, const std::vector<std::string>& objects) {
  const std::set<std::string> known(objects.begin(), objects.end());
  if (known.size() != objects.size()) throw InconsistentState("duplicate object name");
  auto check_known = [&](const std::string& name) {
    if (name.empty()) throw InconsistentState("empty object name");
    if (!known.count(name)) throw InconsistentState("unknown object '" + name + "'");
  };

  WorldState st;
  std::vector<std::string> clear_claims;
  for (const auto& f : facts) {
    check_known(f.a);
    switch (f.kind) {
      case Fact::Kind::On: {
        check_known(f.b);
        if (f.a == f.b) throw InconsistentState("'" + f.a + "' is on itself");
        if (st.support_.count(f.a)) throw InconsistentState("'" + f.a + "' has two supports");
        st.support_[f.a] = f.b;
        break;
      }
      case Fact::Kind::OnTable:
        if (st.support_.count(f.a)) throw InconsistentState("'" + f.a + "' has two supports");
        st.support_[f.a] = std::nullopt;
        break;
      case Fact::Kind::Clear: clear_claims.push_back(f.a); break;
    }
  }
  for (const auto& name : objects)
    if (!st.support_.count(name)) throw InconsistentState("'" + name + "' has no support");

  for (const auto& [obj, below] : st.support_) {
    if (!below) continue;
    auto [it, inserted] = st.occupant_.emplace(*below, obj);
    if (!inserted)
      throw InconsistentState("'" + it->second + "' and '" + obj + "' are both on '" + *below + "'");
  }
  // Each object has at most one occupant, so following supports from any
  // object either reaches the table or loops.
  for (const auto& [obj, _] : st.support_) {
    std::size_t steps = 0;
    for (auto cur = st.support_.at(obj); cur; cur = st.support_.at(*cur)) {
      if (++steps > st.support_.size()) throw InconsistentState("cycle through '" + obj + "'");
    }
  }
  for (const auto& name : clear_claims)
    if (st.occupant_.count(name))
      throw InconsistentState("'" + name + "' is claimed clear but supports '" +
                              st.occupant_.at(name) + "'");
  return st;
}

/// Builds a state from (object, support) pairs that are already known to be
/// consistent. Used by enumerators and the planner's compact decoding.
template <class It>
WorldState from_supports_unchecked(It first, It last) {
  WorldState st;
  for (; first != last; ++first) st.support_[first->first] = first->second;
  st.rebuild_occupants();
  return st;
}

// ----------------------------------------------------------------------------
// Actions
// ----------------------------------------------------------------------------

/// Unstack(x, y): move x from y to the table.
/// StackFromTable(x, y): move x from the table onto y (y is the destination).
/// Stack(x, y, z): move x from y onto z.
struct GroundAction {
  enum class Kind { Unstack, StackFromTable, Stack };

  Kind kind = Kind::Unstack;
  std::string x;
  std::string y;
  std::string z;  // empty unless kind == Stack

  static GroundAction unstack(std::string x, std::string from) {
    return {Kind::Unstack, std::move(x), std::move(from), {}};
  }
  static GroundAction stack_from_table(std::string x, std::string onto) {
    return {Kind::StackFromTable, std::move(x), std::move(onto), {}};
  }
  static GroundAction stack(std::string x, std::string from, std::string onto) {
    return {Kind::Stack, std::move(x), std::move(from), std::move(onto)};
  }

  /// Object the moved block ends up on; empty for the table.
  const std::string& destination() const {
    static const std::string table;
    switch (kind) {
      case Kind::Unstack: return table;
      case Kind::StackFromTable: return y;
      case Kind::Stack: return z;
    }
    return table;
  }

  std::vector<std::string> arguments() const {
    if (kind == Kind::Stack) return {x, y, z};
    return {x, y};
  }

  friend auto operator<=>(const GroundAction&, const GroundAction&) = default;
  friend bool operator==(const GroundAction&, const GroundAction&) = default;
};

inline const char* action_name(GroundAction::Kind k) {
  switch (k) {
    case GroundAction::Kind::Unstack: return "unstack";
    case GroundAction::Kind::StackFromTable: return "stackfromtable";
    case GroundAction::Kind::Stack: return "stack";
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, const GroundAction& a) {
  os << action_name(a.kind) << "(" << a.x << ", " << a.y;
  if (a.kind == GroundAction::Kind::Stack) os << ", " << a.z;
  return os << ")";
}

using Plan = std::vector<GroundAction>;

class PreconditionViolation : public Error {
 public:
  PreconditionViolation(GroundAction action, std::string missing)
      : Error(describe(action, missing)), action_(std::move(action)), missing_(std::move(missing)) {}

  const GroundAction& action() const noexcept { return action_; }
  /// Human-readable description of the unmet precondition, e.g. "Clear(notebook)".
  const std::string& missing_fact() const noexcept { return missing_; }

 private:
  static std::string describe(const GroundAction& a, const std::string& missing) {
    std::ostringstream os;
    os << "precondition violated for " << a << ": " << missing;
    return os.str();
  }

  GroundAction action_;
  std::string missing_;
};

/// Schema preconditions, in the order they are checked.
inline std::vector<Fact> preconditions(const GroundAction& a) {
  switch (a.kind) {
    case GroundAction::Kind::Unstack: return {Fact::on(a.x, a.y), Fact::clear(a.x)};
    case GroundAction::Kind::StackFromTable:
      return {Fact::on_table(a.x), Fact::clear(a.x), Fact::clear(a.y)};
    case GroundAction::Kind::Stack:
      return {Fact::on(a.x, a.y), Fact::clear(a.x), Fact::clear(a.z)};
  }
  return {};
}

/// Mutable access to a state's support map for apply(); keeps occupants in sync.
class StateEditor {
 public:
  explicit StateEditor(WorldState& st) : st_(st) {}
  void move(const std::string& obj, std::optional<std::string> onto) {
    auto& below = st_.support_.at(obj);
    if (below) st_.occupant_.erase(*below);
    below = std::move(onto);
    if (below) st_.occupant_[*below] = obj;
  }

 private:
  WorldState& st_;
};

/// Successor of `state` under `action`. Throws PreconditionViolation naming the
/// first unmet precondition. The input state is untouched.
inline WorldState apply(const WorldState& state, const GroundAction& action) {
  const auto args = action.arguments();
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = i + 1; j < args.size(); ++j)
      if (args[i] == args[j])
        throw PreconditionViolation(action, "distinct arguments ('" + args[i] + "' repeated)");

  for (const auto& pre : preconditions(action)) {
    if (!state.holds(pre)) {
      std::ostringstream os;
      os << pre;
      throw PreconditionViolation(action, os.str());
    }
  }
  WorldState next = state;
  StateEditor edit(next);
  switch (action.kind) {
    case GroundAction::Kind::Unstack: edit.move(action.x, std::nullopt); break;
    case GroundAction::Kind::StackFromTable: edit.move(action.x, action.y); break;
    case GroundAction::Kind::Stack: edit.move(action.x, action.z); break;
  }
  return next;
}

// ----------------------------------------------------------------------------
// Goals, problems, execution
// ----------------------------------------------------------------------------

using Goal = std::vector<Fact>;

inline bool satisfies(const WorldState& state, const Goal& goal) {
  if (goal.empty()) throw std::invalid_argument("goal must contain at least one atom");
  return std::all_of(goal.begin(), goal.end(), [&](const Fact& f) { return state.holds(f); });
}

struct Problem {
  std::string id;
  std::vector<ObjectId> objects;  // presentation order
  WorldState init;
  Goal goal;

  std::vector<std::string> object_names() const {
    std::vector<std::string> out;
    out.reserve(objects.size());
    for (const auto& o : objects) out.push_back(o.name);
    return out;
  }

  /// Problems compare with `objects` treated as a set.
  friend bool operator==(const Problem& l, const Problem& r) {
    if (l.id != r.id || l.init != r.init || l.goal != r.goal) return false;
    auto a = l.objects, b = r.objects;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }
};

/// Checks the Problem invariants: unique non-empty names, init over exactly
/// the objects, goal non-empty and over known objects.
inline void check_problem(const Problem& p) {
  std::set<std::string> names;
  for (const auto& o : p.objects) {
    if (o.name.empty()) throw InconsistentState("empty object name");
    if (!names.insert(o.name).second) throw InconsistentState("duplicate object '" + o.name + "'");
  }
  const auto init_objs = p.init.objects();
  if (std::set<std::string>(init_objs.begin(), init_objs.end()) != names)
    throw InconsistentState("initial state does not cover exactly the problem objects");
  if (p.goal.empty()) throw InconsistentState("empty goal");
  for (const auto& f : p.goal) {
    if (!names.count(f.a) || (f.kind == Fact::Kind::On && !names.count(f.b)))
      throw InconsistentState("goal mentions an unknown object");
    if (f.kind == Fact::Kind::On && f.a == f.b) throw InconsistentState("goal puts an object on itself");
  }
}

struct ExecStatus {
  bool ok = true;
  std::size_t failed_step = 0;  // valid when !ok
  std::string error;            // PreconditionViolation message when !ok
};

struct Execution {
  WorldState final_state;
  ExecStatus status;
};

/// Applies the plan step by step. On the first failure returns the state
/// before the failing step together with its index.
inline Execution execute_plan(const WorldState& init, const Plan& plan) {
  Execution ex{init, {}};
  for (std::size_t i = 0; i < plan.size(); ++i) {
    try {
      ex.final_state = apply(ex.final_state, plan[i]);
    } catch (const PreconditionViolation& e) {
      ex.status = {false, i, e.what()};
      return ex;
    }
  }
  return ex;
}

// ----------------------------------------------------------------------------
// Enumeration
// ----------------------------------------------------------------------------

inline constexpr std::size_t kMaxEnumeratedObjects = 6;

/// Every canonical state over `objects`, each exactly once, in a fixed order.
/// Objects are inserted one at a time: each new object either starts a new
/// stack or is placed directly below any existing object or on top of a stack.
inline std::vector<WorldState> enumerate_configurations(const std::vector<std::string>& objects) {
  if (objects.size() > kMaxEnumeratedObjects) throw TooManyObjects(objects.size());
  if (objects.empty()) throw std::invalid_argument("need at least one object");

  using Stacks = std::vector<std::vector<std::string>>;
  std::vector<Stacks> layer{Stacks{}};
  for (const auto& obj : objects) {
    std::vector<Stacks> next;
    for (const auto& stacks : layer) {
      for (std::size_t s = 0; s < stacks.size(); ++s) {
        for (std::size_t pos = 0; pos <= stacks[s].size(); ++pos) {
          Stacks copy = stacks;
          copy[s].insert(copy[s].begin() + static_cast<std::ptrdiff_t>(pos), obj);
          next.push_back(std::move(copy));
        }
      }
      Stacks copy = stacks;
      copy.push_back({obj});
      next.push_back(std::move(copy));
    }
    layer = std::move(next);
  }

  std::vector<WorldState> out;
  out.reserve(layer.size());
  for (const auto& stacks : layer) {
    std::vector<std::pair<std::string, std::optional<std::string>>> supports;
    for (const auto& st : stacks)
      for (std::size_t i = 0; i < st.size(); ++i)
        supports.emplace_back(st[i], i == 0 ? std::nullopt : std::optional<std::string>(st[i - 1]));
    out.push_back(from_supports_unchecked(supports.begin(), supports.end()));
  }
  return out;
}

}  // namespace stacksolve
