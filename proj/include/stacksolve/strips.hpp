#pragma once
// A generic STRIPS interpreter over ground atoms. It executes whatever schemas
// a parsed domain declares and knows nothing about stacking, so it serves as
// an independent check of the hand-written transition function.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stacksolve/core.hpp"
#include "stacksolve/pddl.hpp"

namespace stacksolve::strips {

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

using AtomSet = std::set<GroundAtom>;

/// Applies `schema` bound to `args`. Returns nullopt if a precondition is not
/// in `state` or the arity is wrong.
inline std::optional<AtomSet> apply_schema(const pddl::ActionSchema& schema,
                                           const std::vector<std::string>& args,
                                           const AtomSet& state) {
  if (args.size() != schema.parameters.size()) return std::nullopt;
  std::map<std::string, std::string> binding;
  for (std::size_t i = 0; i < args.size(); ++i) binding[schema.parameters[i]] = args[i];
  auto ground = [&](const pddl::Atom& a) {
    GroundAtom g{a.predicate, {}};
    for (const auto& v : a.args) {
      auto it = binding.find(v);
      g.args.push_back(it == binding.end() ? v : it->second);
    }
    return g;
  };
  for (const auto& pre : schema.precondition)
    if (!state.count(ground(pre))) return std::nullopt;
  AtomSet next = state;
  for (const auto& d : schema.del) next.erase(ground(d));
  for (const auto& a : schema.add) next.insert(ground(a));
  return next;
}

inline GroundAtom to_atom(const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::On: return {"on", {pddl::hyphenate(f.a), pddl::hyphenate(f.b)}};
    case Fact::Kind::OnTable: return {"on-table", {pddl::hyphenate(f.a)}};
    case Fact::Kind::Clear: return {"clear", {pddl::hyphenate(f.a)}};
  }
  return {};
}

inline AtomSet to_atoms(const WorldState& s) {
  AtomSet out;
  for (const auto& f : s.facts()) out.insert(to_atom(f));
  return out;
}

/// Runs a core action through the interpreter using the schema of the same name.
inline std::optional<AtomSet> apply(const pddl::Domain& domain, const GroundAction& action,
                                    const AtomSet& state) {
  const auto* schema = domain.find(action_name(action.kind));
  if (!schema) return std::nullopt;
  std::vector<std::string> args;
  for (const auto& a : action.arguments()) args.push_back(pddl::hyphenate(a));
  return apply_schema(*schema, args, state);
}

}  // namespace stacksolve::strips
