#pragma once
// Independent reference computations used by unit and acceptance tests. None
// of them go through the planner or the constructive enumerator.

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stacksolve/core.hpp"

namespace oracle {

using stacksolve::Fact;
using stacksolve::GroundAction;
using stacksolve::WorldState;

/// Every support function obj -> {table} U objects that is injective on
/// objects and acyclic, as object -> support name ("<table>" for the table).
inline std::set<std::map<std::string, std::string>> brute_force_configurations(
    const std::vector<std::string>& objs) {
  const std::size_t n = objs.size();
  std::set<std::map<std::string, std::string>> out;
  std::vector<std::size_t> choice(n, 0);  // 0 = table, k = objs[k-1]
  while (true) {
    bool ok = true;
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (choice[i] == 0) continue;
      if (choice[i] - 1 == i || !used.insert(choice[i]).second) ok = false;
    }
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::size_t cur = i, steps = 0;
      while (choice[cur] != 0 && ok) {
        cur = choice[cur] - 1;
        if (++steps > n) ok = false;
      }
    }
    if (ok) {
      std::map<std::string, std::string> m;
      for (std::size_t i = 0; i < n; ++i) m[objs[i]] = choice[i] == 0 ? "<table>" : objs[choice[i] - 1];
      out.insert(m);
    }
    std::size_t k = 0;
    while (k < n && ++choice[k] > n) choice[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline std::map<std::string, std::string> support_map(const WorldState& s) {
  std::map<std::string, std::string> m;
  for (const auto& o : s.objects()) m[o] = s.support_of(o).value_or("<table>");
  return m;
}

inline std::vector<GroundAction> distinct_ground_actions(const std::vector<std::string>& objs) {
  std::vector<GroundAction> out;
  for (const auto& x : objs)
    for (const auto& y : objs) {
      if (x == y) continue;
      out.push_back(GroundAction::unstack(x, y));
      out.push_back(GroundAction::stack_from_table(x, y));
      for (const auto& z : objs)
        if (z != x && z != y) out.push_back(GroundAction::stack(x, y, z));
    }
  return out;
}

/// Shortest distances from `from` to every reachable state, by breadth-first
/// search over all distinct-argument ground actions through core::apply.
inline std::map<WorldState, std::size_t> distances_from(const WorldState& from, const std::vector<std::string>& objs) {
  const auto actions = distinct_ground_actions(objs);
  std::map<WorldState, std::size_t> dist{{from, 0}};
  std::deque<WorldState> queue{from};
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (const auto& a : actions) {
      try {
        auto t = stacksolve::apply(s, a);
        if (dist.emplace(t, dist.at(s) + 1).second) queue.push_back(std::move(t));
      } catch (const stacksolve::PreconditionViolation&) {
      }
    }
  }
  return dist;
}

/// Every ground atom over `objs`.
inline std::vector<Fact> all_atoms(const std::vector<std::string>& objs) {
  std::vector<Fact> out;
  for (const auto& x : objs) {
    out.push_back(Fact::on_table(x));
    out.push_back(Fact::clear(x));
    for (const auto& y : objs)
      if (x != y) out.push_back(Fact::on(x, y));
  }
  return out;
}

}  // namespace oracle
