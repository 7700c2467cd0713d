#pragma once
// Shared fixtures for the unit tests.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stacksolve/benchgen.hpp"
#include "stacksolve/core.hpp"
#include "stacksolve/random.hpp"
#include "stacksolve/vocabulary.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) { return std::string(STACKSOLVE_DATA_DIR) + "/" + rel; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing test file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline stacksolve::Problem supplement_problem() {
  using stacksolve::Fact;
  const std::vector<std::string> names = {"writing pad", "notebook", "tissue box", "tablet"};
  stacksolve::Problem p;
  p.id = "supplement";
  for (const auto& n : names) p.objects.push_back({n, false});
  p.init = stacksolve::canonicalize({Fact::on_table("writing pad"), Fact::on("notebook", "writing pad"),
                                     Fact::on("tissue box", "notebook"), Fact::on_table("tablet")},
                                    names);
  p.goal = {Fact::clear("notebook")};
  return p;
}

/// A random problem over 2..6 objects drawn from both vocabularies. The goal
/// is 1..5 atoms true in some random state, so it is always achievable.
inline stacksolve::Problem random_problem(stacksolve::Rng& rng, std::size_t index) {
  using namespace stacksolve;
  const auto& v = Vocabulary::builtin();
  std::vector<std::string> pool = v.household;
  pool.insert(pool.end(), v.ood.begin(), v.ood.end());
  const std::size_t n = 2 + uniform_index(rng, 5);
  const auto names = sample_without_replacement(pool, n, rng);
  const auto states = enumerate_configurations(names);
  Problem p;
  p.id = "rand-" + std::to_string(index);
  p.init = states[uniform_index(rng, states.size())];
  for (const auto& name : detail::flatten(p.init, names)) p.objects.push_back(v.object(name));
  const auto target = states[uniform_index(rng, states.size())];
  const auto facts = target.ordered_facts(names);
  const std::size_t k = 1 + uniform_index(rng, std::min<std::size_t>(5, facts.size()));
  for (const auto& f : sample_without_replacement(facts, k, rng)) p.goal.push_back(f);
  return p;
}

// Random moves "x onto d" resolved against the tracked state; a move whose
// preconditions fail leaves the tracked state unchanged.
inline stacksolve::Plan random_resolvable_plan(stacksolve::Rng& rng, const stacksolve::Problem& p, std::size_t len) {
  using namespace stacksolve;
  const auto names = p.object_names();
  WorldState st = p.init;
  Plan plan;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& x = names[uniform_index(rng, names.size())];
    const auto& support = st.support_of(x);
    std::vector<std::string> dests;
    if (support) dests.push_back("");
    for (const auto& d : names)
      if (d != x) dests.push_back(d);
    const auto& d = dests[uniform_index(rng, dests.size())];
    GroundAction a = d.empty()  ? GroundAction::unstack(x, *support)
                     : support ? GroundAction::stack(x, *support, d)
                               : GroundAction::stack_from_table(x, d);
    plan.push_back(a);
    try {
      st = apply(st, a);
    } catch (const PreconditionViolation&) {
    }
  }
  return plan;
}

}  // namespace testutil
