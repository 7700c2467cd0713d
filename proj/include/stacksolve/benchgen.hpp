#pragma once
// Benchmark generation: seeded stacking problems in three progressively
// constrained goal conditions. Each family shares one initial configuration
// and one target configuration; later conditions extend the earlier goal with
// further target facts, and the heaviest condition swaps the objects of its
// added facts for out-of-distribution ones.

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stacksolve/core.hpp"
#include "stacksolve/grammar.hpp"
#include "stacksolve/planner.hpp"
#include "stacksolve/random.hpp"
#include "stacksolve/vocabulary.hpp"

namespace stacksolve {

class VocabularyExhausted : public Error {
 public:
  VocabularyExhausted() : Error("out-of-distribution vocabulary exhausted") {}
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

enum class Condition { Initial, SingleConstraint, ManyConstraints };

inline constexpr std::array<Condition, 3> kConditions{Condition::Initial, Condition::SingleConstraint,
                                                       Condition::ManyConstraints};

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::Initial: return "initial";
    case Condition::SingleConstraint: return "single";
    case Condition::ManyConstraints: return "many";
  }
  return "?";
}

inline Condition parse_condition(const std::string& s) {
  for (auto c : kConditions)
    if (s == to_string(c)) return c;
  throw std::invalid_argument("unknown condition '" + s + "'");
}

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t n_objects = 4;
  std::size_t n_many = 4;  // constraints added on top of the initial goal
  Vocabulary vocabulary = Vocabulary::builtin();

  void validate() const {
    if (count < 1) throw std::invalid_argument("count must be positive");
    if (n_objects < 2) throw std::invalid_argument("n_objects must be >= 2");
    if (n_many < 2) throw std::invalid_argument("n_many must be >= 2");
    if (n_objects > detail::kMaxSearchObjects - (n_many - 1))
      throw std::invalid_argument("too many objects for the planner");
    // A fully specified target lists n support facts plus one clear fact per
    // stack, so at most 2n atoms are available for n_many + 1 goal atoms.
    if (2 * n_objects < n_many + 1) throw std::invalid_argument("n_many too large for n_objects");
    if (vocabulary.household.size() < n_objects) throw std::invalid_argument("household vocabulary too small");
    if (vocabulary.ood.size() < n_many - 1) throw std::invalid_argument("ood vocabulary too small");
    check_vocabulary(vocabulary);
  }
};

struct BenchmarkItem {
  std::string id;
  Condition condition = Condition::Initial;
  Problem problem;
  std::string nl_text;
  std::size_t family = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchmarkItem&, const BenchmarkItem&) = default;
};

inline std::string item_id(std::uint64_t seed, std::size_t family, Condition c) {
  return std::to_string(seed) + "-" + std::to_string(family) + "-" + to_string(c);
}

namespace detail {

inline constexpr std::size_t kMaxUniformObjects = 5;

/// Random configuration by placing objects one at a time on the table or on
/// top of an existing stack, each option equally likely. Not uniform over
/// configurations.
inline WorldState sequential_configuration(Rng& rng, const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, std::optional<std::string>>> supports;
  std::vector<std::string> tops;
  for (const auto& name : names) {
    const std::size_t k = uniform_index(rng, tops.size() + 1);
    if (k == tops.size()) {
      supports.emplace_back(name, std::nullopt);
      tops.push_back(name);
    } else {
      supports.emplace_back(name, tops[k]);
      tops[k] = name;
    }
  }
  return from_supports_unchecked(supports.begin(), supports.end());
}

inline std::vector<std::string> flatten(const WorldState& s, const std::vector<std::string>& order) {
  std::vector<std::string> out;
  for (const auto& stack : s.stacks(order)) out.insert(out.end(), stack.begin(), stack.end());
  return out;
}

}  // namespace detail

/// Draws `n_objects` distinct household names and a configuration over them
/// (uniform for up to five objects). Objects are returned in presentation
/// order, i.e. the order in which the rendered text first mentions them.
inline std::pair<std::vector<ObjectId>, WorldState> sample_initial_configuration(Rng& rng, std::size_t n_objects,
                                                                                 const Vocabulary& vocab) {
  if (vocab.household.size() < n_objects) throw std::invalid_argument("household vocabulary too small");
  const auto names = sample_without_replacement(vocab.household, n_objects, rng);
  WorldState state;
  if (n_objects <= detail::kMaxUniformObjects) {
    const auto all = enumerate_configurations(names);
    state = all[uniform_index(rng, all.size())];
  } else {
    state = detail::sequential_configuration(rng, names);
  }
  std::vector<ObjectId> objects;
  for (const auto& n : detail::flatten(state, names)) objects.push_back({n, false});
  return {std::move(objects), std::move(state)};
}

struct TargetSpec {
  WorldState target;
  std::vector<Fact> spec;  // every fact of target, in presentation order
};

/// A target configuration different from `init` (uniform for up to five
/// objects) and its full fact list.
inline TargetSpec sample_target_specification(Rng& rng, const std::vector<std::string>& objects,
                                              const WorldState& init) {
  TargetSpec out;
  if (objects.size() <= detail::kMaxUniformObjects) {
    auto all = enumerate_configurations(objects);
    all.erase(std::remove(all.begin(), all.end(), init), all.end());
    if (all.empty()) throw GenerationError("no configuration differs from the initial one");
    out.target = all[uniform_index(rng, all.size())];
  } else {
    do {
      out.target = detail::sequential_configuration(rng, objects);
    } while (out.target == init);
  }
  out.spec = out.target.ordered_facts(objects);
  return out;
}

struct OodSwap {
  std::vector<Fact> constraints;
  std::vector<ObjectId> new_objects;
};

/// Renames every unprotected object mentioned in constraints[1..] to a fresh
/// out-of-distribution name (one name per object, drawn without replacement).
/// constraints[0] is left as is.
inline OodSwap ood_swap(const std::vector<Fact>& constraints, const std::set<std::string>& protected_objects,
                        const Vocabulary& vocab, Rng& rng) {
  OodSwap out;
  out.constraints = constraints;
  std::map<std::string, std::string> renaming;
  std::vector<std::string> pool = vocab.ood;
  auto rename = [&](std::string& name) {
    if (protected_objects.count(name) || vocab.is_ood(name)) return;
    auto it = renaming.find(name);
    if (it == renaming.end()) {
      if (pool.empty()) throw VocabularyExhausted();
      const std::size_t k = uniform_index(rng, pool.size());
      std::string fresh = pool[k];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
      it = renaming.emplace(name, fresh).first;
      out.new_objects.push_back({fresh, true});
    }
    name = it->second;
  };
  for (std::size_t i = 1; i < out.constraints.size(); ++i) {
    rename(out.constraints[i].a);
    if (out.constraints[i].kind == Fact::Kind::On) rename(out.constraints[i].b);
  }
  return out;
}

namespace detail {

inline void mention(std::set<std::string>& into, const Fact& f) {
  into.insert(f.a);
  if (f.kind == Fact::Kind::On) into.insert(f.b);
}

/// Candidate atoms for the next constraint: unchosen spec atoms not entailed
/// by the chosen ones (entailment checked over all configurations when they
/// can be enumerated). Falls back to any unchosen atom.
inline std::vector<Fact> constraint_candidates(const std::vector<Fact>& spec, const std::vector<Fact>& chosen,
                                               const std::vector<WorldState>* configs) {
  std::vector<Fact> unchosen;
  for (const auto& f : spec)
    if (std::find(chosen.begin(), chosen.end(), f) == chosen.end()) unchosen.push_back(f);
  if (!configs) return unchosen;

  std::vector<const WorldState*> models;
  for (const auto& s : *configs)
    if (std::all_of(chosen.begin(), chosen.end(), [&](const Fact& f) { return s.holds(f); })) models.push_back(&s);
  std::vector<Fact> out;
  for (const auto& f : unchosen)
    if (!std::all_of(models.begin(), models.end(), [&](const WorldState* s) { return s->holds(f); }))
      out.push_back(f);
  return out.empty() ? unchosen : out;
}

inline Fact draw_constraint(Rng& rng, const std::vector<Fact>& spec, const std::vector<Fact>& chosen,
                            const std::vector<WorldState>* configs) {
  const auto cands = constraint_candidates(spec, chosen, configs);
  if (cands.empty()) throw GenerationError("target specification has too few facts");
  return cands[uniform_index(rng, cands.size())];
}

/// Initial goal atom: an unsatisfied Clear or OnTable fact of the target, else
/// an unsatisfied On fact.
inline Fact draw_initial_atom(Rng& rng, const std::vector<Fact>& spec, const WorldState& init) {
  std::vector<Fact> single, on;
  for (const auto& f : spec) {
    if (init.holds(f)) continue;
    (f.kind == Fact::Kind::On ? on : single).push_back(f);
  }
  const auto& pool = single.empty() ? on : single;
  if (pool.empty()) throw GenerationError("target equals the initial state");
  return pool[uniform_index(rng, pool.size())];
}

}  // namespace detail

inline constexpr int kMaxFamilyAttempts = 100;

/// The three items of one family. Resamples the whole family if any item is
/// not solved by breadth-first search.
inline std::array<BenchmarkItem, 3> build_family(Rng& rng, const GenConfig& config, std::size_t family) {
  for (int attempt = 0; attempt < kMaxFamilyAttempts; ++attempt) {
    auto [objects, init] = sample_initial_configuration(rng, config.n_objects, config.vocabulary);
    std::vector<std::string> names;
    for (const auto& o : objects) names.push_back(o.name);
    const auto target = sample_target_specification(rng, names, init);
    if (target.spec.size() < config.n_many + 1) continue;

    std::optional<std::vector<WorldState>> configs;
    if (names.size() <= kMaxEnumeratedObjects) configs = enumerate_configurations(names);
    const auto* models = configs ? &*configs : nullptr;

    const Fact initial = detail::draw_initial_atom(rng, target.spec, init);
    std::vector<Fact> chosen{initial};
    std::vector<Fact> constraints;
    for (std::size_t i = 0; i < config.n_many; ++i) {
      constraints.push_back(detail::draw_constraint(rng, target.spec, chosen, models));
      chosen.push_back(constraints.back());
    }

    std::set<std::string> protected_objects;
    detail::mention(protected_objects, initial);
    detail::mention(protected_objects, constraints.front());
    const auto swapped = ood_swap(constraints, protected_objects, config.vocabulary, rng);

    std::array<BenchmarkItem, 3> items;
    for (std::size_t c = 0; c < 3; ++c) {
      auto& item = items[c];
      item.condition = kConditions[c];
      item.family = family;
      item.seed = config.seed;
      item.id = item_id(config.seed, family, item.condition);
      item.problem.id = item.id;
      item.problem.objects = objects;
      item.problem.init = init;
      item.problem.goal = {initial};
    }
    items[1].problem.goal.push_back(constraints.front());

    auto& many = items[2].problem;
    many.goal = {initial};
    many.goal.insert(many.goal.end(), swapped.constraints.begin(), swapped.constraints.end());
    if (!swapped.new_objects.empty()) {
      FactSet facts = many.init.facts();
      std::vector<std::string> all_names = names;
      for (const auto& o : swapped.new_objects) {
        many.objects.push_back(o);
        all_names.push_back(o.name);
        facts.insert(Fact::on_table(o.name));
      }
      many.init = canonicalize(facts, all_names);
    }

    bool ok = true;
    for (auto& item : items) {
      check_problem(item.problem);
      item.nl_text = grammar::render_problem(item.problem);
      ok = ok && solve(item.problem).solved();
    }
    if (ok) return items;
  }
  throw GenerationError("could not build a solvable family after " + std::to_string(kMaxFamilyAttempts) +
                        " attempts");
}

/// All families, each drawn from its own substream of the master seed. Items
/// are ordered by family, then condition.
inline std::vector<BenchmarkItem> generate_benchmark(const GenConfig& config) {
  config.validate();
  std::vector<BenchmarkItem> out;
  out.reserve(3 * config.count);
  for (std::size_t family = 0; family < config.count; ++family) {
    Rng rng = substream(config.seed, family);
    for (auto& item : build_family(rng, config, family)) out.push_back(std::move(item));
  }
  return out;
}

}  // namespace stacksolve
