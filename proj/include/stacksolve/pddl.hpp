#pragma once
// PDDL encoding of the stacking domain: the fixed domain document, problem
// documents, and plan files (one ground action per line).

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stacksolve/core.hpp"
#include "stacksolve/sexpr.hpp"
#include "stacksolve/vocabulary.hpp"

namespace stacksolve {

class UnknownAction : public ParseError {
 public:
  explicit UnknownAction(const std::string& name) : ParseError("unknown action: " + name) {}
};

class UnknownObject : public ParseError {
 public:
  explicit UnknownObject(const std::string& name) : ParseError("unknown object: " + name) {}
};

namespace pddl {

inline constexpr std::string_view kDomainName = "stacking";

/// Object name to PDDL identifier ("writing pad" -> "writing-pad").
inline std::string hyphenate(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), ' ', '-');
  return out;
}

inline std::string dehyphenate(std::string_view token) {
  std::string out(token);
  std::replace(out.begin(), out.end(), '-', ' ');
  return out;
}

// ----------------------------------------------------------------------------
// Domain model
// ----------------------------------------------------------------------------

struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<std::string> parameters;  // variable names including '?'
  std::vector<Atom> precondition;
  std::vector<Atom> add;
  std::vector<Atom> del;
  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;  // including leading ':'
  std::vector<Atom> predicates;           // args are parameter variables
  std::vector<ActionSchema> actions;
  friend bool operator==(const Domain&, const Domain&) = default;

  const ActionSchema* find(std::string_view action) const {
    for (const auto& a : actions)
      if (a.name == action) return &a;
    return nullptr;
  }
};

/// The stacking domain, with the schemas core::apply implements.
inline Domain stacking_domain() {
  Domain d;
  d.name = std::string(kDomainName);
  d.requirements = {":strips", ":typing"};
  d.predicates = {{"on", {"?x", "?y"}}, {"on-table", {"?x"}}, {"clear", {"?x"}}};
  d.actions = {
      {"unstack",
       {"?x", "?y"},
       {{"on", {"?x", "?y"}}, {"clear", {"?x"}}},
       {{"on-table", {"?x"}}, {"clear", {"?y"}}},
       {{"on", {"?x", "?y"}}}},
      {"stackfromtable",
       {"?x", "?y"},
       {{"on-table", {"?x"}}, {"clear", {"?x"}}, {"clear", {"?y"}}},
       {{"on", {"?x", "?y"}}},
       {{"on-table", {"?x"}}, {"clear", {"?y"}}}},
      {"stack",
       {"?x", "?y", "?z"},
       {{"on", {"?x", "?y"}}, {"clear", {"?x"}}, {"clear", {"?z"}}},
       {{"on", {"?x", "?z"}}, {"clear", {"?y"}}},
       {{"on", {"?x", "?y"}}, {"clear", {"?z"}}}},
  };
  return d;
}

namespace detail {

inline void write_atom(std::ostream& os, const Atom& a) {
  os << "(" << a.predicate;
  for (const auto& arg : a.args) os << " " << arg;
  os << ")";
}

inline void write_typed(std::ostream& os, const std::vector<std::string>& vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? " " : "") << vars[i] << " - object";
}

inline void write_conjunction(std::ostream& os, const std::vector<Atom>& pos,
                              const std::vector<Atom>& neg) {
  os << "(and";
  for (const auto& a : pos) {
    os << " ";
    write_atom(os, a);
  }
  for (const auto& a : neg) {
    os << " (not ";
    write_atom(os, a);
    os << ")";
  }
  os << ")";
}

inline std::string fact_predicate(Fact::Kind k) {
  switch (k) {
    case Fact::Kind::On: return "on";
    case Fact::Kind::OnTable: return "on-table";
    case Fact::Kind::Clear: return "clear";
  }
  return {};
}

inline void write_fact(std::ostream& os, const Fact& f) {
  os << "(" << fact_predicate(f.kind) << " " << hyphenate(f.a);
  if (f.kind == Fact::Kind::On) os << " " << hyphenate(f.b);
  os << ")";
}

[[noreturn]] inline void fail(const SExpr& at, const std::string& what) {
  throw SyntaxError(at.offset, what);
}

inline const std::string& expect_atom(const SExpr& e, const char* what) {
  if (!e.is_atom) fail(e, std::string("expected ") + what);
  return e.atom;
}

/// "(?x - object ?y - object)" or "(?x ?y)" -> {"?x", "?y"}.
inline std::vector<std::string> read_typed_list(const SExpr& list) {
  if (!list.is_list()) fail(list, "expected a parameter list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    const auto& tok = expect_atom(list.items[i], "a name");
    if (tok == "-") {
      if (i + 1 >= list.items.size()) fail(list.items[i], "dangling type marker");
      ++i;  // the single type is `object`
      continue;
    }
    out.push_back(tok);
  }
  return out;
}

inline Atom read_atom(const SExpr& e) {
  if (!e.is_list() || e.items.empty()) fail(e, "expected an atom");
  Atom a;
  a.predicate = expect_atom(e.items[0], "a predicate name");
  for (std::size_t i = 1; i < e.items.size(); ++i) a.args.push_back(expect_atom(e.items[i], "an argument"));
  return a;
}

/// Reads "(and a b (not c))" or a single literal into positive/negative lists.
inline void read_literals(const SExpr& e, std::vector<Atom>& pos, std::vector<Atom>* neg) {
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) read_literals(e.items[i], pos, neg);
    return;
  }
  if (e.head_is("not")) {
    if (!neg) fail(e, "negation is not allowed here");
    if (e.items.size() != 2) fail(e, "malformed negation");
    neg->push_back(read_atom(e.items[1]));
    return;
  }
  pos.push_back(read_atom(e));
}

/// Locates "(define (<kind> <name>) ...)" and returns the name.
inline std::string read_define_header(const SExpr& doc, std::string_view kind) {
  if (!doc.head_is("define") || doc.items.size() < 2) fail(doc, "expected (define ...)");
  const auto& header = doc.items[1];
  if (!header.head_is(kind) || header.items.size() != 2)
    fail(header, "expected (" + std::string(kind) + " <name>)");
  return expect_atom(header.items[1], "a name");
}

inline Fact to_fact(const Atom& a, const std::set<std::string>& objects, const SExpr& at) {
  auto obj = [&](const std::string& token) {
    std::string name = dehyphenate(token);
    if (!objects.count(name)) throw UnknownObject(name);
    return name;
  };
  if (a.predicate == "on" && a.args.size() == 2) return Fact::on(obj(a.args[0]), obj(a.args[1]));
  if (a.predicate == "on-table" && a.args.size() == 1) return Fact::on_table(obj(a.args[0]));
  if (a.predicate == "clear" && a.args.size() == 1) return Fact::clear(obj(a.args[0]));
  fail(at, "unknown predicate (" + a.predicate + "/" + std::to_string(a.args.size()) + ")");
}

}  // namespace detail

inline std::string emit_domain(const Domain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  os << "  (:requirements";
  for (const auto& r : d.requirements) os << " " << r;
  os << ")\n";
  os << "  (:predicates";
  for (const auto& p : d.predicates) {
    os << "\n    (" << p.predicate << " ";
    detail::write_typed(os, p.args);
    os << ")";
  }
  os << ")";
  for (const auto& a : d.actions) {
    os << "\n  (:action " << a.name << "\n";
    os << "    :parameters (";
    detail::write_typed(os, a.parameters);
    os << ")\n    :precondition ";
    detail::write_conjunction(os, a.precondition, {});
    os << "\n    :effect ";
    detail::write_conjunction(os, a.add, a.del);
    os << ")";
  }
  os << ")\n";
  return os.str();
}

inline std::string emit_domain() { return emit_domain(stacking_domain()); }

inline Domain parse_pddl_domain(std::string_view text) {
  const SExpr doc = read_single_sexpr(text);
  Domain d;
  d.name = detail::read_define_header(doc, "domain");
  for (std::size_t i = 2; i < doc.items.size(); ++i) {
    const auto& sec = doc.items[i];
    if (sec.head_is(":requirements")) {
      for (std::size_t j = 1; j < sec.items.size(); ++j)
        d.requirements.push_back(detail::expect_atom(sec.items[j], "a requirement"));
    } else if (sec.head_is(":types")) {
      // Only the implicit `object` type exists.
    } else if (sec.head_is(":predicates")) {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const auto& p = sec.items[j];
        if (!p.is_list() || p.items.empty()) detail::fail(p, "expected a predicate declaration");
        SExpr params = p;
        params.items.erase(params.items.begin());
        d.predicates.push_back({detail::expect_atom(p.items[0], "a predicate name"),
                                detail::read_typed_list(params)});
      }
    } else if (sec.head_is(":action")) {
      if (sec.items.size() < 2) detail::fail(sec, "action without a name");
      ActionSchema a;
      a.name = detail::expect_atom(sec.items[1], "an action name");
      for (std::size_t j = 2; j + 1 < sec.items.size(); j += 2) {
        const auto& key = detail::expect_atom(sec.items[j], "an action keyword");
        const auto& val = sec.items[j + 1];
        if (key == ":parameters") {
          a.parameters = detail::read_typed_list(val);
        } else if (key == ":precondition") {
          detail::read_literals(val, a.precondition, nullptr);
        } else if (key == ":effect") {
          detail::read_literals(val, a.add, &a.del);
        } else {
          detail::fail(sec.items[j], "unsupported action keyword " + key);
        }
      }
      if ((sec.items.size() - 2) % 2 != 0) detail::fail(sec, "odd number of action fields");
      d.actions.push_back(std::move(a));
    } else {
      detail::fail(sec, "unsupported domain section");
    }
  }
  return d;
}

// ----------------------------------------------------------------------------
// Problems
// ----------------------------------------------------------------------------

inline std::string emit_problem(const Problem& p) {
  std::ostringstream os;
  os << "(define (problem " << (p.id.empty() ? "problem" : p.id) << ")\n";
  os << "  (:domain " << kDomainName << ")\n";
  os << "  (:objects";
  for (const auto& o : p.objects) os << " " << hyphenate(o.name);
  os << ")\n";
  os << "  (:init";
  for (const auto& f : p.init.ordered_facts(p.object_names())) {
    os << "\n    ";
    detail::write_fact(os, f);
  }
  os << ")\n";
  os << "  (:goal (and";
  for (const auto& f : p.goal) {
    os << " ";
    detail::write_fact(os, f);
  }
  os << ")))\n";
  return os.str();
}

/// Reads a goal expression: "(and <atom>...)" or a single atom.
inline Goal read_goal(const SExpr& e, const std::set<std::string>& objects) {
  std::vector<Atom> atoms;
  detail::read_literals(e, atoms, nullptr);
  if (atoms.empty()) detail::fail(e, "empty goal");
  Goal g;
  for (const auto& a : atoms) g.push_back(detail::to_fact(a, objects, e));
  return g;
}

/// Parses a goal fragment such as "(and (clear notebook))" over known objects.
/// A trailing ';' and anything after it is ignored.
inline Goal parse_pddl_goal(std::string_view text, const std::vector<std::string>& objects) {
  const std::set<std::string> known(objects.begin(), objects.end());
  Goal g = read_goal(read_single_sexpr(text), known);
  for (const auto& f : g)
    if (f.kind == Fact::Kind::On && f.a == f.b) throw InconsistentState("goal puts '" + f.a + "' on itself");
  return g;
}

/// Whitespace- and keyword-case-insensitive problem parser. Missing clear
/// facts are recomputed; contradictory facts raise InconsistentState.
inline Problem parse_pddl_problem(std::string_view text, const Vocabulary& vocab = Vocabulary::builtin()) {
  const SExpr doc = read_single_sexpr(text);
  Problem p;
  p.id = detail::read_define_header(doc, "problem");

  const SExpr* init = nullptr;
  const SExpr* goal = nullptr;
  std::vector<std::string> names;
  bool have_objects = false;
  for (std::size_t i = 2; i < doc.items.size(); ++i) {
    const auto& sec = doc.items[i];
    if (sec.head_is(":domain")) {
      continue;
    } else if (sec.head_is(":objects")) {
      have_objects = true;
      SExpr list = sec;
      list.items.erase(list.items.begin());
      for (const auto& tok : detail::read_typed_list(list)) names.push_back(dehyphenate(tok));
    } else if (sec.head_is(":init")) {
      init = &sec;
    } else if (sec.head_is(":goal")) {
      goal = &sec;
    } else {
      detail::fail(sec, "unsupported problem section");
    }
  }
  if (!init) detail::fail(doc, "missing :init");
  if (!goal || goal->items.size() != 2) detail::fail(goal ? *goal : doc, "missing or malformed :goal");

  std::vector<Atom> init_atoms;
  for (std::size_t i = 1; i < init->items.size(); ++i) init_atoms.push_back(detail::read_atom(init->items[i]));
  if (!have_objects) {
    for (const auto& a : init_atoms)
      for (const auto& arg : a.args)
        if (auto n = dehyphenate(arg); std::find(names.begin(), names.end(), n) == names.end())
          names.push_back(n);
  }
  const std::set<std::string> known(names.begin(), names.end());
  FactSet facts;
  for (std::size_t i = 0; i < init_atoms.size(); ++i)
    facts.insert(detail::to_fact(init_atoms[i], known, init->items[i + 1]));

  p.init = canonicalize(facts, names);
  p.goal = read_goal(goal->items[1], known);
  for (const auto& n : names) p.objects.push_back(vocab.object(n));
  check_problem(p);
  return p;
}

// ----------------------------------------------------------------------------
// Plans
// ----------------------------------------------------------------------------

inline std::string emit_action(const GroundAction& a) {
  std::string out = "(";
  out += action_name(a.kind);
  for (const auto& arg : a.arguments()) out += " " + hyphenate(arg);
  return out + ")";
}

inline std::string emit_plan(const Plan& plan) {
  std::string out;
  for (const auto& a : plan) out += emit_action(a) + "\n";
  return out;
}

inline Plan parse_pddl_plan(std::string_view text, const Problem& problem) {
  std::set<std::string> known;
  for (const auto& o : problem.objects) known.insert(o.name);
  Plan plan;
  for (const auto& e : read_sexprs(text)) {
    if (!e.is_list() || e.items.empty() || !e.items[0].is_atom) detail::fail(e, "expected an action");
    const auto& name = e.items[0].atom;
    if (name != "unstack" && name != "stackfromtable" && name != "stack") throw UnknownAction(name);
    std::vector<std::string> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      auto n = dehyphenate(detail::expect_atom(e.items[i], "an object"));
      if (!known.count(n)) throw UnknownObject(n);
      args.push_back(std::move(n));
    }
    if (name == "unstack" && args.size() == 2) {
      plan.push_back(GroundAction::unstack(args[0], args[1]));
    } else if (name == "stackfromtable" && args.size() == 2) {
      plan.push_back(GroundAction::stack_from_table(args[0], args[1]));
    } else if (name == "stack" && args.size() == 3) {
      plan.push_back(GroundAction::stack(args[0], args[1], args[2]));
    } else {
      throw UnknownAction(name + "/" + std::to_string(args.size()));
    }
  }
  return plan;
}

}  // namespace pddl
}  // namespace stacksolve
