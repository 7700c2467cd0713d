#include <gtest/gtest.h>

#include "stacksolve/pddl.hpp"
#include "stacksolve/planner.hpp"
#include "stacksolve/strips.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace stacksolve;

namespace {

const char* kSupPddl =
    "(define (problem supplement)\n"
    "  (:domain stacking)\n"
    "  (:objects writing-pad notebook tissue-box tablet)\n"
    "  (:init\n"
    "    (on-table writing-pad)\n"
    "    (on notebook writing-pad)\n"
    "    (on tissue-box notebook)\n"
    "    (clear tissue-box)\n"
    "    (on-table tablet)\n"
    "    (clear tablet))\n"
    "  (:goal (and (clear notebook))))\n";

// Core successor and interpreter successor agree: both reject, or both accept
// and produce the same atom set.
void expect_equivalent(const pddl::Domain& dom, const WorldState& s, const GroundAction& a) {
  std::optional<WorldState> core;
  try {
    core = apply(s, a);
  } catch (const PreconditionViolation&) {
  }
  const auto interp = strips::apply(dom, a, strips::to_atoms(s));
  ASSERT_EQ(core.has_value(), interp.has_value()) << a << " in " << s;
  if (core) {
    ASSERT_EQ(strips::to_atoms(*core), *interp) << a << " in " << s;
  }
}

}  // namespace

TEST(Domain, EmitParseFixedPoint) {
  const auto text = pddl::emit_domain();
  const auto parsed = pddl::parse_pddl_domain(text);
  EXPECT_EQ(parsed, pddl::stacking_domain());
  EXPECT_EQ(pddl::emit_domain(parsed), text);
}

TEST(Domain, GoldenFile) {
  EXPECT_EQ(pddl::emit_domain(), testutil::read_text(testutil::data_path("domain.pddl")));
}

TEST(Domain, ParserIgnoresLayoutAndCase) {
  std::string text = pddl::emit_domain();
  for (auto& c : text)
    if (c == '\n') c = ' ';
  text = "; leading comment\n" + text;
  text.replace(text.find("(define"), 7, "(DEFINE");
  EXPECT_EQ(pddl::parse_pddl_domain(text), pddl::stacking_domain());
}

TEST(Problem, SupplementGolden) {
  EXPECT_EQ(pddl::emit_problem(testutil::supplement_problem()), kSupPddl);
  EXPECT_EQ(pddl::parse_pddl_problem(kSupPddl), testutil::supplement_problem());
}

TEST(Problem, RecomputesMissingClearFacts) {
  const char* text =
      "(define (problem supplement) (:domain stacking)\n"
      "  (:objects writing-pad notebook tissue-box tablet)\n"
      "  (:init (on-table writing-pad) (on notebook writing-pad) (on tissue-box notebook) (on-table tablet))\n"
      "  (:goal (clear notebook)))";
  EXPECT_EQ(pddl::parse_pddl_problem(text), testutil::supplement_problem());
}

TEST(Problem, Errors) {
  EXPECT_THROW(pddl::parse_pddl_problem("(define (problem p) (:domain stacking) (:objects a)"), SyntaxError);
  EXPECT_THROW(pddl::parse_pddl_problem("(define (problem p) (:objects a b) (:init (on-table a) (on-table b)"
                                        " (on a b)) (:goal (clear a)))"),
               InconsistentState);
  EXPECT_THROW(pddl::parse_pddl_problem("(define (problem p) (:objects a) (:init (on-table a))"
                                        " (:goal (clear zz)))"),
               ParseError);
  EXPECT_THROW(pddl::parse_pddl_problem("(define (problem p) (:objects a) (:init (on-table a)))"), ParseError);
}

TEST(Goal, FragmentParser) {
  const std::vector<std::string> objs = {"writing pad", "notebook"};
  EXPECT_EQ(pddl::parse_pddl_goal("(and (clear notebook) (on notebook writing-pad));", objs),
            (Goal{Fact::clear("notebook"), Fact::on("notebook", "writing pad")}));
  EXPECT_EQ(pddl::parse_pddl_goal("(clear notebook)", objs), (Goal{Fact::clear("notebook")}));
  EXPECT_THROW(pddl::parse_pddl_goal("(and (clear anvil))", objs), ParseError);
  EXPECT_THROW(pddl::parse_pddl_goal("(and (clear notebook)", objs), SyntaxError);
  EXPECT_THROW(pddl::parse_pddl_goal("(and)", objs), ParseError);
}

TEST(Plan, RoundTripAndErrors) {
  const auto p = testutil::supplement_problem();
  const Plan plan = {GroundAction::unstack("tissue box", "notebook"),
                     GroundAction::stack("notebook", "writing pad", "tablet"),
                     GroundAction::stack_from_table("writing pad", "notebook")};
  const auto text = pddl::emit_plan(plan);
  EXPECT_EQ(text,
            "(unstack tissue-box notebook)\n(stack notebook writing-pad tablet)\n"
            "(stackfromtable writing-pad notebook)\n");
  EXPECT_EQ(pddl::parse_pddl_plan(text, p), plan);
  EXPECT_THROW(pddl::parse_pddl_plan("(fly tablet)", p), UnknownAction);
  EXPECT_THROW(pddl::parse_pddl_plan("(unstack tablet)", p), UnknownAction);
  EXPECT_THROW(pddl::parse_pddl_plan("(unstack anvil notebook)", p), UnknownObject);
}

TEST(Names, HyphenationIsInvertible) {
  for (const auto& n : Vocabulary::builtin().household) EXPECT_EQ(pddl::dehyphenate(pddl::hyphenate(n)), n);
  for (const auto& n : Vocabulary::builtin().ood) EXPECT_EQ(pddl::dehyphenate(pddl::hyphenate(n)), n);
  EXPECT_EQ(pddl::hyphenate("corduroy pants"), "corduroy-pants");
}

TEST(RoundTrip, ProblemPddlThousandCases) {
  Rng rng = substream(20240611, 3);
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto p = testutil::random_problem(rng, i);
    const auto text = pddl::emit_problem(p);
    const auto back = pddl::parse_pddl_problem(text);
    ASSERT_EQ(back, p) << text;
    ASSERT_EQ(pddl::emit_problem(back), text);
  }
}

// The generic STRIPS interpreter over the emitted-and-reparsed domain is an
// independent route to successor states.
TEST(StripsOracle, ExhaustiveFourObjectTransitions) {
  const auto dom = pddl::parse_pddl_domain(pddl::emit_domain());
  const std::vector<std::string> objs = {"mug", "writing pad", "anvil", "bowl"};
  const auto actions = oracle::distinct_ground_actions(objs);
  for (const auto& s : enumerate_configurations(objs))
    for (const auto& a : actions) expect_equivalent(dom, s, a);
}

TEST(StripsOracle, RandomStateActionPairs) {
  const auto dom = pddl::parse_pddl_domain(pddl::emit_domain());
  Rng rng = substream(20240611, 4);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto p = testutil::random_problem(rng, i);
    const auto actions = oracle::distinct_ground_actions(p.object_names());
    expect_equivalent(dom, p.init, actions[uniform_index(rng, actions.size())]);
  }
}

TEST(StripsOracle, RepeatedArgumentsRejectedByCore) {
  const auto s = testutil::supplement_problem().init;
  EXPECT_THROW(apply(s, GroundAction::stack_from_table("tablet", "tablet")), PreconditionViolation);
}

TEST(Vocabulary, FileMatchesBuiltin) {
  EXPECT_EQ(load_vocabulary(testutil::data_path("vocabulary.txt")), Vocabulary::builtin());
}

TEST(Vocabulary, RejectsCollidingNames) {
  std::istringstream reserved("[household]\nside table\n[ood]\nanvil\n");
  EXPECT_THROW(parse_vocabulary(reserved), VocabularyError);
  std::istringstream nested("[household]\nbowl\n[ood]\nbig bowl\n");
  EXPECT_THROW(parse_vocabulary(nested), VocabularyError);
  std::istringstream hyphen("[household]\nt-shirt\n[ood]\nanvil\n");
  EXPECT_THROW(parse_vocabulary(hyphen), VocabularyError);
}

