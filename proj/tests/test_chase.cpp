#include <gtest/gtest.h>

#include "examples.hpp"
#include "kb.hpp"
#include "kbound/chase.hpp"
#include "kbound/error.hpp"

using namespace kbound;
using testkb::atom;
using testkb::c;
using testkb::v;

namespace {

VariantPolicy policy(Variant x, bool bf = false, TieBreak tb = TieBreak::Lex) {
  return VariantPolicy{x, bf, tb, NullNaming::Trigger};
}

std::vector<std::string> trigger_names(const Derivation& d) {
  std::vector<std::string> out;
  for (const Trigger& t : d.triggers()) out.push_back(to_string(t));
  return out;
}

}  // namespace

TEST(Applicability, RestrictedSkipsRetractableOutput) {
  auto rs = testkb::rules(examples::kShift);
  Derivation d(testkb::facts(examples::kReflexive), rs);
  Trigger t = testkb::trigger(rs, "R2", {{"X", c("a")}, {"Y", c("a")}});
  EXPECT_FALSE(is_applicable(Variant::R, d, t));
  EXPECT_FALSE(is_applicable(Variant::E, d, t));
  EXPECT_TRUE(is_applicable(Variant::O, d, t));
  ASSERT_TRUE(is_applicable(Variant::SO, d, t));
  d.extend(t);
  Term z = t.null_for(v("Z"));
  Trigger next = testkb::trigger(rs, "R2", {{"X", c("a")}, {"Y", z}});
  EXPECT_TRUE(is_applicable(Variant::SO, d, next));
  EXPECT_FALSE(is_applicable(Variant::O, d, t));
}

TEST(Applicability, EquivalentStopsWhereRestrictedGoesOn) {
  auto rs = testkb::rules(examples::kLoopBack);
  Derivation d(testkb::facts(examples::kLoopBackFacts), rs);
  Trigger first = testkb::trigger(rs, "R3", {{"X", c("a")}, {"Y", v("W")}});
  d.extend(first);
  Term z0 = first.null_for(v("Z"));
  EXPECT_EQ(d.atoms(), (FactBase{atom("p(a,W)"), atom("p(a,a)"), atom("p", {v("W"), z0})}));
  Trigger second = testkb::trigger(rs, "R3", {{"X", v("W")}, {"Y", z0}});
  EXPECT_TRUE(is_applicable(Variant::R, d, second));
  EXPECT_FALSE(is_applicable(Variant::E, d, second));
  EXPECT_THROW(is_applicable(Variant::O, d, testkb::trigger(rs, "R3", {{"X", c("b")}, {"Y", c("b")}})),
               SupportNotPresent);
}

TEST(Applicability, SemiObliviousBlocksSameFrontier) {
  auto rs = testkb::rules(examples::kGrow);
  Derivation d(testkb::facts("p(a,a). p(a,b)."), rs);
  d.extend(testkb::trigger(rs, "R1", {{"X", c("a")}, {"Y", c("a")}}));
  Trigger sibling = testkb::trigger(rs, "R1", {{"X", c("a")}, {"Y", c("b")}});
  EXPECT_FALSE(is_applicable(Variant::SO, d, sibling));
  EXPECT_TRUE(is_applicable(Variant::O, d, sibling));
}

TEST(Extend, RanksDependOnTheOrder) {
  auto rs = testkb::rules(examples::kTwoPaths);
  auto pi = [&](const char* id) { return testkb::trigger(rs, id, {{"X", c("a")}}); };
  Derivation d1(testkb::facts("p(a)."), rs);
  d1.extend(pi("R1"));
  d1.extend(pi("R2"));
  d1.extend(pi("R3"));
  EXPECT_EQ(d1.rank_of(atom("r(a)")), 2u);
  EXPECT_EQ(*d1.producer(atom("r(a)")), 1u);
  EXPECT_EQ(d1.depth(), 2u);
  EXPECT_FALSE(is_rank_compatible(d1));

  Derivation d2(testkb::facts("p(a)."), rs);
  d2.extend(pi("R1"));
  d2.extend(pi("R3"));
  const Step& last = d2.extend(pi("R2"));
  EXPECT_TRUE(last.produced.empty());
  EXPECT_EQ(last.rank, 2u);
  EXPECT_EQ(d2.rank_of(atom("r(a)")), 1u);
  EXPECT_EQ(*d2.producer(atom("r(a)")), 1u);
  EXPECT_EQ(d2.depth(), 1u);
  EXPECT_TRUE(is_breadth_first(d2, Variant::O));
  EXPECT_EQ(d2.factbase_at(1), testkb::facts("p(a). q(a)."));
}

TEST(Extend, Errors) {
  auto rs = testkb::rules(examples::kTwoPaths);
  Derivation d(testkb::facts("p(a)."), rs);
  Trigger t = testkb::trigger(rs, "R1", {{"X", c("a")}});
  d.extend(t);
  EXPECT_THROW(d.extend(t), DuplicateTrigger);
  EXPECT_THROW(d.extend(testkb::trigger(rs, "R2", {{"X", c("b")}})), SupportNotPresent);
  EXPECT_THROW(d.rank_of(atom("s(a)")), AtomNotInDerivation);
}

TEST(Run, Examples) {
  auto grow = testkb::rules(examples::kGrow);
  FactBase reflexive = testkb::facts(examples::kReflexive);
  ChaseOutcome so = run(reflexive, grow, policy(Variant::SO));
  EXPECT_EQ(so.status, ChaseStatus::Terminated);
  EXPECT_EQ(so.depth, 1u);
  EXPECT_EQ(so.derivation.length(), 1u);

  ChaseOutcome cyc = run(testkb::facts("p(a,b)."), testkb::rules(examples::kCycle), policy(Variant::R, true));
  EXPECT_EQ(cyc.status, ChaseStatus::Terminated);
  EXPECT_EQ(cyc.depth, 1u);
  EXPECT_EQ(cyc.derivation.atoms().size(), 3u);
  EXPECT_TRUE(cyc.derivation.atoms().contains(atom("p(a,b)")));

  ChaseOutcome loop = run(testkb::facts(examples::kLoopBackFacts), testkb::rules(examples::kLoopBack),
                          policy(Variant::R), ChaseCaps{5, 1000});
  EXPECT_EQ(loop.status, ChaseStatus::DepthCapReached);
  EXPECT_EQ(loop.depth, 5u);
}

TEST(Run, OutcomesAreValidDerivations) {
  auto rs = testkb::rules(examples::kDetour);
  FactBase f = testkb::facts("p(a,b).");
  for (Variant x : {Variant::O, Variant::SO, Variant::R, Variant::E}) {
    for (bool bf : {false, true}) {
      for (TieBreak tb : {TieBreak::Lex, TieBreak::Fifo}) {
        ChaseOutcome out = run(f, rs, policy(x, bf, tb), ChaseCaps{4, 1000});
        EXPECT_TRUE(is_x_derivation(out.derivation, x)) << to_string(x) << bf;
        EXPECT_LE(out.depth, 4u);
        if (out.status == ChaseStatus::Terminated) EXPECT_TRUE(is_terminating(out.derivation, x));
        if (bf && x != Variant::E) EXPECT_TRUE(is_rank_compatible(out.derivation)) << to_string(x);
      }
    }
  }
}

TEST(Run, DatalogTerminates) {
  ChaseOutcome out = run(testkb::facts("p(a,b). p(b,c). p(c,d)."), testkb::rules(examples::kTransitivity),
                         policy(Variant::O, true));
  EXPECT_EQ(out.status, ChaseStatus::Terminated);
  EXPECT_EQ(out.depth, 2u);
  EXPECT_EQ(out.derivation.atoms().size(), 6u);
}

TEST(Run, FrontierNamingGivesEqualAtomSets) {
  auto rs = testkb::rules("@R p(X,Y) -> q(X,Z). @S q(X,Z) -> r(Z).");
  FactBase f = testkb::facts("p(a,b). p(a,c). p(b,b).");
  VariantPolicy lex{Variant::SO, true, TieBreak::Lex, NullNaming::Frontier};
  VariantPolicy fifo{Variant::SO, true, TieBreak::Fifo, NullNaming::Frontier};
  EXPECT_EQ(run(f, rs, lex).derivation.atoms(), run(f, rs, fifo).derivation.atoms());
}

TEST(Ancestors, Examples) {
  auto rs = testkb::rules(examples::kShift);
  ChaseOutcome out = run(testkb::facts("p(a,b)."), rs, policy(Variant::O), ChaseCaps{2, 100});
  EXPECT_TRUE(ancestors(out.derivation, atom("p(a,b)")).empty());
  EXPECT_TRUE(prime_ancestors(out.derivation, atom("p(a,b)")).empty());
  const Derivation& d = out.derivation;
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    if (d.rank_at(i) != 2) continue;
    EXPECT_EQ(ancestors(d, d.atoms()[i]).size(), 2u);
    EXPECT_EQ(prime_ancestors(d, d.atoms()[i]), std::vector<Atom>{atom("p(a,b)")});
  }
  EXPECT_THROW(ancestors(d, atom("p(z,z)")), AtomNotInDerivation);
}

TEST(Ancestors, SymmetricPair) {
  auto rs = testkb::rules(examples::kSymmetricPair);
  Derivation d(testkb::facts(examples::kSymmetricPairFacts), rs);
  d.extend(testkb::trigger(rs, "R", {{"X", v("X1")}, {"Y", v("X2")}}));
  EXPECT_EQ(prime_ancestors(d, atom("p(X1,X2)")), (std::vector<Atom>{atom("p(X1,X1)"), atom("p(X2,X2)")}));
}

TEST(ChaseGraph, EdgesFromSupportToProduced) {
  auto rs = testkb::rules(examples::kTwoPaths);
  Derivation d(testkb::facts("p(a)."), rs);
  d.extend(testkb::trigger(rs, "R1", {{"X", c("a")}}));
  d.extend(testkb::trigger(rs, "R2", {{"X", c("a")}}));
  d.extend(testkb::trigger(rs, "R3", {{"X", c("a")}}));
  ChaseGraph g = d.chase_graph();
  EXPECT_EQ(g.nodes.size(), 3u);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[0].from, atom("p(a)"));
  EXPECT_EQ(g.edges[0].to, atom("q(a)"));
  EXPECT_EQ(g.edges[1].from, atom("q(a)"));
  EXPECT_EQ(g.edges[1].to, atom("r(a)"));
  EXPECT_EQ(g.edges[1].step, 1u);
}

TEST(Restrict, Examples) {
  auto rs = testkb::rules(examples::kSoAncestry);
  FactBase f = testkb::facts(examples::kSoAncestryFacts);
  ChaseOutcome out = run(f, rs, policy(Variant::SO, true));
  EXPECT_EQ(trigger_names(restrict(out.derivation, f)), trigger_names(out.derivation));
  EXPECT_THROW(restrict(out.derivation, testkb::facts("p(z,z).")), NotASubset);

  auto shift = testkb::rules(examples::kRankShift);
  Derivation d(testkb::facts("p(a). q(a)."), shift);
  Trigger t1 = testkb::trigger(shift, "R1", {{"X", c("a")}});
  Trigger t2 = testkb::trigger(shift, "R2", {{"X", c("a")}});
  d.extend(t1);
  d.extend(t2);
  EXPECT_EQ(d.trigger_rank(t2), 1u);
  Derivation r = restrict(d, testkb::facts("p(a)."));
  EXPECT_EQ(r.length(), 2u);
  EXPECT_EQ(r.steps()[1].rank, 2u);
  EXPECT_EQ(r.rank_of(atom("r(a)")), 2u);
}

TEST(Restrict, BreadthFirstObliviousOrderIsNotInherited) {
  // Leaving p(a) out lets R1 derive it again at rank 1, which pushes the
  // already placed trigger on p(a) to rank 2 ahead of a rank 1 trigger.
  auto rs = testkb::rules("@R1 q(Z,Y) -> p(Y). @R2 p(X) -> q(X,X).");
  ChaseOutcome out = run(testkb::facts("q(a,a). p(a). p(c)."), rs, policy(Variant::O, true));
  ASSERT_TRUE(is_breadth_first(out.derivation, Variant::O));
  Derivation r = restrict(out.derivation, testkb::facts("q(a,a). p(c)."));
  EXPECT_TRUE(is_x_derivation(r, Variant::O));
  EXPECT_FALSE(is_rank_compatible(r));
}

TEST(ToRankCompatible, Examples) {
  auto rs = testkb::rules(examples::kTwoPaths);
  auto pi = [&](const char* id) { return testkb::trigger(rs, id, {{"X", c("a")}}); };
  Derivation d1(testkb::facts("p(a)."), rs);
  d1.extend(pi("R1"));
  d1.extend(pi("R2"));
  ASSERT_TRUE(is_applicable(Variant::R, d1, pi("R3")) == false);
  ASSERT_TRUE(is_terminating(d1, Variant::R));
  Derivation same = to_rank_compatible(d1);
  EXPECT_EQ(trigger_names(same), trigger_names(d1));

  Derivation d2(testkb::facts("p(a)."), rs);
  d2.extend(pi("R1"));
  d2.extend(pi("R2"));
  d2.extend(pi("R3"));
  Derivation sorted = to_rank_compatible(d2);
  EXPECT_EQ(trigger_names(sorted), (std::vector<std::string>{"(R1, {X->a})", "(R3, {X->a})"}));
  EXPECT_EQ(sorted.depth(), 1u);

  EXPECT_THROW(to_rank_compatible(Derivation(testkb::facts("p(a)."), rs)), NotTerminating);

  auto detour = testkb::rules(examples::kDetour);
  Derivation d3(testkb::facts("p(a,b)."), detour);
  Trigger r2 = testkb::trigger(detour, "R2", {{"X", c("a")}, {"Y", c("b")}});
  d3.extend(r2);
  d3.extend(testkb::trigger(detour, "R3", {{"Y", c("b")}, {"Z", r2.null_for(v("Z"))}}));
  ASSERT_TRUE(is_terminating(d3, Variant::R));
  EXPECT_EQ(d3.depth(), 2u);
  Derivation r3 = to_rank_compatible(d3);
  EXPECT_TRUE(is_terminating(r3, Variant::R));
  EXPECT_TRUE(is_rank_compatible(r3));
  EXPECT_LE(r3.depth(), 2u);
}

TEST(BreadthFirst, FinalRankMayStayOpen) {
  auto rs = testkb::rules(examples::kShift);
  ChaseOutcome out = run(testkb::facts("p(a,b)."), rs, policy(Variant::O, true), ChaseCaps{2, 100});
  EXPECT_EQ(out.status, ChaseStatus::DepthCapReached);
  EXPECT_TRUE(is_breadth_first(out.derivation, Variant::O));
  Derivation part = out.derivation.prefix(1);
  EXPECT_TRUE(is_breadth_first(part, Variant::O, false));
  EXPECT_FALSE(is_terminating(part, Variant::O));
}
