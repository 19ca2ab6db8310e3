#include <gtest/gtest.h>

#include <random>

#include "kb.hpp"
#include "kbound/error.hpp"
#include "kbound/syntax.hpp"

using namespace kbound;
using testkb::atom;
using testkb::c;
using testkb::v;

TEST(ParseRules, Examples) {
  RuleSet rs = parse_rules("# family\n@R1 parent(X,Y) -> ancestor(X,Y).\nancestor(X,Y), parent(Y,Z) -> ancestor(X,Z).\n");
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0]->id(), "R1");
  EXPECT_EQ(rs[1]->id(), "R2");
  EXPECT_EQ(rs[1]->body().size(), 2u);
  EXPECT_TRUE(rs[1]->is_datalog());

  RuleSet ex = parse_rules("human(X) -> parentOf(Z,X), human(Z).");
  EXPECT_EQ(ex[0]->existentials(), std::vector<Term>{v("Z")});
  EXPECT_EQ(ex[0]->frontier(), std::vector<Term>{v("X")});
}

TEST(ParseRules, AutomaticIdsSkipTakenNames) {
  RuleSet rs = parse_rules("@R2 p(X) -> q(X). q(X) -> r(X). r(X) -> s(X).");
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_EQ(rs[0]->id(), "R2");
  EXPECT_NE(rs[1]->id(), "R2");
  EXPECT_NE(rs[2]->id(), "R2");
  EXPECT_NE(rs[1]->id(), rs[2]->id());
}

TEST(ParseFacts, Examples) {
  FactBase f = parse_facts("p(a,X). human(alice). n(42).\np(a,X).");
  EXPECT_EQ(f, (FactBase{atom("p(a,X)"), atom("human(alice)"), atom("n(42)")}));
  EXPECT_EQ(parse_facts("q(_x).")[0].args[0], v("_x"));
  EXPECT_EQ(parse_facts("  # nothing\n").size(), 0u);
  EXPECT_EQ(parse_facts("r(bob).")[0].args[0], c("bob"));
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse_rules("p(X) -> q(X).\np(X) q(X).");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
    EXPECT_NE(std::string(e.what()).find("2:"), std::string::npos);
  }
  EXPECT_THROW(parse_rules("P(X) -> q(X)."), ParseError);
  EXPECT_THROW(parse_rules("p(X) -> q(X)"), ParseError);
  EXPECT_THROW(parse_rules("p(X) -> q(X) $"), ParseError);
  EXPECT_THROW(parse_rules("@A p(X) -> q(X). @A q(X) -> p(X)."), ParseError);
  EXPECT_THROW(parse_facts("p(a) -> q(a)."), ParseError);
  EXPECT_THROW(parse_rules("p(a)."), ParseError);
  EXPECT_THROW(parse_rules("p(X) -> p(X,Y)."), ArityConflict);
}

TEST(Parse, DeclaresIntoSignature) {
  Signature sig;
  parse_rules("p(X) -> q(X,Y).", &sig);
  EXPECT_EQ(sig.arity(Predicate("q")), std::optional<std::size_t>(2));
  EXPECT_THROW(parse_facts("q(a).", &sig), ArityConflict);
  EXPECT_NO_THROW(parse_facts("q(a,b). r(c).", &sig));
  EXPECT_EQ(sig.arity(Predicate("r")), std::optional<std::size_t>(1));
}

TEST(Print, Examples) {
  RuleSet rs = parse_rules("@R p(X,Y), q(Y) -> r(X,Z).");
  EXPECT_EQ(print_rule(*rs[0]), "@R p(X,Y), q(Y) -> r(X,Z).");
  EXPECT_EQ(print_facts(parse_facts("q(b). p(a,X).")), "p(a,X).\nq(b).\n");
}

TEST(Print, ParsePrintIsIdentity) {
  std::mt19937 rng(31);
  for (int i = 0; i < 200; ++i) {
    testkb::RandomKb kb = testkb::random_kb(rng);
    std::string printed = print_rules(*kb.rules);
    RuleSet again = parse_rules(printed);
    EXPECT_EQ(print_rules(again), printed) << kb.text;
    ASSERT_EQ(again.size(), kb.rules->size());
    for (std::size_t r = 0; r < again.size(); ++r) {
      EXPECT_EQ(again[r]->id(), (*kb.rules)[r]->id());
      EXPECT_EQ(again[r]->body(), (*kb.rules)[r]->body());
      EXPECT_EQ(again[r]->head(), (*kb.rules)[r]->head());
    }
    EXPECT_EQ(parse_facts(print_facts(kb.facts)), kb.facts);
  }
}
