#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace omegan;

TEST(Parse, Precedence) {
  const Formula f = parse_formula("<>p & ~q");
  ASSERT_EQ(f.op(), Op::And);
  EXPECT_EQ(f.lhs().op(), Op::Diamond);
  EXPECT_EQ(f.lhs().lhs().name(), "p");
  EXPECT_EQ(f.rhs().op(), Op::Not);

  const Formula g = parse_formula("[]p -> p");
  ASSERT_EQ(g.op(), Op::Implies);
  EXPECT_EQ(g.lhs().op(), Op::Box);

  EXPECT_EQ(parse_formula("p | q & r").str(), "(p | (q & r))");
  EXPECT_EQ(parse_formula("~<>[]p").str(), "~<>[]p");
}

TEST(Parse, ImplicationIsRightAssociative) {
  const Formula f = parse_formula("p -> q -> r");
  ASSERT_EQ(f.op(), Op::Implies);
  EXPECT_EQ(f.lhs().name(), "p");
  EXPECT_EQ(f.rhs().op(), Op::Implies);
  EXPECT_EQ(f.str(), "(p -> (q -> r))");
}

TEST(Parse, ConstantsAndNames) {
  EXPECT_EQ(parse_formula("true").op(), Op::True);
  EXPECT_EQ(parse_formula(" false ").op(), Op::False);
  EXPECT_EQ(parse_formula("p_1").name(), "p_1");
  EXPECT_EQ(parse_formula("((p))").str(), "p");
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("p &"), ParseError);
  EXPECT_THROW(parse_formula("(p"), ParseError);
  EXPECT_THROW(parse_formula("p q"), ParseError);
  EXPECT_THROW(parse_formula("1p"), ParseError);
  try {
    parse_formula("p & )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4U);
  }
}

TEST(Formula, DepthVariablesSubformulas) {
  const Formula f = parse_formula("[](<>p -> q) & <>p");
  EXPECT_EQ(f.depth(), 2U);
  EXPECT_EQ(f.variables(), (std::set<std::string>{"p", "q"}));
  const auto subs = f.subformulas();
  // p, <>p, q, (<>p -> q), [](...), whole; <>p shared
  EXPECT_EQ(subs.size(), 6U);
  EXPECT_EQ(subs.back(), f);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (const auto& a : subs[i].args()) {
      bool earlier = false;
      for (std::size_t j = 0; j < i; ++j) earlier = earlier || subs[j] == a;
      EXPECT_TRUE(earlier);
    }
  }
}

TEST(Formula, PrintParseRoundTrip) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Formula f = random_formula({"p", "q", "r"}, 4, rng);
    EXPECT_EQ(parse_formula(f.str()), f);
    EXPECT_LE(f.depth(), 4U);
  }
}
