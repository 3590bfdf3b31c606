#include <gtest/gtest.h>

#include "cbvlab/generate.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/term.hpp"

using namespace cbvlab;

namespace {

Term P(const char* s) { return parse_term(s); }
Term fv(const char* x) { return Term::free(x); }
Term b(std::uint32_t i) { return Term::bound(i); }
Term lam(const char* x, Term body) { return Term::abs(x, std::move(body)); }
Term ap(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }

}  // namespace

TEST(Parse, Identity) { EXPECT_EQ(P("\\x. x"), lam("x", b(0))); }

TEST(Parse, Omega) {
  Term delta = lam("x", ap(b(0), b(0)));
  EXPECT_EQ(P("(\\x. x x) (\\x. x x)"), ap(delta, delta));
  EXPECT_EQ(P("Omega"), ap(delta, delta));
}

TEST(Parse, PairSkeleton) {
  EXPECT_EQ(P("\\z. z _1 _2"), lam("z", ap(ap(b(0), Term::hole(1)), Term::hole(2))));
}

TEST(Parse, PairSugar) {
  EXPECT_EQ(P("Pair(True, Omega)"), P("\\z. z (\\x y. x) ((\\x. x x) (\\x. x x))"));
}

TEST(Parse, ApplicationAssociatesLeft) { EXPECT_EQ(P("x y z"), ap(ap(fv("x"), fv("y")), fv("z"))); }

TEST(Parse, LambdaSymbol) { EXPECT_EQ(P("λx. x"), P("\\x. x")); }

TEST(Parse, BinderShadowsDefinition) { EXPECT_EQ(P("\\I. I"), lam("I", b(0))); }

TEST(Parse, Errors) {
  EXPECT_THROW(P("_0"), ParseError);
  EXPECT_THROW(P("3x"), ParseError);
  EXPECT_THROW(P("\\x."), ParseError);
  EXPECT_THROW(P("(x"), ParseError);
  EXPECT_THROW(P("x )"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  try {
    P("x (y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Print, RoundTripGenerated) {
  TermGen gen(7);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.term(14, i % 3);
    std::string s = to_string(t);
    Term back = P(s.c_str());
    EXPECT_EQ(back, t) << s;
    EXPECT_EQ(to_string(back), s);
  }
}

TEST(Print, ShadowedBinderGetsFreshName) { EXPECT_EQ(to_string(P("\\x. \\x. x")), "\\x x'. x'"); }

TEST(Alpha, Examples) {
  EXPECT_TRUE(alpha_eq(P("\\x. x"), P("\\y. y")));
  EXPECT_FALSE(alpha_eq(P("\\x. \\y. x"), P("\\x. \\y. y")));
  EXPECT_TRUE(alpha_eq(P("\\x. _1"), P("\\y. _1")));
  EXPECT_FALSE(alpha_eq(P("\\x. y"), P("\\x. z")));
}

TEST(Alpha, HashRespectsEquality) {
  EXPECT_EQ(P("\\x. x x").hash(), P("\\y. y y").hash());
  EXPECT_EQ(P("\\x. x").size(), 2u);
  EXPECT_EQ(P("Omega").size(), 9u);
}

TEST(Subst, Examples) {
  EXPECT_EQ(subst_value(fv("x"), "x", P("\\y. y")), P("\\y. y"));
  Term r = subst_value(P("\\y. x"), "x", fv("y"));
  EXPECT_EQ(r, lam("q", fv("y")));
  EXPECT_EQ(to_string(r), "\\y'. y");
  EXPECT_EQ(subst_value(P("\\z. z"), "x", P("\\y. y")), P("\\z. z"));
}

TEST(Subst, RejectsNonValue) {
  EXPECT_THROW(subst_value(fv("x"), "x", P("y y")), std::invalid_argument);
  EXPECT_THROW(subst_value(P("\\z. _1"), "x", fv("y")), std::invalid_argument);
}

TEST(Subst, FreeNamesLaw) {
  TermGen gen(11);
  for (int i = 0; i < 300; ++i) {
    Term m = gen.term(10);
    Term v = gen.value(6);
    Term r = subst_value(m, "x", v);
    std::set<std::string> expected = free_names(m);
    bool had_x = expected.erase("x") > 0;
    if (had_x) {
      auto fv_v = free_names(v);
      expected.insert(fv_v.begin(), fv_v.end());
    }
    EXPECT_EQ(free_names(r), expected) << to_string(m) << " [" << to_string(v) << "/x]";
    if (!had_x) {
      EXPECT_EQ(r, m);
    }
  }
}

TEST(FillContext, Examples) {
  Term m = P("Omega");
  EXPECT_EQ(fill_context(Term::hole(1), {m}), m);
  EXPECT_EQ(fill_context(P("\\x. _1"), {fv("x")}), P("\\x. x"));
  EXPECT_EQ(fill_context(P("\\z. z _1 _2"), {P("True"), P("Omega")}), P("\\z. z True Omega"));
  EXPECT_EQ(fill_context(P("\\z. z _1 _2"), {P("True"), P("Omega")}), P("Pair(True, Omega)"));
}

TEST(FillContext, Errors) { EXPECT_THROW(fill_context(P("_1 _2"), {fv("x")}), std::invalid_argument); }

TEST(FillContext, CaptureOnlyByMatchingName) {
  EXPECT_EQ(fill_context(P("\\x. \\y. _1"), {P("x y z")}), P("\\x y. x y z"));
}

TEST(FillContext, Occurrences) {
  Term c = P("_1 (_1 _2)");
  EXPECT_EQ(hole_degree(c, 1), 2u);
  EXPECT_EQ(hole_degree(c, 2), 1u);
  EXPECT_EQ(fill_occurrences(c, 1, {fv("a"), fv("b")}), P("a (b _2)"));
}

TEST(FillContext, SizeAdds) {
  TermGen gen(3);
  for (int i = 0; i < 200; ++i) {
    Term c = gen.context(8, 1);
    Term m = gen.term(6);
    Term f = fill_context(c, {m});
    EXPECT_EQ(f.size(), c.size() + hole_degree(c, 1) * (m.size() - 1)) << to_string(c);
    EXPECT_FALSE(f.has_holes());
  }
}

TEST(Values, Shape) {
  EXPECT_TRUE(P("x").is_value());
  EXPECT_TRUE(P("\\x. x x").is_value());
  EXPECT_FALSE(P("x y").is_value());
  EXPECT_FALSE(P("_1").is_value());
}
