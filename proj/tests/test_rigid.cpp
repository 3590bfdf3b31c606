#include <gtest/gtest.h>

#include "cbvlab/generate.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/rigid.hpp"

using namespace cbvlab;

namespace {

Term P(const char* s) { return parse_term(s); }
RTerm R(const char* s) { return parse_resource(s); }

Rigid rv(const char* x) { return Rigid::var(x); }
Rigid rh(std::uint32_t i) { return Rigid::hole(i); }
Rigid rl(std::vector<Rigid> e) { return Rigid::list(std::move(e)); }

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(RigidsOf, Examples) {
  EXPECT_EQ(rigids_of(R("x")), std::set<Rigid>{rv("x")});

  Rigid id = Rigid::abs("y", rl({Rigid::bound(0)}));
  EXPECT_EQ(rigids_of(R("[x, \\y. [y]]")), (std::set<Rigid>{rl({rv("x"), id}), rl({id, rv("x")})}));
  EXPECT_EQ(rigids_of(R("[x, x]")), std::set<Rigid>{rl({rv("x"), rv("x")})});
  EXPECT_EQ(rigids_of(R("[]")), std::set<Rigid>{rl({})});
}

TEST(RigidsOf, FactorialCardinality) {
  EXPECT_EQ(rigids_of(R("[a, b, c]")).size(), 6u);
  EXPECT_EQ(rigids_of(R("[a, b, c, d]")).size(), 24u);
  EXPECT_EQ(rigids_of(R("[\\y. [a, b], c]")).size(), 4u);
  EXPECT_EQ(rigids_of(R("[a, b] [c, d, e]")).size(), 12u);
  EXPECT_EQ(rigids_of(R("[a, a, b]")).size(), 3u);
  EXPECT_EQ(rigids_of(R("[x, x]")).size(), 1u);
}

TEST(RigidsOf, ProductOfBagFactorialsOnDistinctElements) {
  // Bags of distinct free variables nested under abstractions.
  TermGen gen(71);
  for (int i = 0; i < 100; ++i) {
    std::vector<RTerm> outer;
    std::size_t expected = 1;
    std::size_t k = gen.below(4);
    std::size_t fresh = 0;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t inner = gen.below(4);
      std::vector<RTerm> e;
      for (std::size_t q = 0; q < inner; ++q) e.push_back(RTerm::var("v" + std::to_string(fresh++)));
      expected *= factorial(inner);
      outer.push_back(RTerm::abs("w" + std::to_string(j), RTerm::bag(std::move(e))));
    }
    // Distinct inner bags keep the abstractions distinct, except several empty ones.
    std::size_t empties = 0;
    for (const auto& v : outer) empties += v.body().elems().empty();
    expected *= factorial(k) / factorial(empties);
    RTerm c = RTerm::bag(outer);
    EXPECT_EQ(rigids_of(c).size(), expected) << to_string(c);
  }
}

TEST(RigidsOf, CapThrows) {
  EXPECT_THROW(rigids_of(R("[a, b, c, d, e, f, g, h]"), 1000), BudgetExceeded);
}

TEST(RigidsOf, UnderlyingRoundTrip) {
  TermGen gen(73);
  for (int i = 0; i < 200; ++i) {
    Term m = gen.term(6, 1);
    RTerm c = gen.taylor_element(m, 10);
    for (const auto& r : rigids_of(c)) EXPECT_EQ(underlying(r), c) << to_string(r);
  }
}

TEST(Underlying, Examples) {
  Rigid id = Rigid::abs("y", rl({Rigid::bound(0)}));
  EXPECT_EQ(underlying(rl({rv("x"), id})), R("[x, \\y. [y]]"));
  EXPECT_EQ(underlying(rv("x")), R("x"));
  EXPECT_EQ(underlying(rl({})), R("[]"));
}

TEST(Rigid, Constructors) {
  EXPECT_THROW(Rigid::hole(0), std::invalid_argument);
  EXPECT_THROW(Rigid::abs("x", rv("x")), std::invalid_argument);
  EXPECT_THROW(rl({rl({})}), std::invalid_argument);
  EXPECT_EQ(Rigid::abs("a", rl({})), Rigid::abs("b", rl({})));
  EXPECT_NE(rl({rv("x"), rv("y")}), rl({rv("y"), rv("x")}));
}

TEST(Rigid, Print) {
  Rigid id = Rigid::abs("y", rl({Rigid::bound(0)}));
  EXPECT_EQ(to_string(rl({rv("x"), id})), "<x, \\y. <y>>");
  EXPECT_EQ(to_string(Rigid::app(rl({rh(1)}), rl({}))), "<_1> <>");
}

TEST(RigidFill, Examples) {
  RTerm a = R("a"), b = R("\\u. [u]");
  EXPECT_EQ(fill_rigid(rh(1), {{a}}), a);
  EXPECT_EQ(fill_rigid(rl({rh(1), rh(1)}), {{a, b}}), RTerm::bag({a, b}));
  EXPECT_EQ(fill_rigid(Rigid::app(rl({rh(1)}), rl({rh(1)})), {{a, b}}), R("[a] [\\u. [u]]"));
  EXPECT_EQ(fill_rigid(Rigid::app(rl({rh(1)}), rl({rh(1)})), {{b, a}}), R("[\\u. [u]] [a]"));
}

TEST(RigidFill, TwoHolesAndCapture) {
  Rigid r = Rigid::abs("x", rl({rh(1), rh(2), rh(1)}));
  EXPECT_EQ(fill_rigid(r, {{R("x"), R("y")}, {R("z")}}), R("\\x. [x, y, z]"));
  EXPECT_EQ(hole_degree(r, 1), 2u);
  EXPECT_EQ(hole_degree(r, 2), 1u);
}

TEST(RigidFill, Errors) {
  Rigid r = rl({rh(1), rh(1)});
  EXPECT_THROW(fill_rigid(r, {{R("a")}}), std::invalid_argument);
  EXPECT_THROW(fill_rigid(r, {{R("a"), R("b"), R("c")}}), std::invalid_argument);
  EXPECT_THROW(fill_rigid(r, {{R("a"), R("[]")}}), std::invalid_argument);
}

TEST(TaylorFillSet, Examples) {
  EXPECT_EQ(taylor_fill_set(P("_1"), {P("I")}, 4), taylor_enumerate(P("I"), 4));
  Sum xs{R("[]"), R("[x]"), R("[x, x]")};
  EXPECT_EQ(taylor_fill_set(P("x"), {}, 3), xs);
  EXPECT_EQ(taylor_fill_set(P("x"), {P("I")}, 3), xs);

  Sum got = taylor_fill_set(P("\\z. _1"), {P("True")}, 9);
  for (const auto& s : got) {
    ASSERT_EQ(s.kind(), RKind::Bag);
    for (const auto& e : s.elems()) {
      ASSERT_EQ(e.kind(), RKind::Abs);
      EXPECT_TRUE(taylor_member(e.body(), P("True")));
    }
  }
  EXPECT_EQ(got, taylor_enumerate(P("\\z. True"), 9));
}

TEST(TaylorFillSet, CaptureMatchesFillContext) {
  EXPECT_EQ(taylor_fill_set(P("\\x. _1"), {P("x")}, 7), taylor_enumerate(P("\\x. x"), 7));
}

// Expansion of a context filled with values, against the expansion of the
// filled term.
TEST(TaylorFillSet, AgreesWithTaylorOfFill) {
  TermGen gen(79);
  for (int i = 0; i < 120; ++i) {
    std::uint32_t holes = 1 + static_cast<std::uint32_t>(gen.below(2));
    Term c = gen.context(6, holes);
    std::vector<Term> vals;
    for (std::uint32_t k = 0; k < holes; ++k) vals.push_back(gen.value(4));
    Term filled = fill_context(c, vals);
    EXPECT_EQ(taylor_fill_set(c, vals, 8), taylor_enumerate(filled, 8)) << to_string(c);
  }
}
