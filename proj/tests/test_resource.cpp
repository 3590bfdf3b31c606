#include <gtest/gtest.h>

#include "cbvlab/generate.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/resource.hpp"
#include "cbvlab/taylor.hpp"
#include "reference.hpp"

using namespace cbvlab;

namespace {

RTerm R(const char* s) { return parse_resource(s); }

Sum S(std::initializer_list<const char*> xs) {
  Sum out;
  for (auto x : xs) out.insert(R(x));
  return out;
}

// Resource terms with redexes: elements of the expansion of random terms,
// every other one rooted at a β_v redex.
std::vector<RTerm> sample_terms(std::uint64_t seed, std::size_t count, std::size_t max_size) {
  TermGen gen(seed);
  std::vector<RTerm> out;
  while (out.size() < count) {
    Term m = out.size() % 2 ? gen.term(9) : Term::app(gen.value(7), gen.value(5));
    out.push_back(gen.taylor_element(m, max_size));
  }
  return out;
}

}  // namespace

TEST(RParse, RoundTrip) {
  for (const char* s : {"[]", "[x, x]", "[\\x. [x]] [\\y. [y]]", "[\\x. [x] [x]] [y, z]", "[_1, _1]"}) {
    RTerm t = R(s);
    EXPECT_EQ(R(to_string(t).c_str()), t) << s;
  }
  EXPECT_EQ(R("[y, x]"), R("[x, y]"));
  EXPECT_EQ(R("[\\a. [a]]"), R("[\\b. [b]]"));
  EXPECT_THROW(R("[x y]"), std::exception);
  EXPECT_THROW(parse_simple("x"), std::exception);
}

TEST(RTerm, SmartConstructorsValidate) {
  EXPECT_THROW(RTerm::abs("x", RTerm::var("x")), std::invalid_argument);
  EXPECT_THROW(RTerm::app(RTerm::var("x"), RTerm::bag({})), std::invalid_argument);
  EXPECT_THROW(RTerm::bag({RTerm::bag({})}), std::invalid_argument);
}

TEST(RTerm, Sizes) {
  EXPECT_EQ(R("[]").size(), 1u);
  EXPECT_EQ(R("[x, x]").size(), 3u);
  EXPECT_EQ(R("[\\x. [x]]").size(), 4u);
  EXPECT_EQ(R("[\\x. [x]] [\\y. [y]]").size(), 8u);
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(R("[x, x]"), "x"), 2u);
  EXPECT_EQ(degree(R("\\x. [x]"), "x"), 0u);
  EXPECT_EQ(degree(R("[x] [y]"), "x"), 1u);
}

TEST(LinearSubst, Examples) {
  EXPECT_EQ(linear_subst(R("[x]"), "x", R("[\\y. [y]]")), S({"[\\y. [y]]"}));
  EXPECT_TRUE(linear_subst(R("[x]"), "x", R("[y, z]")).empty());
  EXPECT_EQ(linear_subst(R("[x, x]"), "x", R("[y, z]")), S({"[y, z]"}));
  EXPECT_EQ(linear_subst(R("[x] [x]"), "x", R("[y, z]")), S({"[y] [z]", "[z] [y]"}));
}

TEST(LinearSubst, AgreesWithReference) {
  TermGen gen(21);
  const std::vector<RTerm> pool{R("y"), R("z"), R("\\u. [u]"), R("\\u. []"), R("\\u. [x]")};
  std::size_t nonempty = 0;
  for (int i = 0; i < 300; ++i) {
    Term body = gen.term(7);
    RTerm s = gen.taylor_element(body, 10);
    std::size_t d = degree(s, "x");
    if (d > 4) continue;
    std::vector<RTerm> vals;
    for (std::size_t k = 0; k < d; ++k) vals.push_back(pool[gen.below(pool.size())]);
    RTerm bag = RTerm::bag(vals);
    Sum got = linear_subst(s, "x", bag);
    ref::T rs = ref::from_lib(s);
    std::vector<ref::T> rv;
    for (const auto& v : bag.elems()) rv.push_back(ref::from_lib(v));
    std::set<std::string> want;
    for (const auto& t : ref::linear_subst(rs, "x", rv)) want.insert(ref::canon(t));
    EXPECT_EQ(ref::canon_sum(got), want) << to_string(s);
    if (!got.empty()) ++nonempty;
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= d; ++k) fact *= k;
    EXPECT_LE(got.size(), fact);
    EXPECT_FALSE(got.empty());
  }
  EXPECT_GT(nonempty, 50u);
}

TEST(StepR, Examples) {
  auto a = step_r(R("[\\x. [x]] [\\y. [y]]"));
  EXPECT_FALSE(a.normal);
  EXPECT_EQ(a.reducts, S({"[\\y. [y]]"}));

  auto b = step_r(R("[y, z] [x]"));
  EXPECT_FALSE(b.normal);
  EXPECT_TRUE(b.reducts.empty());

  EXPECT_TRUE(step_r(R("[x] [y, y]")).normal);
}

TEST(Normalize, Examples) {
  EXPECT_TRUE(normalize(R("[\\x. [x] [x]] [\\y. [y]]")).empty());
  EXPECT_EQ(normalize(R("[\\x. [x] [x]] [\\y. [y], \\w. [w]]")), S({"[\\w. [w]]"}));
  EXPECT_EQ(normalize(R("[\\x. []] []")), S({"[]"}));
}

TEST(Normalize, OmegaApproximantsAnnihilate) {
  for (const auto& s : taylor_enumerate(parse_term("Omega"), 14)) {
    EXPECT_TRUE(normalize(s).empty()) << to_string(s);
  }
}

TEST(IsNormal, Examples) {
  EXPECT_TRUE(is_normal(R("[]")));
  EXPECT_TRUE(is_normal(R("[x] [y]")));
  EXPECT_FALSE(is_normal(R("[\\x. []] []")));
  EXPECT_FALSE(is_normal(R("[] [x]")));
}

TEST(Normalize, StrategiesAgreeWithReference) {
  std::size_t nontrivial = 0;
  for (const auto& s : sample_terms(31, 600, 13)) {
    auto want = ref::normalize(s);
    for (Strategy st : {Strategy::LeftmostOutermost, Strategy::RightmostInnermost, Strategy::Compositional}) {
      EXPECT_EQ(ref::canon_sum(normalize(s, st)), want) << to_string(s);
    }
    if (!is_normal(s) && !want.empty()) ++nontrivial;
  }
  EXPECT_GT(nontrivial, 30u);
}

TEST(Normalize, ReferenceOnHandTerms) {
  for (const char* s : {"[\\x. [x, x]] [\\y. [y], \\z. [z] []]", "[\\x. [\\y. [x] [y]]] [w]",
                        "[\\x. [\\y. [x]]] [y]", "[\\f. [f] [f]] [\\a. [a], \\b. [\\c. []]]",
                        "[\\x. [x] [\\y. [y]]] [\\z. [z]]"}) {
    RTerm t = R(s);
    auto want = ref::normalize(t);
    EXPECT_EQ(ref::canon_sum(normalize(t)), want) << s;
    EXPECT_EQ(ref::canon_sum(normalize(t, Strategy::LeftmostOutermost)), want) << s;
  }
}

TEST(Normalize, SizeStrictlyDecreases) {
  Normalizer lo(Strategy::LeftmostOutermost, true);
  Normalizer ri(Strategy::RightmostInnermost, true);
  for (const auto& s : sample_terms(41, 400, 14)) {
    EXPECT_NO_THROW(lo.normalize(s));
    EXPECT_NO_THROW(ri.normalize(s));
    for (const auto& t : lo.normalize(s)) {
      EXPECT_TRUE(is_normal(t));
      EXPECT_LE(t.size(), s.size());
    }
  }
}

TEST(Normalize, BagsStayBags) {
  TermGen gen(51);
  for (int i = 0; i < 300; ++i) {
    Term v = gen.value(8);
    RTerm s = gen.taylor_element(v, 14);
    ASSERT_EQ(s.kind(), RKind::Bag);
    for (const auto& t : normalize(s)) EXPECT_EQ(t.kind(), RKind::Bag);
  }
}

TEST(Reaches, FollowsSteps) {
  RTerm s = R("[\\x. [x] [x]] [\\y. [y], \\w. [w]]");
  EXPECT_EQ(reaches(s, R("[\\w. [w]] [\\y. [y]]")), Reachability::Reachable);
  EXPECT_EQ(reaches(s, R("[\\w. [w]]")), Reachability::Reachable);
  EXPECT_EQ(reaches(s, R("[x]")), Reachability::Unreachable);
  EXPECT_EQ(reaches(s, s), Reachability::Reachable);
}

TEST(SumPrint, Format) {
  EXPECT_EQ(to_string(Sum{}), "0");
  EXPECT_EQ(to_string(S({"[]"})), "{ [] }");
}
