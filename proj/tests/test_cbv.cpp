#include <gtest/gtest.h>

#include "cbvlab/cbv.hpp"
#include "cbvlab/corpus.hpp"
#include "cbvlab/generate.hpp"
#include "cbvlab/parser.hpp"

using namespace cbvlab;

namespace {

Term P(const char* s) { return parse_term(s); }

std::set<Term> targets(const Term& m) {
  std::set<Term> out;
  for (const auto& s : step_v(m)) out.insert(s.target);
  return out;
}

}  // namespace

TEST(StepV, Examples) {
  EXPECT_EQ(targets(P("(\\x. x) (\\y. y)")), std::set<Term>{P("\\y. y")});
  EXPECT_TRUE(step_v(P("(\\x. \\y. y) (z z)")).empty());
  // The outer application has a non-value argument, so only the inner redex fires.
  auto steps = step_v(P("(\\x. x) ((\\y. y) (\\z. z))"));
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].target, P("(\\x. x) (\\z. z)"));
  EXPECT_EQ(steps[0].path, (Path{Dir::Arg}));
}

TEST(StepV, UnderLambdaAndPreOrder) {
  // A bound variable is a value, so the inner redex fires under the binder;
  // the outer one is blocked by the application argument.
  EXPECT_EQ(targets(P("\\w. (\\x. x) ((\\y. y) w)")), std::set<Term>{P("\\w. (\\x. x) w")});
  EXPECT_EQ(targets(P("\\w. (\\x. x) w")), std::set<Term>{P("\\w. w")});
}

TEST(StepV, TwoRedexes) {
  auto steps = step_v(P("(I I) (I I)"));
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].path, (Path{Dir::Fun}));
  EXPECT_EQ(steps[1].path, (Path{Dir::Arg}));
}

TEST(StepV, StepIsRedexAtPath) {
  TermGen gen(5);
  std::size_t fired = 0;
  for (int i = 0; i < 400; ++i) {
    Term m = gen.term(14);
    for (const auto& s : step_v(m)) {
      ++fired;
      const Term& r = subterm_at(m, s.path);
      ASSERT_TRUE(is_redex_v(r)) << to_string(m);
      EXPECT_TRUE(r.arg().is_value());
      EXPECT_EQ(replace_at(m, s.path, subterm_at(s.target, s.path)), s.target);
    }
  }
  EXPECT_GT(fired, 20u);
}

TEST(ReduceV, Examples) {
  auto r = reduce_v(P("(\\x. x) (\\y. y)"), 10);
  EXPECT_TRUE(r.normal);
  EXPECT_EQ(r.term, P("\\y. y"));
  EXPECT_EQ(r.steps, 1u);

  auto o = reduce_v(P("Omega"), 100);
  EXPECT_FALSE(o.normal);
  EXPECT_EQ(o.term, P("Omega"));

  // Reduction goes under the pair's binder, where Omega keeps looping.
  auto p = reduce_v(P("Pair(True, Omega)"), 10);
  EXPECT_FALSE(p.normal);
  EXPECT_EQ(p.term, P("Pair(True, Omega)"));
}

TEST(ReduceV, ReachesNormalForm) {
  auto r = reduce_v(P("(\\f x. f (f x)) I"), 10);
  EXPECT_TRUE(r.normal);
  EXPECT_EQ(r.term, P("\\x. x"));
}

TEST(ReductsV, Examples) {
  EXPECT_EQ(reducts_v(P("I I"), 2, 20), (std::set<Term>{P("I I"), P("I")}));
  EXPECT_EQ(reducts_v(P("Omega"), 3, 20), std::set<Term>{P("Omega")});
  EXPECT_EQ(reducts_v(P("True"), 5, 20), std::set<Term>{P("True")});
}

TEST(ReductsV, SizeCapPrunes) {
  Term m = P("(\\x. x x x) (\\y. y y y)");
  for (const auto& t : reducts_v(m, 3, m.size())) EXPECT_LE(t.size(), m.size());
}

TEST(ReductionPath, Chains) {
  auto p = reduction_path(P("(\\f x. f (f x)) I"), P("\\x. x"), 4, 40);
  ASSERT_TRUE(p.has_value());
  ASSERT_FALSE(p->empty());
  EXPECT_EQ(p->front().source, P("(\\f x. f (f x)) I"));
  EXPECT_EQ(p->back().target, P("\\x. x"));
  for (std::size_t i = 1; i < p->size(); ++i) EXPECT_EQ((*p)[i - 1].target, (*p)[i].source);

  auto same = reduction_path(P("x"), P("x"), 0, 10);
  ASSERT_TRUE(same.has_value());
  EXPECT_TRUE(same->empty());

  EXPECT_FALSE(reduction_path(P("Omega"), P("I Omega"), 4, 40).has_value());
  EXPECT_FALSE(reduction_path(P("I"), P("I I"), 4, 40).has_value());
}

TEST(Confluence, LocalOnCorpus) {
  for (const auto& nt : default_corpus().terms) {
    auto steps = step_v(nt.term);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      for (std::size_t j = i + 1; j < steps.size(); ++j) {
        EXPECT_TRUE(joinable_v(steps[i].target, steps[j].target, 3, 80)) << nt.name;
      }
    }
  }
}

TEST(Confluence, LocalOnGenerated) {
  TermGen gen(9);
  std::size_t forks = 0;
  for (int i = 0; i < 300; ++i) {
    Term m = gen.term(16);
    auto steps = step_v(m);
    for (std::size_t a = 0; a < steps.size(); ++a) {
      for (std::size_t c = a + 1; c < steps.size(); ++c) {
        ++forks;
        EXPECT_TRUE(joinable_v(steps[a].target, steps[c].target, 4, 200)) << to_string(m);
      }
    }
  }
  EXPECT_GT(forks, 0u);
}

TEST(CbvValues, ClosedUnderReduction) {
  TermGen gen(13);
  for (int i = 0; i < 300; ++i) {
    Term v = gen.value(14);
    for (const auto& s : step_v(v)) EXPECT_TRUE(s.target.is_value()) << to_string(v);
  }
}
