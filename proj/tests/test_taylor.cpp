#include <gtest/gtest.h>

#include "cbvlab/corpus.hpp"
#include "cbvlab/generate.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/taylor.hpp"

using namespace cbvlab;

namespace {

Term P(const char* s) { return parse_term(s); }
RTerm R(const char* s) { return parse_resource(s); }

Sum S(std::initializer_list<const char*> xs) {
  Sum out;
  for (auto x : xs) out.insert(R(x));
  return out;
}

}  // namespace

TEST(Member, Examples) {
  EXPECT_TRUE(taylor_member(R("[x, x, x]"), P("x")));
  EXPECT_TRUE(taylor_member(R("[\\x. [x]]"), P("\\x. x")));
  EXPECT_FALSE(taylor_member(R("[x] [x]"), P("x")));
  EXPECT_TRUE(taylor_member(R("[]"), P("\\x. x x")));
  EXPECT_FALSE(taylor_member(R("[y]"), P("x")));
  EXPECT_TRUE(taylor_member(R("[_1, _1]"), P("_1")));
  EXPECT_FALSE(taylor_member(R("[] []"), P("\\x. x")));
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(taylor_enumerate(P("x"), 4), S({"[]", "[x]", "[x, x]", "[x, x, x]"}));
  EXPECT_EQ(taylor_enumerate(P("\\x. x"), 3), S({"[]", "[\\x. []]"}));
  EXPECT_EQ(taylor_enumerate(P("I I"), 2), S({"[] []"}));
  EXPECT_TRUE(taylor_enumerate(P("I I"), 1).empty());
}

TEST(Enumerate, BucketsAreExactSizes) {
  auto table = taylor_by_size(P("Pair(True, Omega)"), 12);
  ASSERT_EQ(table.size(), 13u);
  EXPECT_TRUE(table[0].empty());
  for (std::size_t n = 0; n < table.size(); ++n) {
    for (const auto& s : table[n]) EXPECT_EQ(s.size(), n);
  }
}

TEST(Enumerate, MembersAndDistinct) {
  TermGen gen(17);
  for (int i = 0; i < 80; ++i) {
    Term m = gen.term(8);
    auto table = taylor_by_size(m, 9);
    std::size_t listed = 0;
    for (const auto& bucket : table) {
      listed += bucket.size();
      for (const auto& s : bucket) ASSERT_TRUE(taylor_member(s, m)) << to_string(m) << " " << to_string(s);
    }
    EXPECT_EQ(taylor_enumerate(m, 9).size(), listed) << to_string(m);
  }
}

TEST(Count, AgreesWithEnumeration) {
  TermGen gen(19);
  std::vector<Term> terms;
  for (const auto& nt : default_corpus().terms) terms.push_back(nt.term);
  for (int i = 0; i < 60; ++i) terms.push_back(gen.term(10));
  for (const auto& m : terms) {
    auto table = taylor_by_size(m, 11);
    auto counts = taylor_count(m, 11);
    ASSERT_EQ(counts.size(), table.size());
    for (std::size_t n = 0; n < table.size(); ++n) EXPECT_EQ(counts[n], table[n].size()) << to_string(m) << " @" << n;
  }
}

TEST(Count, SaturatesInsteadOfOverflowing) {
  auto c = taylor_count(P("\\x. x x"), 400);
  EXPECT_EQ(c.back(), std::numeric_limits<std::uint64_t>::max());
}

TEST(Enumerate, CapThrows) {
  EXPECT_THROW(taylor_enumerate(P("Delta"), 16, 100), BudgetExceeded);
}

TEST(ValueApproximants, Identity) {
  auto v = value_approximants(P("I"), 4);
  EXPECT_EQ(Sum(v.begin(), v.end()), S({"\\x. []", "\\x. [x]", "\\x. [x, x]"}));
  EXPECT_EQ(value_approximants(P("y"), 1).size(), 1u);
  EXPECT_THROW(value_approximants(P("x y"), 4), std::invalid_argument);
}

TEST(Nft, Examples) {
  EXPECT_EQ(nft_bounded(P("I"), 4), S({"[]", "[\\x. []]", "[\\x. [x]]"}));
  EXPECT_TRUE(nft_bounded(P("Omega"), 16).empty());
  EXPECT_EQ(nft_bounded(P("Pair(True, Omega)"), 12), S({"[]"}));
}

TEST(Nft, MonotoneInBudget) {
  for (const auto& nt : default_corpus().terms) {
    Sum prev;
    for (std::size_t b = 4; b <= 9; ++b) {
      Sum cur = nft_bounded(nt.term, b);
      for (const auto& t : prev) EXPECT_TRUE(cur.count(t)) << nt.name << " " << to_string(t);
      for (const auto& t : cur) {
        EXPECT_TRUE(is_normal(t));
        EXPECT_LE(t.size(), b);
      }
      prev = std::move(cur);
    }
  }
}

TEST(NftMember, Examples) {
  auto w = nft_member(R("[\\y. [y]]"), P("I I"), 8);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(taylor_member(*w, P("I I")));
  EXPECT_TRUE(normalize(*w).count(R("[\\y. [y]]")));
  // The head must be a singleton [λx.[x]] of degree 1, so this is the only
  // witness of size 8.
  EXPECT_EQ(*w, R("[\\x. [x]] [\\y. [y]]"));

  for (const char* v : {"x", "\\x. x", "True", "Pair(Omega, Omega)"}) {
    auto e = nft_member(R("[]"), P(v), 1);
    ASSERT_TRUE(e.has_value()) << v;
    EXPECT_EQ(*e, R("[]"));
  }
  EXPECT_FALSE(nft_member(R("[\\x. [x]]"), P("Omega"), 20).has_value());
  EXPECT_THROW(nft_member(R("[\\x. []] []"), P("I"), 8), std::invalid_argument);
}

TEST(Leq, Examples) {
  EXPECT_TRUE(leq_bounded(P("Omega"), P("True"), 10, 14).holds);
  EXPECT_TRUE(leq_bounded(P("Omega"), P("True"), 3, 3).holds);

  auto r = leq_bounded(P("True"), P("Omega"), 6, 20);
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.missing.empty());
  for (const auto& t : r.missing) EXPECT_TRUE(nft_bounded(P("True"), 6).count(t));

  EXPECT_TRUE(leq_bounded(P("I I"), P("I"), 8, 12).holds);
}

// NFT(I I) = NFT(I), and the smallest witness of t = [λx.p1, ..., λx.pk] is
// [λy.[y, ..., y]] t with k copies of y, of size 3 + k + size(t).
TEST(Leq, LiteralSearchMissesLargeWitnesses) {
  Term i = P("I"), ii = P("I I");
  NftIndex idx(ii, 12);
  std::vector<RTerm> expected_missing;
  for (const auto& t : nft_bounded(i, 8)) {
    std::size_t w = 3 + t.elems().size() + t.size();
    if (w > 12) {
      expected_missing.push_back(t);
    } else {
      ASSERT_NE(idx.witness(t), nullptr) << to_string(t);
      EXPECT_EQ(idx.witness(t)->size(), w) << to_string(t);
    }
  }
  auto r = leq_bounded(i, ii, 8, 12);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(Sum(r.missing.begin(), r.missing.end()), Sum(expected_missing.begin(), expected_missing.end()));
  EXPECT_FALSE(expected_missing.empty());
  // A large enough search finds them all.
  EXPECT_TRUE(leq_bounded(i, ii, 8, 14).holds);
}

TEST(Eq, BothDirections) {
  auto e = eq_bounded(P("I I"), P("I"), 6, 12);
  EXPECT_TRUE(e.holds());
  EXPECT_FALSE(eq_bounded(P("True"), P("False"), 8, 12).holds());
}
