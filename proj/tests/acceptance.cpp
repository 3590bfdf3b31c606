// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cbvlab/corpus.hpp"
#include "cbvlab/harness.hpp"
#include "cbvlab/parser.hpp"
#include "cbvlab/resource.hpp"
#include "cbvlab/rigid.hpp"
#include "cbvlab/taylor.hpp"

using namespace cbvlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Budgets budgets(std::size_t budget, std::size_t search) {
  Budgets b = default_corpus().budgets;
  b.budget = budget;
  b.search = search;
  return b;
}

std::size_t holding_cases(const PropertyReport& r) {
  std::size_t n = 0;
  for (const auto& c : r.cases) n += c.holds();
  return n;
}

Outcome normalization_agreement() {
  auto t0 = std::chrono::steady_clock::now();
  Sum all;
  for (const auto& nt : default_corpus().terms) {
    Sum s = taylor_enumerate(nt.term, 12);
    all.insert(s.begin(), s.end());
  }
  Normalizer lo(Strategy::LeftmostOutermost, true);
  Normalizer ri(Strategy::RightmostInnermost, true);
  Normalizer comp;
  std::size_t disagreements = 0;
  for (const auto& s : all) {
    const Sum& a = lo.normalize(s);
    if (a != ri.normalize(s) || a != comp.normalize(s)) ++disagreements;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << all.size() << " distinct terms, " << disagreements << " disagreements, " << secs << " s";
  return {all.size() >= 500 && disagreements == 0 && secs < 60, d.str()};
}

Outcome partition() {
  auto r = run_suite("partition", default_corpus(), budgets(10, 14));
  return {r.holds() && r.instances == default_corpus().terms.size(), std::string(to_string(r.status)) + ", " + r.detail};
}

Outcome simulation() {
  auto r = run_suite("simulation", default_corpus(), budgets(10, 14));
  return {r.holds() && r.instances >= 10, std::string(to_string(r.status)) + ", " + r.detail};
}

Outcome omega_empty() {
  auto t0 = std::chrono::steady_clock::now();
  Sum s = nft_bounded(parse_term("Omega"), 20);
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << s.size() << " normal forms in " << secs << " s";
  return {s.empty() && secs < 10, d.str()};
}

Outcome por() {
  const Sum empty_bag{RTerm::bag({})};
  std::ostringstream d;
  bool ok = true;
  for (const char* p : {"Pair(True, Omega)", "Pair(Omega, True)", "Pair(Omega, Omega)"}) {
    bool eq = nft_bounded(parse_term(p), 12) == empty_bag;
    ok &= eq;
    d << p << (eq ? " = {[]}; " : " != {[]}; ");
  }
  auto st = check_stability(por_instance(parse_term("_1"), 12, 16));
  ok &= st.holds();
  d << "stability " << to_string(st.status) << "; ";

  auto failing = [](const PropertyReport& r) {
    return r.status == Status::Refuted ? r.counterexample.at("failing_lines") : nlohmann::json::array();
  };
  auto t = failing(demo_por(parse_term("\\p. True"), 12, 16));
  auto o = failing(demo_por(parse_term("\\p. Omega"), 12, 16));
  bool t_ok = t == nlohmann::json::array({2});
  bool o_ok = o == nlohmann::json::array({1});
  ok &= t_ok && o_ok;
  d << "\\p. True fails lines " << t.dump() << ", \\p. Omega fails lines " << o.dump();
  return {ok, d.str()};
}

Outcome monotone() {
  auto r = run_suite("monotone", default_corpus(), budgets(10, 14));
  return {r.holds() && holding_cases(r) >= 20, std::string(to_string(r.status)) + ", " + r.detail};
}

Outcome rigid() {
  auto r = check_rigid_lemmas(1, 200, 8);
  bool ok = r.holds() && r.instances == 200;
  std::ostringstream d;
  d << "lemmas " << to_string(r.status) << " on " << r.instances << " trials";

  // All-distinct inputs: the product of the bag factorials.
  struct Card {
    const char* term;
    std::size_t expected;
  };
  const std::vector<Card> cards{{"[a, b]", 2},
                                {"[a, b, c]", 6},
                                {"[\\y. [a, b], c]", 4},
                                {"[a, b] [c, d, e]", 12},
                                {"[\\y. [a, b, c], \\z. [d, e]]", 24}};
  for (const auto& c : cards) {
    std::size_t n = rigids_of(parse_resource(c.term)).size();
    ok &= n == c.expected;
    d << "; " << c.term << " -> " << n;
  }
  std::size_t dup = rigids_of(parse_resource("[x, x]")).size();
  ok &= dup == 1;
  d << "; [x, x] -> " << dup;
  return {ok, d.str()};
}

Outcome exactness() {
  auto r = check_taylor_exactness(default_corpus().budgets.seed, 1000);
  return {r.holds() && r.instances == 1000, std::string(to_string(r.status)) + ", " + r.detail};
}

Outcome congruence() {
  auto r = run_suite("congruence", default_corpus(), budgets(10, 14));
  return {r.holds() && holding_cases(r) >= 10, std::string(to_string(r.status)) + ", " + r.detail};
}

Outcome remarks() {
  Budgets b = budgets(10, 14);
  b.depth = 4;
  auto r = run_suite("remarks", default_corpus(), b);
  auto u = run_suite("unodavanti", default_corpus(), b);
  return {r.holds() && u.holds(), "remarks " + std::string(to_string(r.status)) + " (" + r.detail +
                                      "), unodavanti " + std::string(to_string(u.status)) + " (" + u.detail + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"strong normalization and strategy agreement on T_12 of the corpus", normalization_agreement},
      {"partition at B=10", partition},
      {"simulation on the declared steps at B=10, B'=14", simulation},
      {"NFT_20(Omega) is empty", omega_empty},
      {"no parallel-or computation at B=12", por},
      {"monotonicity on (C, Omega, N) at B=10, B'=14", monotone},
      {"rigid lemmas and Rigid(c) cardinalities", rigid},
      {"Taylor enumeration exactness on 1000 pairs", exactness},
      {"theory congruence at B=10, B'=14", congruence},
      {"value shape, normal persistence and reduct witnesses at B=10", remarks},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
