#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cbvlab/corpus.hpp"
#include "cbvlab/term.hpp"

namespace cbvlab {

// Bounded property checks. A check distinguishes a definite failure
// (Refuted) from a witness that was not found within budget (Inconclusive),
// and reports NotApplicable when its hypotheses cannot be established.

enum class Status { Holds, Refuted, Inconclusive, NotApplicable };

std::string_view to_string(Status s);

struct PropertyReport {
  std::string property;
  Status status = Status::Holds;
  std::size_t instances = 0;
  std::string detail;
  /// Replayable description of the failing instance; null when there is none.
  nlohmann::json counterexample;
  nlohmann::json budgets = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  double millis = 0;
  std::vector<PropertyReport> cases;

  bool holds() const { return status == Status::Holds; }
};

/// {property, status, instances, counterexample?, budgets, seed, millis},
/// plus detail and nested cases when present.
nlohmann::json to_json(const PropertyReport& r);
std::string to_text(const PropertyReport& r);

/// Distinct elements of T_B(m) have disjoint sets of normal forms.
PropertyReport check_partition(const Term& m, std::size_t budget, std::size_t max_set_size = kDefaultMaxSetSize);

/// Every element of T_B(m) normalizes under the step-by-step strategies with
/// a strictly decreasing size, and all three strategies agree.
PropertyReport check_normalization(const Term& m, std::size_t budget,
                                   std::size_t max_set_size = kDefaultMaxSetSize);

/// For a step m →v n. Direction 1: nf(s) ⊆ NFT_{B′}(n) for s ∈ T_B(m).
/// Direction 2: every s′ ∈ T_B(n) with nf(s′) ≠ 0 is reached from some
/// s ∈ T(m). The witness s is built by inverting the step and verified;
/// a search of T_{B′}(m) is the fallback. Throws std::invalid_argument when
/// n is not a one-step reduct of m.
PropertyReport check_simulation(const Term& m, const Term& n, std::size_t budget, std::size_t search,
                                std::size_t max_set_size = kDefaultMaxSetSize);

/// Given m <= n at budget, checks C⟨m⟩ <= C⟨n⟩ for a one-hole context.
PropertyReport check_monotone(const Term& context, const Term& m, const Term& n, std::size_t budget,
                              std::size_t search, std::size_t max_set_size = kDefaultMaxSetSize);

struct StabilityInstance {
  Term context;
  std::vector<std::vector<Term>> families;  // X_1..X_n
  std::vector<Term> upper;                  // L_1..L_n
  std::vector<Term> infima;                 // V_1..V_n
  std::size_t budget = 12;
  std::size_t search = 16;
};

/// X = {Pair(True,Ω), Pair(Ω,True)}, L = Pair(True,True), V = Pair(Ω,Ω).
StabilityInstance por_instance(const Term& context, std::size_t budget, std::size_t search);

/// Verifies the hypotheses at budget (NotApplicable otherwise), then compares
/// NFT_B(C⟨V⃗⟩) with the intersection of NFT_B(C⟨N⃗⟩) over N⃗ ∈ X_1×…×X_n.
PropertyReport check_stability(const StabilityInstance& inst, std::size_t max_set_size = kDefaultMaxSetSize);

/// Without a candidate: the three bounded pair sets and the contradiction
/// they yield. With a candidate P: tests P Pair(True,Ω) =_T True,
/// P Pair(Ω,True) =_T True (line 1) and P Pair(Ω,Ω) =_T Ω (line 2), and
/// reports Refuted with the failing lines.
PropertyReport demo_por(const std::optional<Term>& candidate, std::size_t budget, std::size_t search,
                        std::size_t max_set_size = kDefaultMaxSetSize);

/// For m, n related by a →v chain of at most `depth` steps (either way) and
/// a one-hole context C: C⟨m⟩ =_T C⟨n⟩ at budget.
PropertyReport check_theory_congruence(const Term& m, const Term& n, const Term& context, std::size_t budget,
                                       std::size_t search, std::size_t depth = 4,
                                       std::size_t max_set_size = kDefaultMaxSetSize);

/// Every t ∈ NFT_B(m) lies in T(N) for some reduct N of m within `depth` steps.
PropertyReport check_unodavanti(const Term& m, std::size_t budget, std::size_t depth,
                                std::size_t max_set_size = kDefaultMaxSetSize);

/// Value shape: T_B(V) contains only bags for a value V. Normal persistence:
/// normal t ∈ T_B(m) stays in T(n) for every step m →v n.
PropertyReport check_remarks(const Term& m, std::size_t budget, std::size_t max_set_size = kDefaultMaxSetSize);

/// taylor_member(s, M) against membership in taylor_enumerate(M, size(s)) on
/// `pairs` generated pairs, about half of them positive by construction.
PropertyReport check_taylor_exactness(std::uint64_t seed, std::size_t pairs);

/// One randomized trial per index: Te of contexts (taylor_fill_set against
/// the expansion of the filled term), injectivity of rigid filling, the
/// Rigid(c) round trip and cardinality, and a reduction compatibility spot
/// check.
PropertyReport check_rigid_lemmas(std::uint64_t seed, std::size_t trials, std::size_t budget,
                                  std::size_t max_set_size = kDefaultMaxSetSize);
PropertyReport check_rigid_trial(std::uint64_t seed, std::size_t trial, std::size_t budget,
                                 std::size_t max_set_size = kDefaultMaxSetSize);

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs a property over a corpus: every term, every declared step, or the
/// products with the corpus contexts, as fits the property. `jobs` > 1 runs
/// the cases on that many threads; results are merged in case order.
PropertyReport run_suite(std::string_view property, const Corpus& corpus, const Budgets& budgets,
                         unsigned jobs = 1);

/// Re-runs the instance described by a counterexample.
PropertyReport replay(const nlohmann::json& counterexample);

}  // namespace cbvlab
