#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cbvlab/resource.hpp"
#include "cbvlab/term.hpp"

namespace cbvlab {

inline constexpr std::size_t kDefaultMaxSetSize = 2'000'000;

/// Raised when a bounded enumeration would exceed its cardinality cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// s ∈ T(m), decided structurally. Holes of `m` match bags of the same hole.
bool taylor_member(const RTerm& s, const Term& m);

/// The elements of T(m) of size <= budget, grouped by exact size
/// (index n holds the elements of size n; index 0 is always empty).
std::vector<std::vector<RTerm>> taylor_by_size(const Term& m, std::size_t budget,
                                               std::size_t max_set_size = kDefaultMaxSetSize);

/// { s ∈ T(m) : size(s) <= budget }.
Sum taylor_enumerate(const Term& m, std::size_t budget, std::size_t max_set_size = kDefaultMaxSetSize);

/// Number of elements of T(m) of each exact size, computed by a generating
/// function recurrence without building any term. Saturates at UINT64_MAX.
std::vector<std::uint64_t> taylor_count(const Term& m, std::size_t budget);

/// Values v with [v] ∈ T(V) and size(v) <= max_size, for a value V.
std::vector<RTerm> value_approximants(const Term& value, std::size_t max_size,
                                      std::size_t max_set_size = kDefaultMaxSetSize);

/// The normal forms of the bounded expansion T_B(m), each mapped to the
/// smallest element of T_B(m) it is a normal form of.
class NftIndex {
 public:
  NftIndex(const Term& m, std::size_t budget, std::size_t max_set_size = kDefaultMaxSetSize);

  const Sum& normal_forms() const { return normal_forms_; }
  /// Smallest s ∈ T_B(m) with t ∈ nf(s), or nullptr.
  const RTerm* witness(const RTerm& t) const;
  std::size_t elements() const { return elements_; }
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
  std::size_t elements_ = 0;
  Sum normal_forms_;
  std::unordered_map<RTerm, RTerm, RTermHash> witness_;
};

/// ∪ { nf(s) : s ∈ T_B(m) }.
Sum nft_bounded(const Term& m, std::size_t budget, std::size_t max_set_size = kDefaultMaxSetSize);

/// Semi-decision of t ∈ NFT(m): a witness s ∈ T(m), size(s) <= search_budget,
/// with t ∈ nf(s), or nullopt (not found within budget). Throws
/// std::invalid_argument when t is not normal.
std::optional<RTerm> nft_member(const RTerm& t, const Term& m, std::size_t search_budget,
                                std::size_t max_set_size = kDefaultMaxSetSize);

struct LeqReport {
  bool holds = true;
  std::size_t checked = 0;
  /// Normal forms of the left side with no witness on the right within budget.
  std::vector<RTerm> missing;
};

/// Bounded check of m <= n: every t ∈ NFT_B(m) is searched in T_{B'}(n).
LeqReport leq_bounded(const Term& m, const Term& n, std::size_t budget, std::size_t search_budget,
                      std::size_t max_set_size = kDefaultMaxSetSize);

/// Same with precomputed sides.
LeqReport leq_bounded(const Sum& left_normal_forms, const NftIndex& right);

struct EqReport {
  LeqReport forward;
  LeqReport backward;
  bool holds() const { return forward.holds && backward.holds; }
};

EqReport eq_bounded(const Term& m, const Term& n, std::size_t budget, std::size_t search_budget,
                    std::size_t max_set_size = kDefaultMaxSetSize);

}  // namespace cbvlab
