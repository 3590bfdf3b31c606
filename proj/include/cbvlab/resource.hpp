#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cbvlab {

// Resource CbV terms, locally nameless like Term. Values are variables,
// holes and abstractions over simple terms; simple terms are applications
// and bags. Bag elements are kept sorted in the canonical order below, so
// structural equality is alpha-equivalence with multiset bags.

enum class RKind : std::uint8_t { Var, Bound, Hole, Abs, App, Bag };

struct RNode;

class RTerm {
 public:
  RTerm() = default;

  static RTerm var(std::string name);
  static RTerm bound(std::uint32_t index);
  static RTerm hole(std::uint32_t index);
  /// Throws std::invalid_argument unless `body` is a simple term.
  static RTerm abs(std::string hint, RTerm body);
  /// Throws std::invalid_argument unless both sides are simple terms.
  static RTerm app(RTerm fun, RTerm arg);
  /// Throws std::invalid_argument unless every element is a value.
  static RTerm bag(std::vector<RTerm> elems);

  RKind kind() const;
  const std::string& name() const;
  std::uint32_t index() const;
  const RTerm& body() const;
  const RTerm& fun() const;
  const RTerm& arg() const;
  const std::vector<RTerm>& elems() const;

  std::size_t size() const;
  std::uint64_t hash() const;
  std::uint32_t loose() const;
  std::uint32_t max_hole() const;

  bool is_value() const;
  bool is_simple() const { return !is_value(); }
  explicit operator bool() const { return static_cast<bool>(node_); }

  friend std::strong_ordering operator<=>(const RTerm& a, const RTerm& b);
  friend bool operator==(const RTerm& a, const RTerm& b);

 private:
  explicit RTerm(std::shared_ptr<const RNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const RNode> node_;
};

struct RNode {
  RKind kind;
  std::uint32_t index = 0;
  std::string name;
  RTerm a;
  RTerm b;
  std::vector<RTerm> elems;
  std::size_t size = 1;
  std::uint64_t hash = 0;
  std::uint32_t loose = 0;
  std::uint32_t max_hole = 0;
};

struct RTermHash {
  std::size_t operator()(const RTerm& t) const { return static_cast<std::size_t>(t.hash()); }
};

/// Qualitative sum: a finite set of resource terms; the empty set is 0.
using Sum = std::set<RTerm>;

/// Free occurrences of the variable `x`.
std::size_t degree(const RTerm& s, const std::string& x);
/// Occurrences of hole `i`.
std::size_t hole_degree(const RTerm& s, std::uint32_t i);

/// Linear substitution of the elements of `bag` for the occurrences of `x`
/// along every bijection; 0 when degree(s, x) differs from the bag's size.
Sum linear_subst(const RTerm& s, const std::string& x, const RTerm& bag);

/// Same, for index 0 of an abstraction body (the β_r contractum).
Sum linear_subst_bound(const RTerm& body, const std::vector<RTerm>& values);

RTerm shift(const RTerm& t, int delta, std::uint32_t cutoff = 0);

/// Position of a subterm: 0/1 select fun/arg of an application, 0 the body
/// of an abstraction, i the i-th element (canonical order) of a bag.
using RPath = std::vector<std::uint32_t>;

enum class RedexKind { None, Beta, Clash };
RedexKind redex_kind(const RTerm& t);

/// Contracts the redex at the root of `t`.
Sum contract(const RTerm& t);

/// Redex positions in pre-order; the first is the leftmost-outermost one.
std::vector<RPath> redex_positions(const RTerm& t);

/// Fires the redex at `path`, closing the result under the surrounding context.
Sum fire_at(const RTerm& t, const RPath& path);

/// Every term occurring in a one-step reduct of `t` at some position.
Sum one_step_reducts(const RTerm& t);

struct StepResult {
  bool normal = true;
  Sum reducts;
};

/// Fires the leftmost-outermost redex.
StepResult step_r(const RTerm& s);

bool is_normal(const RTerm& s);

enum class Strategy { LeftmostOutermost, RightmostInnermost, Compositional };

/// Full normalisation with a per-instance cache. Compositional evaluates
/// nf(s t) as nf(nf(s) nf(t)) bottom-up; the other two strategies fire one
/// redex at a time. With `check_measure`, every step is checked to strictly
/// decrease the size and std::logic_error is thrown otherwise.
class Normalizer {
 public:
  explicit Normalizer(Strategy strategy = Strategy::Compositional, bool check_measure = false)
      : strategy_(strategy), check_measure_(check_measure) {}

  const Sum& normalize(const RTerm& s);
  Sum normalize(const Sum& s);

  std::size_t steps() const { return steps_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  const Sum& stepwise(const RTerm& s);
  const Sum& compositional(const RTerm& s);
  const Sum& root_of_normal_app(const RTerm& s);

  Strategy strategy_;
  bool check_measure_;
  std::size_t steps_ = 0;
  std::unordered_map<RTerm, Sum, RTermHash> cache_;
  std::unordered_map<RTerm, Sum, RTermHash> root_cache_;
};

Sum normalize(const RTerm& s, Strategy strategy = Strategy::Compositional);

enum class Reachability { Reachable, Unreachable, Unknown };

/// Decides whether `to` occurs in some sum reachable from `from` by →r.
/// Sizes strictly decrease along steps, which bounds the search; Unknown is
/// returned once more than `max_visited` terms have been expanded.
Reachability reaches(const RTerm& from, const RTerm& to, std::size_t max_visited = 200000);

/// Resource syntax: bags `[v1, ..., vn]`, abstractions `\x. s`, holes `_i`,
/// juxtaposition for application, parentheses.
RTerm parse_resource(std::string_view text);
/// As parse_resource, requiring a simple term.
RTerm parse_simple(std::string_view text);

std::string to_string(const RTerm& t);
/// `{ s1 ; s2 ; ... }`, or `0` for the empty sum.
std::string to_string(const Sum& s);

}  // namespace cbvlab
