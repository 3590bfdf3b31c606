#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cbvlab/resource.hpp"
#include "cbvlab/taylor.hpp"
#include "cbvlab/term.hpp"

namespace cbvlab {

// Rigid contexts: resource contexts whose bags are ordered lists. Equality
// ignores binder hints, as for RTerm; lists compare in order.

enum class RigidKind : std::uint8_t { Var, Bound, Hole, Abs, App, List };

class Rigid {
 public:
  static Rigid var(std::string name);
  static Rigid bound(std::uint32_t index);
  static Rigid hole(std::uint32_t index);
  static Rigid abs(std::string hint, Rigid body);
  static Rigid app(Rigid fun, Rigid arg);
  static Rigid list(std::vector<Rigid> elems);

  RigidKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::uint32_t index() const { return index_; }
  const Rigid& body() const { return kids_[0]; }
  const Rigid& fun() const { return kids_[0]; }
  const Rigid& arg() const { return kids_[1]; }
  /// List elements.
  const std::vector<Rigid>& elems() const { return kids_; }

  bool is_value() const;

  friend std::strong_ordering operator<=>(const Rigid& a, const Rigid& b);
  friend bool operator==(const Rigid& a, const Rigid& b) { return (a <=> b) == 0; }

 private:
  Rigid(RigidKind k, std::uint32_t index, std::string name, std::vector<Rigid> kids)
      : kind_(k), index_(index), name_(std::move(name)), kids_(std::move(kids)) {}

  RigidKind kind_;
  std::uint32_t index_ = 0;
  std::string name_;
  std::vector<Rigid> kids_;
};

/// Rigid(c): every ordering of every bag, recursively, without duplicates.
/// Throws BudgetExceeded when the set would exceed `max_set_size`.
std::set<Rigid> rigids_of(const RTerm& c, std::size_t max_set_size = kDefaultMaxSetSize);

/// The forgetful map: lists become bags.
RTerm underlying(const Rigid& r);

std::size_t hole_degree(const Rigid& r, std::uint32_t i);

/// r⟨v⃗¹, …, v⃗ᵏ⟩. args[i-1] lists the values for hole i; its length must equal
/// the degree of hole i. Occurrences consume entries left to right, so an
/// application hands a prefix to its function part and a list hands
/// consecutive chunks to its elements in list order. Free names of a value
/// matching an enclosing binder hint are captured, as in fill_context.
/// Throws std::invalid_argument on a length mismatch or a non-value entry.
RTerm fill_rigid(const Rigid& r, const std::vector<std::vector<RTerm>>& args);

/// { fill_rigid(r, args) : c ∈ T_B(C), r ∈ Rigid(c), [v⃗ⁱ] ∈ T(Vᵢ) }
/// restricted to results of size <= B.
Sum taylor_fill_set(const Term& c, const std::vector<Term>& values, std::size_t budget,
                    std::size_t max_set_size = kDefaultMaxSetSize);

/// Resource syntax with lists written `<v1, ..., vn>`.
std::string to_string(const Rigid& r);

}  // namespace cbvlab
