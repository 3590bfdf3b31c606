#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace cbvlab {

// Call-by-value lambda terms and k-contexts, locally nameless: bound
// variables are de Bruijn indices, free variables carry their name, and a
// binder keeps its source name only as a printing/capture hint. Structural
// equality of this representation is alpha-equivalence.

enum class TermKind : std::uint8_t { Free, Bound, Hole, Abs, App };

struct TermNode;

class Term {
 public:
  Term() = default;

  static Term free(std::string name);
  static Term bound(std::uint32_t index);
  static Term hole(std::uint32_t index);
  static Term abs(std::string hint, Term body);
  static Term app(Term fun, Term arg);

  TermKind kind() const;
  /// Free variable name, or binder hint for abstractions.
  const std::string& name() const;
  /// de Bruijn index (Bound) or hole index (Hole).
  std::uint32_t index() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  std::size_t size() const;
  std::uint64_t hash() const;
  /// Largest hole index occurring in the term, 0 if hole-free.
  std::uint32_t max_hole() const;
  /// One more than the largest dangling de Bruijn index; 0 when locally closed.
  std::uint32_t loose() const;

  bool is_value() const;
  bool has_holes() const { return max_hole() != 0; }
  explicit operator bool() const { return static_cast<bool>(node_); }
  /// Node identity (not alpha-invariant); distinguishes binder hints.
  const void* id() const { return node_.get(); }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind;
  std::uint32_t index = 0;
  std::string name;
  Term a;
  Term b;
  std::size_t size = 1;
  std::uint64_t hash = 0;
  std::uint32_t max_hole = 0;
  std::uint32_t loose = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return static_cast<std::size_t>(t.hash()); }
};

bool alpha_eq(const Term& a, const Term& b);

std::set<std::string> free_names(const Term& t);

/// Capture-avoiding substitution of the value `v` for the free variable `x`.
/// Throws std::invalid_argument when `v` is not a value or `m` has holes.
Term subst_value(const Term& m, const std::string& x, const Term& v);

/// Capture-permitting hole filling: Hole i becomes args[i-1]; free names of
/// an argument that match an enclosing binder's name become bound by it.
/// Throws std::invalid_argument when a hole index exceeds args.size().
Term fill_context(const Term& c, const std::vector<Term>& args);

/// Fills the occurrences of hole `i`, in left-to-right order, with
/// `per_occurrence[j]`; other holes are left untouched.
Term fill_occurrences(const Term& c, std::uint32_t i, const std::vector<Term>& per_occurrence);

/// Number of occurrences of hole `i`.
std::size_t hole_degree(const Term& c, std::uint32_t i);

// de Bruijn plumbing shared by the reduction engines.
Term shift(const Term& t, int delta, std::uint32_t cutoff = 0);
/// Replaces index 0 of `body` with `value` and lowers the other dangling
/// indices by one (the body of an abstraction being opened).
Term open(const Term& body, const Term& value);
/// Turns free occurrences of `name` into the index bound by a new binder
/// wrapped directly around the result.
Term close(const Term& t, const std::string& name);

std::string to_string(const Term& t);

}  // namespace cbvlab
