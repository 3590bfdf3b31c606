#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "cbvlab/term.hpp"

namespace cbvlab {

enum class Dir : std::uint8_t { Body, Fun, Arg };
using Path = std::vector<Dir>;

/// One β_v contraction: the subterm of `source` at `path` is (λx.M)V with V a
/// value and `target` replaces it by M[V/x].
struct ReductionStep {
  Term source;
  Term target;
  Path path;
};

bool is_redex_v(const Term& t);

/// Every one-step →v reduct, one entry per redex occurrence, in pre-order
/// (the first entry is the leftmost-outermost redex).
std::vector<ReductionStep> step_v(const Term& m);

struct ReduceResult {
  bool normal = false;  // NormalForm when true, Timeout otherwise
  Term term;
  std::size_t steps = 0;
};

/// Leftmost-outermost reduction for at most `max_steps` steps.
ReduceResult reduce_v(const Term& m, std::size_t max_steps);

/// Terms reachable in at most `depth` steps through terms of size <= size_cap.
std::set<Term> reducts_v(const Term& m, std::size_t depth, std::size_t size_cap);

/// Whether `a` and `b` have a common reduct within `depth` steps each.
bool joinable_v(const Term& a, const Term& b, std::size_t depth, std::size_t size_cap);

/// A shortest →v chain from `from` to `to` of at most `depth` steps through
/// terms of size <= size_cap; an empty chain when the terms are equal.
std::optional<std::vector<ReductionStep>> reduction_path(const Term& from, const Term& to, std::size_t depth,
                                                         std::size_t size_cap);

const Term& subterm_at(const Term& m, const Path& path);
Term replace_at(const Term& m, const Path& path, const Term& replacement);

}  // namespace cbvlab
