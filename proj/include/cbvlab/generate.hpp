#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "cbvlab/resource.hpp"
#include "cbvlab/term.hpp"

namespace cbvlab {

/// Seeded random generation of terms, contexts and Taylor elements.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  /// A term of at most `max_size` nodes over the free names x, y, z. With
  /// `holes` > 0, leaves may be holes _1.._holes.
  Term term(std::size_t max_size, std::uint32_t holes = 0);
  /// A value (variable or abstraction) of at most `max_size` nodes.
  Term value(std::size_t max_size, std::uint32_t holes = 0);
  /// A context in which every hole _1.._holes occurs at least once.
  Term context(std::size_t max_size, std::uint32_t holes);
  /// A random element of T(m), retried until its size is at most max_size.
  RTerm taylor_element(const Term& m, std::size_t max_size);

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  Term gen(std::size_t size, std::uint32_t depth, std::uint32_t holes, bool value_only);
  Term leaf(std::uint32_t depth, std::uint32_t holes);
  RTerm sample(const Term& m);

  std::mt19937_64 rng_;
};

}  // namespace cbvlab
