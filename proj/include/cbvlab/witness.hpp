#pragma once

#include <optional>
#include <vector>

#include "cbvlab/cbv.hpp"
#include "cbvlab/resource.hpp"

namespace cbvlab {

// Backward simulation: from an approximant of a reduct, build an approximant
// of the redex side that reduces to it.

/// For a step M →v N and s′ ∈ T(N), an s ∈ T(M) such that one →r step at the
/// image of the redex yields a sum containing s′. The redex copy becomes
/// [λx.p] q where p ∈ T(P) marks the occurrences of x and q collects the
/// approximants of V found at them. nullopt when s′ ∉ T(N).
std::optional<RTerm> expand_step(const ReductionStep& step, const RTerm& s_prime);

/// Same along a chain M0 →v ... →v Mk, for s′ ∈ T(Mk).
std::optional<RTerm> expand_chain(const std::vector<ReductionStep>& chain, const RTerm& s_prime);

}  // namespace cbvlab
