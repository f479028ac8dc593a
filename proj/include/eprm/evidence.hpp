#pragma once

#include <span>
#include <vector>

#include "eprm/mass.hpp"
#include "eprm/set_event.hpp"

namespace eprm {

using SetMass = MassAssignment<SetEvent>;

struct Combination {
  SetMass fused;
  /// Product mass that landed on the empty intersection before normalization.
  double conflict = 0.0;
};

/// Dempster's rule: products bucketed by intersection, empty intersections
/// pooled as conflict and the rest divided by (1 - conflict).
/// Throws SpaceMismatch, TotalConflict.
Combination dempster_combine(const SetMass& a, const SetMass& b);

/// Left fold of dempster_combine. Throws std::invalid_argument on an empty list.
SetMass combine_many(std::span<const SetMass> sources);

/// Pignistic probability BetP(s) = sum over focal A containing s of m(A)/|A|,
/// indexed by sample.
std::vector<double> pignistic(const SetMass& source);

/// Disjunctive rule: products bucketed by union. Never conflicts.
SetMass dcr_combine(const SetMass& a, const SetMass& b);

}  // namespace eprm
