#pragma once

// Generic pattern fusion: any binary closed operation on an event algebra
// combines two sources; multi-source fusion is a strict left fold.

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "eprm/mass.hpp"

namespace eprm {

/// Binary operation on one event algebra. The result may be the empty
/// event, which fusion pools as conflict.
template <Event E>
struct PatternOperator {
  std::string name;
  std::function<E(const E&, const E&)> apply;

  E operator()(const E& lhs, const E& rhs) const { return apply(lhs, rhs); }
};

template <Event E>
struct FusionResult {
  MassAssignment<E> fused;
  double conflict = 0.0;
};

/// Cartesian product of the two sources through `po`; products landing on
/// the empty event are pooled and the remainder is rescaled to sum to 1.
template <Event E>
FusionResult<E> fuse_pair(const MassAssignment<E>& a, const MassAssignment<E>& b,
                          const PatternOperator<E>& po) {
  if (!a.same_space(b)) throw SpaceMismatch();
  MassAssignment<E> fused(a.space_ptr());
  double pooled = 0.0;
  double kept = 0.0;
  for (const auto& [lhs, ma] : a.entries()) {
    for (const auto& [rhs, mb] : b.entries()) {
      const double product = ma * mb;
      E result = po(lhs, rhs);
      if (is_empty(result)) {
        pooled += product;
      } else {
        fused.add(result, product);
        kept += product;
      }
    }
  }
  if (!(kept > 0.0)) throw TotalConflict();
  fused.scale(1.0 / kept);
  fused.drop_zeros();
  return {std::move(fused), pooled};
}

template <Event E>
MassAssignment<E> fuse_two(const MassAssignment<E>& a, const MassAssignment<E>& b,
                           const PatternOperator<E>& po) {
  return fuse_pair(a, b, po).fused;
}

/// ((s0 (.) s1) (.) s2) ... in the given order; never reassociated.
template <Event E>
MassAssignment<E> fuse_sequence(std::span<const MassAssignment<E>> sources,
                                const PatternOperator<E>& po) {
  if (sources.empty()) throw std::invalid_argument("fuse_sequence needs at least one source");
  MassAssignment<E> acc = sources.front();
  for (const auto& next : sources.subspan(1)) acc = fuse_two(acc, next, po);
  return acc;
}

/// User preference hyperparameters, passed through to decision operators.
using PreferenceParams = std::map<std::string, std::string>;

template <Event E, class D>
struct DecisionOperator {
  std::string name;
  std::function<D(const MassAssignment<E>&, const PreferenceParams&)> apply;
};

template <Event E, class D>
D decide(const MassAssignment<E>& source, const DecisionOperator<E, D>& dmo,
         const PreferenceParams& prefs = {}) {
  return dmo.apply(source, prefs);
}

/// Focal element with the largest mass; ties go to the smallest event in
/// canonical order. Throws std::invalid_argument on an empty source.
template <Event E>
E max_mass_event(const MassAssignment<E>& source) {
  if (source.empty()) throw std::invalid_argument("max-mass decision on an empty source");
  auto best = source.entries().begin();
  for (auto it = best; it != source.entries().end(); ++it)
    if (it->second > best->second + kMassTolerance) best = it;
  return best->first;
}

template <Event E>
DecisionOperator<E, E> max_mass_decision() {
  return {"max-mass", [](const MassAssignment<E>& s, const PreferenceParams&) { return max_mass_event(s); }};
}

}  // namespace eprm
