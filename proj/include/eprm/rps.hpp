#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "eprm/fusion.hpp"
#include "eprm/mass.hpp"
#include "eprm/set_event.hpp"

namespace eprm {

/// Ordered sequence of distinct samples (a permutation of a subset).
class PermEvent {
 public:
  PermEvent() = default;
  /// Throws std::invalid_argument on repeated samples.
  explicit PermEvent(std::vector<Sample> sequence);
  PermEvent(std::initializer_list<Sample> sequence) : PermEvent(std::vector<Sample>(sequence)) {}

  const std::vector<Sample>& sequence() const { return sequence_; }
  std::size_t size() const { return sequence_.size(); }
  bool empty() const { return sequence_.empty(); }
  /// The unordered member set.
  SetEvent members() const;

  auto operator<=>(const PermEvent&) const = default;

 private:
  std::vector<Sample> sequence_;
};

inline bool is_empty(const PermEvent& e) { return e.empty(); }
bool fits(const PermEvent& e, const SampleSpace& space);
std::string describe(const PermEvent& e, const SampleSpace& space);

using PermMass = MassAssignment<PermEvent>;

/// Elements of `a` that also occur in `b`, in a's order.
PermEvent left_intersect(const PermEvent& a, const PermEvent& b);

/// Elements of `b` that also occur in `a`, in b's order.
inline PermEvent right_intersect(const PermEvent& a, const PermEvent& b) { return left_intersect(b, a); }

PatternOperator<PermEvent> rps_right_operator();

/// Right combination of random permutation sets, normalized by (1 - conflict).
/// Throws std::invalid_argument on an empty list, TotalConflict.
PermMass rps_right_combine(std::span<const PermMass> sources);

/// Number of non-empty permutation events over n samples,
/// sum_{i=1..n} n!/(n-i)!. Throws std::invalid_argument for n == 0 or n > 20.
std::uint64_t pes_size(std::uint64_t n);

}  // namespace eprm
