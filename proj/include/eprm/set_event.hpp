#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "eprm/sample_space.hpp"

namespace eprm {

/// Subset of a sample space, stored as a member mask.
class SetEvent {
 public:
  constexpr SetEvent() = default;
  constexpr explicit SetEvent(std::uint64_t bits) : bits_(bits) {}

  static SetEvent of(std::initializer_list<Sample> members);
  static SetEvent of(const std::vector<Sample>& members);
  /// The whole space {0, ..., n-1}.
  static SetEvent full(std::size_t n);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(Sample s) const { return s < kMaxSamples && ((bits_ >> s) & 1U); }
  constexpr bool subset_of(SetEvent other) const { return (bits_ & ~other.bits_) == 0; }

  /// Members in ascending index order.
  std::vector<Sample> members() const;

  SetEvent with(Sample s) const { return SetEvent(bits_ | (std::uint64_t{1} << s)); }

  friend constexpr SetEvent operator&(SetEvent a, SetEvent b) { return SetEvent(a.bits_ & b.bits_); }
  friend constexpr SetEvent operator|(SetEvent a, SetEvent b) { return SetEvent(a.bits_ | b.bits_); }

  constexpr auto operator<=>(const SetEvent&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

inline bool is_empty(const SetEvent& e) { return e.empty(); }
bool fits(const SetEvent& e, const SampleSpace& space);
/// "{a,b}" using the space's labels.
std::string describe(const SetEvent& e, const SampleSpace& space);

}  // namespace eprm
