#pragma once

#include <cmath>
#include <concepts>
#include <initializer_list>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eprm/sample_space.hpp"

namespace eprm {

/// An event algebra: totally ordered (canonical form keys the fusion map),
/// with an empty element and a membership check against a sample space.
template <class E>
concept Event = std::totally_ordered<E> && std::copyable<E> &&
                requires(const E& e, const SampleSpace& space) {
                  { is_empty(e) } -> std::same_as<bool>;
                  { fits(e, space) } -> std::same_as<bool>;
                  { describe(e, space) } -> std::convertible_to<std::string>;
                };

/// Finite map from focal elements to masses over one sample space.
///
/// The container accepts any entries (including the empty event and
/// unnormalized masses) so that `validate` can report what is wrong; the
/// fusion operations only ever produce valid assignments.
template <Event E>
class MassAssignment {
 public:
  using Map = std::map<E, double>;

  explicit MassAssignment(SpacePtr space) : space_(std::move(space)) {
    if (!space_) throw std::invalid_argument("mass assignment requires a sample space");
  }

  MassAssignment(SpacePtr space, std::initializer_list<std::pair<E, double>> entries)
      : MassAssignment(std::move(space)) {
    for (const auto& [event, mass] : entries) add(event, mass);
  }

  /// Accumulates `mass` onto `event`.
  void add(const E& event, double mass) {
    if (!fits(event, *space_)) throw std::invalid_argument("event refers to samples outside the space");
    entries_[event] += mass;
  }

  double mass(const E& event) const {
    auto it = entries_.find(event);
    return it == entries_.end() ? 0.0 : it->second;
  }

  double total() const {
    double sum = 0.0;
    for (const auto& [event, mass] : entries_) sum += mass;
    return sum;
  }

  void scale(double factor) {
    for (auto& [event, mass] : entries_) mass *= factor;
  }

  void drop_zeros() { std::erase_if(entries_, [](const auto& kv) { return kv.second == 0.0; }); }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const SampleSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  bool same_space(const MassAssignment& other) const {
    return space_ == other.space_ || *space_ == *other.space_;
  }

 private:
  SpacePtr space_;
  Map entries_;
};

enum class ViolationKind { NegativeMass, SumNotOne, EmptyEvent };

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::string to_string(ViolationKind kind);

template <Event E>
std::vector<Violation> validate(const MassAssignment<E>& assignment) {
  std::vector<Violation> out;
  for (const auto& [event, mass] : assignment.entries()) {
    if (is_empty(event)) {
      std::ostringstream os;
      os << "empty event carries mass " << mass;
      out.push_back({ViolationKind::EmptyEvent, os.str()});
    }
    if (!(mass >= 0.0)) {
      std::ostringstream os;
      os << describe(event, assignment.space()) << " has mass " << mass;
      out.push_back({ViolationKind::NegativeMass, os.str()});
    }
  }
  const double sum = assignment.total();
  if (!(std::abs(sum - 1.0) <= kMassTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "masses sum to " << sum;
    out.push_back({ViolationKind::SumNotOne, os.str()});
  }
  return out;
}

/// Largest absolute mass difference, or +inf when the focal sets differ.
template <Event E>
double max_deviation(const MassAssignment<E>& a, const MassAssignment<E>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  auto ia = a.entries().begin();
  for (auto ib = b.entries().begin(); ib != b.entries().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(ia->second - ib->second));
  }
  return worst;
}

template <Event E>
bool equivalent(const MassAssignment<E>& a, const MassAssignment<E>& b, double tol = kMassTolerance) {
  return a.same_space(b) && max_deviation(a, b) <= tol;
}

}  // namespace eprm
