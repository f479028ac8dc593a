#include "eprm/evidence.hpp"

#include <stdexcept>

namespace eprm {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NegativeMass: return "negative-mass";
    case ViolationKind::SumNotOne: return "sum-not-one";
    case ViolationKind::EmptyEvent: return "empty-event-present";
  }
  return "unknown";
}

SetEvent SetEvent::of(std::initializer_list<Sample> members) {
  return of(std::vector<Sample>(members));
}

SetEvent SetEvent::of(const std::vector<Sample>& members) {
  std::uint64_t bits = 0;
  for (Sample s : members) {
    if (s >= kMaxSamples) throw std::invalid_argument("sample index out of range");
    bits |= std::uint64_t{1} << s;
  }
  return SetEvent(bits);
}

SetEvent SetEvent::full(std::size_t n) {
  if (n > kMaxSamples) throw std::invalid_argument("sample space too large");
  return SetEvent(n == kMaxSamples ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

std::vector<Sample> SetEvent::members() const {
  std::vector<Sample> out;
  out.reserve(size());
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1)
    out.push_back(static_cast<Sample>(std::countr_zero(rest)));
  return out;
}

bool fits(const SetEvent& e, const SampleSpace& space) {
  return e.subset_of(SetEvent::full(space.size()));
}

std::string describe(const SetEvent& e, const SampleSpace& space) {
  std::string out = "{";
  bool first = true;
  for (Sample s : e.members()) {
    if (!first) out += ",";
    out += space.label(s);
    first = false;
  }
  return out + "}";
}

Combination dempster_combine(const SetMass& a, const SetMass& b) {
  if (!a.same_space(b)) throw SpaceMismatch();
  SetMass fused(a.space_ptr());
  double conflict = 0.0;
  double agreed = 0.0;
  for (const auto& [lhs, ma] : a.entries()) {
    for (const auto& [rhs, mb] : b.entries()) {
      const double product = ma * mb;
      const SetEvent meet = lhs & rhs;
      if (meet.empty()) {
        conflict += product;
      } else {
        fused.add(meet, product);
        agreed += product;
      }
    }
  }
  if (!(agreed > 0.0)) throw TotalConflict();
  fused.scale(1.0 / agreed);
  fused.drop_zeros();
  return {std::move(fused), conflict};
}

SetMass combine_many(std::span<const SetMass> sources) {
  if (sources.empty()) throw std::invalid_argument("combine_many needs at least one source");
  SetMass acc = sources.front();
  for (const auto& next : sources.subspan(1)) acc = dempster_combine(acc, next).fused;
  return acc;
}

std::vector<double> pignistic(const SetMass& source) {
  std::vector<double> prob(source.space().size(), 0.0);
  for (const auto& [event, mass] : source.entries()) {
    if (event.empty()) continue;
    const double share = mass / static_cast<double>(event.size());
    for (Sample s : event.members()) prob[s] += share;
  }
  return prob;
}

SetMass dcr_combine(const SetMass& a, const SetMass& b) {
  if (!a.same_space(b)) throw SpaceMismatch();
  SetMass fused(a.space_ptr());
  for (const auto& [lhs, ma] : a.entries())
    for (const auto& [rhs, mb] : b.entries()) fused.add(lhs | rhs, ma * mb);
  fused.drop_zeros();
  return fused;
}

}  // namespace eprm
