#include "eprm/rps.hpp"

#include <stdexcept>

namespace eprm {

PermEvent::PermEvent(std::vector<Sample> sequence) : sequence_(std::move(sequence)) {
  std::uint64_t seen = 0;
  for (Sample s : sequence_) {
    if (s >= kMaxSamples) throw std::invalid_argument("sample index out of range");
    const std::uint64_t bit = std::uint64_t{1} << s;
    if (seen & bit) throw std::invalid_argument("permutation event repeats a sample");
    seen |= bit;
  }
}

SetEvent PermEvent::members() const { return SetEvent::of(sequence_); }

bool fits(const PermEvent& e, const SampleSpace& space) {
  for (Sample s : e.sequence())
    if (s >= space.size()) return false;
  return true;
}

std::string describe(const PermEvent& e, const SampleSpace& space) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += space.label(e.sequence()[i]);
  }
  return out + ")";
}

PermEvent left_intersect(const PermEvent& a, const PermEvent& b) {
  const SetEvent common = b.members();
  std::vector<Sample> out;
  for (Sample s : a.sequence())
    if (common.contains(s)) out.push_back(s);
  return PermEvent(std::move(out));
}

PatternOperator<PermEvent> rps_right_operator() {
  return {"rps-right", [](const PermEvent& a, const PermEvent& b) { return right_intersect(a, b); }};
}

PermMass rps_right_combine(std::span<const PermMass> sources) {
  return fuse_sequence(sources, rps_right_operator());
}

std::uint64_t pes_size(std::uint64_t n) {
  if (n == 0 || n > 20) throw std::invalid_argument("pes_size is defined for 1 <= n <= 20");
  std::uint64_t total = 0;
  std::uint64_t falling = 1;  // n!/(n-i)!
  for (std::uint64_t i = 1; i <= n; ++i) {
    falling *= n - i + 1;
    total += falling;
  }
  return total;
}

}  // namespace eprm
