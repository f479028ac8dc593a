#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace eprm {

/// Index of a sample inside its SampleSpace.
using Sample = std::uint32_t;

/// Events are stored as 64-bit member masks, which bounds every space.
inline constexpr std::size_t kMaxSamples = 64;

/// Absolute tolerance used for every mass comparison.
inline constexpr double kMassTolerance = 1e-9;

class EvidenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every product of focal elements landed on the empty event.
class TotalConflict : public EvidenceError {
 public:
  TotalConflict() : EvidenceError("total conflict: no non-empty combination carries mass") {}
};

class SpaceMismatch : public EvidenceError {
 public:
  SpaceMismatch() : EvidenceError("operands are defined over different sample spaces") {}
};

/// Ordered list of distinct sample labels. Events refer to samples by index.
class SampleSpace {
 public:
  explicit SampleSpace(std::vector<std::string> labels);

  /// Space with labels "0", "1", ..., "n-1".
  static SampleSpace indexed(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Sample s) const { return labels_.at(s); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Throws std::invalid_argument for unknown labels.
  Sample index_of(const std::string& label) const;
  bool contains(const std::string& label) const { return index_.contains(label); }

  bool operator==(const SampleSpace& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Sample> index_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

inline SpacePtr make_space(std::vector<std::string> labels) {
  return std::make_shared<const SampleSpace>(std::move(labels));
}

inline SpacePtr make_indexed_space(std::size_t n) {
  return std::make_shared<const SampleSpace>(SampleSpace::indexed(n));
}

}  // namespace eprm
