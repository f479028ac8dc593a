#include "eprm/sample_space.hpp"

namespace eprm {

SampleSpace::SampleSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("sample space must contain at least one sample");
  if (labels_.size() > kMaxSamples)
    throw std::invalid_argument("sample space exceeds " + std::to_string(kMaxSamples) + " samples");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], static_cast<Sample>(i));
    if (!inserted) throw std::invalid_argument("duplicate sample label '" + labels_[i] + "'");
  }
}

SampleSpace SampleSpace::indexed(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return SampleSpace(std::move(labels));
}

Sample SampleSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw std::invalid_argument("label '" + label + "' is not in the sample space");
  return it->second;
}

}  // namespace eprm
