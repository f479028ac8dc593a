#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <stdexcept>

namespace eprm {

/// Repeatable set: element -> multiplicity. Zero counts are never stored.
template <class K>
class Multiset {
 public:
  using Counts = std::map<K, std::uint64_t>;

  Multiset() = default;
  Multiset(std::initializer_list<std::pair<const K, std::uint64_t>> init) {
    for (const auto& [key, n] : init) add(key, n);
  }

  void add(const K& key, std::uint64_t n = 1) {
    if (n != 0) counts_[key] += n;
  }

  /// Removes up to `n` copies; returns how many were removed.
  std::uint64_t remove(const K& key, std::uint64_t n = 1) {
    auto it = counts_.find(key);
    if (it == counts_.end()) return 0;
    const auto taken = std::min(n, it->second);
    it->second -= taken;
    if (it->second == 0) counts_.erase(it);
    return taken;
  }

  std::uint64_t count(const K& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  const Counts& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  bool operator==(const Multiset&) const = default;

 private:
  Counts counts_;
};

/// Pointwise multiplicity addition.
template <class K>
Multiset<K> multiset_plus(const Multiset<K>& a, const Multiset<K>& b) {
  Multiset<K> out = a;
  for (const auto& [key, n] : b.counts()) out.add(key, n);
  return out;
}

}  // namespace eprm
