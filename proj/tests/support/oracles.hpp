#pragma once

// Brute-force reference implementations used to cross-check the library.
// They work on std::set / adjacency matrices rather than the bit masks the
// library uses, so a shared bug is unlikely.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "eprm/evidence.hpp"
#include "eprm/graph.hpp"
#include "eprm/rps.hpp"

namespace oracle {

using Members = std::set<int>;
using SetTable = std::map<Members, double>;

inline Members members_of(const eprm::SetEvent& e) {
  Members out;
  for (int s = 0; s < 64; ++s)
    if ((e.bits() >> s) & 1U) out.insert(s);
  return out;
}

inline SetTable table_of(const eprm::SetMass& m) {
  SetTable out;
  for (const auto& [event, mass] : m.entries()) out[members_of(event)] += mass;
  return out;
}

struct DempsterResult {
  SetTable fused;
  double conflict = 0.0;
  bool total_conflict = false;
};

/// Full Cartesian product bucketed by std::set_intersection, normalized by
/// the non-conflicting mass.
inline DempsterResult dempster(const SetTable& a, const SetTable& b) {
  DempsterResult r;
  SetTable raw;
  for (const auto& [ea, ma] : a) {
    for (const auto& [eb, mb] : b) {
      Members c;
      std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::inserter(c, c.end()));
      if (c.empty()) r.conflict += ma * mb;
      else raw[c] += ma * mb;
    }
  }
  double kept = 0.0;
  for (const auto& [e, m] : raw) kept += m;
  if (kept <= 0.0) {
    r.total_conflict = true;
    return r;
  }
  for (const auto& [e, m] : raw)
    if (m != 0.0) r.fused[e] = m / kept;
  return r;
}

inline SetTable disjunctive(const SetTable& a, const SetTable& b) {
  SetTable out;
  for (const auto& [ea, ma] : a) {
    for (const auto& [eb, mb] : b) {
      Members c = ea;
      c.insert(eb.begin(), eb.end());
      out[c] += ma * mb;
    }
  }
  return out;
}

/// Same focal sets and masses within tol.
inline bool same_table(const SetTable& a, const SetTable& b, double tol) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!(std::abs(ia->second - ib->second) < tol)) return false;
  }
  return true;
}

/// Random mass assignment over n samples with 1..max_focal distinct
/// non-empty focal sets.
inline eprm::SetMass random_set_mass(std::mt19937_64& rng, const eprm::SpacePtr& space, std::size_t max_focal) {
  const std::size_t n = space->size();
  std::uniform_int_distribution<std::uint64_t> pick_mask(1, (std::uint64_t{1} << n) - 1);
  std::uniform_int_distribution<std::size_t> pick_count(1, max_focal);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::map<std::uint64_t, double> raw;
  const std::size_t k = pick_count(rng);
  for (std::size_t i = 0; i < k; ++i) raw[pick_mask(rng)] += weight(rng);
  double sum = 0.0;
  for (const auto& [mask, w] : raw) sum += w;
  eprm::SetMass out(space);
  for (const auto& [mask, w] : raw) out.add(eprm::SetEvent(mask), w / sum);
  return out;
}

/// Random mass assignment whose focal elements are all singletons.
inline eprm::SetMass random_bayesian_mass(std::mt19937_64& rng, const eprm::SpacePtr& space) {
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::bernoulli_distribution keep(0.7);
  std::vector<double> w(space->size(), 0.0);
  double sum = 0.0;
  for (auto& x : w) {
    if (keep(rng)) x = weight(rng);
    sum += x;
  }
  if (sum == 0.0) {
    w[0] = 1.0;
    sum = 1.0;
  }
  eprm::SetMass out(space);
  for (std::size_t s = 0; s < w.size(); ++s)
    if (w[s] > 0.0) out.add(eprm::SetEvent::of({static_cast<eprm::Sample>(s)}), w[s] / sum);
  return out;
}

/// Random ordered subset of 0..n-1 (possibly of size 1, never empty).
inline eprm::PermEvent random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<eprm::Sample> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<eprm::Sample>(i);
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<std::size_t> len(1, n);
  all.resize(len(rng));
  return eprm::PermEvent(all);
}

/// All non-empty permutation events over n samples, by recursion.
inline std::size_t count_permutation_events(int n) {
  std::size_t total = 0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto extend = [&](auto&& self, int depth) -> void {
    for (int s = 0; s < n; ++s) {
      if (used[static_cast<std::size_t>(s)]) continue;
      used[static_cast<std::size_t>(s)] = true;
      ++total;
      self(self, depth + 1);
      used[static_cast<std::size_t>(s)] = false;
    }
  };
  extend(extend, 0);
  return total;
}

// ---- graphs as adjacency matrices -------------------------------------

struct Adj {
  int n = 0;
  std::vector<std::vector<bool>> e;

  explicit Adj(int size) : n(size), e(static_cast<std::size_t>(size), std::vector<bool>(static_cast<std::size_t>(size))) {}
  bool at(int u, int v) const { return e[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
  void set(int u, int v, bool on = true) { e[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = on; }
};

inline Adj adj_of(const eprm::GraphEvent& g, int n) {
  Adj a(n);
  for (const auto& [u, v] : g.edges()) a.set(static_cast<int>(u), static_cast<int>(v));
  return a;
}

/// Warshall closure: r[u][v] iff a path of length >= 1 exists.
inline Adj closure(const Adj& a) {
  Adj r = a;
  for (int k = 0; k < a.n; ++k)
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        if (r.at(i, k) && r.at(k, j)) r.set(i, j);
  return r;
}

/// Kahn's algorithm.
inline bool acyclic(const Adj& a) {
  std::vector<int> indeg(static_cast<std::size_t>(a.n), 0);
  for (int u = 0; u < a.n; ++u)
    for (int v = 0; v < a.n; ++v)
      if (a.at(u, v)) ++indeg[static_cast<std::size_t>(v)];
  std::vector<int> ready;
  for (int v = 0; v < a.n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    ++seen;
    for (int v = 0; v < a.n; ++v)
      if (a.at(u, v) && --indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  return seen == a.n;
}

/// No edge (u,v) has an alternative route u -> w -> ... -> v.
inline bool shortcut_free(const Adj& a) {
  const Adj r = closure(a);
  for (int u = 0; u < a.n; ++u)
    for (int v = 0; v < a.n; ++v) {
      if (!a.at(u, v)) continue;
      for (int w = 0; w < a.n; ++w)
        if (w != v && a.at(u, w) && r.at(w, v)) return false;
    }
  return true;
}

/// Every simple path from s to e, lexicographic by construction.
inline std::vector<std::vector<int>> all_paths(const Adj& a, int s, int e) {
  std::vector<std::vector<int>> out;
  std::vector<int> path{s};
  std::vector<bool> on(static_cast<std::size_t>(a.n), false);
  on[static_cast<std::size_t>(s)] = true;
  auto walk = [&](auto&& self, int u) -> void {
    if (u == e) {
      out.push_back(path);
      return;
    }
    for (int v = 0; v < a.n; ++v) {
      if (!a.at(u, v) || on[static_cast<std::size_t>(v)]) continue;
      on[static_cast<std::size_t>(v)] = true;
      path.push_back(v);
      self(self, v);
      path.pop_back();
      on[static_cast<std::size_t>(v)] = false;
    }
  };
  walk(walk, s);
  return out;
}

/// Longest simple path (edge count) leaving s.
inline int longest_from(const Adj& a, int s) {
  int best = 0;
  std::vector<bool> on(static_cast<std::size_t>(a.n), false);
  auto walk = [&](auto&& self, int u, int len) -> void {
    best = std::max(best, len);
    on[static_cast<std::size_t>(u)] = true;
    for (int v = 0; v < a.n; ++v)
      if (a.at(u, v) && !on[static_cast<std::size_t>(v)]) self(self, v, len + 1);
    on[static_cast<std::size_t>(u)] = false;
  };
  walk(walk, s, 0);
  return best;
}

/// Random graph over n samples: each ordered pair (u != v) gets an edge
/// with probability p, never both directions of one pair when `oriented`.
inline eprm::GraphEvent random_graph(std::mt19937_64& rng, int n, double p, bool oriented) {
  std::bernoulli_distribution coin(p);
  std::bernoulli_distribution flip(0.5);
  std::vector<eprm::Edge> edges;
  std::uint64_t nodes = 0;
  for (int u = 0; u < n; ++u) {
    if (flip(rng)) nodes |= std::uint64_t{1} << u;
    for (int v = oriented ? u + 1 : 0; v < n; ++v) {
      if (u == v || !coin(rng)) continue;
      if (oriented && flip(rng)) edges.emplace_back(v, u);
      else edges.emplace_back(u, v);
    }
  }
  for (const auto& [u, v] : edges) nodes |= (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
  return eprm::GraphEvent(eprm::SetEvent(nodes), edges);
}

}  // namespace oracle
