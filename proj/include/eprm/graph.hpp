#pragma once

// Graph-valued focal elements. Sets embed as edgeless graphs, permutations
// as single directed chains.

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eprm/mass.hpp"
#include "eprm/rps.hpp"
#include "eprm/set_event.hpp"

namespace eprm {

using Edge = std::pair<Sample, Sample>;

/// Unweighted directed graph over samples, kept in canonical form: node mask
/// plus a sorted, duplicate-free edge list. No self-loops; every endpoint is
/// a node.
class GraphEvent {
 public:
  GraphEvent() = default;
  /// Throws std::invalid_argument on self-loops or endpoints outside `nodes`.
  GraphEvent(SetEvent nodes, std::vector<Edge> edges);
  /// Nodes are the endpoints of `edges`.
  static GraphEvent from_edges(std::vector<Edge> edges);

  SetEvent nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool empty() const { return nodes_.empty(); }
  bool has_edge(Sample u, Sample v) const;

  /// Per-node successor masks, indexed by sample.
  std::array<std::uint64_t, kMaxSamples> successors() const;
  std::size_t in_degree(Sample v) const;
  std::size_t out_degree(Sample u) const;

  auto operator<=>(const GraphEvent&) const = default;

 private:
  SetEvent nodes_;
  std::vector<Edge> edges_;
};

inline bool is_empty(const GraphEvent& g) { return g.empty(); }
bool fits(const GraphEvent& g, const SampleSpace& space);
std::string describe(const GraphEvent& g, const SampleSpace& space);

using GraphMass = MassAssignment<GraphEvent>;

GraphEvent from_set(const SetEvent& e);
GraphEvent from_perm(const PermEvent& e);
/// Inverse of from_perm: the chain's node order, or nullopt when `g` is not
/// a single chain (an edgeless graph decodes only when it has one node).
std::optional<PermEvent> to_perm(const GraphEvent& g);
/// Inverse of from_set: nullopt when `g` has edges.
std::optional<SetEvent> to_set(const GraphEvent& g);

enum class GraphShape { Edgeless, Chain, Dag, Cyclic };
std::string to_string(GraphShape shape);

GraphShape classify(const GraphEvent& g);
bool has_cycle(const GraphEvent& g);

/// Some directed cycle as a closed node walk (first node not repeated), or
/// an empty vector. Search starts from the smallest node and visits
/// successors in ascending order.
std::vector<Sample> find_cycle(const GraphEvent& g);

/// Edge count of the longest simple path starting at `from`. Exhaustive,
/// intended for graphs of at most a dozen nodes.
std::size_t longest_simple_path(const GraphEvent& g, Sample from);

/// Breaks every directed cycle. While a cycle exists: take the cycle found by
/// find_cycle, score each cycle node by the longest simple path leaving it
/// once the cycle's own edges are set aside, and delete the cycle edge whose
/// source scores highest (ties: smallest source, then smallest target).
/// Expects no bidirectional edge pairs.
GraphEvent remove_cycles(const GraphEvent& g);

/// Deletes every edge (u,v) for which another u->v path of two or more edges
/// exists, so only the longest routes survive. Expects an acyclic graph.
GraphEvent longest_path_reduce(const GraphEvent& g);

/// Node union and edge union.
GraphEvent merge_overlay(std::span<const GraphEvent> graphs);

/// Reachability masks: bit v of result[u] set iff a path u -> ... -> v of
/// length >= 1 exists.
std::array<std::uint64_t, kMaxSamples> reachability(const GraphEvent& g);

/// Every simple directed path from `from` to `to`, in lexicographic order.
/// from == to yields the single zero-length path.
std::vector<std::vector<Sample>> enumerate_paths(const GraphEvent& g, Sample from, Sample to);

}  // namespace eprm
