#include "eprm/graph.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <stdexcept>
#include <tuple>

namespace eprm {
namespace {

using Adjacency = std::array<std::uint64_t, kMaxSamples>;

std::uint64_t bit(Sample s) { return std::uint64_t{1} << s; }

template <class F>
void for_each_bit(std::uint64_t mask, F&& f) {
  for (; mask != 0; mask &= mask - 1) f(static_cast<Sample>(std::countr_zero(mask)));
}

std::size_t longest_from(const Adjacency& succ, Sample u, std::uint64_t visited) {
  std::size_t best = 0;
  for_each_bit(succ[u] & ~visited, [&](Sample v) {
    best = std::max(best, 1 + longest_from(succ, v, visited | bit(v)));
  });
  return best;
}

void collect_paths(const Adjacency& succ, Sample u, Sample to, std::uint64_t visited,
                   std::vector<Sample>& path, std::vector<std::vector<Sample>>& out) {
  if (u == to) {
    out.push_back(path);
    return;
  }
  for_each_bit(succ[u] & ~visited, [&](Sample v) {
    path.push_back(v);
    collect_paths(succ, v, to, visited | bit(v), path, out);
    path.pop_back();
  });
}

enum class Mark : unsigned char { White, Grey, Black };

bool cycle_dfs(const Adjacency& succ, Sample u, std::array<Mark, kMaxSamples>& mark,
               std::vector<Sample>& stack, std::vector<Sample>& cycle) {
  mark[u] = Mark::Grey;
  stack.push_back(u);
  bool found = false;
  for_each_bit(succ[u], [&](Sample v) {
    if (found) return;
    if (mark[v] == Mark::Grey) {
      auto start = std::find(stack.begin(), stack.end(), v);
      cycle.assign(start, stack.end());
      found = true;
    } else if (mark[v] == Mark::White) {
      found = cycle_dfs(succ, v, mark, stack, cycle);
    }
  });
  if (found) return true;
  stack.pop_back();
  mark[u] = Mark::Black;
  return false;
}

}  // namespace

GraphEvent::GraphEvent(SetEvent nodes, std::vector<Edge> edges) : nodes_(nodes), edges_(std::move(edges)) {
  for (const auto& [u, v] : edges_) {
    if (u == v) throw std::invalid_argument("graph events cannot contain self-loops");
    if (!nodes_.contains(u) || !nodes_.contains(v))
      throw std::invalid_argument("edge endpoint is not a node of the graph");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

GraphEvent GraphEvent::from_edges(std::vector<Edge> edges) {
  SetEvent nodes;
  for (const auto& [u, v] : edges) {
    if (u >= kMaxSamples || v >= kMaxSamples) throw std::invalid_argument("sample index out of range");
    nodes = nodes.with(u).with(v);
  }
  return GraphEvent(nodes, std::move(edges));
}

bool GraphEvent::has_edge(Sample u, Sample v) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::array<std::uint64_t, kMaxSamples> GraphEvent::successors() const {
  Adjacency succ{};
  for (const auto& [u, v] : edges_) succ[u] |= bit(v);
  return succ;
}

std::size_t GraphEvent::in_degree(Sample v) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.second == v; }));
}

std::size_t GraphEvent::out_degree(Sample u) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [u](const Edge& e) { return e.first == u; }));
}

bool fits(const GraphEvent& g, const SampleSpace& space) { return fits(g.nodes(), space); }

std::string describe(const GraphEvent& g, const SampleSpace& space) {
  std::string out = "G(" + describe(g.nodes(), space) + ";";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& [u, v] = g.edges()[i];
    out += (i ? "," : "") + space.label(u) + "->" + space.label(v);
  }
  return out + ")";
}

GraphEvent from_set(const SetEvent& e) { return GraphEvent(e, {}); }

GraphEvent from_perm(const PermEvent& e) {
  std::vector<Edge> edges;
  const auto& seq = e.sequence();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) edges.emplace_back(seq[i], seq[i + 1]);
  return GraphEvent(e.members(), std::move(edges));
}

std::optional<PermEvent> to_perm(const GraphEvent& g) {
  if (g.edges().empty()) {
    if (g.nodes().size() == 1) return PermEvent(g.nodes().members());
    return std::nullopt;
  }
  if (classify(g) != GraphShape::Chain) return std::nullopt;
  const auto succ = g.successors();
  Sample head = 0;
  for (Sample v : g.nodes().members())
    if (g.in_degree(v) == 0) head = v;
  std::vector<Sample> seq{head};
  while (succ[seq.back()] != 0) seq.push_back(static_cast<Sample>(std::countr_zero(succ[seq.back()])));
  return PermEvent(std::move(seq));
}

std::optional<SetEvent> to_set(const GraphEvent& g) {
  if (!g.edges().empty()) return std::nullopt;
  return g.nodes();
}

std::string to_string(GraphShape shape) {
  switch (shape) {
    case GraphShape::Edgeless: return "edgeless";
    case GraphShape::Chain: return "chain";
    case GraphShape::Dag: return "dag";
    case GraphShape::Cyclic: return "cyclic";
  }
  return "unknown";
}

std::vector<Sample> find_cycle(const GraphEvent& g) {
  const auto succ = g.successors();
  std::array<Mark, kMaxSamples> mark{};
  std::vector<Sample> stack;
  std::vector<Sample> cycle;
  for (Sample u : g.nodes().members())
    if (mark[u] == Mark::White && cycle_dfs(succ, u, mark, stack, cycle)) return cycle;
  return {};
}

bool has_cycle(const GraphEvent& g) { return !find_cycle(g).empty(); }

GraphShape classify(const GraphEvent& g) {
  if (g.edges().empty()) return GraphShape::Edgeless;
  if (has_cycle(g)) return GraphShape::Cyclic;
  const std::size_t n = g.nodes().size();
  if (g.edges().size() != n - 1) return GraphShape::Dag;
  std::size_t heads = 0;
  for (Sample v : g.nodes().members()) {
    if (g.in_degree(v) > 1 || g.out_degree(v) > 1) return GraphShape::Dag;
    if (g.in_degree(v) == 0) ++heads;
  }
  // n-1 edges, degrees <= 1 and acyclic: a single path iff exactly one head.
  return heads == 1 ? GraphShape::Chain : GraphShape::Dag;
}

std::size_t longest_simple_path(const GraphEvent& g, Sample from) {
  if (!g.nodes().contains(from)) return 0;
  return longest_from(g.successors(), from, bit(from));
}

GraphEvent remove_cycles(const GraphEvent& g) {
  std::vector<Edge> edges = g.edges();
  for (;;) {
    const GraphEvent current(g.nodes(), edges);
    const std::vector<Sample> cycle = find_cycle(current);
    if (cycle.empty()) return current;

    std::vector<Edge> cycle_edges;
    for (std::size_t i = 0; i < cycle.size(); ++i) cycle_edges.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
    std::vector<Edge> sorted_cycle = cycle_edges;
    std::sort(sorted_cycle.begin(), sorted_cycle.end());
    std::vector<Edge> off_cycle;
    std::set_difference(edges.begin(), edges.end(), sorted_cycle.begin(), sorted_cycle.end(), std::back_inserter(off_cycle));
    const GraphEvent rest(g.nodes(), off_cycle);

    const Edge* victim = nullptr;
    std::size_t best = 0;
    for (const Edge& e : cycle_edges) {
      const std::size_t reach = longest_simple_path(rest, e.first);
      if (victim == nullptr || reach > best || (reach == best && e < *victim)) {
        victim = &e;
        best = reach;
      }
    }
    edges.erase(std::find(edges.begin(), edges.end(), *victim));
  }
}

std::array<std::uint64_t, kMaxSamples> reachability(const GraphEvent& g) {
  const auto succ = g.successors();
  Adjacency reach{};
  for (Sample u : g.nodes().members()) {
    std::uint64_t frontier = succ[u];
    std::uint64_t seen = 0;
    while (frontier & ~seen) {
      const std::uint64_t fresh = frontier & ~seen;
      seen |= fresh;
      std::uint64_t next = 0;
      for_each_bit(fresh, [&](Sample v) { next |= succ[v]; });
      frontier |= next;
    }
    reach[u] = seen;
  }
  return reach;
}

GraphEvent longest_path_reduce(const GraphEvent& g) {
  const auto succ = g.successors();
  const auto reach = reachability(g);
  std::vector<Edge> kept;
  for (const auto& [u, v] : g.edges()) {
    bool shortcut = false;
    for_each_bit(succ[u] & ~bit(v), [&](Sample w) { shortcut = shortcut || (reach[w] & bit(v)) != 0; });
    if (!shortcut) kept.emplace_back(u, v);
  }
  return GraphEvent(g.nodes(), std::move(kept));
}

GraphEvent merge_overlay(std::span<const GraphEvent> graphs) {
  SetEvent nodes;
  std::vector<Edge> edges;
  for (const auto& g : graphs) {
    nodes = nodes | g.nodes();
    edges.insert(edges.end(), g.edges().begin(), g.edges().end());
  }
  return GraphEvent(nodes, std::move(edges));
}

std::vector<std::vector<Sample>> enumerate_paths(const GraphEvent& g, Sample from, Sample to) {
  std::vector<std::vector<Sample>> out;
  if (!g.nodes().contains(from) || !g.nodes().contains(to)) return out;
  std::vector<Sample> path{from};
  collect_paths(g.successors(), from, to, bit(from), path, out);
  return out;
}

}  // namespace eprm
