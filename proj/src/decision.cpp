#include "eprm/decision.hpp"

#include <algorithm>
#include <numeric>

#include "eprm/multiset.hpp"

namespace eprm::decision {

std::string to_string(ResultState state) {
  switch (state) {
    case ResultState::True: return "True";
    case ResultState::False: return "False";
    case ResultState::Conflict: return "Conflict";
    case ResultState::Invalid: return "Invalid";
  }
  return "Invalid";
}

ResultState state_from_string(const std::string& name) {
  for (ResultState s : kAllStates)
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown result state '" + name + "'");
}

SensorSpeeds sensor_speeds(const airsim::Case& c, std::size_t sensor) {
  SensorSpeeds out;
  const auto& per_aircraft = c.readings.at(sensor);
  for (std::size_t a = 0; a < per_aircraft.size(); ++a) {
    if (per_aircraft[a].empty()) continue;
    auto& speeds = out[a];
    for (const auto& r : per_aircraft[a]) speeds.push_back(r.speed);
  }
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty list");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

Chain mean_ranking(const SensorSpeeds& speeds) {
  std::vector<std::pair<double, std::size_t>> keyed;
  for (const auto& [aircraft, values] : speeds) keyed.emplace_back(mean(values), aircraft);
  std::sort(keyed.begin(), keyed.end());
  Chain out;
  for (const auto& [m, aircraft] : keyed) out.push_back(aircraft);
  return out;
}

DecisionOutcome mvd(const airsim::Case& c) {
  DecisionOutcome out;
  for (std::size_t s = 0; s < c.sensors.size(); ++s) {
    const SensorSpeeds speeds = sensor_speeds(c, s);
    if (speeds.size() < 2) continue;
    out.chains.push_back(mean_ranking(speeds));
  }
  if (out.chains.empty()) throw InvalidCase("no sensor observed two or more aircraft");
  out.state = classify_result(out.chains, c.truth);
  return out;
}

namespace {

SetEvent detected_set(const SensorSpeeds& speeds) {
  SetEvent out;
  for (const auto& [aircraft, values] : speeds) {
    if (aircraft >= kMaxSamples) throw std::invalid_argument("aircraft index out of range");
    out = out.with(static_cast<Sample>(aircraft));
  }
  return out;
}

}  // namespace

IntervalCount interval_count(const SensorSpeeds& speeds) {
  if (speeds.size() > 8) throw std::invalid_argument("interval counting supports at most 8 aircraft per sensor");
  struct Range {
    Sample aircraft;
    double lo;
    double hi;
  };
  std::vector<Range> ranges;
  for (const auto& [aircraft, values] : speeds) {
    if (values.empty()) continue;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    ranges.push_back({static_cast<Sample>(aircraft), *lo, *hi});
  }
  const SetEvent everyone = detected_set(speeds);

  IntervalCount counts;
  for (const auto& [aircraft, values] : speeds) {
    for (double v : values) {
      SetEvent belong;
      for (const auto& r : ranges)
        if (r.lo <= v && v <= r.hi) belong = belong.with(r.aircraft);
      if (belong == everyone) continue;
      const std::uint64_t mask = belong.bits();
      for (std::uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask) ++counts[SetEvent(sub)];
    }
  }
  return counts;
}

RankingChain rank_groups(const SensorSpeeds& speeds, SetEvent merged) {
  struct Group {
    double mean;
    SetEvent members;
  };
  std::vector<Group> groups;
  std::vector<double> pooled;
  SetEvent pooled_members;
  for (const auto& [aircraft, values] : speeds) {
    const auto s = static_cast<Sample>(aircraft);
    if (merged.size() > 1 && merged.contains(s)) {
      pooled.insert(pooled.end(), values.begin(), values.end());
      pooled_members = pooled_members.with(s);
    } else {
      groups.push_back({mean(values), SetEvent::of({s})});
    }
  }
  if (!pooled.empty()) groups.push_back({mean(pooled), pooled_members});

  std::sort(groups.begin(), groups.end(), [](const Group& l, const Group& r) {
    if (l.mean != r.mean) return l.mean < r.mean;
    return l.members.members().front() < r.members.members().front();
  });
  RankingChain out;
  for (const auto& g : groups) out.push_back(g.members);
  return out;
}

GraphEvent ranking_graph(const RankingChain& order, SetEvent detected) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    for (Sample u : order[i].members())
      for (Sample v : order[i + 1].members()) edges.emplace_back(u, v);
  return GraphEvent(detected, std::move(edges));
}

GraphMass counts_to_source(const SensorSpeeds& speeds, const IntervalCount& counts, const SpacePtr& space) {
  if (counts.empty()) throw std::invalid_argument("counts_to_source needs at least one counted subset");
  std::uint64_t total = 0;
  for (const auto& [subset, n] : counts) total += n;
  const SetEvent detected = detected_set(speeds);
  GraphMass source(space);
  for (const auto& [subset, n] : counts)
    source.add(ranking_graph(rank_groups(speeds, subset), detected), static_cast<double>(n) / static_cast<double>(total));
  return source;
}

GraphEvent speed_graph_po(const GraphEvent& a, const GraphEvent& b) {
  Multiset<Edge> lhs;
  Multiset<Edge> rhs;
  for (const auto& e : a.edges()) lhs.add(e);
  for (const auto& e : b.edges()) rhs.add(e);
  const Multiset<Edge> votes = multiset_plus(lhs, rhs);

  std::vector<Edge> kept;
  for (const auto& [edge, forward] : votes.counts()) {
    const auto& [u, v] = edge;
    const std::uint64_t backward = votes.count({v, u});
    if (forward > backward) kept.push_back(edge);
  }
  const GraphEvent voted = GraphEvent::from_edges(std::move(kept));
  return longest_path_reduce(remove_cycles(voted));
}

PatternOperator<GraphEvent> speed_graph_operator() { return {"speed-graph", speed_graph_po}; }

GraphEvent crd_decision_graph(const GraphMass& fused) {
  if (fused.empty()) throw std::invalid_argument("decision on an empty source");
  double top = 0.0;
  for (const auto& [g, m] : fused.entries()) top = std::max(top, m);
  std::optional<GraphEvent> acc;
  for (const auto& [g, m] : fused.entries()) {
    if (m < top - kMassTolerance) continue;
    acc = acc ? speed_graph_po(*acc, g) : g;
  }
  return *acc;
}

std::vector<Chain> separate_chains(const GraphEvent& g) {
  std::vector<Chain> out;
  if (g.edges().empty()) return out;
  std::vector<Sample> starts;
  std::vector<Sample> ends;
  for (Sample v : g.nodes().members()) {
    if (g.in_degree(v) == 0) starts.push_back(v);
    if (g.out_degree(v) == 0) ends.push_back(v);
  }
  for (Sample s : starts)
    for (Sample e : ends) {
      if (s == e) continue;
      for (const auto& path : enumerate_paths(g, s, e)) out.emplace_back(path.begin(), path.end());
    }
  return out;
}

std::vector<Chain> crd_chains(const GraphMass& fused) { return separate_chains(crd_decision_graph(fused)); }

DecisionOperator<GraphEvent, std::vector<Chain>> crd_decision() {
  return {"crd", [](const GraphMass& fused, const PreferenceParams&) { return crd_chains(fused); }};
}

CrdTrace crd_trace(const airsim::Case& c) {
  CrdTrace trace;
  const SpacePtr space = make_indexed_space(c.aircraft.size());
  for (std::size_t s = 0; s < c.sensors.size(); ++s) {
    const SensorSpeeds speeds = sensor_speeds(c, s);
    if (speeds.size() < 2) continue;
    const IntervalCount counts = interval_count(speeds);
    if (counts.empty()) continue;
    trace.sensors.push_back(s);
    trace.evidence.push_back(counts_to_source(speeds, counts, space));
  }
  if (trace.evidence.empty()) throw InvalidCase("no sensor produced a speed-order evidence source");

  try {
    trace.fused = fuse_sequence<GraphEvent>(trace.evidence, speed_graph_operator());
  } catch (const TotalConflict&) {
    trace.outcome = {{}, ResultState::Invalid};
    return trace;
  }
  trace.decision_graph = crd_decision_graph(*trace.fused);
  trace.outcome.chains = separate_chains(*trace.decision_graph);
  trace.outcome.state = classify_result(trace.outcome.chains, c.truth);
  return trace;
}

DecisionOutcome crd(const airsim::Case& c) { return crd_trace(c).outcome; }

ResultState classify_chain(const Chain& chain, std::span<const std::size_t> truth) {
  if (chain.size() < 2) return ResultState::Invalid;
  std::vector<std::size_t> position(truth.size(), truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) position.at(truth[i]) = i;
  for (std::size_t aircraft : chain)
    if (aircraft >= position.size() || position[aircraft] == truth.size())
      throw std::invalid_argument("chain names an aircraft missing from the truth order");
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j)
      if (position[chain[i]] > position[chain[j]]) return ResultState::False;
  return ResultState::True;
}

ResultState classify_result(std::span<const Chain> chains, std::span<const std::size_t> truth) {
  bool any_true = false;
  bool any_false = false;
  for (const auto& chain : chains) {
    switch (classify_chain(chain, truth)) {
      case ResultState::True: any_true = true; break;
      case ResultState::False: any_false = true; break;
      default: break;
    }
  }
  if (any_true && any_false) return ResultState::Conflict;
  if (any_true) return ResultState::True;
  if (any_false) return ResultState::False;
  return ResultState::Invalid;
}

}  // namespace eprm::decision
