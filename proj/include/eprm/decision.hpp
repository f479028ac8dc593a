#pragma once

// Aircraft speed ranking: per-sensor mean ranking (MVD) versus evidential
// fusion of speed-order graphs (CRD), and classification of either against
// the ground-truth order.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eprm/airsim.hpp"
#include "eprm/fusion.hpp"
#include "eprm/graph.hpp"

namespace eprm::decision {

/// Aircraft index -> speeds seen by one sensor. Only detected aircraft appear.
using SensorSpeeds = std::map<std::size_t, std::vector<double>>;

/// Aircraft indices ordered slowest first.
using Chain = std::vector<std::size_t>;

/// Groups of aircraft ordered slowest first, e.g. {{2,3},{1}}.
using RankingChain = std::vector<SetEvent>;

/// Non-empty proper subset of the detected aircraft -> count.
using IntervalCount = std::map<SetEvent, std::uint64_t>;

enum class ResultState { True, False, Conflict, Invalid };

inline constexpr std::array<ResultState, 4> kAllStates{ResultState::True, ResultState::False, ResultState::Conflict,
                                                      ResultState::Invalid};

std::string to_string(ResultState state);
/// Throws std::invalid_argument for unknown names.
ResultState state_from_string(const std::string& name);

struct DecisionOutcome {
  std::vector<Chain> chains;
  ResultState state = ResultState::Invalid;
  bool operator==(const DecisionOutcome&) const = default;
};

/// Raised when no sensor observed at least two aircraft.
class InvalidCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Speeds per detected aircraft for one sensor of a case.
SensorSpeeds sensor_speeds(const airsim::Case& c, std::size_t sensor);

double mean(std::span<const double> values);

/// Detected aircraft ranked by mean speed ascending; ties by index.
Chain mean_ranking(const SensorSpeeds& speeds);

/// Mean velocity decision: one chain per sensor that detected >= 2 aircraft.
/// Throws InvalidCase.
DecisionOutcome mvd(const airsim::Case& c);

/// For every pooled speed, the set of aircraft whose [min, max] speed
/// interval contains it; speeds inside every interval are skipped, otherwise
/// each non-empty subset of that set is counted once. Supports at most 8
/// aircraft per sensor.
IntervalCount interval_count(const SensorSpeeds& speeds);

/// Groups for one counted subset: aircraft in `merged` pool their speeds
/// into a single group, others stay singletons; sorted by mean ascending,
/// ties by smallest member.
RankingChain rank_groups(const SensorSpeeds& speeds, SetEvent merged);

/// Edges between consecutive groups (Cartesian products); nodes are every
/// detected aircraft.
GraphEvent ranking_graph(const RankingChain& order, SetEvent detected);

/// One graph per counted subset with mass count / total; identical graphs
/// accumulate. `space` must cover the aircraft indices.
GraphMass counts_to_source(const SensorSpeeds& speeds, const IntervalCount& counts, const SpacePtr& space);

/// Pattern operator for speed graphs: signed vote per node pair over both
/// operands' edges (opposite directions cancel), surviving net-direction
/// edges form the graph, then cycles are broken and shortcut edges removed.
/// Nodes are the endpoints of surviving edges, so total cancellation yields
/// the empty graph.
GraphEvent speed_graph_po(const GraphEvent& a, const GraphEvent& b);

PatternOperator<GraphEvent> speed_graph_operator();

/// The maximum-mass graph of a fused source; tied graphs (within the mass
/// tolerance) are folded with speed_graph_po in canonical order.
GraphEvent crd_decision_graph(const GraphMass& fused);

/// Every path from an in-degree-0 node to a different out-degree-0 node.
std::vector<Chain> separate_chains(const GraphEvent& g);

/// separate_chains(crd_decision_graph(fused)).
std::vector<Chain> crd_chains(const GraphMass& fused);

DecisionOperator<GraphEvent, std::vector<Chain>> crd_decision();

/// Intermediate products of a conflict resolution decision.
struct CrdTrace {
  std::vector<std::size_t> sensors;  // sensors that contributed evidence
  std::vector<GraphMass> evidence;   // one source per contributing sensor
  std::optional<GraphMass> fused;    // nullopt on total conflict
  std::optional<GraphEvent> decision_graph;
  DecisionOutcome outcome;
};

/// Throws InvalidCase when no sensor yields evidence.
CrdTrace crd_trace(const airsim::Case& c);

/// Conflict resolution decision. Throws InvalidCase.
DecisionOutcome crd(const airsim::Case& c);

/// `truth` lists aircraft slowest first. A chain with < 2 aircraft is
/// Invalid, True when every pair it orders agrees with truth, else False.
ResultState classify_chain(const Chain& chain, std::span<const std::size_t> truth);

/// Invalid chains are ignored when any informative chain exists; all True ->
/// True, all False -> False, both -> Conflict, nothing informative -> Invalid.
ResultState classify_result(std::span<const Chain> chains, std::span<const std::size_t> truth);

}  // namespace eprm::decision
