#pragma once

// Named pattern and decision operators, so tools can pick them from
// configuration. Keys: "intersection", "union" (sets); "rps-right"
// (permutations); "speed-graph" (graphs); decisions "pignistic" (sets),
// "max-mass" (all algebras), "crd" (graphs).

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eprm/fusion.hpp"
#include "eprm/graph.hpp"
#include "eprm/rps.hpp"
#include "eprm/set_event.hpp"

namespace eprm {

class UnknownOperator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

PatternOperator<SetEvent> intersection_operator();
PatternOperator<SetEvent> union_operator();
DecisionOperator<SetEvent, std::vector<double>> pignistic_decision();

template <Event E>
class OperatorRegistry {
 public:
  using JsonDecision = DecisionOperator<E, nlohmann::json>;

  void add(PatternOperator<E> po) { patterns_[po.name] = std::move(po); }
  void add(JsonDecision dmo) { decisions_[dmo.name] = std::move(dmo); }

  const PatternOperator<E>& pattern(const std::string& name) const {
    auto it = patterns_.find(name);
    if (it == patterns_.end()) throw UnknownOperator("unknown pattern operator '" + name + "'");
    return it->second;
  }

  const JsonDecision& decision(const std::string& name) const {
    auto it = decisions_.find(name);
    if (it == decisions_.end()) throw UnknownOperator("unknown decision operator '" + name + "'");
    return it->second;
  }

  std::vector<std::string> pattern_names() const { return keys(patterns_); }
  std::vector<std::string> decision_names() const { return keys(decisions_); }

 private:
  template <class Map>
  static std::vector<std::string> keys(const Map& m) {
    std::vector<std::string> out;
    for (const auto& [k, v] : m) out.push_back(k);
    return out;
  }

  std::map<std::string, PatternOperator<E>> patterns_;
  std::map<std::string, JsonDecision> decisions_;
};

const OperatorRegistry<SetEvent>& set_operators();
const OperatorRegistry<PermEvent>& perm_operators();
const OperatorRegistry<GraphEvent>& graph_operators();

}  // namespace eprm
