#include "eprm/registry.hpp"

#include "eprm/decision.hpp"
#include "eprm/evidence.hpp"
#include "eprm/json_io.hpp"

namespace eprm {

using nlohmann::json;

PatternOperator<SetEvent> intersection_operator() {
  return {"intersection", [](const SetEvent& a, const SetEvent& b) { return a & b; }};
}

PatternOperator<SetEvent> union_operator() {
  return {"union", [](const SetEvent& a, const SetEvent& b) { return a | b; }};
}

DecisionOperator<SetEvent, std::vector<double>> pignistic_decision() {
  return {"pignistic", [](const SetMass& source, const PreferenceParams&) { return pignistic(source); }};
}

namespace {

template <Event E>
typename OperatorRegistry<E>::JsonDecision json_max_mass() {
  return {"max-mass", [](const MassAssignment<E>& source, const PreferenceParams&) {
            return encode_event(max_mass_event(source), source.space());
          }};
}

}  // namespace

const OperatorRegistry<SetEvent>& set_operators() {
  static const OperatorRegistry<SetEvent> registry = [] {
    OperatorRegistry<SetEvent> r;
    r.add(intersection_operator());
    r.add(union_operator());
    r.add(json_max_mass<SetEvent>());
    r.add({"pignistic", [](const SetMass& source, const PreferenceParams& prefs) {
             const auto prob = decide(source, pignistic_decision(), prefs);
             json out = json::object();
             for (std::size_t i = 0; i < prob.size(); ++i) out[source.space().label(static_cast<Sample>(i))] = prob[i];
             return out;
           }});
    return r;
  }();
  return registry;
}

const OperatorRegistry<PermEvent>& perm_operators() {
  static const OperatorRegistry<PermEvent> registry = [] {
    OperatorRegistry<PermEvent> r;
    r.add(rps_right_operator());
    r.add(json_max_mass<PermEvent>());
    return r;
  }();
  return registry;
}

const OperatorRegistry<GraphEvent>& graph_operators() {
  static const OperatorRegistry<GraphEvent> registry = [] {
    OperatorRegistry<GraphEvent> r;
    r.add(decision::speed_graph_operator());
    r.add(json_max_mass<GraphEvent>());
    r.add({"crd", [](const GraphMass& source, const PreferenceParams& prefs) {
             json chains = json::array();
             for (const auto& chain : decide(source, decision::crd_decision(), prefs)) {
               json labels = json::array();
               for (std::size_t a : chain) labels.push_back(source.space().label(static_cast<Sample>(a)));
               chains.push_back(std::move(labels));
             }
             return chains;
           }});
    return r;
  }();
  return registry;
}

}  // namespace eprm
