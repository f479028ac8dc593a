#pragma once

// Mass assignments as JSON: {"space": [labels], "entries": [{"event": ..., "mass": r}]}.
// Sets encode as label arrays in space order, permutations as ordered label
// arrays, graphs as {"nodes": [labels], "edges": [[u, v], ...]}.

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "eprm/graph.hpp"
#include "eprm/mass.hpp"
#include "eprm/rps.hpp"
#include "eprm/set_event.hpp"

namespace eprm {

nlohmann::json encode_event(const SetEvent& e, const SampleSpace& space);
nlohmann::json encode_event(const PermEvent& e, const SampleSpace& space);
nlohmann::json encode_event(const GraphEvent& g, const SampleSpace& space);

/// Decoders throw std::invalid_argument or nlohmann::json::exception.
template <Event E>
E decode_event(const nlohmann::json& j, const SampleSpace& space);

template <>
SetEvent decode_event<SetEvent>(const nlohmann::json& j, const SampleSpace& space);
template <>
PermEvent decode_event<PermEvent>(const nlohmann::json& j, const SampleSpace& space);
template <>
GraphEvent decode_event<GraphEvent>(const nlohmann::json& j, const SampleSpace& space);

template <Event E>
nlohmann::json to_json(const MassAssignment<E>& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [event, mass] : m.entries())
    entries.push_back({{"event", encode_event(event, m.space())}, {"mass", mass}});
  return {{"space", m.space().labels()}, {"entries", std::move(entries)}};
}

/// Reads `j["space"]` unless `space` is supplied, in which case the document's
/// space must match it.
template <Event E>
MassAssignment<E> mass_from_json(const nlohmann::json& j, SpacePtr space = nullptr) {
  auto labels = j.at("space").get<std::vector<std::string>>();
  if (!space) {
    space = make_space(std::move(labels));
  } else if (space->labels() != labels) {
    throw SpaceMismatch();
  }
  MassAssignment<E> out(space);
  for (const auto& entry : j.at("entries"))
    out.add(decode_event<E>(entry.at("event"), *space), entry.at("mass").get<double>());
  return out;
}

}  // namespace eprm
