#include "eprm/json_io.hpp"

namespace eprm {

using nlohmann::json;

namespace {

json labels_of(const std::vector<Sample>& samples, const SampleSpace& space) {
  json out = json::array();
  for (Sample s : samples) out.push_back(space.label(s));
  return out;
}

std::vector<Sample> samples_of(const json& j, const SampleSpace& space) {
  std::vector<Sample> out;
  for (const auto& label : j) out.push_back(space.index_of(label.get<std::string>()));
  return out;
}

}  // namespace

json encode_event(const SetEvent& e, const SampleSpace& space) { return labels_of(e.members(), space); }

json encode_event(const PermEvent& e, const SampleSpace& space) { return labels_of(e.sequence(), space); }

json encode_event(const GraphEvent& g, const SampleSpace& space) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({space.label(u), space.label(v)});
  return {{"nodes", labels_of(g.nodes().members(), space)}, {"edges", std::move(edges)}};
}

template <>
SetEvent decode_event<SetEvent>(const json& j, const SampleSpace& space) {
  return SetEvent::of(samples_of(j, space));
}

template <>
PermEvent decode_event<PermEvent>(const json& j, const SampleSpace& space) {
  return PermEvent(samples_of(j, space));
}

template <>
GraphEvent decode_event<GraphEvent>(const json& j, const SampleSpace& space) {
  std::vector<Edge> edges;
  for (const auto& pair : j.at("edges")) {
    if (pair.size() != 2) throw std::invalid_argument("graph edges must be [from, to] pairs");
    edges.emplace_back(space.index_of(pair.at(0).get<std::string>()), space.index_of(pair.at(1).get<std::string>()));
  }
  return GraphEvent(SetEvent::of(samples_of(j.at("nodes"), space)), std::move(edges));
}

}  // namespace eprm
