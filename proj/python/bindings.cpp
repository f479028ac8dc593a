#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "eprm/evidence.hpp"
#include "eprm/harness.hpp"
#include "eprm/json_io.hpp"
#include "eprm/registry.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace eprm;

namespace {

using EdgeList = std::vector<std::pair<Sample, Sample>>;

template <Event E>
std::vector<MassAssignment<E>> parse_sources(const std::string& doc) {
  const json j = json::parse(doc);
  std::vector<MassAssignment<E>> sources;
  for (const auto& s : j) {
    SpacePtr space = sources.empty() ? nullptr : sources.front().space_ptr();
    sources.push_back(mass_from_json<E>(s, space));
    const auto violations = validate(sources.back());
    if (!violations.empty()) throw std::invalid_argument(violations.front().detail);
  }
  return sources;
}

template <Event E>
std::string fuse_with(const OperatorRegistry<E>& registry, const std::string& sources_doc, const std::string& po) {
  const auto sources = parse_sources<E>(sources_doc);
  if (sources.empty()) throw std::invalid_argument("at least one source is required");
  const auto& op = registry.pattern(po);
  MassAssignment<E> acc = sources.front();
  json conflicts = json::array();
  for (std::size_t i = 1; i < sources.size(); ++i) {
    auto step = fuse_pair(acc, sources[i], op);
    conflicts.push_back(step.conflict);
    acc = std::move(step.fused);
  }
  return json{{"fused", to_json(acc)}, {"conflicts", conflicts}}.dump();
}

template <Event E>
std::string decide_with(const OperatorRegistry<E>& registry, const std::string& source_doc, const std::string& dmo,
                        const PreferenceParams& prefs) {
  const auto source = mass_from_json<E>(json::parse(source_doc));
  return decide(source, registry.decision(dmo), prefs).dump();
}

std::string fuse(const std::string& sources, const std::string& algebra, const std::string& po) {
  if (algebra == "set") return fuse_with(set_operators(), sources, po);
  if (algebra == "perm") return fuse_with(perm_operators(), sources, po);
  if (algebra == "graph") return fuse_with(graph_operators(), sources, po);
  throw std::invalid_argument("unknown algebra '" + algebra + "'");
}

std::string decide_source(const std::string& source, const std::string& algebra, const std::string& dmo,
                          const PreferenceParams& prefs) {
  if (algebra == "set") return decide_with(set_operators(), source, dmo, prefs);
  if (algebra == "perm") return decide_with(perm_operators(), source, dmo, prefs);
  if (algebra == "graph") return decide_with(graph_operators(), source, dmo, prefs);
  throw std::invalid_argument("unknown algebra '" + algebra + "'");
}

std::string dempster(const std::string& a, const std::string& b) {
  const auto ma = mass_from_json<SetEvent>(json::parse(a));
  const auto mb = mass_from_json<SetEvent>(json::parse(b), ma.space_ptr());
  const auto r = dempster_combine(ma, mb);
  return json{{"fused", to_json(r.fused)}, {"conflict", r.conflict}}.dump();
}

GraphEvent graph_of(const EdgeList& edges) { return GraphEvent::from_edges({edges.begin(), edges.end()}); }

EdgeList edges_of(const GraphEvent& g) { return {g.edges().begin(), g.edges().end()}; }

airsim::GenerationParams params_of(const std::string& doc) { return airsim::params_from_json(json::parse(doc)); }

std::string outcome_json(const decision::DecisionOutcome& o) { return harness::to_json(o).dump(); }

std::string run_corpus(const std::string& params, std::uint64_t seed, std::size_t cases, unsigned workers) {
  const auto corpus = harness::generate_corpus(params_of(params), seed, cases, workers);
  const auto results = harness::decide_cases(corpus, harness::Methods::Both, workers);
  const auto tab = harness::cross_tabulate(results);
  harness::check_consistency(results, tab);
  json out = harness::summary_to_json(tab, harness::summarize(tab), 0);
  out["crosstab_csv"] = harness::crosstab_csv(tab);
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_eprm, m) {
  m.doc() = "Evidence pattern reasoning over set, permutation and graph events";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const EvidenceError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
  // Translators registered later take precedence over the generic one above.
  py::register_exception<TotalConflict>(m, "TotalConflict", PyExc_ArithmeticError);
  py::register_exception<decision::InvalidCase>(m, "InvalidCase", PyExc_ValueError);
  py::register_exception<harness::InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("fuse", &fuse, py::arg("sources"), py::arg("algebra"), py::arg("po"));
  m.def("decide", &decide_source, py::arg("source"), py::arg("algebra"), py::arg("dmo"), py::arg("prefs"));
  m.def("dempster", &dempster, py::arg("a"), py::arg("b"));
  m.def("pattern_operators", [](const std::string& algebra) {
    if (algebra == "set") return set_operators().pattern_names();
    if (algebra == "perm") return perm_operators().pattern_names();
    if (algebra == "graph") return graph_operators().pattern_names();
    throw std::invalid_argument("unknown algebra '" + algebra + "'");
  });

  m.def("remove_cycles", [](const EdgeList& e) { return edges_of(remove_cycles(graph_of(e))); });
  m.def("longest_path_reduce", [](const EdgeList& e) { return edges_of(longest_path_reduce(graph_of(e))); });
  m.def("speed_graph_po",
        [](const EdgeList& a, const EdgeList& b) { return edges_of(decision::speed_graph_po(graph_of(a), graph_of(b))); });
  m.def("separate_chains", [](const EdgeList& e) { return decision::separate_chains(graph_of(e)); });

  m.def("default_params", [] { return airsim::to_json(airsim::GenerationParams{}).dump(); });
  m.def("case_seed", &airsim::case_seed, py::arg("global_seed"), py::arg("index"));
  m.def(
      "generate_case",
      [](const std::string& params, std::uint64_t global_seed, std::uint64_t index, bool full) {
        return airsim::to_json(airsim::generate_case(params_of(params), index, airsim::case_seed(global_seed, index)),
                               full)
            .dump();
      },
      py::arg("params"), py::arg("global_seed"), py::arg("index"), py::arg("full"));
  m.def("mvd", [](const std::string& c) { return outcome_json(decision::mvd(airsim::case_from_json(json::parse(c)))); });
  m.def("crd", [](const std::string& c) { return outcome_json(decision::crd(airsim::case_from_json(json::parse(c)))); });
  m.def("trace", [](const std::string& c) {
    auto parsed = airsim::case_from_json(json::parse(c));
    std::ostringstream out;
    harness::trace_case(parsed, out);
    return out.str();
  });
  m.def("run_corpus", &run_corpus, py::arg("params"), py::arg("seed"), py::arg("cases"), py::arg("workers"),
        py::call_guard<py::gil_scoped_release>());
}
