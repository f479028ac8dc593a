#include <random>
#include <vector>

#include "doctest.h"
#include "eprm/decision.hpp"
#include "oracles.hpp"

using namespace eprm;
using namespace eprm::decision;

namespace {

// A case whose sensors report the given per-aircraft speed lists.
airsim::Case synthetic_case(std::size_t aircraft, const std::vector<std::vector<std::vector<double>>>& per_sensor,
                            std::vector<std::size_t> truth) {
  airsim::Case c;
  c.aircraft.resize(aircraft);
  c.sensors.resize(per_sensor.size());
  c.truth = std::move(truth);
  for (const auto& sensor : per_sensor) {
    std::vector<std::vector<airsim::Reading>> readings(aircraft);
    for (std::size_t a = 0; a < sensor.size(); ++a)
      for (std::size_t k = 0; k < sensor[a].size(); ++k) readings[a].push_back({0.01 * static_cast<double>(k), sensor[a][k]});
    c.readings.push_back(std::move(readings));
  }
  return c;
}

// Speeds around `centre`, spread narrowly enough that aircraft stay apart.
std::vector<double> around(double centre) { return {centre - 0.002, centre, centre + 0.002}; }

}  // namespace

TEST_CASE("result state names") {
  for (ResultState s : kAllStates) CHECK(state_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(state_from_string("Maybe"), std::invalid_argument);
}

TEST_CASE("mean ranking of the second sensor's means") {
  SensorSpeeds speeds{{0, {0.43, 0.45}}, {1, {0.453}}, {2, {0.46, 0.48}}};
  CHECK(mean_ranking(speeds) == Chain{0, 1, 2});
  SensorSpeeds tied{{2, {0.5}}, {0, {0.5}}, {1, {0.4}}};
  CHECK(mean_ranking(tied) == Chain{1, 0, 2});
}

TEST_CASE("mvd") {
  const auto agree = synthetic_case(3, {{around(0.40), around(0.45), around(0.50)}}, {0, 1, 2});
  const auto r = mvd(agree);
  CHECK(r.chains == std::vector<Chain>{{0, 1, 2}});
  CHECK(r.state == ResultState::True);

  const auto split = synthetic_case(3, {{around(0.40), around(0.45), {}}, {around(0.45), around(0.40), {}}}, {0, 1, 2});
  CHECK(mvd(split).state == ResultState::Conflict);

  const auto blind = synthetic_case(3, {{around(0.40), {}, {}}, {{}, {}, around(0.5)}}, {0, 1, 2});
  CHECK_THROWS_AS(mvd(blind), InvalidCase);
}

TEST_CASE("interval counting") {
  SUBCASE("disjoint ranges count only singletons") {
    const SensorSpeeds s{{0, {1.0, 1.1}}, {1, {2.0, 2.2, 2.1}}};
    const auto c = interval_count(s);
    CHECK(c == IntervalCount{{SetEvent::of({0}), 2}, {SetEvent::of({1}), 3}});
  }
  SUBCASE("a speed shared by two of three aircraft counts every subset") {
    const SensorSpeeds s{{1, {1.0, 2.0}}, {2, {1.5, 2.5}}, {3, {5.0, 6.0}}};
    const auto c = interval_count(s);
    // 1.0 -> {1}; 2.0 -> {1,2}; 1.5 -> {1,2}; 2.5 -> {2}; 5.0, 6.0 -> {3}
    CHECK(c == IntervalCount{{SetEvent::of({1}), 3}, {SetEvent::of({2}), 3}, {SetEvent::of({1, 2}), 2},
                             {SetEvent::of({3}), 2}});
  }
  SUBCASE("speeds inside every interval are skipped") {
    const SensorSpeeds s{{1, {1.0, 2.0}}, {2, {1.5, 2.5}}};
    CHECK(interval_count(s) == IntervalCount{{SetEvent::of({1}), 1}, {SetEvent::of({2}), 1}});
    const SensorSpeeds nested{{0, {1.0, 3.0}}, {1, {2.0}}};
    CHECK(interval_count(nested) == IntervalCount{{SetEvent::of({0}), 2}});
  }
  SUBCASE("never a full or empty key") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> speed(0.3, 0.6);
    for (int trial = 0; trial < 200; ++trial) {
      SensorSpeeds s;
      const int n = 2 + trial % 4;
      for (int a = 0; a < n; ++a)
        for (int k = 0; k < 1 + trial % 5; ++k) s[static_cast<std::size_t>(a)].push_back(speed(rng));
      const SetEvent all = SetEvent::full(static_cast<std::size_t>(n));
      for (const auto& [key, count] : interval_count(s)) {
        CHECK_FALSE(key.empty());
        CHECK(key != all);
        CHECK(count >= 1);
      }
    }
  }
  CHECK_THROWS_AS(interval_count(SensorSpeeds{{0, {1}}, {1, {1}}, {2, {1}}, {3, {1}}, {4, {1}}, {5, {1}}, {6, {1}},
                                              {7, {1}}, {8, {1}}}),
                  std::invalid_argument);
}

TEST_CASE("ranking groups and graphs") {
  const SensorSpeeds s{{1, {0.50}}, {2, {0.30}}, {3, {0.35}}};
  const auto order = rank_groups(s, SetEvent::of({2, 3}));
  CHECK(order == RankingChain{SetEvent::of({2, 3}), SetEvent::of({1})});
  const auto g = ranking_graph(order, SetEvent::of({1, 2, 3}));
  CHECK(g.edges() == std::vector<Edge>{{2, 1}, {3, 1}});
  CHECK(g.nodes() == SetEvent::of({1, 2, 3}));

  // A singleton subset leaves every aircraft distinguishable.
  CHECK(rank_groups(s, SetEvent::of({3})) == RankingChain{SetEvent::of({2}), SetEvent::of({3}), SetEvent::of({1})});
}

TEST_CASE("counts to evidence source") {
  auto space = make_indexed_space(4);
  const SensorSpeeds clean{{0, {0.4, 0.41}}, {1, {0.5, 0.52}}, {2, {0.45}}};
  const auto src = counts_to_source(clean, interval_count(clean), space);
  REQUIRE(src.size() == 1);
  CHECK(src.entries().begin()->first == GraphEvent::from_edges({{0, 2}, {2, 1}}));
  CHECK(src.entries().begin()->second == doctest::Approx(1.0));

  const SensorSpeeds s{{1, {1.0, 2.0}}, {2, {1.5, 2.5}}, {3, {5.0, 6.0}}};
  const auto counts = interval_count(s);
  const auto m = counts_to_source(s, counts, space);
  CHECK(validate(m).empty());
  // Singletons all give 1->2->3 (means 1.5, 2.0, 5.5), 8 of 10 counts; {1,2} pooled gives {1,2}->3.
  CHECK(m.mass(GraphEvent::from_edges({{1, 2}, {2, 3}})) == doctest::Approx(0.8));
  CHECK(m.mass(GraphEvent::from_edges({{1, 3}, {2, 3}})) == doctest::Approx(0.2));
  CHECK_THROWS_AS(counts_to_source(s, IntervalCount{}, space), std::invalid_argument);
}

TEST_CASE("speed graph pattern operator") {
  const auto ab = GraphEvent::from_edges({{0, 1}});
  const auto ba = GraphEvent::from_edges({{1, 0}});
  CHECK(speed_graph_po(ab, ba).empty());

  const auto chain = GraphEvent::from_edges({{0, 1}, {1, 2}});
  CHECK(speed_graph_po(chain, GraphEvent::from_edges({{0, 2}})) == chain);
  CHECK(speed_graph_po(chain, chain) == chain);

  // Net votes: 0->1 and 1->2 survive, 2->0 closes a loop that gets broken.
  const auto loop = speed_graph_po(GraphEvent::from_edges({{0, 1}, {1, 2}}), GraphEvent::from_edges({{2, 0}}));
  CHECK_FALSE(has_cycle(loop));
}

TEST_CASE("speed graph operator output is acyclic and shortcut free") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    const auto a = oracle::random_graph(rng, n, 0.4, false);
    const auto b = oracle::random_graph(rng, n, 0.4, false);
    const auto g = speed_graph_po(a, b);
    const auto adj = oracle::adj_of(g, n);
    CHECK(oracle::acyclic(adj));
    CHECK(oracle::shortcut_free(adj));
    CHECK(longest_path_reduce(g) == g);
    for (const auto& [u, v] : g.edges()) CHECK((a.has_edge(u, v) || b.has_edge(u, v)));
  }
}

TEST_CASE("decision graph and chains") {
  auto space = make_indexed_space(4);
  const GraphMass single(space, {{GraphEvent::from_edges({{2, 0}, {0, 1}}), 1.0}});
  CHECK(crd_chains(single) == std::vector<Chain>{{2, 0, 1}});

  // Tied maxima are folded; the 0/1 disagreement cancels.
  const GraphMass tied(space, {{GraphEvent::from_edges({{0, 1}, {1, 2}}), 0.4},
                               {GraphEvent::from_edges({{1, 0}, {0, 2}}), 0.4},
                               {GraphEvent::from_edges({{2, 1}}), 0.2}});
  CHECK(crd_decision_graph(tied) == GraphEvent::from_edges({{0, 2}, {1, 2}}));
  CHECK(crd_chains(tied) == std::vector<Chain>{{0, 2}, {1, 2}});

  CHECK(separate_chains(from_set(SetEvent::of({0, 1}))).empty());
  const auto diamond = GraphEvent::from_edges({{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  CHECK(separate_chains(diamond) == std::vector<Chain>{{0, 1, 3}, {0, 2, 3}});

  PreferenceParams none;
  CHECK(decide(single, crd_decision(), none) == std::vector<Chain>{{2, 0, 1}});
}

TEST_CASE("crd resolves a three-against-one disagreement") {
  // Sensor 1 ranks 0<1<2; sensors 0, 2 and 3 rank 0<2<1, which is the truth.
  const auto c = synthetic_case(3,
                                {{around(0.42), around(0.51), around(0.46)},
                                 {around(0.44), around(0.45), around(0.47)},
                                 {around(0.42), around(0.50), around(0.44)},
                                 {around(0.41), around(0.49), around(0.43)}},
                                {0, 2, 1});
  const auto m = mvd(c);
  CHECK(m.chains.size() == 4);
  CHECK(m.chains[1] == Chain{0, 1, 2});
  CHECK(m.state == ResultState::Conflict);

  const auto trace = crd_trace(c);
  CHECK(trace.sensors == std::vector<std::size_t>{0, 1, 2, 3});
  REQUIRE(trace.fused.has_value());
  CHECK(validate(*trace.fused).empty());
  CHECK(trace.outcome.chains == std::vector<Chain>{{0, 2, 1}});
  CHECK(trace.outcome.state == ResultState::True);
  CHECK(crd(c) == trace.outcome);
}

TEST_CASE("crd edge cases") {
  const auto one = synthetic_case(3, {{around(0.40), around(0.45), around(0.50)}}, {0, 1, 2});
  CHECK(crd(one).chains == std::vector<Chain>{{0, 1, 2}});

  // Two sensors with opposite orders cancel completely.
  const auto opposite = synthetic_case(2, {{around(0.40), around(0.45)}, {around(0.45), around(0.40)}}, {0, 1});
  const auto r = crd(opposite);
  CHECK(r.chains.empty());
  CHECK(r.state == ResultState::Invalid);

  // Fully overlapping speed ranges give no evidence at all.
  const auto overlap = synthetic_case(2, {{{0.4, 0.5}, {0.5, 0.4}}}, {0, 1});
  CHECK_THROWS_AS(crd(overlap), InvalidCase);
}

TEST_CASE("classification against the truth") {
  const std::vector<std::size_t> truth{1, 2, 3, 0};
  const auto classify = [&](std::vector<Chain> chains) { return classify_result(chains, truth); };
  CHECK(classify({{1, 2, 3}}) == ResultState::True);
  CHECK(classify({{1, 2}, {2, 1}}) == ResultState::Conflict);
  CHECK(classify({{2}}) == ResultState::Invalid);
  CHECK(classify({}) == ResultState::Invalid);
  CHECK(classify({{3, 1}, {0, 2}}) == ResultState::False);
  CHECK(classify({{1, 3}, {2}}) == ResultState::True);
  CHECK(classify_chain({1, 0}, truth) == ResultState::True);
  CHECK_THROWS_AS(classify_chain({1, 9}, truth), std::invalid_argument);
}
