#include "eprm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "eprm/json_io.hpp"

namespace eprm::harness {

using decision::DecisionOutcome;
using decision::ResultState;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::size_t slot(ResultState s) { return static_cast<std::size_t>(s); }

bool wrong(ResultState s) { return s == ResultState::False || s == ResultState::Conflict; }

double rate(std::uint64_t n, std::uint64_t total) {
  return total == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(total);
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

}  // namespace

Methods methods_from_string(const std::string& name) {
  if (name == "mvd") return Methods::Mvd;
  if (name == "crd") return Methods::Crd;
  if (name == "both") return Methods::Both;
  throw std::invalid_argument("method must be mvd, crd or both");
}

std::uint64_t CrossTab::at(ResultState mvd, ResultState crd) const { return counts[slot(mvd)][slot(crd)]; }

std::uint64_t CrossTab::mvd_marginal(ResultState s) const {
  std::uint64_t n = 0;
  for (auto c : counts[slot(s)]) n += c;
  return n;
}

std::uint64_t CrossTab::crd_marginal(ResultState s) const {
  std::uint64_t n = 0;
  for (const auto& row : counts) n += row[slot(s)];
  return n;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

CaseResult decide_case(const airsim::Case& c, Methods methods) {
  const auto guarded = [&](DecisionOutcome (*method)(const airsim::Case&)) {
    try {
      return method(c);
    } catch (const decision::InvalidCase&) {
      return DecisionOutcome{{}, ResultState::Invalid};
    }
  };
  CaseResult r;
  r.id = c.id;
  if (methods != Methods::Crd) r.mvd = guarded(&decision::mvd);
  if (methods != Methods::Mvd) r.crd = guarded(&decision::crd);
  return r;
}

std::vector<CaseResult> decide_cases(std::span<const airsim::Case> cases, Methods methods, unsigned workers) {
  std::vector<CaseResult> out(cases.size());
  parallel_for(cases.size(), workers, [&](std::size_t i) { out[i] = decide_case(cases[i], methods); });
  std::stable_sort(out.begin(), out.end(), [](const CaseResult& l, const CaseResult& r) { return l.id < r.id; });
  return out;
}

std::string case_file_name(std::uint64_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "case_%06llu.json", static_cast<unsigned long long>(id));
  return buf;
}

std::vector<airsim::Case> generate_corpus(const airsim::GenerationParams& params, std::uint64_t global_seed,
                                          std::size_t count, unsigned workers) {
  airsim::check(params);
  std::vector<airsim::Case> out(count);
  parallel_for(count, workers, [&](std::size_t i) {
    out[i] = airsim::generate_case(params, i, airsim::case_seed(global_seed, i));
  });
  return out;
}

std::vector<fs::path> simulate_corpus(const airsim::GenerationParams& params, std::uint64_t global_seed,
                                      std::size_t count, const fs::path& out_dir, bool full, unsigned workers) {
  airsim::check(params);
  fs::create_directories(out_dir);
  std::vector<fs::path> paths(count);
  parallel_for(count, workers, [&](std::size_t i) {
    const auto c = airsim::generate_case(params, i, airsim::case_seed(global_seed, i));
    paths[i] = out_dir / case_file_name(i);
    write_text(paths[i], airsim::to_json(c, full).dump() + "\n");
  });
  return paths;
}

airsim::Case load_case(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  try {
    return airsim::case_from_json(json::parse(in));
  } catch (const std::exception& e) {
    throw std::runtime_error(file.filename().string() + ": " + e.what());
  }
}

ExperimentResult run_experiment(const fs::path& corpus_dir, Methods methods, unsigned workers) {
  if (!fs::is_directory(corpus_dir)) throw std::invalid_argument("corpus directory not found: " + corpus_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<std::optional<CaseResult>> decided(files.size());
  std::vector<std::optional<SkippedCase>> failed(files.size());
  parallel_for(files.size(), workers, [&](std::size_t i) {
    try {
      decided[i] = decide_case(load_case(files[i]), methods);
    } catch (const std::exception& e) {
      failed[i] = SkippedCase{files[i].filename().string(), e.what()};
    }
  });

  ExperimentResult out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (decided[i]) out.results.push_back(std::move(*decided[i]));
    if (failed[i]) out.skipped.push_back(std::move(*failed[i]));
  }
  std::stable_sort(out.results.begin(), out.results.end(),
                   [](const CaseResult& l, const CaseResult& r) { return l.id < r.id; });
  return out;
}

CrossTab cross_tabulate(std::span<const CaseResult> results) {
  CrossTab tab;
  for (const auto& r : results) {
    if (!r.mvd || !r.crd) continue;
    ++tab.counts[slot(r.mvd->state)][slot(r.crd->state)];
    ++tab.total;
  }
  return tab;
}

SummaryStats summarize(const CrossTab& tab) {
  SummaryStats s;
  s.total = tab.total;
  std::uint64_t wrong_mvd = 0;
  std::uint64_t both_wrong = 0;
  std::uint64_t crd_invalid = 0;
  std::uint64_t improved = 0;
  for (ResultState m : decision::kAllStates) {
    for (ResultState c : decision::kAllStates) {
      const std::uint64_t n = tab.at(m, c);
      if (wrong(m)) {
        wrong_mvd += n;
        if (wrong(c)) both_wrong += n;
        if (c == ResultState::Invalid) crd_invalid += n;
        if (c == ResultState::True) improved += n;
      }
      if (m == ResultState::True && (c == ResultState::False || c == ResultState::Invalid)) s.dominance_violations += n;
    }
    s.mvd_marginals[slot(m)] = rate(tab.mvd_marginal(m), tab.total);
    s.crd_marginals[slot(m)] = rate(tab.crd_marginal(m), tab.total);
  }
  s.mvd_error_or_conflict_rate = rate(wrong_mvd, tab.total);
  s.both_wrong_rate = rate(both_wrong, tab.total);
  s.mvd_wrong_crd_invalid_rate = rate(crd_invalid, tab.total);
  s.crd_improvement_rate = rate(improved, tab.total);
  return s;
}

void check_consistency(std::span<const CaseResult> results, const CrossTab& tab) {
  std::array<std::uint64_t, 4> mvd{};
  std::array<std::uint64_t, 4> crd{};
  std::uint64_t paired = 0;
  for (const auto& r : results) {
    if (!r.mvd || !r.crd) continue;
    ++mvd[slot(r.mvd->state)];
    ++crd[slot(r.crd->state)];
    ++paired;
  }
  std::uint64_t cells = 0;
  for (const auto& row : tab.counts)
    for (auto n : row) cells += n;
  if (paired != tab.total || cells != tab.total) throw InvariantViolation("cross-tab total does not match results");
  for (ResultState s : decision::kAllStates)
    if (tab.mvd_marginal(s) != mvd[slot(s)] || tab.crd_marginal(s) != crd[slot(s)])
      throw InvariantViolation("cross-tab marginal for " + decision::to_string(s) + " does not match results");
}

json to_json(const DecisionOutcome& outcome) {
  return {{"chains", outcome.chains}, {"state", decision::to_string(outcome.state)}};
}

DecisionOutcome outcome_from_json(const json& j) {
  return {j.at("chains").get<std::vector<decision::Chain>>(), decision::state_from_string(j.at("state").get<std::string>())};
}

json to_json(const CaseResult& r) {
  json out{{"id", r.id}};
  if (r.mvd) out["mvd"] = to_json(*r.mvd);
  if (r.crd) out["crd"] = to_json(*r.crd);
  return out;
}

CaseResult case_result_from_json(const json& j) {
  CaseResult r;
  r.id = j.at("id").get<std::uint64_t>();
  if (j.contains("mvd")) r.mvd = outcome_from_json(j.at("mvd"));
  if (j.contains("crd")) r.crd = outcome_from_json(j.at("crd"));
  return r;
}

json results_to_json(const ExperimentResult& result) {
  json cases = json::array();
  for (const auto& r : result.results) cases.push_back(to_json(r));
  json skipped = json::array();
  for (const auto& s : result.skipped) skipped.push_back({{"file", s.file}, {"error", s.error}});
  return {{"cases", std::move(cases)}, {"skipped", std::move(skipped)}};
}

ExperimentResult results_from_json(const json& j) {
  ExperimentResult out;
  for (const auto& c : j.at("cases")) out.results.push_back(case_result_from_json(c));
  if (j.contains("skipped"))
    for (const auto& s : j.at("skipped"))
      out.skipped.push_back({s.at("file").get<std::string>(), s.at("error").get<std::string>()});
  return out;
}

json summary_to_json(const CrossTab& tab, const SummaryStats& stats, std::size_t skipped) {
  json matrix = json::object();
  json mvd_marginals = json::object();
  json crd_marginals = json::object();
  for (ResultState m : decision::kAllStates) {
    json row = json::object();
    for (ResultState c : decision::kAllStates) row[decision::to_string(c)] = tab.at(m, c);
    matrix[decision::to_string(m)] = std::move(row);
    mvd_marginals[decision::to_string(m)] = stats.mvd_marginals[slot(m)];
    crd_marginals[decision::to_string(m)] = stats.crd_marginals[slot(m)];
  }
  return {{"total", stats.total},
          {"skipped", skipped},
          {"crosstab", std::move(matrix)},
          {"mvd_error_or_conflict_rate", stats.mvd_error_or_conflict_rate},
          {"both_wrong_rate", stats.both_wrong_rate},
          {"mvd_wrong_crd_invalid_rate", stats.mvd_wrong_crd_invalid_rate},
          {"crd_improvement_rate", stats.crd_improvement_rate},
          {"dominance_violations", stats.dominance_violations},
          {"mvd_marginals", std::move(mvd_marginals)},
          {"crd_marginals", std::move(crd_marginals)}};
}

std::string crosstab_csv(const CrossTab& tab) {
  std::ostringstream os;
  os << "mvd\\crd";
  for (ResultState c : decision::kAllStates) os << ',' << decision::to_string(c);
  os << '\n';
  for (ResultState m : decision::kAllStates) {
    os << decision::to_string(m);
    for (ResultState c : decision::kAllStates) os << ',' << tab.at(m, c);
    os << '\n';
  }
  return os.str();
}

json write_report(const ExperimentResult& result, const fs::path& out_dir) {
  const CrossTab tab = cross_tabulate(result.results);
  check_consistency(result.results, tab);
  const SummaryStats stats = summarize(tab);
  if (stats.crd_improvement_rate > stats.mvd_error_or_conflict_rate)
    throw InvariantViolation("improvement rate exceeds the MVD error rate");
  json summary = summary_to_json(tab, stats, result.skipped.size());
  fs::create_directories(out_dir);
  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  write_text(out_dir / "crosstab.csv", crosstab_csv(tab));
  return summary;
}

namespace {

json graph_entries(const GraphMass& source) {
  json out = json::array();
  for (const auto& [g, m] : source.entries())
    out.push_back({{"graph", encode_event(g, source.space())}, {"mass", m}});
  return out;
}

json histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  std::vector<std::uint64_t> counts(bins, 0);
  const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(b, bins - 1)]++;
  }
  json edges = json::array();
  for (std::size_t i = 0; i <= bins; ++i) edges.push_back(lo + width * static_cast<double>(i));
  return {{"bin_edges", std::move(edges)}, {"counts", counts}};
}

// True when no two rankings order a shared pair of aircraft differently.
bool rankings_consistent(const std::vector<decision::Chain>& rankings) {
  const auto position = [](const decision::Chain& chain, std::size_t a) {
    return static_cast<std::size_t>(std::find(chain.begin(), chain.end(), a) - chain.begin());
  };
  for (const auto& x : rankings)
    for (const auto& y : rankings)
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
          const std::size_t pi = position(y, x[i]);
          const std::size_t pj = position(y, x[j]);
          if (pi < y.size() && pj < y.size() && pi > pj) return false;
        }
  return true;
}

}  // namespace

void trace_case(const airsim::Case& input, std::ostream& out) {
  airsim::Case c = input;
  airsim::ensure_trajectories(c);
  const auto emit = [&out](const json& record) { out << record.dump() << '\n'; };

  json speeds = json::array();
  for (const auto& a : c.aircraft) speeds.push_back(a.base_speed);
  emit({{"record", "case"}, {"id", c.id}, {"seed", c.seed}, {"truth", c.truth}, {"base_speeds", speeds}});

  std::vector<decision::Chain> rankings;
  for (std::size_t s = 0; s < c.sensors.size(); ++s) {
    const auto per_aircraft = decision::sensor_speeds(c, s);
    json means = json::object();
    json counts = json::object();
    for (const auto& [a, v] : per_aircraft) {
      means[std::to_string(a)] = decision::mean(v);
      counts[std::to_string(a)] = v.size();
    }
    json record{{"record", "sensor"}, {"sensor", s}, {"means", means}, {"readings", counts}};
    if (per_aircraft.size() >= 2) {
      rankings.push_back(decision::mean_ranking(per_aircraft));
      record["ranking"] = rankings.back();
    }
    emit(record);
  }
  const bool agree = rankings_consistent(rankings);

  try {
    const decision::CrdTrace crd = decision::crd_trace(c);
    for (std::size_t k = 0; k < crd.evidence.size(); ++k)
      emit({{"record", "evidence"}, {"sensor", crd.sensors[k]}, {"entries", graph_entries(crd.evidence[k])}});

    double total_conflict = 0.0;
    std::optional<GraphMass> acc = crd.evidence.front();
    for (std::size_t k = 1; k < crd.evidence.size() && acc; ++k) {
      try {
        auto step = fuse_pair(*acc, crd.evidence[k], decision::speed_graph_operator());
        total_conflict = std::max(total_conflict, step.conflict);
        emit({{"record", "fusion_step"}, {"sensor", crd.sensors[k]}, {"conflict", step.conflict}});
        acc = std::move(step.fused);
      } catch (const TotalConflict&) {
        emit({{"record", "fusion_step"}, {"sensor", crd.sensors[k]}, {"conflict", 1.0}, {"total_conflict", true}});
        total_conflict = 1.0;
        acc.reset();
      }
    }
    if (crd.fused) emit({{"record", "fused"}, {"entries", graph_entries(*crd.fused)}});
    json decision_record{{"record", "decision"}, {"method", "crd"}};
    decision_record.update(to_json(crd.outcome));
    if (crd.decision_graph) decision_record["graph"] = encode_event(*crd.decision_graph, crd.fused->space());
    emit(decision_record);
    emit({{"record", "conflict"}, {"max_fusion_conflict", total_conflict}, {"mvd_rankings_agree", agree}});
  } catch (const decision::InvalidCase& e) {
    emit({{"record", "decision"}, {"method", "crd"}, {"chains", json::array()}, {"state", "Invalid"}, {"note", e.what()}});
  }

  try {
    json record{{"record", "decision"}, {"method", "mvd"}};
    record.update(to_json(decision::mvd(c)));
    emit(record);
  } catch (const decision::InvalidCase& e) {
    emit({{"record", "decision"}, {"method", "mvd"}, {"chains", json::array()}, {"state", "Invalid"}, {"note", e.what()}});
  }

  for (std::size_t a = 0; a < c.trajectories.size(); ++a) {
    json points = json::array();
    for (const auto& p : c.trajectories[a]) points.push_back({p.t, p.x, p.y});
    emit({{"record", "trajectory"}, {"aircraft", a}, {"points", std::move(points)}});
  }
  for (std::size_t s = 0; s < c.sensors.size(); ++s) {
    const auto& sensor = c.sensors[s];
    emit({{"record", "sensor_circle"},
          {"sensor", s},
          {"center", {sensor.center.x, sensor.center.y}},
          {"radius", sensor.radius}});
    const auto per_aircraft = decision::sensor_speeds(c, s);
    if (per_aircraft.empty()) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [a, v] : per_aircraft) {
      lo = std::min(lo, *std::min_element(v.begin(), v.end()));
      hi = std::max(hi, *std::max_element(v.begin(), v.end()));
    }
    for (const auto& [a, v] : per_aircraft) {
      json record{{"record", "speed_histogram"}, {"sensor", s}, {"aircraft", a}};
      record.update(histogram(v, lo, hi, 10));
      emit(record);
    }
  }
}

}  // namespace eprm::harness
