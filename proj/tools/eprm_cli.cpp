// eprm: simulate aircraft cases, decide them with MVD/CRD, report statistics,
// trace single cases and fuse JSON mass assignments with named operators.
//
// Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "eprm/harness.hpp"
#include "eprm/json_io.hpp"
#include "eprm/registry.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eprm;

namespace {

constexpr int kInvalidInput = 1;
constexpr int kInvariantViolation = 2;

json read_json(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
}

void write_json(const fs::path& file, const json& doc) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

void add_generation_options(CLI::App* cmd, airsim::GenerationParams& p) {
  cmd->add_option("--aircraft", p.aircraft, "Aircraft per case (2-8)")->capture_default_str();
  cmd->add_option("--sensors", p.sensors, "Sensors per case")->capture_default_str();
  cmd->add_option("--radius", p.radius, "Sensor detection radius")->capture_default_str();
  cmd->add_option("--dt", p.dt, "Sampling interval")->capture_default_str();
  cmd->add_option("--horizon", p.horizon, "Simulated time span")->capture_default_str();
  cmd->add_option("--sigma2", p.sigma2, "Velocity variance")->capture_default_str();
  cmd->add_option("--period", p.period, "Velocity variance period")->capture_default_str();
  cmd->add_option("--speed-min", p.speed_min, "Lowest base speed")->capture_default_str();
  cmd->add_option("--speed-max", p.speed_max, "Highest base speed")->capture_default_str();
  cmd->add_option("--speed-gap", p.min_speed_gap, "Minimum gap between base speeds")->capture_default_str();
  cmd->add_option("--start-max", p.start_max, "Start coordinates drawn from [0, start-max]")->capture_default_str();
}

harness::ExperimentResult decide_dir(const fs::path& cases, const std::string& method, unsigned workers) {
  auto result = harness::run_experiment(cases, harness::methods_from_string(method), workers);
  for (const auto& s : result.skipped) std::cerr << "skipped " << s.file << ": " << s.error << '\n';
  return result;
}

void print_summary(const json& summary) {
  std::cout << "cases: " << summary["total"] << "  skipped: " << summary["skipped"] << '\n'
            << "mvd_error_or_conflict_rate: " << summary["mvd_error_or_conflict_rate"] << '\n'
            << "both_wrong_rate: " << summary["both_wrong_rate"] << '\n'
            << "crd_improvement_rate: " << summary["crd_improvement_rate"] << '\n'
            << "dominance_violations: " << summary["dominance_violations"] << '\n';
}

template <Event E>
json fuse_documents(const OperatorRegistry<E>& registry, const std::vector<fs::path>& files, const std::string& po,
                    const std::string& dmo, const PreferenceParams& prefs) {
  std::vector<MassAssignment<E>> sources;
  for (const auto& f : files) {
    SpacePtr space = sources.empty() ? nullptr : sources.front().space_ptr();
    sources.push_back(mass_from_json<E>(read_json(f), space));
    const auto violations = validate(sources.back());
    if (!violations.empty())
      throw std::invalid_argument(f.string() + ": " + to_string(violations.front().kind) + " (" +
                                  violations.front().detail + ")");
  }
  const MassAssignment<E> fused = fuse_sequence<E>(sources, registry.pattern(po));
  if (!validate(fused).empty()) throw harness::InvariantViolation("fused source failed validation");
  json out{{"fused", to_json(fused)}};
  if (!dmo.empty()) out["decision"] = decide(fused, registry.decision(dmo), prefs);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence pattern reasoning over set, permutation and graph events"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned workers = 0;
  app.add_option("--workers", workers, "Worker threads (0 = all cores)");

  airsim::GenerationParams sim_params;
  std::size_t sim_cases = 100;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  bool sim_full = false;
  auto* simulate = app.add_subcommand("simulate", "Generate a corpus of case files");
  simulate->add_option("--cases", sim_cases, "Number of cases")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Global seed")->required();
  simulate->add_option("--out", sim_out, "Output directory")->required();
  simulate->add_flag("--full", sim_full, "Include trajectories in case files");
  add_generation_options(simulate, sim_params);

  std::string dec_cases;
  std::string dec_method = "both";
  std::string dec_out = "results.json";
  auto* decide_cmd = app.add_subcommand("decide", "Run MVD and/or CRD over a corpus");
  decide_cmd->add_option("--cases", dec_cases, "Corpus directory")->required();
  decide_cmd->add_option("--method", dec_method, "mvd, crd or both")
      ->check(CLI::IsMember({"mvd", "crd", "both"}))
      ->capture_default_str();
  decide_cmd->add_option("--out", dec_out, "Results file")->capture_default_str();

  std::string stats_results;
  std::string stats_out = "report";
  auto* stats = app.add_subcommand("stats", "Cross-tabulate results and write a report");
  stats->add_option("--results", stats_results, "Results file from decide")->required();
  stats->add_option("--out", stats_out, "Report directory")->capture_default_str();

  std::string trace_file;
  std::string trace_out = "trace.jsonl";
  auto* trace = app.add_subcommand("trace", "Walk through one case as JSON lines");
  trace->add_option("--case", trace_file, "Case file")->required();
  trace->add_option("--out", trace_out, "Output file ('-' for stdout)")->capture_default_str();

  airsim::GenerationParams run_params;
  std::size_t run_cases = 100;
  std::uint64_t run_seed = 0;
  std::string run_out;
  auto* run_all = app.add_subcommand("run-all", "simulate + decide + stats into one directory");
  run_all->add_option("--cases", run_cases, "Number of cases")->capture_default_str();
  run_all->add_option("--seed", run_seed, "Global seed")->required();
  run_all->add_option("--out", run_out, "Output directory")->required();
  add_generation_options(run_all, run_params);

  std::vector<std::string> fuse_files;
  std::string fuse_algebra = "set";
  std::string fuse_po = "intersection";
  std::string fuse_dmo;
  std::vector<std::string> fuse_prefs;
  std::string fuse_out = "-";
  auto* fuse = app.add_subcommand("fuse", "Fuse JSON mass assignments with a named pattern operator");
  fuse->add_option("sources", fuse_files, "Mass assignment files, fused left to right")->required();
  fuse->add_option("--algebra", fuse_algebra, "set, perm or graph")
      ->check(CLI::IsMember({"set", "perm", "graph"}))
      ->capture_default_str();
  fuse->add_option("--po", fuse_po, "Pattern operator name")->capture_default_str();
  fuse->add_option("--dmo", fuse_dmo, "Decision operator name");
  fuse->add_option("--pref", fuse_prefs, "Preference parameter key=value (repeatable)");
  fuse->add_option("--out", fuse_out, "Output file ('-' for stdout)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (*simulate) {
      const auto paths = harness::simulate_corpus(sim_params, sim_seed, sim_cases, sim_out, sim_full, workers);
      std::cout << "wrote " << paths.size() << " cases to " << sim_out << '\n';
    } else if (*decide_cmd) {
      const auto result = decide_dir(dec_cases, dec_method, workers);
      write_json(dec_out, harness::results_to_json(result));
      std::cout << "decided " << result.results.size() << " cases -> " << dec_out << '\n';
    } else if (*stats) {
      const auto result = harness::results_from_json(read_json(stats_results));
      print_summary(harness::write_report(result, stats_out));
    } else if (*trace) {
      const auto c = harness::load_case(trace_file);
      if (trace_out == "-") {
        harness::trace_case(c, std::cout);
      } else {
        std::ofstream out(trace_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + trace_out);
        harness::trace_case(c, out);
      }
    } else if (*run_all) {
      const fs::path root = run_out;
      harness::simulate_corpus(run_params, run_seed, run_cases, root / "cases", false, workers);
      const auto result = decide_dir(root / "cases", "both", workers);
      write_json(root / "results.json", harness::results_to_json(result));
      print_summary(harness::write_report(result, root / "report"));
    } else if (*fuse) {
      PreferenceParams prefs;
      for (const auto& kv : fuse_prefs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--pref expects key=value");
        prefs[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      const std::vector<fs::path> files(fuse_files.begin(), fuse_files.end());
      json out;
      if (fuse_algebra == "set") out = fuse_documents(set_operators(), files, fuse_po, fuse_dmo, prefs);
      else if (fuse_algebra == "perm") out = fuse_documents(perm_operators(), files, fuse_po, fuse_dmo, prefs);
      else out = fuse_documents(graph_operators(), files, fuse_po, fuse_dmo, prefs);
      if (fuse_out == "-") std::cout << out.dump(2) << '\n';
      else write_json(fuse_out, out);
    }
  } catch (const harness::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return 0;
}
