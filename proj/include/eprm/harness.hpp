#pragma once

// Batch experiment driver: corpus generation, MVD/CRD over every case,
// the 4x4 state cross-tabulation, summary rates and per-case traces.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eprm/airsim.hpp"
#include "eprm/decision.hpp"

namespace eprm::harness {

/// An internal consistency check failed (CLI exit code 2).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Methods { Mvd, Crd, Both };

/// Throws std::invalid_argument for anything but "mvd", "crd", "both".
Methods methods_from_string(const std::string& name);

struct CaseResult {
  std::uint64_t id = 0;
  std::optional<decision::DecisionOutcome> mvd;
  std::optional<decision::DecisionOutcome> crd;
  bool operator==(const CaseResult&) const = default;
};

struct SkippedCase {
  std::string file;
  std::string error;
};

struct CrossTab {
  /// counts[mvd state][crd state], indexed in kAllStates order.
  std::array<std::array<std::uint64_t, 4>, 4> counts{};
  std::uint64_t total = 0;

  std::uint64_t at(decision::ResultState mvd, decision::ResultState crd) const;
  std::uint64_t mvd_marginal(decision::ResultState s) const;
  std::uint64_t crd_marginal(decision::ResultState s) const;
};

struct SummaryStats {
  std::uint64_t total = 0;
  /// MVD in {False, Conflict}.
  double mvd_error_or_conflict_rate = 0.0;
  /// MVD in {False, Conflict} and CRD in {False, Conflict}.
  double both_wrong_rate = 0.0;
  /// MVD in {False, Conflict} and CRD Invalid.
  double mvd_wrong_crd_invalid_rate = 0.0;
  /// MVD in {False, Conflict} and CRD True.
  double crd_improvement_rate = 0.0;
  /// MVD True and CRD in {False, Invalid}; zero when CRD never does worse.
  std::uint64_t dominance_violations = 0;
  std::array<double, 4> mvd_marginals{};
  std::array<double, 4> crd_marginals{};
};

struct ExperimentResult {
  std::vector<CaseResult> results;  // ascending id
  std::vector<SkippedCase> skipped;
};

/// Runs `fn(i)` for i in [0, n) on `workers` threads (0 = hardware concurrency).
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

/// InvalidCase from either method maps to an Invalid outcome with no chains.
CaseResult decide_case(const airsim::Case& c, Methods methods);

std::vector<CaseResult> decide_cases(std::span<const airsim::Case> cases, Methods methods, unsigned workers = 0);

/// File name used for case `id` inside a corpus directory.
std::string case_file_name(std::uint64_t id);

/// Generates cases 0..count-1 with seeds case_seed(global_seed, i) and writes
/// one JSON document per case. Returns the written paths in id order.
std::vector<std::filesystem::path> simulate_corpus(const airsim::GenerationParams& params, std::uint64_t global_seed,
                                                   std::size_t count, const std::filesystem::path& out_dir,
                                                   bool full = false, unsigned workers = 0);

/// In-memory equivalent of simulate_corpus.
std::vector<airsim::Case> generate_corpus(const airsim::GenerationParams& params, std::uint64_t global_seed,
                                          std::size_t count, unsigned workers = 0);

/// Throws std::runtime_error when the file cannot be read or parsed.
airsim::Case load_case(const std::filesystem::path& file);

/// Decides every *.json case in `corpus_dir` (sorted by file name).
/// Unreadable cases are listed in `skipped`. Throws std::invalid_argument
/// when the directory does not exist.
ExperimentResult run_experiment(const std::filesystem::path& corpus_dir, Methods methods, unsigned workers = 0);

/// Cases lacking either method are not tabulated.
CrossTab cross_tabulate(std::span<const CaseResult> results);
SummaryStats summarize(const CrossTab& tab);

/// Recounts per-method states from `results` and compares them with the
/// table's marginals. Throws InvariantViolation on mismatch.
void check_consistency(std::span<const CaseResult> results, const CrossTab& tab);

nlohmann::json to_json(const decision::DecisionOutcome& outcome);
decision::DecisionOutcome outcome_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CaseResult& r);
CaseResult case_result_from_json(const nlohmann::json& j);

/// {"cases": [...], "skipped": [{"file", "error"}]}
nlohmann::json results_to_json(const ExperimentResult& result);
ExperimentResult results_from_json(const nlohmann::json& j);

nlohmann::json summary_to_json(const CrossTab& tab, const SummaryStats& stats, std::size_t skipped);
/// Header row plus one row per MVD state; columns are CRD states.
std::string crosstab_csv(const CrossTab& tab);

/// Writes summary.json and crosstab.csv into `out_dir` (created if needed).
/// Returns the summary document.
nlohmann::json write_report(const ExperimentResult& result, const std::filesystem::path& out_dir);

/// Human-readable walkthrough of one case as JSON lines: per-sensor means and
/// rankings, per-sensor evidence, fusion steps with their conflict, the fused
/// source, both decisions, and plot-ready trajectories, sensor circles and
/// speed histograms.
void trace_case(const airsim::Case& c, std::ostream& out);

}  // namespace eprm::harness
