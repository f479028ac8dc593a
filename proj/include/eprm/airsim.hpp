#pragma once

// Seeded simulation of aircraft flying across the unit map and of
// range-limited sensors that time-stamp their positions.

#include <cstdint>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

namespace eprm::airsim {

/// Portable generator: std::mt19937_64 (output sequence fixed by the
/// standard) with uniform and normal variates derived by hand, so draws are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits of one engine output.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Box-Muller; consumes exactly two engine outputs per call.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for case `index` of a corpus: mix64(global_seed ^ mix64(index + 1)).
std::uint64_t case_seed(std::uint64_t global_seed, std::uint64_t index);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

struct AircraftConfig {
  Vec2 start;
  Vec2 direction;  // unit norm
  double base_speed = 0.0;
  double sigma2 = 0.0;
  double period = 1.0;
  bool operator==(const AircraftConfig&) const = default;
};

/// Throws std::invalid_argument when an AircraftConfig invariant fails.
void check(const AircraftConfig& cfg);

struct SensorConfig {
  Vec2 center;
  double radius = 0.0;
  double interval = 0.0;
  bool operator==(const SensorConfig&) const = default;
};

void check(const SensorConfig& sensor);

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const TrajectorySample&) const = default;
};

using Trajectory = std::vector<TrajectorySample>;

struct Reading {
  double t = 0.0;
  double speed = 0.0;
  bool operator==(const Reading&) const = default;
};

/// Number of dt steps in horizon; throws std::invalid_argument unless the
/// horizon is a positive multiple of dt.
std::size_t step_count(double dt, double horizon);

/// Samples t = i*dt for i = 0..horizon/dt. At each t both speed components
/// are drawn from N(base_speed, sigma2*|sin(2*pi*t)|/period), negative draws
/// clamp to 0, and the position is start + dt * sum_{j<=i} (d_x v_x, d_y v_y).
Trajectory simulate_trajectory(const AircraftConfig& cfg, double dt, double horizon, Rng& rng);

/// `count` sensors with centers uniform in [r, 1-r]^2.
/// Throws std::invalid_argument unless 0 < r < 0.5 and dt > 0.
std::vector<SensorConfig> place_sensors(std::size_t count, double radius, double dt, Rng& rng);

bool in_range(const SensorConfig& sensor, double x, double y);

/// Speed over every sampling interval whose two endpoints both lie inside
/// the sensor's disc, stamped with the interval start.
std::vector<Reading> sense(const Trajectory& traj, const SensorConfig& sensor);

struct GenerationParams {
  std::size_t aircraft = 3;
  std::size_t sensors = 4;
  double dt = 0.01;
  double horizon = 1.0;
  double radius = 0.3;
  double speed_min = 0.4;
  double speed_max = 0.5;
  double min_speed_gap = 0.005;
  double sigma2 = 0.1;
  double period = 1.0;
  double start_max = 0.2;

  bool operator==(const GenerationParams&) const = default;
};

/// Throws std::invalid_argument for out-of-range parameters
/// (2 <= aircraft <= 8, sensors >= 1, 0 < radius < 0.5, ...).
void check(const GenerationParams& params);

struct Case {
  std::uint64_t id = 0;
  std::uint64_t seed = 0;
  GenerationParams params;
  std::vector<AircraftConfig> aircraft;
  std::vector<SensorConfig> sensors;
  std::vector<Trajectory> trajectories;
  /// readings[sensor][aircraft]; empty when the sensor never saw it.
  std::vector<std::vector<std::vector<Reading>>> readings;
  /// Aircraft indices by ascending base speed.
  std::vector<std::size_t> truth;
};

/// Draw order from Rng(seed): per aircraft start, heading angle and speed;
/// then sensor centres; then trajectories aircraft by aircraft.
Case generate_case(const GenerationParams& params, std::uint64_t id, std::uint64_t seed);

/// Number of aircraft a sensor has at least one reading for.
std::size_t detected_count(const Case& c, std::size_t sensor);

nlohmann::json to_json(const GenerationParams& params);
GenerationParams params_from_json(const nlohmann::json& j);

/// Case document; trajectories are included only when `full` is set.
nlohmann::json to_json(const Case& c, bool full = false);
/// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
/// Trajectories stay empty when the document omits them.
Case case_from_json(const nlohmann::json& j);

/// Re-simulates trajectories from (params, seed) when they are missing.
void ensure_trajectories(Case& c);

}  // namespace eprm::airsim
