#include "eprm/airsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eprm::airsim {

using nlohmann::json;

double Rng::normal(double mean, double stddev) {
  // 1 - u keeps the logarithm argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t global_seed, std::uint64_t index) {
  return mix64(global_seed ^ mix64(index + 1));
}

void check(const AircraftConfig& cfg) {
  const double norm = std::hypot(cfg.direction.x, cfg.direction.y);
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("aircraft direction must have unit norm");
  if (!(cfg.base_speed > 0.0)) throw std::invalid_argument("aircraft base speed must be positive");
  if (!(cfg.sigma2 >= 0.0)) throw std::invalid_argument("velocity variance must be non-negative");
  if (!(cfg.period > 0.0)) throw std::invalid_argument("velocity period must be positive");
}

void check(const SensorConfig& sensor) {
  const double r = sensor.radius;
  if (!(r > 0.0 && r < 0.5)) throw std::invalid_argument("sensor radius must lie in (0, 0.5)");
  const auto inside = [r](double c) { return c >= r && c <= 1.0 - r; };
  if (!inside(sensor.center.x) || !inside(sensor.center.y))
    throw std::invalid_argument("sensor coverage must stay inside the unit map");
  if (!(sensor.interval > 0.0)) throw std::invalid_argument("sensor interval must be positive");
}

std::size_t step_count(double dt, double horizon) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("dt and horizon must be positive");
  const double ratio = horizon / dt;
  const double steps = std::round(ratio);
  if (std::abs(steps - ratio) > 1e-6) throw std::invalid_argument("horizon must be a multiple of dt");
  return static_cast<std::size_t>(steps);
}

Trajectory simulate_trajectory(const AircraftConfig& cfg, double dt, double horizon, Rng& rng) {
  check(cfg);
  const std::size_t steps = step_count(dt, horizon);
  Trajectory out;
  out.reserve(steps + 1);
  double x = cfg.start.x;
  double y = cfg.start.y;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double variance = cfg.sigma2 * std::abs(std::sin(2.0 * std::numbers::pi * t)) / cfg.period;
    const double stddev = std::sqrt(variance);
    const double vx = std::max(0.0, rng.normal(cfg.base_speed, stddev));
    const double vy = std::max(0.0, rng.normal(cfg.base_speed, stddev));
    x += cfg.direction.x * vx * dt;
    y += cfg.direction.y * vy * dt;
    out.push_back({t, x, y});
  }
  return out;
}

std::vector<SensorConfig> place_sensors(std::size_t count, double radius, double dt, Rng& rng) {
  if (!(radius > 0.0 && radius < 0.5)) throw std::invalid_argument("sensor radius must lie in (0, 0.5)");
  if (!(dt > 0.0)) throw std::invalid_argument("sensor interval must be positive");
  std::vector<SensorConfig> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = rng.uniform(radius, 1.0 - radius);
    const double y = rng.uniform(radius, 1.0 - radius);
    out.push_back({{x, y}, radius, dt});
  }
  return out;
}

bool in_range(const SensorConfig& sensor, double x, double y) {
  return std::hypot(x - sensor.center.x, y - sensor.center.y) <= sensor.radius;
}

std::vector<Reading> sense(const Trajectory& traj, const SensorConfig& sensor) {
  std::vector<Reading> out;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const auto& a = traj[i];
    const auto& b = traj[i + 1];
    if (!in_range(sensor, a.x, a.y) || !in_range(sensor, b.x, b.y)) continue;
    out.push_back({a.t, std::hypot(b.x - a.x, b.y - a.y) / sensor.interval});
  }
  return out;
}

void check(const GenerationParams& p) {
  if (p.aircraft < 2 || p.aircraft > 8) throw std::invalid_argument("aircraft count must be in [2, 8]");
  if (p.sensors < 1) throw std::invalid_argument("at least one sensor is required");
  if (!(p.radius > 0.0 && p.radius < 0.5)) throw std::invalid_argument("sensor radius must lie in (0, 0.5)");
  step_count(p.dt, p.horizon);
  if (!(p.speed_min > 0.0 && p.speed_max >= p.speed_min))
    throw std::invalid_argument("speed range must satisfy 0 < speed-min <= speed-max");
  if (!(p.min_speed_gap > 0.0)) throw std::invalid_argument("minimum speed gap must be positive");
  if (!(p.sigma2 >= 0.0)) throw std::invalid_argument("sigma2 must be non-negative");
  if (!(p.period > 0.0)) throw std::invalid_argument("period must be positive");
  if (!(p.start_max >= 0.0 && p.start_max <= 1.0)) throw std::invalid_argument("start-max must lie in [0, 1]");
}

Case generate_case(const GenerationParams& params, std::uint64_t id, std::uint64_t seed) {
  check(params);
  Rng rng(seed);
  Case c;
  c.id = id;
  c.seed = seed;
  c.params = params;

  for (std::size_t i = 0; i < params.aircraft; ++i) {
    AircraftConfig a;
    a.start = {rng.uniform(0.0, params.start_max), rng.uniform(0.0, params.start_max)};
    const double heading = rng.uniform(0.0, std::numbers::pi / 2.0);
    a.direction = {std::cos(heading), std::sin(heading)};
    a.base_speed = rng.uniform(params.speed_min, params.speed_max);
    a.sigma2 = params.sigma2;
    a.period = params.period;
    c.aircraft.push_back(a);
  }

  // Spread ties: walk speeds in ascending order and push each one to at
  // least min_speed_gap above its predecessor.
  std::vector<std::size_t> order(params.aircraft);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return c.aircraft[l].base_speed < c.aircraft[r].base_speed;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double floor = c.aircraft[order[k - 1]].base_speed + params.min_speed_gap;
    auto& speed = c.aircraft[order[k]].base_speed;
    speed = std::max(speed, floor);
  }
  c.truth = order;

  c.sensors = place_sensors(params.sensors, params.radius, params.dt, rng);
  for (const auto& a : c.aircraft) c.trajectories.push_back(simulate_trajectory(a, params.dt, params.horizon, rng));

  c.readings.resize(c.sensors.size());
  for (std::size_t s = 0; s < c.sensors.size(); ++s)
    for (const auto& traj : c.trajectories) c.readings[s].push_back(sense(traj, c.sensors[s]));
  return c;
}

void ensure_trajectories(Case& c) {
  if (c.trajectories.size() == c.aircraft.size()) return;
  c.trajectories = generate_case(c.params, c.id, c.seed).trajectories;
}

std::size_t detected_count(const Case& c, std::size_t sensor) {
  const auto& per_aircraft = c.readings.at(sensor);
  return static_cast<std::size_t>(
      std::count_if(per_aircraft.begin(), per_aircraft.end(), [](const auto& r) { return !r.empty(); }));
}

json to_json(const GenerationParams& p) {
  return json{{"aircraft", p.aircraft}, {"sensors", p.sensors},     {"dt", p.dt},
              {"horizon", p.horizon},   {"radius", p.radius},       {"speed_min", p.speed_min},
              {"speed_max", p.speed_max}, {"min_speed_gap", p.min_speed_gap}, {"sigma2", p.sigma2},
              {"period", p.period},     {"start_max", p.start_max}};
}

GenerationParams params_from_json(const json& j) {
  GenerationParams p;
  p.aircraft = j.at("aircraft").get<std::size_t>();
  p.sensors = j.at("sensors").get<std::size_t>();
  p.dt = j.at("dt").get<double>();
  p.horizon = j.at("horizon").get<double>();
  p.radius = j.at("radius").get<double>();
  p.speed_min = j.at("speed_min").get<double>();
  p.speed_max = j.at("speed_max").get<double>();
  p.min_speed_gap = j.at("min_speed_gap").get<double>();
  p.sigma2 = j.at("sigma2").get<double>();
  p.period = j.at("period").get<double>();
  p.start_max = j.at("start_max").get<double>();
  check(p);
  return p;
}

json to_json(const Case& c, bool full) {
  json aircraft = json::array();
  for (const auto& a : c.aircraft)
    aircraft.push_back({{"start", {a.start.x, a.start.y}},
                        {"direction", {a.direction.x, a.direction.y}},
                        {"base_speed", a.base_speed},
                        {"sigma2", a.sigma2},
                        {"period", a.period}});
  json sensors = json::array();
  for (const auto& s : c.sensors)
    sensors.push_back({{"center", {s.center.x, s.center.y}}, {"radius", s.radius}, {"interval", s.interval}});

  json readings = json::object();
  for (std::size_t s = 0; s < c.readings.size(); ++s) {
    json per_aircraft = json::object();
    for (std::size_t a = 0; a < c.readings[s].size(); ++a) {
      if (c.readings[s][a].empty()) continue;
      json list = json::array();
      for (const auto& r : c.readings[s][a]) list.push_back({r.t, r.speed});
      per_aircraft[std::to_string(a)] = std::move(list);
    }
    readings[std::to_string(s)] = std::move(per_aircraft);
  }

  json doc{{"id", c.id},           {"seed", c.seed},     {"params", to_json(c.params)},
           {"aircraft", aircraft}, {"sensors", sensors}, {"truth", c.truth},
           {"readings", readings}};
  if (full) {
    json trajectories = json::array();
    for (const auto& traj : c.trajectories) {
      json points = json::array();
      for (const auto& p : traj) points.push_back({p.t, p.x, p.y});
      trajectories.push_back(std::move(points));
    }
    doc["trajectories"] = std::move(trajectories);
  }
  return doc;
}

namespace {

Vec2 vec2(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::size_t index_key(const std::string& key, std::size_t bound, const char* what) {
  std::size_t pos = 0;
  const unsigned long value = std::stoul(key, &pos);
  if (pos != key.size() || value >= bound) throw std::invalid_argument(std::string("bad ") + what + " key '" + key + "'");
  return value;
}

}  // namespace

Case case_from_json(const json& j) {
  Case c;
  c.id = j.at("id").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.params = params_from_json(j.at("params"));
  for (const auto& a : j.at("aircraft")) {
    AircraftConfig cfg{vec2(a.at("start")), vec2(a.at("direction")), a.at("base_speed").get<double>(),
                       a.at("sigma2").get<double>(), a.at("period").get<double>()};
    check(cfg);
    c.aircraft.push_back(cfg);
  }
  for (const auto& s : j.at("sensors")) {
    SensorConfig cfg{vec2(s.at("center")), s.at("radius").get<double>(), s.at("interval").get<double>()};
    check(cfg);
    c.sensors.push_back(cfg);
  }
  c.truth = j.at("truth").get<std::vector<std::size_t>>();
  if (c.aircraft.size() < 2 || c.truth.size() != c.aircraft.size())
    throw std::invalid_argument("truth must rank every aircraft");
  {
    std::vector<std::size_t> sorted = c.truth;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) throw std::invalid_argument("truth is not a permutation of the aircraft");
  }

  c.readings.assign(c.sensors.size(), std::vector<std::vector<Reading>>(c.aircraft.size()));
  for (const auto& [skey, per_aircraft] : j.at("readings").items()) {
    const std::size_t s = index_key(skey, c.sensors.size(), "sensor");
    for (const auto& [akey, list] : per_aircraft.items()) {
      const std::size_t a = index_key(akey, c.aircraft.size(), "aircraft");
      for (const auto& r : list) {
        const Reading reading{r.at(0).get<double>(), r.at(1).get<double>()};
        if (!std::isfinite(reading.speed) || reading.speed < 0.0)
          throw std::invalid_argument("readings must be finite and non-negative");
        c.readings[s][a].push_back(reading);
      }
    }
  }

  if (j.contains("trajectories")) {
    for (const auto& traj : j.at("trajectories")) {
      Trajectory t;
      for (const auto& p : traj) t.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
      c.trajectories.push_back(std::move(t));
    }
  }
  return c;
}

}  // namespace eprm::airsim
