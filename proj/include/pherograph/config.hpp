#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

#include "colony.hpp"
#include "types.hpp"
#include "workloads.hpp"

namespace phero {

// Flat key=value run configuration; command-line flags of the same names
// override file values. Input is either a trace path or a generator spec.
struct RunConfig {
  ColonyParams params;
  double lambda = 0.5;
  std::uint32_t hysteresis = 5;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = 1000;

  std::string trace;     // input trace path; empty selects the generator
  std::string gen_kind;  // "communities" | "flocking" | ""
  CommunitySpec communities;
  FlockSpec flocking;

  std::string metrics_csv = "metrics.csv";
  std::string advice_log = "advice.log";
  std::string snapshot_dir;         // empty disables snapshots
  std::uint64_t snapshot_every = 0; // 0 disables snapshots

  void validate() const {
    params.validate();
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw Error(Errc::bad_spec, "lambda must be in [0,1]");
    if (hysteresis < 1) throw Error(Errc::bad_spec, "hysteresis must be >= 1");
    if (max_steps < 1) throw Error(Errc::bad_spec, "max_steps must be >= 1");
    if (trace.empty() && gen_kind.empty())
      throw Error(Errc::bad_spec, "need a trace path or a generator kind");
    if (!gen_kind.empty() && gen_kind != "communities" && gen_kind != "flocking")
      throw Error(Errc::bad_spec, "unknown generator kind: " + gen_kind);
  }
};

namespace detail {

inline double to_real(std::string_view v, std::string_view key) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(Errc::bad_spec, "bad numeric value for " + std::string(key));
  return out;
}

inline std::uint64_t to_uint(std::string_view v, std::string_view key) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(Errc::bad_spec, "bad integer value for " + std::string(key));
  return out;
}

}  // namespace detail

inline void set_config_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  using detail::to_real;
  using detail::to_uint;
  if (key == "alpha") cfg.params.alpha = to_real(value, key);
  else if (key == "beta") cfg.params.beta = to_real(value, key);
  else if (key == "gamma") cfg.params.gamma = to_real(value, key);
  else if (key == "rho") cfg.params.rho = to_real(value, key);
  else if (key == "q") cfg.params.q = to_real(value, key);
  else if (key == "epsilon") cfg.params.epsilon = to_real(value, key);
  else if (key == "phi_min") cfg.params.phi_min = to_real(value, key);
  else if (key == "eta") cfg.params.eta = to_real(value, key);
  else if (key == "tau") cfg.params.tau = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "lambda") cfg.lambda = to_real(value, key);
  else if (key == "hysteresis") cfg.hysteresis = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "seed") cfg.seed = to_uint(value, key);
  else if (key == "max_steps") cfg.max_steps = to_uint(value, key);
  else if (key == "trace") cfg.trace = value;
  else if (key == "gen_kind") cfg.gen_kind = value;
  else if (key == "metrics_csv") cfg.metrics_csv = value;
  else if (key == "advice_log") cfg.advice_log = value;
  else if (key == "snapshot_dir") cfg.snapshot_dir = value;
  else if (key == "snapshot_every") cfg.snapshot_every = to_uint(value, key);
  else if (key == "gen_communities") cfg.communities.communities = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "gen_size") cfg.communities.size = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "gen_p_in") cfg.communities.p_in = to_real(value, key);
  else if (key == "gen_p_out") cfg.communities.p_out = to_real(value, key);
  else if (key == "gen_w_in") cfg.communities.w_in = to_real(value, key);
  else if (key == "gen_w_out") cfg.communities.w_out = to_real(value, key);
  else if (key == "gen_colors") cfg.communities.colors = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "gen_agents") cfg.flocking.agents = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "gen_world") cfg.flocking.world = to_real(value, key);
  else if (key == "gen_comm_radius") cfg.flocking.comm_radius = to_real(value, key);
  else if (key == "gen_max_speed") cfg.flocking.max_speed = to_real(value, key);
  else if (key == "gen_neighbor_radius") cfg.flocking.neighbor_radius = to_real(value, key);
  else if (key == "gen_cohesion") cfg.flocking.cohesion = to_real(value, key);
  else if (key == "gen_separation") cfg.flocking.separation = to_real(value, key);
  else if (key == "gen_separation_radius") cfg.flocking.separation_radius = to_real(value, key);
  else if (key == "gen_alignment") cfg.flocking.alignment = to_real(value, key);
  else if (key == "gen_predators") cfg.flocking.predators = static_cast<std::uint32_t>(to_uint(value, key));
  else if (key == "gen_predator_speed") cfg.flocking.predator_speed = to_real(value, key);
  else if (key == "gen_flee") cfg.flocking.flee = to_real(value, key);
  else if (key == "gen_flee_radius") cfg.flocking.flee_radius = to_real(value, key);
  else if (key == "gen_spawn_radius") cfg.flocking.spawn_radius = to_real(value, key);
  else throw Error(Errc::bad_spec, "unknown config key: " + std::string(key));
}

inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    // trim
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t' || sv.front() == '\r'))
      sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
      sv.remove_suffix(1);
    if (sv.empty()) continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::syntax, "line " + std::to_string(line_no) + ": expected key=value",
                  line_no);
    std::string_view key = sv.substr(0, eq);
    std::string_view value = sv.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    set_config_key(cfg, key, value);
  }
  return cfg;
}

}  // namespace phero
