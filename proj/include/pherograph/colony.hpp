#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "dynamic_graph.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace phero {

struct ColonyParams {
  double alpha = 1.0;    // own-pheromone attraction exponent
  double beta = 2.0;     // edge-weight attraction exponent
  double gamma = 1.0;    // foreign-pheromone repulsion exponent
  double rho = 0.1;      // evaporation rate per step, in [0,1)
  double q = 0.1;        // pheromone laid per edge crossing
  double epsilon = 1e-6; // smoothing floor inside the attractiveness ratio
  double phi_min = 1e-9; // pheromone below this truncates to exactly 0
  double eta = 1.0;      // ants per live vertex, per colony
  std::uint32_t tau = 4; // tabu length

  void validate() const {
    if (!(alpha >= 0.0)) throw Error(Errc::bad_spec, "alpha must be >= 0");
    if (!(beta >= 0.0)) throw Error(Errc::bad_spec, "beta must be >= 0");
    if (!(gamma >= 0.0)) throw Error(Errc::bad_spec, "gamma must be >= 0");
    if (!(rho >= 0.0 && rho < 1.0)) throw Error(Errc::bad_spec, "rho must be in [0,1)");
    if (!(q > 0.0)) throw Error(Errc::bad_spec, "q must be > 0");
    if (!(epsilon > 0.0)) throw Error(Errc::bad_spec, "epsilon must be > 0");
    if (!(phi_min >= 0.0)) throw Error(Errc::bad_spec, "phi_min must be >= 0");
    if (!(eta > 0.0)) throw Error(Errc::bad_spec, "eta must be > 0");
  }
};

struct Ant {
  std::uint64_t id = 0;
  ColorId color = 0;
  VertexId location = 0;
  std::vector<VertexId> tabu;  // most recent last, size <= tau
};

// The population of one color. `id` is the creation index within the engine
// and fixes the step ordering; it is stable under recoloring, which keeps
// seed-matched runs with permuted ColorIds in lockstep.
struct Colony {
  std::uint64_t id = 0;
  ColorId color = 0;
  Rng rng;
  std::vector<Ant> ants;  // ascending ant id
  std::uint64_t next_ant_id = 0;
};

namespace detail {

inline double fast_pow(double base, double exp) {
  if (exp == 0.0) return 1.0;
  if (exp == 1.0) return base;
  if (exp == 2.0) return base * base;
  return std::pow(base, exp);
}

inline bool in_tabu(const Ant& ant, VertexId v) {
  return std::find(ant.tabu.begin(), ant.tabu.end(), v) != ant.tabu.end();
}

inline void push_tabu(Ant& ant, VertexId v, std::uint32_t tau) {
  if (tau == 0) return;
  ant.tabu.push_back(v);
  while (ant.tabu.size() > tau) ant.tabu.erase(ant.tabu.begin());
}

}  // namespace detail

// A_c(e) = w^beta * (eps + phi_own)^alpha / (eps + phi_foreign)^gamma.
// Weight pulls, own pheromone amplifies, foreign pheromone repels.
inline double edge_attractiveness(const DynamicGraph& g, EdgeId e, ColorId c,
                                  const ColonyParams& p) {
  const Edge& ed = g.edge(e);
  auto [own, foreign] = g.pheromone_split(e, c);
  return detail::fast_pow(ed.weight, p.beta) *
         detail::fast_pow(p.epsilon + own, p.alpha) /
         detail::fast_pow(p.epsilon + foreign, p.gamma);
}

struct ChoiceScratch {
  std::vector<EdgeId> candidates;
  std::vector<double> weights;
};

// Fills scratch with the ant's candidate edges and their raw attractiveness.
// Candidates are the incident edges whose far endpoint is not tabu; when all
// far endpoints are tabu the restriction is dropped. Returns false (stuck)
// when the vertex is isolated or every candidate has zero attractiveness.
inline bool selection_weights(const DynamicGraph& g, const Ant& ant,
                              const ColonyParams& p, ChoiceScratch& scratch) {
  const Vertex& at = g.vertex(ant.location);
  scratch.candidates.clear();
  scratch.weights.clear();
  for (EdgeId e : at.incident)
    if (!detail::in_tabu(ant, g.edge(e).other(ant.location)))
      scratch.candidates.push_back(e);
  if (scratch.candidates.empty())
    scratch.candidates.assign(at.incident.begin(), at.incident.end());
  if (scratch.candidates.empty()) return false;
  double total = 0.0;
  for (EdgeId e : scratch.candidates) {
    double a = edge_attractiveness(g, e, ant.color, p);
    scratch.weights.push_back(a);
    total += a;
  }
  return total > 0.0;
}

// Roulette-wheel pick proportional to attractiveness; nullopt means stuck.
inline std::optional<EdgeId> choose_edge(const DynamicGraph& g, const Ant& ant,
                                         const ColonyParams& p, Rng& rng,
                                         ChoiceScratch& scratch) {
  if (!selection_weights(g, ant, p, scratch)) return std::nullopt;
  double total = 0.0;
  for (double w : scratch.weights) total += w;
  double r = rng.uniform01() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < scratch.candidates.size(); ++i) {
    cum += scratch.weights[i];
    if (r < cum) return scratch.candidates[i];
  }
  return scratch.candidates.back();  // floating-point edge of the wheel
}

inline std::optional<EdgeId> choose_edge(const DynamicGraph& g, const Ant& ant,
                                         const ColonyParams& p, Rng& rng) {
  ChoiceScratch scratch;
  return choose_edge(g, ant, p, rng, scratch);
}

enum class MoveOutcome { crossed, teleported };

// On a successful choice the ant deposits q on the crossed edge and advances;
// a stuck ant relocates to a uniformly random live vertex with cleared tabu
// and deposits nothing.
inline MoveOutcome move_and_deposit(DynamicGraph& g, Ant& ant, const ColonyParams& p,
                                    Rng& rng, ChoiceScratch& scratch) {
  std::optional<EdgeId> choice = choose_edge(g, ant, p, rng, scratch);
  if (!choice) {
    if (g.vertex_count() == 0)
      throw Error(Errc::empty_graph, "no live vertex to relocate a stuck ant");
    ant.location = g.vertex_at(rng.below(g.vertex_count()));
    ant.tabu.clear();
    return MoveOutcome::teleported;
  }
  g.deposit(*choice, ant.color, p.q);
  ant.location = g.edge(*choice).other(ant.location);
  detail::push_tabu(ant, ant.location, p.tau);
  return MoveOutcome::crossed;
}

inline MoveOutcome move_and_deposit(DynamicGraph& g, Ant& ant, const ColonyParams& p,
                                    Rng& rng) {
  ChoiceScratch scratch;
  return move_and_deposit(g, ant, p, rng, scratch);
}

inline void evaporate(DynamicGraph& g, const ColonyParams& p) {
  g.decay_pheromone(1.0 - p.rho, p.phi_min);
}

// Color of the largest incident pheromone sum. With zero evidence the current
// color is kept. Ties keep the current color when it is among the maxima and
// otherwise fall to the earliest-registered color, which coincides with the
// lowest ColorId whenever colors were registered in ascending order.
inline OptColor dominant_color(const DynamicGraph& g, VertexId v,
                               std::vector<double>& sums) {
  const Vertex& vx = g.vertex(v);
  g.incident_sums(v, sums);
  double best = 0.0;
  for (double s : sums) best = std::max(best, s);
  if (!(best > 0.0)) return vx.color;
  if (vx.color && g.has_color(*vx.color) && sums[g.slot_of(*vx.color)] == best)
    return vx.color;
  for (std::size_t s = 0; s < sums.size(); ++s)
    if (sums[s] == best) return g.colors()[s];
  return vx.color;  // unreachable
}

inline OptColor dominant_color(const DynamicGraph& g, VertexId v) {
  std::vector<double> sums;
  return dominant_color(g, v, sums);
}

// Runs the ant system: one colony per live color, stepped in a fixed phase
// order (population management, moves, evaporation, coloring).
class Engine {
public:
  Engine() : Engine(ColonyParams{}, 0) {}

  Engine(const ColonyParams& params, std::uint64_t seed)
      : params_(params), master_seed_(seed) {
    params_.validate();
  }

  const ColonyParams& params() const { return params_; }
  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<Colony>& colonies() const { return colonies_; }
  std::vector<Colony>& colonies() { return colonies_; }

  // Deletes colonies of dead colors, creates full colonies for new colors in
  // registration order, re-seats ants standing on removed vertices, then
  // resizes every colony to ceil(eta * |V|).
  void manage_population(DynamicGraph& g) {
    std::erase_if(colonies_, [&](const Colony& c) { return !g.has_color(c.color); });
    for (ColorId c : g.colors()) {
      bool present = std::any_of(colonies_.begin(), colonies_.end(),
                                 [&](const Colony& col) { return col.color == c; });
      if (!present) {
        Colony col;
        col.id = next_colony_id_++;
        col.color = c;
        col.rng = Rng(derive_seed(master_seed_, col.id));
        colonies_.push_back(std::move(col));
      }
    }
    std::size_t n = g.vertex_count();
    std::size_t target =
        n == 0 ? 0 : static_cast<std::size_t>(std::ceil(params_.eta * static_cast<double>(n)));
    for (Colony& col : colonies_) {
      if (n > 0)
        for (Ant& a : col.ants)
          if (!g.has_vertex(a.location)) {
            a.location = g.vertex_at(col.rng.below(n));
            a.tabu.clear();
          }
      while (col.ants.size() > target) {
        std::size_t idx = static_cast<std::size_t>(col.rng.below(col.ants.size()));
        col.ants.erase(col.ants.begin() + static_cast<std::ptrdiff_t>(idx));
      }
      while (col.ants.size() < target) {
        Ant a;
        a.id = col.next_ant_id++;
        a.color = col.color;
        a.location = g.vertex_at(col.rng.below(n));
        col.ants.push_back(std::move(a));
      }
    }
  }

  // One step: populate, move every ant in (colony id, ant id) order,
  // evaporate, recolor every vertex. Returns the full assignment sorted by
  // vertex id. Cost is O(ants * max-degree + edges + vertices).
  Assignment step(DynamicGraph& g) {
    manage_population(g);
    for (Colony& col : colonies_)
      for (Ant& a : col.ants)
        move_and_deposit(g, a, params_, col.rng, scratch_);
    evaporate(g, params_);

    Assignment result;
    result.reserve(g.vertex_count());
    for (const Vertex& v : g.vertices()) result.push_back({v.id, std::nullopt, 0});
    std::sort(result.begin(), result.end(),
              [](const AssignmentEntry& a, const AssignmentEntry& b) {
                return a.vertex < b.vertex;
              });
    for (AssignmentEntry& entry : result) {
      const Vertex& vx = g.vertex(entry.vertex);
      OptColor next = dominant_color(g, entry.vertex, sums_scratch_);
      std::uint32_t streak = 0;
      if (next) streak = (vx.color == next) ? vx.streak + 1 : 1;
      g.set_color_state(entry.vertex, next, streak);
      entry.color = next;
      entry.streak = streak;
    }
    return result;
  }

private:
  ColonyParams params_;
  std::uint64_t master_seed_ = 0;
  std::uint64_t next_colony_id_ = 0;
  std::vector<Colony> colonies_;
  ChoiceScratch scratch_;
  std::vector<double> sums_scratch_;
};

}  // namespace phero
