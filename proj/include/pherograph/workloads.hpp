#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dynamic_graph.hpp"
#include "events.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace phero {

// Ground-truth community labels, one entry per generated vertex. Entries are
// append-only: a churned-out vertex keeps its row (readers match on live ids).
struct GroundTruth {
  std::vector<std::pair<VertexId, std::uint32_t>> labels;
};

struct Workload {
  std::vector<GraphEvent> events;
  GroundTruth truth;
};

namespace detail {

// Visits the indices of a Bernoulli(p) subset of [0, count) using geometric
// skips, so sparse sampling costs O(hits) rather than O(count).
template <class F>
void sample_indices(std::uint64_t count, double p, Rng& rng, F&& visit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) visit(i);
    return;
  }
  const double denom = std::log1p(-p);
  std::uint64_t i = 0;
  while (true) {
    double u = rng.uniform01();
    double skip = std::floor(std::log1p(-u) / denom);
    if (skip >= static_cast<double>(count)) return;
    i += static_cast<std::uint64_t>(skip);
    if (i >= count) return;
    visit(i);
    ++i;
  }
}

}  // namespace detail

struct CommunitySpec {
  std::uint32_t communities = 2;  // k
  std::uint32_t size = 8;         // vertices per community
  double p_in = 1.0;
  double p_out = 0.0;
  double w_in = 1.0;
  double w_out = 1.0;
  std::uint32_t colors = 0;  // AddColor 0..colors-1 up front; 0 means one per community
  std::uint64_t seed = 1;

  std::uint32_t color_count() const { return colors == 0 ? communities : colors; }

  void validate() const {
    if (communities == 0 || size == 0)
      throw Error(Errc::bad_spec, "need at least one community and one vertex");
    if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
      throw Error(Errc::bad_spec, "probabilities must be in [0,1]");
    if (w_in < 0.0 || w_out < 0.0)
      throw Error(Errc::bad_spec, "weights must be >= 0");
  }
};

// Planted-community graph: vertices 0..k*n-1 with community id/n, intra pairs
// sampled at p_in with weight w_in, inter pairs at p_out with w_out, closed by
// a single Tick. Edge ids are minted after the vertex ids.
inline Workload gen_communities(const CommunitySpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Workload out;
  const std::uint64_t k = spec.communities;
  const std::uint64_t n = spec.size;

  for (ColorId c = 0; c < spec.color_count(); ++c) out.events.push_back(AddColor{c});
  for (VertexId v = 0; v < k * n; ++v) {
    out.events.push_back(AddVertex{v});
    out.truth.labels.emplace_back(v, static_cast<std::uint32_t>(v / n));
  }

  EdgeId next_edge = k * n;
  for (std::uint64_t c = 0; c < k; ++c) {
    const VertexId base = c * n;
    for (std::uint64_t i = 0; i + 1 < n; ++i)
      detail::sample_indices(n - 1 - i, spec.p_in, rng, [&](std::uint64_t j) {
        out.events.push_back(AddEdge{next_edge++, base + i, base + i + 1 + j, spec.w_in});
      });
  }
  for (std::uint64_t a = 0; a < k; ++a)
    for (std::uint64_t b = a + 1; b < k; ++b)
      detail::sample_indices(n * n, spec.p_out, rng, [&](std::uint64_t idx) {
        out.events.push_back(
            AddEdge{next_edge++, a * n + idx / n, b * n + idx % n, spec.w_out});
      });
  out.events.push_back(Tick{});
  return out;
}

// One structural change spliced into a community stream. Merge, split and
// vertex churn take effect after tick `step`; color changes take effect
// before it.
struct ChurnAction {
  enum class Kind { merge, split, add_color, remove_color, churn_window };
  Kind kind = Kind::merge;
  std::uint64_t step = 1;
  std::uint32_t a = 0;       // merge/split community pair
  std::uint32_t b = 0;
  ColorId color = 0;         // add_color / remove_color
  std::uint64_t until = 0;   // churn window last tick (inclusive)
  std::uint32_t removes = 0; // vertices removed per churn tick
  std::uint32_t adds = 0;    // vertices added per churn tick
};

struct ChurnSchedule {
  std::vector<ChurnAction> actions;
  std::uint64_t total_steps = 0;  // extend the stream with ticks up to this; 0 keeps the base count
  std::uint64_t seed = 1;
};

// Splices merges, splits, vertex churn and color changes into a base
// community stream, extending it with ticks as needed. Deterministic per
// schedule seed; the base spec supplies membership and edge weights.
inline Workload gen_churn(const Workload& base, const CommunitySpec& spec,
                          const ChurnSchedule& schedule) {
  spec.validate();
  for (const ChurnAction& act : schedule.actions) {
    bool pair_kind =
        act.kind == ChurnAction::Kind::merge || act.kind == ChurnAction::Kind::split;
    if (pair_kind && (act.a >= spec.communities || act.b >= spec.communities || act.a == act.b))
      throw Error(Errc::bad_schedule, "merge/split names an invalid community pair");
    if (act.step == 0) throw Error(Errc::bad_schedule, "schedule steps are 1-based");
    if (schedule.total_steps > 0) {
      std::uint64_t last = act.kind == ChurnAction::Kind::churn_window ? act.until : act.step;
      if (last > schedule.total_steps)
        throw Error(Errc::bad_schedule, "action scheduled past the end of the stream");
    }
  }

  Rng rng(schedule.seed);
  Workload out;
  out.truth = base.truth;

  DynamicGraph shadow;  // tracks liveness so spliced events stay well-formed
  std::vector<std::uint32_t> member_of;  // by vertex id; communities are stable labels
  std::vector<std::vector<VertexId>> members(spec.communities);
  for (const auto& [v, c] : base.truth.labels) {
    if (member_of.size() <= v) member_of.resize(v + 1, 0);
    member_of[v] = c;
  }
  VertexId next_vertex = 0;
  EdgeId next_edge = 0;

  auto emit = [&](const GraphEvent& e, Errc on_conflict) {
    try {
      shadow.apply(e);
    } catch (const Error& err) {
      throw Error(on_conflict, std::string("schedule conflicts with stream: ") + err.what());
    }
    std::visit(
        [&](const auto& ev) {
          using T = std::decay_t<decltype(ev)>;
          if constexpr (std::is_same_v<T, AddVertex>) {
            next_vertex = std::max(next_vertex, ev.vertex + 1);
            members[member_of[ev.vertex]].push_back(ev.vertex);
          } else if constexpr (std::is_same_v<T, RemoveVertex>) {
            auto& m = members[member_of[ev.vertex]];
            m.erase(std::find(m.begin(), m.end(), ev.vertex));
          } else if constexpr (std::is_same_v<T, AddEdge>) {
            next_edge = std::max(next_edge, ev.edge + 1);
          }
        },
        e);
    out.events.push_back(e);
  };

  auto splice_after_tick = [&](std::uint64_t tick) {
    for (const ChurnAction& act : schedule.actions) {
      bool due = (act.kind == ChurnAction::Kind::churn_window)
                     ? (tick >= act.step && tick <= act.until)
                     : act.step == tick;
      if (!due) continue;
      switch (act.kind) {
        case ChurnAction::Kind::merge:
          // Every A x B pair ends up connected at w_in; pre-existing weak
          // links are upgraded in place.
          for (VertexId u : members[act.a])
            for (VertexId v : members[act.b]) {
              if (auto existing = shadow.edge_between(u, v))
                emit(SetWeight{*existing, spec.w_in}, Errc::bad_schedule);
              else
                emit(AddEdge{next_edge++, u, v, spec.w_in}, Errc::bad_schedule);
            }
          break;
        case ChurnAction::Kind::split: {
          std::vector<EdgeId> doomed;
          for (VertexId u : members[act.a])
            for (EdgeId e : shadow.vertex(u).incident) {
              VertexId far = shadow.edge(e).other(u);
              if (far < member_of.size() && member_of[far] == act.b) doomed.push_back(e);
            }
          std::sort(doomed.begin(), doomed.end());
          doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
          for (EdgeId e : doomed) emit(RemoveEdge{e}, Errc::bad_schedule);
          break;
        }
        case ChurnAction::Kind::churn_window: {
          for (std::uint32_t r = 0; r < act.removes && shadow.vertex_count() > 0; ++r)
            emit(RemoveVertex{shadow.vertex_at(rng.below(shadow.vertex_count()))},
                 Errc::bad_schedule);
          for (std::uint32_t aidx = 0; aidx < act.adds; ++aidx) {
            std::uint32_t community =
                static_cast<std::uint32_t>(rng.below(spec.communities));
            VertexId v = next_vertex;
            if (member_of.size() <= v) member_of.resize(v + 1, 0);
            member_of[v] = community;
            out.truth.labels.emplace_back(v, community);
            emit(AddVertex{v}, Errc::bad_schedule);
            // Wire the newcomer like any community member.
            std::vector<VertexId> peers = members[community];
            for (VertexId peer : peers)
              if (peer != v && rng.chance(spec.p_in))
                emit(AddEdge{next_edge++, v, peer, spec.w_in}, Errc::bad_schedule);
            if (spec.p_out > 0.0) {
              std::vector<VertexId> strangers;
              for (std::uint32_t c = 0; c < spec.communities; ++c)
                if (c != community)
                  strangers.insert(strangers.end(), members[c].begin(), members[c].end());
              detail::sample_indices(strangers.size(), spec.p_out, rng, [&](std::uint64_t i) {
                emit(AddEdge{next_edge++, v, strangers[i], spec.w_out}, Errc::bad_schedule);
              });
            }
          }
          break;
        }
        default:
          break;
      }
    }
  };

  auto splice_before_tick = [&](std::uint64_t tick) {
    for (const ChurnAction& act : schedule.actions) {
      if (act.step != tick) continue;
      if (act.kind == ChurnAction::Kind::add_color)
        emit(AddColor{act.color}, Errc::bad_schedule);
      else if (act.kind == ChurnAction::Kind::remove_color)
        emit(RemoveColor{act.color}, Errc::bad_schedule);
    }
  };

  std::uint64_t tick = 0;
  for (const GraphEvent& e : base.events) {
    if (is_tick(e)) {
      ++tick;
      splice_before_tick(tick);
      emit(e, Errc::bad_schedule);
      splice_after_tick(tick);
    } else {
      emit(e, Errc::bad_schedule);
    }
  }
  while (tick < schedule.total_steps) {
    ++tick;
    splice_before_tick(tick);
    emit(Tick{}, Errc::bad_schedule);
    splice_after_tick(tick);
  }
  return out;
}

struct FlockSpec {
  std::uint32_t agents = 200;
  double world = 100.0;        // square side, toroidal
  double comm_radius = 5.0;    // proximity-edge threshold
  double max_speed = 1.0;
  double neighbor_radius = 5.0;
  double cohesion = 0.02;
  double separation = 0.15;
  double separation_radius = 1.5;
  double alignment = 0.05;
  std::uint32_t predators = 0;
  double predator_speed = 1.6;
  double flee = 0.3;
  double flee_radius = 8.0;
  double spawn_radius = 0.0;  // 0 spawns uniformly; otherwise a disc at the center
  std::uint64_t duration = 100;
  std::uint64_t seed = 1;

  void validate() const {
    if (agents == 0) throw Error(Errc::bad_spec, "need at least one agent");
    if (!(world > 0.0)) throw Error(Errc::bad_spec, "world side must be positive");
    if (!(comm_radius > 0.0 && comm_radius < world))
      throw Error(Errc::bad_spec, "comm_radius must be in (0, world)");
    if (!(max_speed > 0.0)) throw Error(Errc::bad_spec, "max_speed must be positive");
  }
};

namespace detail {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

inline double torus_delta(double a, double b, double side) {
  double d = b - a;
  if (d > side / 2) d -= side;
  if (d < -side / 2) d += side;
  return d;
}

inline double wrap(double x, double side) {
  x = std::fmod(x, side);
  return x < 0.0 ? x + side : x;
}

}  // namespace detail

// Boids on a toroidal square. Each tick updates cohesion, separation,
// alignment and predator flight, then emits only the proximity-graph deltas:
// new pairs as AddEdge, vanished pairs as RemoveEdge, surviving pairs as
// SetWeight with weight 1 - d/comm_radius. Predators steer the flock but are
// not part of the communication graph.
inline Workload gen_flocking(const FlockSpec& spec, std::uint32_t colors = 2) {
  spec.validate();
  Rng rng(spec.seed);
  Workload out;
  const std::uint32_t n = spec.agents;

  std::vector<detail::Vec2> pos(n), vel(n), acc(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (spec.spawn_radius > 0.0) {
      double ang = rng.uniform01() * 6.283185307179586;
      double rad = std::sqrt(rng.uniform01()) * spec.spawn_radius;
      pos[i] = {detail::wrap(spec.world / 2 + rad * std::cos(ang), spec.world),
                detail::wrap(spec.world / 2 + rad * std::sin(ang), spec.world)};
    } else {
      pos[i] = {rng.uniform01() * spec.world, rng.uniform01() * spec.world};
    }
    double ang = rng.uniform01() * 6.283185307179586;
    double speed = spec.max_speed * (0.25 + 0.5 * rng.uniform01());
    vel[i] = {speed * std::cos(ang), speed * std::sin(ang)};
  }
  // Predators sweep the world on fixed straight tracks.
  std::vector<detail::Vec2> ppos(spec.predators), pvel(spec.predators);
  for (std::uint32_t i = 0; i < spec.predators; ++i) {
    ppos[i] = {0.0, spec.world * (i + 1) / (spec.predators + 1)};
    pvel[i] = {spec.predator_speed, 0.0};
  }

  for (ColorId c = 0; c < colors; ++c) out.events.push_back(AddColor{c});
  for (VertexId v = 0; v < n; ++v) out.events.push_back(AddVertex{v});

  struct PairState {
    EdgeId edge;
    double weight;
  };
  std::vector<std::vector<std::pair<std::uint32_t, PairState>>> live(n);
  EdgeId next_edge = n;

  auto find_pair = [&](std::uint32_t i, std::uint32_t j) -> PairState* {
    for (auto& [other, st] : live[i])
      if (other == j) return &st;
    return nullptr;
  };

  for (std::uint64_t t = 0; t < spec.duration; ++t) {
    // Steering.
    for (std::uint32_t i = 0; i < n; ++i) {
      detail::Vec2 center{}, avoid{}, match{};
      std::uint32_t near = 0;
      for (std::uint32_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double dx = detail::torus_delta(pos[i].x, pos[j].x, spec.world);
        double dy = detail::torus_delta(pos[i].y, pos[j].y, spec.world);
        double d2 = dx * dx + dy * dy;
        if (d2 < spec.neighbor_radius * spec.neighbor_radius) {
          ++near;
          center.x += dx;
          center.y += dy;
          match.x += vel[j].x;
          match.y += vel[j].y;
          if (d2 < spec.separation_radius * spec.separation_radius && d2 > 0.0) {
            avoid.x -= dx / d2;
            avoid.y -= dy / d2;
          }
        }
      }
      acc[i] = {0.0, 0.0};
      if (near > 0) {
        acc[i].x += spec.cohesion * center.x / near + spec.alignment * (match.x / near - vel[i].x);
        acc[i].y += spec.cohesion * center.y / near + spec.alignment * (match.y / near - vel[i].y);
      }
      acc[i].x += spec.separation * avoid.x;
      acc[i].y += spec.separation * avoid.y;
      for (std::uint32_t pr = 0; pr < spec.predators; ++pr) {
        double dx = detail::torus_delta(pos[i].x, ppos[pr].x, spec.world);
        double dy = detail::torus_delta(pos[i].y, ppos[pr].y, spec.world);
        double d2 = dx * dx + dy * dy;
        if (d2 < spec.flee_radius * spec.flee_radius && d2 > 0.0) {
          double d = std::sqrt(d2);
          acc[i].x -= spec.flee * dx / d;
          acc[i].y -= spec.flee * dy / d;
        }
      }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      vel[i].x += acc[i].x;
      vel[i].y += acc[i].y;
      double sp = std::sqrt(vel[i].x * vel[i].x + vel[i].y * vel[i].y);
      if (sp > spec.max_speed) {
        vel[i].x *= spec.max_speed / sp;
        vel[i].y *= spec.max_speed / sp;
      }
      pos[i].x = detail::wrap(pos[i].x + vel[i].x, spec.world);
      pos[i].y = detail::wrap(pos[i].y + vel[i].y, spec.world);
    }
    for (std::uint32_t pr = 0; pr < spec.predators; ++pr) {
      ppos[pr].x = detail::wrap(ppos[pr].x + pvel[pr].x, spec.world);
      ppos[pr].y = detail::wrap(ppos[pr].y + pvel[pr].y, spec.world);
    }

    // Proximity deltas against the previous tick.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> now(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j) {
        double dx = detail::torus_delta(pos[i].x, pos[j].x, spec.world);
        double dy = detail::torus_delta(pos[i].y, pos[j].y, spec.world);
        double d2 = dx * dx + dy * dy;
        if (d2 < spec.comm_radius * spec.comm_radius)
          now[i].emplace_back(j, 1.0 - std::sqrt(d2) / spec.comm_radius);
      }
    for (std::uint32_t i = 0; i < n; ++i) {
      for (auto it = live[i].begin(); it != live[i].end();) {
        std::uint32_t j = it->first;
        bool still = std::any_of(now[i].begin(), now[i].end(),
                                 [&](const auto& p) { return p.first == j; });
        if (!still) {
          out.events.push_back(RemoveEdge{it->second.edge});
          it = live[i].erase(it);
        } else {
          ++it;
        }
      }
      for (const auto& [j, w] : now[i]) {
        if (PairState* st = find_pair(i, j)) {
          if (st->weight != w) {
            out.events.push_back(SetWeight{st->edge, w});
            st->weight = w;
          }
        } else {
          out.events.push_back(AddEdge{next_edge, i, j, w});
          live[i].push_back({j, {next_edge, w}});
          ++next_edge;
        }
      }
    }
    out.events.push_back(Tick{});
  }
  return out;
}

}  // namespace phero
