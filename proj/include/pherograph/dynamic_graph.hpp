#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "events.hpp"
#include "types.hpp"

namespace phero {

// Weighted undirected edge. Pheromone values are stored per color *slot*;
// slot order equals color registration order and is owned by DynamicGraph.
struct Edge {
  EdgeId id = 0;
  VertexId u = 0;  // normalized: u < v
  VertexId v = 0;
  double weight = 0.0;
  std::vector<double> pheromone;

  VertexId other(VertexId w) const { return w == u ? v : u; }
};

struct Vertex {
  VertexId id = 0;
  std::vector<EdgeId> incident;
  OptColor color;
  std::uint32_t streak = 0;  // consecutive steps with the current color
};

// Event-sourced dynamic weighted graph. All mutation goes through apply() or
// the named operations below; replaying one event log from empty always
// rebuilds the identical graph, including internal orderings. Ids of removed
// vertices, edges and colors are retired for the rest of the run; re-adding
// one raises duplicate_id.
class DynamicGraph {
public:
  void apply(const GraphEvent& event) {
    std::visit(
        [this](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, AddVertex>) add_vertex(e.vertex);
          else if constexpr (std::is_same_v<T, RemoveVertex>) remove_vertex(e.vertex);
          else if constexpr (std::is_same_v<T, AddEdge>) add_edge(e.edge, e.u, e.v, e.weight);
          else if constexpr (std::is_same_v<T, RemoveEdge>) remove_edge(e.edge);
          else if constexpr (std::is_same_v<T, SetWeight>) set_weight(e.edge, e.weight);
          else if constexpr (std::is_same_v<T, AddColor>) add_color(e.color);
          else if constexpr (std::is_same_v<T, RemoveColor>) remove_color(e.color);
          // Tick carries no graph mutation.
        },
        event);
  }

  void add_vertex(VertexId v) {
    if (vertex_index_.count(v) || retired_vertices_.count(v))
      throw Error(Errc::duplicate_id, "vertex id already used: " + std::to_string(v));
    vertex_index_.emplace(v, vertices_.size());
    vertices_.push_back(Vertex{v, {}, std::nullopt, 0});
  }

  void remove_vertex(VertexId v) {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end())
      throw Error(Errc::unknown_id, "no such vertex: " + std::to_string(v));
    // Cascade: drop every incident edge first.
    std::vector<EdgeId> doomed = vertices_[it->second].incident;
    for (EdgeId e : doomed) remove_edge(e);
    std::size_t pos = vertex_index_.find(v)->second;  // may have moved during cascades
    swap_remove(vertices_, vertex_index_, pos);
    retired_vertices_.insert(v);
  }

  void add_edge(EdgeId e, VertexId u, VertexId v, double weight) {
    if (u == v)
      throw Error(Errc::self_loop, "self loop on vertex " + std::to_string(u));
    if (weight < 0.0)
      throw Error(Errc::negative_weight, "negative weight on edge " + std::to_string(e));
    if (edge_index_.count(e) || retired_edges_.count(e))
      throw Error(Errc::duplicate_id, "edge id already used: " + std::to_string(e));
    auto ui = vertex_index_.find(u);
    auto vi = vertex_index_.find(v);
    if (ui == vertex_index_.end() || vi == vertex_index_.end())
      throw Error(Errc::unknown_id, "edge endpoints must be live: " + std::to_string(e));
    VertexId a = std::min(u, v), b = std::max(u, v);
    auto key = std::make_pair(a, b);
    if (pair_index_.count(key))
      throw Error(Errc::duplicate_id, "endpoint pair already connected: " +
                                          std::to_string(a) + "," + std::to_string(b));
    edge_index_.emplace(e, edges_.size());
    edges_.push_back(Edge{e, a, b, weight, std::vector<double>(colors_.size(), 0.0)});
    pair_index_.emplace(key, e);
    vertices_[ui->second].incident.push_back(e);
    vertices_[vi->second].incident.push_back(e);
  }

  void remove_edge(EdgeId e) {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end())
      throw Error(Errc::unknown_id, "no such edge: " + std::to_string(e));
    const Edge& ed = edges_[it->second];
    auto& iu = vertices_[vertex_index_.at(ed.u)].incident;
    auto& iv = vertices_[vertex_index_.at(ed.v)].incident;
    iu.erase(std::find(iu.begin(), iu.end(), e));
    iv.erase(std::find(iv.begin(), iv.end(), e));
    pair_index_.erase(std::make_pair(ed.u, ed.v));
    swap_remove(edges_, edge_index_, it->second);
    retired_edges_.insert(e);
  }

  void set_weight(EdgeId e, double weight) {
    if (weight < 0.0)
      throw Error(Errc::negative_weight, "negative weight on edge " + std::to_string(e));
    edges_[edge_pos(e)].weight = weight;
  }

  void add_color(ColorId c) {
    if (color_slot_.count(c) || retired_colors_.count(c))
      throw Error(Errc::duplicate_id, "color id already used: " + std::to_string(c));
    color_slot_.emplace(c, colors_.size());
    colors_.push_back(c);
    for (Edge& e : edges_) e.pheromone.push_back(0.0);
  }

  void remove_color(ColorId c) {
    auto it = color_slot_.find(c);
    if (it == color_slot_.end())
      throw Error(Errc::unknown_id, "no such color: " + std::to_string(c));
    std::size_t slot = it->second;
    // Order-preserving erase keeps slot order == registration order.
    for (Edge& e : edges_) e.pheromone.erase(e.pheromone.begin() + slot);
    colors_.erase(colors_.begin() + slot);
    color_slot_.erase(it);
    for (auto& [id, s] : color_slot_)
      if (s > slot) --s;
    for (Vertex& v : vertices_)
      if (v.color == c) {
        v.color.reset();
        v.streak = 0;
      }
    retired_colors_.insert(c);
  }

  // --- queries ---

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t color_count() const { return colors_.size(); }

  bool has_vertex(VertexId v) const { return vertex_index_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edge_index_.count(e) != 0; }
  bool has_color(ColorId c) const { return color_slot_.count(c) != 0; }

  bool has_edge_between(VertexId u, VertexId v) const {
    return pair_index_.count(std::make_pair(std::min(u, v), std::max(u, v))) != 0;
  }

  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const {
    auto it = pair_index_.find(std::make_pair(std::min(u, v), std::max(u, v)));
    if (it == pair_index_.end()) return std::nullopt;
    return it->second;
  }

  const Vertex& vertex(VertexId v) const {
    auto it = vertex_index_.find(v);
    if (it == vertex_index_.end())
      throw Error(Errc::unknown_id, "no such vertex: " + std::to_string(v));
    return vertices_[it->second];
  }

  const Edge& edge(EdgeId e) const { return edges_[edge_pos(e)]; }

  // Live colors in registration order.
  std::span<const ColorId> colors() const { return colors_; }

  std::size_t slot_of(ColorId c) const {
    auto it = color_slot_.find(c);
    if (it == color_slot_.end())
      throw Error(Errc::unknown_id, "no such color: " + std::to_string(c));
    return it->second;
  }

  // Live vertices in internal (mutation-history) order. Deterministic for a
  // given event log, but not sorted.
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }

  VertexId vertex_at(std::size_t idx) const { return vertices_[idx].id; }

  std::vector<VertexId> vertex_ids_sorted() const {
    std::vector<VertexId> ids;
    ids.reserve(vertices_.size());
    for (const Vertex& v : vertices_) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  std::vector<EdgeId> edge_ids_sorted() const {
    std::vector<EdgeId> ids;
    ids.reserve(edges_.size());
    for (const Edge& e : edges_) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  double pheromone(EdgeId e, ColorId c) const {
    return edges_[edge_pos(e)].pheromone[slot_of(c)];
  }

  // (own, foreign) pheromone on one edge for color c.
  std::pair<double, double> pheromone_split(EdgeId e, ColorId c) const {
    const Edge& ed = edges_[edge_pos(e)];
    std::size_t slot = slot_of(c);
    double own = 0.0, foreign = 0.0;
    for (std::size_t s = 0; s < ed.pheromone.size(); ++s) {
      if (s == slot) own = ed.pheromone[s];
      else foreign += ed.pheromone[s];
    }
    return {own, foreign};
  }

  // Sum of color-c pheromone over the edges incident to v; 0 when isolated.
  double incident_pheromone(VertexId v, ColorId c) const {
    const Vertex& vx = vertex(v);
    std::size_t slot = slot_of(c);
    double sum = 0.0;
    for (EdgeId e : vx.incident) sum += edges_[edge_index_.at(e)].pheromone[slot];
    return sum;
  }

  // Per-slot incident pheromone sums in one pass; out is resized to the
  // number of live colors.
  void incident_sums(VertexId v, std::vector<double>& out) const {
    const Vertex& vx = vertex(v);
    out.assign(colors_.size(), 0.0);
    for (EdgeId e : vx.incident) {
      const Edge& ed = edges_[edge_index_.at(e)];
      for (std::size_t s = 0; s < out.size(); ++s) out[s] += ed.pheromone[s];
    }
  }

  // --- engine-side mutation ---

  void deposit(EdgeId e, ColorId c, double amount) {
    if (amount < 0.0)
      throw Error(Errc::negative_weight, "negative pheromone deposit");
    edges_[edge_pos(e)].pheromone[slot_of(c)] += amount;
  }

  // phi <- factor * phi, truncated to exactly 0 below `floor`.
  void decay_pheromone(double factor, double floor) {
    for (Edge& e : edges_)
      for (double& phi : e.pheromone) {
        phi *= factor;
        if (phi < floor) phi = 0.0;
      }
  }

  void set_color_state(VertexId v, OptColor color, std::uint32_t streak) {
    Vertex& vx = vertices_[vertex_index_.at(v)];
    vx.color = color;
    vx.streak = streak;
  }

private:
  struct PairHash {
    std::size_t operator()(const std::pair<VertexId, VertexId>& p) const {
      std::uint64_t h = p.first * 0x9E3779B97F4A7C15ull;
      h ^= p.second + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  std::size_t edge_pos(EdgeId e) const {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end())
      throw Error(Errc::unknown_id, "no such edge: " + std::to_string(e));
    return it->second;
  }

  template <class T, class Map>
  static void swap_remove(std::vector<T>& store, Map& index, std::size_t pos) {
    index.erase(store[pos].id);
    if (pos + 1 != store.size()) {
      store[pos] = std::move(store.back());
      index[store[pos].id] = pos;
    }
    store.pop_back();
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<ColorId> colors_;  // registration order
  std::unordered_map<VertexId, std::size_t> vertex_index_;
  std::unordered_map<EdgeId, std::size_t> edge_index_;
  std::unordered_map<ColorId, std::size_t> color_slot_;
  std::unordered_map<std::pair<VertexId, VertexId>, EdgeId, PairHash> pair_index_;
  std::unordered_set<VertexId> retired_vertices_;
  std::unordered_set<EdgeId> retired_edges_;
  std::unordered_set<ColorId> retired_colors_;
};

}  // namespace phero
