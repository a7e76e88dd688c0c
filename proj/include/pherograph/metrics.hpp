#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynamic_graph.hpp"
#include "types.hpp"

namespace phero {

struct MetricsRecord {
  std::uint64_t step = 0;
  double cut_ratio = 0.0;
  double balance = 0.0;
  double stability = 1.0;
  double score = 0.0;
};

// Fraction of total edge weight whose endpoints land on different colors.
// An unassigned endpoint counts as different from everything, including
// another unassigned endpoint. 0 by convention when there is no weight.
inline double cut_ratio(const DynamicGraph& g) {
  double total = 0.0, cut = 0.0;
  for (const Edge& e : g.edges()) {
    total += e.weight;
    const OptColor& cu = g.vertex(e.u).color;
    const OptColor& cv = g.vertex(e.v).color;
    if (!cu || !cv || *cu != *cv) cut += e.weight;
  }
  return total > 0.0 ? cut / total : 0.0;
}

// Same metric against an external assignment instead of the stored colors.
inline double cut_ratio(const DynamicGraph& g, const Assignment& a) {
  double total = 0.0, cut = 0.0;
  for (const Edge& e : g.edges()) {
    total += e.weight;
    const AssignmentEntry* eu = find_entry(a, e.u);
    const AssignmentEntry* ev = find_entry(a, e.v);
    bool joined = eu && ev && eu->color && ev->color && *eu->color == *ev->color;
    if (!joined) cut += e.weight;
  }
  return total > 0.0 ? cut / total : 0.0;
}

// (n/K) / max_c n_c over assigned vertices; 1 at perfect balance, 0 when
// nothing is assigned or no colors are live.
inline double balance(const Assignment& a, std::size_t live_colors) {
  if (live_colors == 0) return 0.0;
  std::unordered_map<ColorId, std::size_t> counts;
  std::size_t assigned = 0;
  for (const AssignmentEntry& e : a)
    if (e.color) {
      ++counts[*e.color];
      ++assigned;
    }
  if (assigned == 0) return 0.0;
  std::size_t largest = 0;
  for (const auto& [c, n] : counts) largest = std::max(largest, n);
  double ideal = static_cast<double>(assigned) / static_cast<double>(live_colors);
  return ideal / static_cast<double>(largest);
}

// Fraction of vertices present in both assignments whose color is unchanged;
// 1 when the vertex sets are disjoint.
inline double stability(const Assignment& now, const Assignment& prev) {
  std::size_t common = 0, same = 0;
  std::size_t i = 0, j = 0;
  while (i < now.size() && j < prev.size()) {
    if (now[i].vertex < prev[j].vertex) ++i;
    else if (prev[j].vertex < now[i].vertex) ++j;
    else {
      ++common;
      if (now[i].color == prev[j].color) ++same;
      ++i;
      ++j;
    }
  }
  return common == 0 ? 1.0 : static_cast<double>(same) / static_cast<double>(common);
}

// lambda * (1 - cut) + (1 - lambda) * balance; higher is better.
inline double score(double cut_ratio, double balance, double lambda = 0.5) {
  return lambda * (1.0 - cut_ratio) + (1.0 - lambda) * balance;
}

struct OptimumResult {
  double score = 0.0;
  double cut_ratio = 0.0;
  double balance = 0.0;
  // Colors are abstract indices 0..k-1 over the live vertices, sorted by id.
  std::vector<std::pair<VertexId, ColorId>> assignment;
};

// Exhaustive K^|V| search for the best-scoring assignment. The witness is the
// lexicographically smallest optimum over vertices in ascending id order.
// Desk-scale oracle: refuses graphs with more than 12 vertices.
inline OptimumResult brute_force_optimum(const DynamicGraph& g, std::size_t k,
                                         double lambda = 0.5) {
  if (g.vertex_count() > 12)
    throw Error(Errc::too_large, "brute force oracle is capped at 12 vertices");
  if (k == 0) throw Error(Errc::bad_spec, "need at least one color");

  std::vector<VertexId> ids = g.vertex_ids_sorted();
  const std::size_t n = ids.size();
  std::unordered_map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(ids[i], i);

  struct Link {
    std::size_t u, v;
    double w;
  };
  std::vector<Link> links;
  double total_weight = 0.0;
  for (const Edge& e : g.edges()) {
    links.push_back({pos.at(e.u), pos.at(e.v), e.weight});
    total_weight += e.weight;
  }

  std::vector<std::size_t> digits(n, 0);
  std::vector<std::size_t> counts(k, 0);
  OptimumResult best;
  best.score = -1.0;

  while (true) {
    counts.assign(k, 0);
    for (std::size_t d : digits) ++counts[d];
    double cut = 0.0;
    for (const Link& l : links)
      if (digits[l.u] != digits[l.v]) cut += l.w;
    double cr = total_weight > 0.0 ? cut / total_weight : 0.0;
    std::size_t largest = *std::max_element(counts.begin(), counts.end());
    double bal = n == 0 ? 0.0
                        : (static_cast<double>(n) / static_cast<double>(k)) /
                              static_cast<double>(largest);
    double sc = score(cr, bal, lambda);
    if (sc > best.score) {
      best.score = sc;
      best.cut_ratio = cr;
      best.balance = bal;
      best.assignment.clear();
      for (std::size_t i = 0; i < n; ++i)
        best.assignment.emplace_back(ids[i], static_cast<ColorId>(digits[i]));
    }
    // Odometer with the last digit fastest: visits assignments in
    // lexicographic order, so the first strict maximum is the witness.
    std::size_t i = n;
    while (i > 0) {
      if (++digits[i - 1] < k) break;
      digits[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return best;
}

}  // namespace phero
