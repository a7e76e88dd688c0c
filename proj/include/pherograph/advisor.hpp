#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "types.hpp"

namespace phero {

struct Move {
  VertexId vertex = 0;
  ResourceId from = 0;
  ResourceId to = 0;
  bool operator==(const Move&) const = default;
};

struct MigrationAdvice {
  std::uint64_t step = 0;
  std::vector<Move> moves;  // at most one entry per vertex, from != to
};

// Stable ColorId -> ResourceId bijection. Resources are minted sequentially
// and never reused, so a returning workload color gets a fresh resource.
struct ResourceBinding {
  std::unordered_map<ColorId, ResourceId> map;
  ResourceId next_resource = 0;
};

// Existing pairs survive, new colors (in the given order) get fresh
// resources, dead colors release theirs.
inline void bind_resources(std::span<const ColorId> live, ResourceBinding& binding) {
  for (auto it = binding.map.begin(); it != binding.map.end();) {
    bool alive = std::find(live.begin(), live.end(), it->first) != live.end();
    it = alive ? std::next(it) : binding.map.erase(it);
  }
  for (ColorId c : live)
    if (!binding.map.count(c)) binding.map.emplace(c, binding.next_resource++);
}

// Turns the evolving assignment into migration advice with hysteresis:
// a vertex is told to move only after holding its color for h consecutive
// steps, and the placement is updated as if the advice were followed.
class Advisor {
public:
  explicit Advisor(std::uint32_t hysteresis = 5) : h_(hysteresis) {
    if (h_ < 1) throw Error(Errc::bad_spec, "hysteresis must be >= 1");
  }

  std::uint32_t hysteresis() const { return h_; }
  const ResourceBinding& binding() const { return binding_; }
  const std::unordered_map<VertexId, ResourceId>& placement() const { return placement_; }

  MigrationAdvice advise(std::uint64_t step, const Assignment& assignment,
                         std::span<const ColorId> live_colors) {
    if (live_colors.empty())
      throw Error(Errc::no_live_resources, "advice requested with zero live colors");
    bind_resources(live_colors, binding_);

    // Placement covers exactly the live vertices.
    for (auto it = placement_.begin(); it != placement_.end();)
      it = find_entry(assignment, it->first) ? std::next(it) : placement_.erase(it);

    // Load per live resource, in resource-id order for deterministic
    // least-loaded ties.
    std::vector<std::pair<ResourceId, std::size_t>> load;
    load.reserve(binding_.map.size());
    for (const auto& [c, r] : binding_.map) load.emplace_back(r, 0);
    std::sort(load.begin(), load.end());
    auto bump = [&](ResourceId r, std::ptrdiff_t delta) {
      auto it = std::lower_bound(load.begin(), load.end(), r,
                                 [](const auto& p, ResourceId id) { return p.first < id; });
      if (it != load.end() && it->first == r)
        it->second = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(it->second) + delta);
    };
    for (const auto& [v, r] : placement_) bump(r, 1);

    MigrationAdvice advice{step, {}};
    for (const AssignmentEntry& entry : assignment) {
      auto placed = placement_.find(entry.vertex);
      if (entry.color) {
        ResourceId target = binding_.map.at(*entry.color);
        if (placed == placement_.end()) {
          // Initial placement follows the color; not a migration.
          placement_.emplace(entry.vertex, target);
          bump(target, 1);
        } else if (placed->second != target && entry.streak >= h_) {
          advice.moves.push_back({entry.vertex, placed->second, target});
          bump(placed->second, -1);
          bump(target, 1);
          placed->second = target;
        }
      } else if (placed == placement_.end()) {
        // No evidence yet: least-loaded resource, ties to the lowest id.
        auto least = std::min_element(load.begin(), load.end(),
                                      [](const auto& a, const auto& b) {
                                        return a.second < b.second ||
                                               (a.second == b.second && a.first < b.first);
                                      });
        placement_.emplace(entry.vertex, least->first);
        ++least->second;
      }
      // Unassigned but previously placed: keep the placement.
    }
    return advice;
  }

private:
  std::uint32_t h_;
  ResourceBinding binding_;
  std::unordered_map<VertexId, ResourceId> placement_;
};

}  // namespace phero
