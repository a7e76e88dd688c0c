#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phero {

// Opaque identifiers. Producers own id allocation; the engine only checks
// uniqueness and never recycles an id that has been retired within a run.
using VertexId = std::uint64_t;
using EdgeId = std::uint64_t;
using ColorId = std::uint64_t;
using ResourceId = std::uint64_t;

// A vertex with no pheromone evidence yet carries no color.
using OptColor = std::optional<ColorId>;

enum class Errc {
  unknown_id,
  duplicate_id,
  self_loop,
  negative_weight,
  empty_graph,
  too_large,
  no_live_resources,
  syntax,
  bad_spec,
  bad_schedule,
  io,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unknown_id: return "unknown_id";
    case Errc::duplicate_id: return "duplicate_id";
    case Errc::self_loop: return "self_loop";
    case Errc::negative_weight: return "negative_weight";
    case Errc::empty_graph: return "empty_graph";
    case Errc::too_large: return "too_large";
    case Errc::no_live_resources: return "no_live_resources";
    case Errc::syntax: return "syntax";
    case Errc::bad_spec: return "bad_spec";
    case Errc::bad_schedule: return "bad_schedule";
    case Errc::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg, std::size_t line = 0)
      : std::runtime_error(msg), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  // 1-based source line for parse errors, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

private:
  Errc code_;
  std::size_t line_;
};

// Per-vertex verdict of one engine step: the dominant color and how many
// consecutive steps the vertex has held it (0 while unassigned).
struct AssignmentEntry {
  VertexId vertex = 0;
  OptColor color;
  std::uint32_t streak = 0;
};

// Covers exactly the live vertices, sorted by vertex id.
using Assignment = std::vector<AssignmentEntry>;

inline const AssignmentEntry* find_entry(const Assignment& a, VertexId v) {
  auto it = std::lower_bound(a.begin(), a.end(), v,
                             [](const AssignmentEntry& e, VertexId id) { return e.vertex < id; });
  if (it == a.end() || it->vertex != v) return nullptr;
  return &*it;
}

}  // namespace phero
