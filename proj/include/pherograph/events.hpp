#pragma once

#include <variant>

#include "types.hpp"

namespace phero {

// Graph mutations arrive as an ordered event stream; a Tick closes one batch
// of mutations and triggers one engine step.

struct AddVertex {
  VertexId vertex;
  bool operator==(const AddVertex&) const = default;
};

struct RemoveVertex {
  VertexId vertex;
  bool operator==(const RemoveVertex&) const = default;
};

struct AddEdge {
  EdgeId edge;
  VertexId u;
  VertexId v;
  double weight;
  bool operator==(const AddEdge&) const = default;
};

struct RemoveEdge {
  EdgeId edge;
  bool operator==(const RemoveEdge&) const = default;
};

struct SetWeight {
  EdgeId edge;
  double weight;
  bool operator==(const SetWeight&) const = default;
};

struct AddColor {
  ColorId color;
  bool operator==(const AddColor&) const = default;
};

struct RemoveColor {
  ColorId color;
  bool operator==(const RemoveColor&) const = default;
};

struct Tick {
  bool operator==(const Tick&) const = default;
};

using GraphEvent = std::variant<AddVertex, RemoveVertex, AddEdge, RemoveEdge,
                                SetWeight, AddColor, RemoveColor, Tick>;

inline bool is_tick(const GraphEvent& e) {
  return std::holds_alternative<Tick>(e);
}

}  // namespace phero
