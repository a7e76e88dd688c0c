#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dynamic_graph.hpp"
#include "trace.hpp"
#include "types.hpp"

namespace phero {

// Plain-text colored snapshot:
//   # step <n>
//   V <id> <color-or-UNASSIGNED>          (sorted by vertex id)
//   E <id> <u> <v> <weight> <dominant-pheromone-color-or-UNASSIGNED>
// Stable ordering makes equal states produce identical bytes.

inline void export_snapshot(std::ostream& out, const DynamicGraph& g, std::uint64_t step) {
  out << "# step " << step << '\n';
  for (VertexId v : g.vertex_ids_sorted()) {
    const Vertex& vx = g.vertex(v);
    out << "V " << v << ' ';
    if (vx.color) out << *vx.color;
    else out << "UNASSIGNED";
    out << '\n';
  }
  for (EdgeId id : g.edge_ids_sorted()) {
    const Edge& e = g.edge(id);
    out << "E " << id << ' ' << e.u << ' ' << e.v << ' ' << format_real(e.weight) << ' ';
    double best = 0.0;
    std::size_t best_slot = e.pheromone.size();
    for (std::size_t s = 0; s < e.pheromone.size(); ++s)
      if (e.pheromone[s] > best) {
        best = e.pheromone[s];
        best_slot = s;
      }
    if (best_slot < e.pheromone.size()) out << g.colors()[best_slot];
    else out << "UNASSIGNED";
    out << '\n';
  }
}

inline void export_snapshot(const std::string& path, const DynamicGraph& g,
                            std::uint64_t step) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write snapshot: " + path);
  export_snapshot(out, g, step);
  if (!out) throw Error(Errc::io, "write failed: " + path);
}

struct SnapshotEdge {
  EdgeId id = 0;
  VertexId u = 0;
  VertexId v = 0;
  double weight = 0.0;
  OptColor dominant;
};

struct Snapshot {
  std::uint64_t step = 0;
  std::vector<std::pair<VertexId, OptColor>> vertices;
  std::vector<SnapshotEdge> edges;

  Assignment assignment() const {
    Assignment a;
    a.reserve(vertices.size());
    for (const auto& [v, c] : vertices) a.push_back({v, c, 0});
    return a;
  }
};

inline Snapshot parse_snapshot(std::istream& in) {
  Snapshot snap;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (!saw_header) {
      if (toks.size() != 3 || toks[0] != "#" || toks[1] != "step")
        throw Error(Errc::syntax, "line " + std::to_string(line_no) + ": expected '# step <n>'",
                    line_no);
      snap.step = detail::parse_id(toks[2], line_no);
      saw_header = true;
      continue;
    }
    if (toks[0] == "V") {
      detail::expect_arity(toks, 3, line_no);
      OptColor c;
      if (toks[2] != "UNASSIGNED") c = detail::parse_id(toks[2], line_no);
      snap.vertices.emplace_back(detail::parse_id(toks[1], line_no), c);
    } else if (toks[0] == "E") {
      detail::expect_arity(toks, 6, line_no);
      SnapshotEdge e;
      e.id = detail::parse_id(toks[1], line_no);
      e.u = detail::parse_id(toks[2], line_no);
      e.v = detail::parse_id(toks[3], line_no);
      e.weight = detail::parse_real(toks[4], line_no);
      if (toks[5] != "UNASSIGNED") e.dominant = detail::parse_id(toks[5], line_no);
      snap.edges.push_back(e);
    } else {
      throw Error(Errc::syntax,
                  "line " + std::to_string(line_no) + ": unknown snapshot row '" +
                      std::string(toks[0]) + "'",
                  line_no);
    }
  }
  if (!saw_header) throw Error(Errc::syntax, "snapshot is missing its '# step' header");
  return snap;
}

inline Snapshot parse_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read snapshot: " + path);
  return parse_snapshot(in);
}

}  // namespace phero
