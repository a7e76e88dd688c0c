#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "metrics.hpp"
#include "simulation.hpp"
#include "snapshot.hpp"
#include "trace.hpp"
#include "types.hpp"
#include "workloads.hpp"

namespace phero {

// Metrics CSV: one row per executed step, 6-decimal fixed formatting.
inline const char* metrics_csv_header() {
  return "step,cut_ratio,balance,stability,score,moves_advised";
}

inline std::string format_metrics_row(const MetricsRecord& m, std::size_t moves_advised) {
  return std::to_string(m.step) + ',' + format_real(m.cut_ratio) + ',' +
         format_real(m.balance) + ',' + format_real(m.stability) + ',' +
         format_real(m.score) + ',' + std::to_string(moves_advised);
}

struct MetricsRow {
  MetricsRecord record;
  std::uint64_t moves_advised = 0;
};

inline std::vector<MetricsRow> parse_metrics_csv(std::istream& in) {
  std::vector<MetricsRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != metrics_csv_header())
        throw Error(Errc::syntax, "unexpected CSV header", line_no);
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view sv = line;
    while (true) {
      auto comma = sv.find(',');
      fields.push_back(sv.substr(0, comma));
      if (comma == std::string_view::npos) break;
      sv = sv.substr(comma + 1);
    }
    if (fields.size() != 6)
      throw Error(Errc::syntax, "line " + std::to_string(line_no) + ": expected 6 fields",
                  line_no);
    MetricsRow row;
    row.record.step = detail::parse_id(fields[0], line_no);
    row.record.cut_ratio = detail::parse_real(fields[1], line_no);
    row.record.balance = detail::parse_real(fields[2], line_no);
    row.record.stability = detail::parse_real(fields[3], line_no);
    row.record.score = detail::parse_real(fields[4], line_no);
    row.moves_advised = detail::parse_id(fields[5], line_no);
    rows.push_back(row);
  }
  return rows;
}

// Advice log: one 'M <step> <vertex> <from-resource> <to-resource>' line per move.
inline void write_advice(std::ostream& out, const MigrationAdvice& advice) {
  for (const Move& m : advice.moves)
    out << "M " << advice.step << ' ' << m.vertex << ' ' << m.from << ' ' << m.to << '\n';
}

struct AdviceLine {
  std::uint64_t step = 0;
  Move move;
};

inline std::vector<AdviceLine> parse_advice_log(std::istream& in) {
  std::vector<AdviceLine> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] != "M" || toks.size() != 5)
      throw Error(Errc::syntax,
                  "line " + std::to_string(line_no) + ": expected 'M <step> <v> <from> <to>'",
                  line_no);
    AdviceLine al;
    al.step = detail::parse_id(toks[1], line_no);
    al.move.vertex = detail::parse_id(toks[2], line_no);
    al.move.from = detail::parse_id(toks[3], line_no);
    al.move.to = detail::parse_id(toks[4], line_no);
    lines.push_back(al);
  }
  return lines;
}

// Resolves the configured input into a concrete event stream.
inline std::vector<GraphEvent> load_events(const RunConfig& cfg) {
  if (!cfg.trace.empty()) {
    std::ifstream in(cfg.trace);
    if (!in) throw Error(Errc::io, "cannot read trace: " + cfg.trace);
    return parse_trace(in);
  }
  if (cfg.gen_kind == "communities") {
    CommunitySpec spec = cfg.communities;
    spec.seed = cfg.seed;
    Workload w = gen_communities(spec);
    // The generator closes setup with one tick; pad to the requested length.
    std::uint64_t ticks = 0;
    for (const GraphEvent& e : w.events) ticks += is_tick(e) ? 1 : 0;
    while (ticks++ < cfg.max_steps) w.events.push_back(Tick{});
    return std::move(w.events);
  }
  FlockSpec spec = cfg.flocking;
  spec.seed = cfg.seed;
  spec.duration = cfg.max_steps;
  return std::move(gen_flocking(spec).events);
}

inline std::string snapshot_path(const std::string& dir, std::uint64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%08llu.snap", static_cast<unsigned long long>(step));
  return (std::filesystem::path(dir) / buf).string();
}

// Full run loop: replay events, step at each tick, stream metrics rows,
// advice lines and periodic snapshots. Returns the number of executed steps.
inline std::uint64_t run(const RunConfig& cfg) {
  cfg.validate();
  std::vector<GraphEvent> events = load_events(cfg);

  std::ofstream csv(cfg.metrics_csv);
  if (!csv) throw Error(Errc::io, "cannot write metrics csv: " + cfg.metrics_csv);
  csv << metrics_csv_header() << '\n';

  std::ofstream advice(cfg.advice_log);
  if (!advice) throw Error(Errc::io, "cannot write advice log: " + cfg.advice_log);

  bool snapshots = cfg.snapshot_every > 0 && !cfg.snapshot_dir.empty();
  if (snapshots) std::filesystem::create_directories(cfg.snapshot_dir);

  Simulation sim(cfg.params, cfg.seed, cfg.hysteresis, cfg.lambda);
  std::uint64_t steps = 0;
  for (const GraphEvent& e : events) {
    if (!is_tick(e)) {
      sim.apply(e);
      continue;
    }
    if (steps == cfg.max_steps) break;
    StepOutput out = sim.step();
    ++steps;
    csv << format_metrics_row(out.metrics, out.advice.moves.size()) << '\n';
    write_advice(advice, out.advice);
    if (snapshots && steps % cfg.snapshot_every == 0)
      export_snapshot(snapshot_path(cfg.snapshot_dir, steps), sim.graph(), steps);
  }
  csv.flush();
  advice.flush();
  if (!csv || !advice) throw Error(Errc::io, "output write failed");
  return steps;
}

struct EvalReport {
  std::uint64_t step = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t live_colors = 0;
  double cut_ratio = 0.0;
  double balance = 0.0;
  double score = 0.0;
  std::optional<OptimumResult> oracle;  // present when the graph fits the oracle
};

// Replays a trace up to the snapshot's step, scores the snapshot's coloring
// against that graph, and runs the exhaustive oracle when it fits.
inline EvalReport evaluate_snapshot(const std::vector<GraphEvent>& events,
                                    const Snapshot& snap, double lambda = 0.5) {
  DynamicGraph g;
  std::uint64_t ticks = 0;
  for (const GraphEvent& e : events) {
    if (is_tick(e)) {
      if (ticks == snap.step) break;
      ++ticks;
      continue;
    }
    if (ticks >= snap.step && snap.step > 0) break;
    g.apply(e);
  }
  EvalReport report;
  report.step = snap.step;
  report.vertices = g.vertex_count();
  report.edges = g.edge_count();
  report.live_colors = g.color_count();
  Assignment a = snap.assignment();
  report.cut_ratio = cut_ratio(g, a);
  report.balance = balance(a, g.color_count());
  report.score = score(report.cut_ratio, report.balance, lambda);
  if (g.vertex_count() <= 12 && g.color_count() >= 1)
    report.oracle = brute_force_optimum(g, g.color_count(), lambda);
  return report;
}

}  // namespace phero
