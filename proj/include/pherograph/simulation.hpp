#pragma once

#include <cstdint>
#include <utility>

#include "advisor.hpp"
#include "colony.hpp"
#include "dynamic_graph.hpp"
#include "events.hpp"
#include "metrics.hpp"
#include "types.hpp"

namespace phero {

struct StepOutput {
  std::uint64_t step = 0;
  Assignment assignment;
  MetricsRecord metrics;
  MigrationAdvice advice;
  bool advised = false;  // false when no resources were live to advise for
};

// One simulation instance: graph, colonies, advisor and per-step metrics,
// wired in the canonical order. Single-threaded by contract.
class Simulation {
public:
  Simulation() : Simulation(ColonyParams{}, 0, 5, 0.5) {}

  Simulation(const ColonyParams& params, std::uint64_t seed, std::uint32_t hysteresis,
             double lambda)
      : engine_(params, seed), advisor_(hysteresis), lambda_(lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw Error(Errc::bad_spec, "lambda must be in [0,1]");
  }

  DynamicGraph& graph() { return graph_; }
  const DynamicGraph& graph() const { return graph_; }
  Engine& engine() { return engine_; }
  Advisor& advisor() { return advisor_; }
  double lambda() const { return lambda_; }
  std::uint64_t steps_done() const { return step_count_; }
  const Assignment& last_assignment() const { return prev_; }

  // Non-tick events mutate the graph; a tick is executed via step().
  void apply(const GraphEvent& event) {
    if (is_tick(event)) {
      step();
      return;
    }
    graph_.apply(event);
  }

  StepOutput step() {
    StepOutput out;
    out.step = ++step_count_;
    out.assignment = engine_.step(graph_);
    out.metrics.step = out.step;
    out.metrics.cut_ratio = cut_ratio(graph_);
    out.metrics.balance = balance(out.assignment, graph_.color_count());
    out.metrics.stability = stability(out.assignment, prev_);
    out.metrics.score = score(out.metrics.cut_ratio, out.metrics.balance, lambda_);
    out.advice.step = out.step;
    if (graph_.color_count() > 0) {
      out.advice = advisor_.advise(out.step, out.assignment, graph_.colors());
      out.advised = true;
    }
    prev_ = out.assignment;
    return out;
  }

private:
  DynamicGraph graph_;
  Engine engine_;
  Advisor advisor_;
  double lambda_;
  Assignment prev_;
  std::uint64_t step_count_ = 0;
};

}  // namespace phero
