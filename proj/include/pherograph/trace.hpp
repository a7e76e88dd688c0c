#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "events.hpp"
#include "types.hpp"
#include "workloads.hpp"

namespace phero {

// Trace grammar, one directive per line, '#' starts a comment:
//   AV v | RV v | AE e u v w | RE e | CE e w | AC c | RC c | ST
// Malformed lines are syntax errors with a 1-based line number; semantic
// problems (unknown ids, negative weights, ...) surface later when the event
// is applied.

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw Error(Errc::syntax, "line " + std::to_string(line_no) + ": bad id '" +
                                  std::string(tok) + "'",
                line_no);
  return value;
}

inline double parse_real(std::string_view tok, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw Error(Errc::syntax, "line " + std::to_string(line_no) + ": bad number '" +
                                  std::string(tok) + "'",
                line_no);
  return value;
}

inline void expect_arity(const std::vector<std::string_view>& toks, std::size_t want,
                         std::size_t line_no) {
  if (toks.size() != want)
    throw Error(Errc::syntax,
                "line " + std::to_string(line_no) + ": '" + std::string(toks[0]) +
                    "' takes " + std::to_string(want - 1) + " argument(s)",
                line_no);
}

}  // namespace detail

// Fixed 6-decimal weight formatting; shared by every emitted file so that
// identical runs stay byte-identical.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::vector<GraphEvent> parse_trace(std::istream& in) {
  std::vector<GraphEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    auto toks = detail::tokenize(sv);
    if (toks.empty()) continue;
    std::string_view d = toks[0];
    if (d == "AV") {
      detail::expect_arity(toks, 2, line_no);
      events.push_back(AddVertex{detail::parse_id(toks[1], line_no)});
    } else if (d == "RV") {
      detail::expect_arity(toks, 2, line_no);
      events.push_back(RemoveVertex{detail::parse_id(toks[1], line_no)});
    } else if (d == "AE") {
      detail::expect_arity(toks, 5, line_no);
      events.push_back(AddEdge{detail::parse_id(toks[1], line_no),
                               detail::parse_id(toks[2], line_no),
                               detail::parse_id(toks[3], line_no),
                               detail::parse_real(toks[4], line_no)});
    } else if (d == "RE") {
      detail::expect_arity(toks, 2, line_no);
      events.push_back(RemoveEdge{detail::parse_id(toks[1], line_no)});
    } else if (d == "CE") {
      detail::expect_arity(toks, 3, line_no);
      events.push_back(SetWeight{detail::parse_id(toks[1], line_no),
                                 detail::parse_real(toks[2], line_no)});
    } else if (d == "AC") {
      detail::expect_arity(toks, 2, line_no);
      events.push_back(AddColor{detail::parse_id(toks[1], line_no)});
    } else if (d == "RC") {
      detail::expect_arity(toks, 2, line_no);
      events.push_back(RemoveColor{detail::parse_id(toks[1], line_no)});
    } else if (d == "ST") {
      detail::expect_arity(toks, 1, line_no);
      events.push_back(Tick{});
    } else {
      throw Error(Errc::syntax,
                  "line " + std::to_string(line_no) + ": unknown directive '" +
                      std::string(d) + "'",
                  line_no);
    }
  }
  return events;
}

inline void format_event(std::ostream& out, const GraphEvent& event) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, AddVertex>) out << "AV " << e.vertex;
        else if constexpr (std::is_same_v<T, RemoveVertex>) out << "RV " << e.vertex;
        else if constexpr (std::is_same_v<T, AddEdge>)
          out << "AE " << e.edge << ' ' << e.u << ' ' << e.v << ' ' << format_real(e.weight);
        else if constexpr (std::is_same_v<T, RemoveEdge>) out << "RE " << e.edge;
        else if constexpr (std::is_same_v<T, SetWeight>)
          out << "CE " << e.edge << ' ' << format_real(e.weight);
        else if constexpr (std::is_same_v<T, AddColor>) out << "AC " << e.color;
        else if constexpr (std::is_same_v<T, RemoveColor>) out << "RC " << e.color;
        else out << "ST";
      },
      event);
  out << '\n';
}

inline void write_trace(std::ostream& out, std::span<const GraphEvent> events) {
  for (const GraphEvent& e : events) format_event(out, e);
}

// Ground-truth sidecar: one '<vertex-id> <community-label>' line per vertex.
inline void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  for (const auto& [v, label] : truth.labels) out << v << ' ' << label << '\n';
}

inline GroundTruth parse_ground_truth(std::istream& in) {
  GroundTruth truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    auto toks = detail::tokenize(sv);
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw Error(Errc::syntax, "line " + std::to_string(line_no) + ": expected '<id> <label>'",
                  line_no);
    truth.labels.emplace_back(detail::parse_id(toks[0], line_no),
                              static_cast<std::uint32_t>(detail::parse_id(toks[1], line_no)));
  }
  return truth;
}

}  // namespace phero
