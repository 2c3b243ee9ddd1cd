// Instance file parsing/serialization, result JSON, and SVG rendering.
//
// Instance files are line-oriented:
//   # comment
//   L <a> <b> [mult]     non-vertical line y = a*x + b
//   V <x0> [mult]        vertical line x = x0
// Rationals are "p/q", integers, or finite decimals (parsed exactly).

#pragma once

#include <string>
#include <variant>

#include "arrmax/coincide.hpp"
#include "arrmax/solver.hpp"
#include "arrmax/testbed.hpp"
#include "arrmax/toplevels.hpp"

namespace arrmax {

struct ParseFailure {
  int line = 0;
  std::string message;
};

std::variant<Instance, ParseFailure> parse_instance(std::string_view text);

std::string format_instance(const Instance& inst);

struct SolveMeta {
  long n = 0;
  std::string mode;            // "distinct" | "coincide"
  std::string search;          // "binary" | "exponential" | "" (null)
  std::vector<std::pair<std::string, double>> timings_ms;
  bool include_timings = false;
};

std::string result_to_json(const MaxLevelResult& res, const SolveMeta& meta);
std::string oracle_to_json(const OracleResult& res, long n);

// De-perturbed level chain as a JSON polyline; ids are original input ids.
std::string chain_to_json(const LevelChain& chain, const DedupView& dd, bool upper);

struct PlotOptions {
  bool mark_max = false;
  const MaxLevelResult* result = nullptr;
  const LevelChain* chain = nullptr;  // optional highlighted level
  const DedupView* chain_dd = nullptr;
};

std::string svg_plot(const Instance& inst, const PlotOptions& opt);

}  // namespace arrmax
