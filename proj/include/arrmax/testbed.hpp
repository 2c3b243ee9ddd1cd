// Independent brute-force oracle, instance generators, and the weighted
// k-level measurement. The oracle shares nothing with the solvers: it
// enumerates pairwise intersections and counts below/above/through
// directly, in quadratic-to-cubic time.

#pragma once

#include <cstdint>

#include "arrmax/core.hpp"

namespace arrmax {

struct OracleVertex {
  Point p;
  long level = 0;
  long upper = 0;
  int degree = 0;
};

struct OracleResult {
  bool has_vertices = false;
  long max_level = 0;
  std::vector<OracleVertex> max_vertices;  // sorted by (x, y)
  std::vector<OracleVertex> all;           // every arrangement vertex considered
};

// cap: refuse instances with more than `cap` input copies (0 = no cap).
OracleResult brute_force(const Instance& inst, long cap = 1500);

struct LowerBoundExpect {
  long n = 0;
  long max_level = 0;
  std::vector<Point> max_vertices;  // odd-index parabola points and mirrors
  Point pm, pm_neg;
  long pm_level = 0;
};

// The logarithmic lower-bound construction: dyadic chords of y = x^2 over
// 2^t+1 parabola points per side plus two extra cone lines at each end.
std::pair<Instance, LowerBoundExpect> gen_lower_bound(int t);

struct GenBias {
  double concurrent = 0;
  double parallel = 0;
  double duplicate = 0;
};

// Reproducible random instance. With all biases zero the lines are tangent
// to a parabola at distinct abscissas, which forces general position.
Instance gen_random(int n, std::uint64_t seed, GenBias bias = {});

// A single-vertex-envelope shape: a pencil through one point plus `low`
// lines far below it. With parallel_k true the non-pencil lines all share
// one slope matching a pencil line (the awkward sub-case of the reduction).
Instance gen_case_ii(int pencil, int low, std::uint64_t seed, bool parallel_k = false);

struct WeightedStats {
  int k = 0;
  long vertex_count = 0;  // |L_k|
  long weighted = 0;      // omega(L_k): sum of vertex degrees
  long n = 0;
};

// Weighted complexity of the (lower) k-level of a distinct-lines instance.
WeightedStats weighted_level_stats(const Instance& inst, int k);

}  // namespace arrmax
