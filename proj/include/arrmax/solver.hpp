// The distinct-lines solver: Case (i)/(ii) dispatch, the Case (ii)
// reduction, detached-vertex detection over the top-k region, and merging
// of vertical-line candidates.

#pragma once

#include <optional>
#include <span>

#include "arrmax/envelope.hpp"
#include "arrmax/toplevels.hpp"

namespace arrmax {

// ceil(2*log2 n) and ceil(4*log2 n) as used for the region depth.
int ceil_2log2(long n);
int ceil_4log2(long n);

struct ReportedVertex {
  Point p;
  long level = 0;
  long upper = 0;   // multiplicity-weighted count strictly above
  int degree = 0;   // distinct lines through (verticals included when present)
  bool from_vertical = false;
};

struct MaxLevelResult {
  bool has_vertices = false;
  long max_level = 0;
  std::optional<long> k0;  // set when a regular vertex wins
  CaseTag tag = CaseTag::NoVertex;
  std::vector<ReportedVertex> vertices;  // sorted by (x, y)
};

struct CaseIIReduction {
  Point apex;
  std::vector<int> lv;       // ids of lines through the apex
  std::vector<int> k_set;    // ids of the remaining lines
  int d_minus = 0, d_plus = 0, d = 0;
  int h = 0, d0 = 0;
  std::vector<int> removed;  // 2h ids
  std::vector<Line> l0;      // surviving lines
};

// Requires classify(env) == CaseII and a nonempty complement K.
CaseIIReduction reduce_case_ii(std::span<const Line> lines, const Envelope& env);

struct Detection {
  int k0 = 0;
  std::vector<RegionVertex> winners;  // u and d exact (validated by recount)
};

// Minimal "lines through or above" over the region's trusted vertices.
// Candidate degrees are validated by an exact recount, so a partially
// discovered deep cluster can never fake a win. Throws BoundViolated when
// no trusted vertex exists.
Detection detect_detached(const TopKRegion& region, std::span<const Line> lines);

// All maximum-level vertices of an instance of distinct lines (verticals
// allowed, duplicates not).
MaxLevelResult solve_distinct(const Instance& inst);

// Case (ii) claim: the level in the full arrangement of a detected vertex
// of the reduced one (other than the apex) is its reduced level plus h.
inline long level_of_case_ii_vertex(long level_in_l0, int h) { return level_in_l0 + h; }

// Exact (level, upper, degree) of a point against the full instance,
// multiplicity-weighted; degree counts distinct lines through, verticals
// included.
ReportedVertex report_at(const Point& p, const Instance& inst);

// Fold the vertical-line candidates into a result by exact level
// comparison: a strictly better vertical wins alone, ties join the set.
MaxLevelResult merge_vertical_candidates(MaxLevelResult res, const Instance& inst,
                                         const std::vector<std::pair<Point, long>>& vcands);

}  // namespace arrmax
