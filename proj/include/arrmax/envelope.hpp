// Upper envelopes of non-vertical lines, with full incidence at every
// envelope vertex (lines that only touch a vertex are recorded too), plus
// the Case (i) / Case (ii) / no-vertex classification and the vertical-line
// preprocessing step.

#pragma once

#include <span>
#include <vector>

#include "arrmax/core.hpp"

namespace arrmax {

struct Envelope {
  // Supporting lines of the envelope edges, slopes strictly increasing;
  // edges.front()/back() carry the two rays. edge i spans
  // [vertices[i-1].x, vertices[i].x].
  std::vector<Line> edges;
  std::vector<Point> vertices;             // strictly increasing x
  std::vector<std::vector<int>> incident;  // per vertex: ids of ALL input lines through it

  // Envelope height at x (pointwise max of the input lines).
  Rat value_at(const Rat& x) const;
  // Slope of the envelope edge just left / right of x.
  const Line& edge_left_of(const Rat& x) const;
  const Line& edge_right_of(const Rat& x) const;
};

// Duplicates allowed (they contribute once to geometry, all ids recorded).
// Throws EmptyInstance on empty input.
Envelope upper_envelope(std::span<const Line> lines);

enum class CaseTag { CaseI, CaseII, NoVertex };

CaseTag classify(const Envelope& env);

// For each distinct vertical x = x0, the highest intersection with the
// non-vertical lines and its multiplicity-weighted level. Vertical lines
// themselves never count toward a level.
std::vector<std::pair<Point, long>> vertical_candidates(std::span<const VerticalLine> verticals,
                                                        std::span<const Line> lines,
                                                        std::span<const long> mult);

enum class RayDir { Left, Right };

// Does the open ray from `origin` with slope `s` (towards -inf or +inf)
// meet the envelope? Requires origin strictly above env. Because the ray
// starts above a convex curve, the answer depends only on the extreme
// envelope slopes.
bool ray_hits_envelope(const Point& origin, const Rat& s, RayDir dir, const Envelope& env);

}  // namespace arrmax
