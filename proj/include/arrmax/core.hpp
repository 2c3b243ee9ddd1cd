// Lines, points, instances, and the basic exact predicates.
//
// A line is always stored as y = a*x + b; vertical lines x = x0 are a
// separate type and are handled by preprocessing, never by the level
// machinery (they do not count toward the level of any point).

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arrmax/rational.hpp"

namespace arrmax {

struct EmptyInstance : std::invalid_argument {
  EmptyInstance() : std::invalid_argument("empty instance") {}
};
struct BadK : std::invalid_argument {
  explicit BadK(const std::string& m) : std::invalid_argument(m) {}
};
struct ParallelError : std::invalid_argument {
  ParallelError() : std::invalid_argument("parallel lines do not intersect") {}
};
// Raised when an internal structural guarantee fails; callers map it to a
// distinct exit code so a wrong answer never masquerades as a result.
struct BoundViolated : std::logic_error {
  explicit BoundViolated(const std::string& m) : std::logic_error(m) {}
};

#define ARRMAX_CHECK(cond, msg) \
  do {                          \
    if (!(cond)) throw ::arrmax::BoundViolated(msg); \
  } while (0)

struct Point {
  Rat x, y;
  friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
  friend bool operator<(const Point& p, const Point& q) {
    int c = cmp(p.x, q.x);
    return c != 0 ? c < 0 : cmp(p.y, q.y) < 0;
  }
};

struct Line {
  int id = 0;  // unique within an instance
  Rat a, b;    // y = a*x + b

  Rat at(const Rat& x) const { return a * x + b; }
};

struct VerticalLine {
  int id = 0;
  Rat x0;
};

// Input multiset: non-vertical entries with multiplicities, verticals apart.
// Entries may repeat a geometric line; dedup() merges them when needed.
struct Instance {
  std::vector<Line> lines;
  std::vector<VerticalLine> verticals;
  std::map<int, long> mult;  // id -> multiplicity (>= 1) for lines and verticals

  long mult_of(int id) const {
    auto it = mult.find(id);
    return it == mult.end() ? 1 : it->second;
  }
  long copies_nonvertical() const {
    long n = 0;
    for (const auto& l : lines) n += mult_of(l.id);
    return n;
  }
  long copies_total() const {
    long n = copies_nonvertical();
    for (const auto& v : verticals) n += mult_of(v.id);
    return n;
  }
  bool empty() const { return lines.empty() && verticals.empty(); }

  // True iff some non-vertical geometric line occurs more than once.
  bool has_duplicates() const;
};

enum class Side { Below, On, Above };

// Where line l passes relative to point p (exact).
inline Side side(const Line& l, const Point& p) {
  int c = cmp(l.a * p.x + l.b, p.y);
  return c < 0 ? Side::Below : c > 0 ? Side::Above : Side::On;
}

struct Parallel {};
struct Coincident {};
using IntersectResult = std::variant<Point, Parallel, Coincident>;

IntersectResult intersect(const Line& l1, const Line& l2);

// Intersection of two non-parallel lines; throws ParallelError otherwise.
Point cross(const Line& l1, const Line& l2);

// Deduplicated view of the non-vertical part of an instance: the distinct
// lines gamma_1..gamma_m with multiplicities, plus the map f from input
// copies to their representative.
struct DedupView {
  std::vector<Line> gamma;   // pairwise distinct, ids renumbered 0..m-1
  std::vector<long> mu;      // multiplicity per gamma
  std::vector<int> f;        // input copy (expanded order) -> gamma index
  std::vector<int> orig_id;  // gamma index -> id of first input entry

  long total() const {
    long n = 0;
    for (long m : mu) n += m;
    return n;
  }
};

DedupView dedup(const Instance& inst);

}  // namespace arrmax
