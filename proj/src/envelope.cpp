#include "arrmax/envelope.hpp"

#include <algorithm>
#include <map>

namespace arrmax {

namespace {

// Index of the edge whose x-span contains x, biased left or right at a
// vertex abscissa (bias matters only when x is exactly a vertex).
size_t edge_index_at(const Envelope& env, const Rat& x, bool bias_right) {
  size_t lo = 0, hi = env.vertices.size();  // edge index in [lo, hi]
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    // vertices[mid] separates edges mid and mid+1
    int c = cmp(env.vertices[mid].x, x);
    if (c < 0 || (c == 0 && bias_right))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

Rat Envelope::value_at(const Rat& x) const { return edges[edge_index_at(*this, x, false)].at(x); }

const Line& Envelope::edge_left_of(const Rat& x) const {
  return edges[edge_index_at(*this, x, false)];
}

const Line& Envelope::edge_right_of(const Rat& x) const {
  return edges[edge_index_at(*this, x, true)];
}

Envelope upper_envelope(std::span<const Line> lines) {
  if (lines.empty()) throw EmptyInstance{};

  // One representative per slope: the highest intercept wins; exact
  // duplicates collapse. Incidence bookkeeping recovers the dropped ids in
  // the post-pass below.
  std::map<Rat, Line> by_slope;
  for (const Line& l : lines) {
    auto [it, fresh] = by_slope.emplace(l.a, l);
    if (!fresh && l.b > it->second.b) it->second = l;
  }

  // Upper hull in the dual plane (a, b): a line shows on the envelope iff
  // its dual point lies strictly above the chord of its neighbours.
  std::vector<Line> hull;
  for (auto& [a, l] : by_slope) {
    auto above_chord = [](const Line& p, const Line& q, const Line& r) {
      // q strictly above segment p-r in the dual plane
      return sgn((q.a - p.a) * (r.b - p.b) - (q.b - p.b) * (r.a - p.a)) < 0;
    };
    while (hull.size() >= 2 && !above_chord(hull[hull.size() - 2], hull.back(), l))
      hull.pop_back();
    hull.push_back(l);
  }

  Envelope env;
  env.edges = std::move(hull);
  for (size_t i = 0; i + 1 < env.edges.size(); ++i)
    env.vertices.push_back(cross(env.edges[i], env.edges[i + 1]));

  env.incident.resize(env.vertices.size());
  for (size_t i = 0; i < env.vertices.size(); ++i)
    for (const Line& l : lines)
      if (side(l, env.vertices[i]) == Side::On) env.incident[i].push_back(l.id);
  return env;
}

CaseTag classify(const Envelope& env) {
  if (env.vertices.size() >= 2) return CaseTag::CaseI;
  if (env.vertices.size() == 1) return CaseTag::CaseII;
  return CaseTag::NoVertex;
}

std::vector<std::pair<Point, long>> vertical_candidates(std::span<const VerticalLine> verticals,
                                                        std::span<const Line> lines,
                                                        std::span<const long> mult) {
  std::vector<std::pair<Point, long>> out;
  if (verticals.empty() || lines.empty()) return out;
  std::vector<Rat> xs;
  for (const auto& v : verticals) xs.push_back(v.x0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (const Rat& x0 : xs) {
    Rat top = lines[0].at(x0);
    for (const Line& l : lines.subspan(1)) top = std::max(top, l.at(x0));
    long level = 0;
    for (size_t i = 0; i < lines.size(); ++i)
      if (lines[i].at(x0) < top) level += mult[i];
    out.push_back({Point{x0, top}, level});
  }
  return out;
}

bool ray_hits_envelope(const Point& origin, const Rat& s, RayDir dir, const Envelope& env) {
  ARRMAX_CHECK(origin.y > env.value_at(origin.x), "ray origin must be strictly above the envelope");
  // The difference ray(x) - env(x) is concave and positive at the origin,
  // so it dips to zero iff it tends to -inf on the ray's side.
  if (dir == RayDir::Left) return s > env.edges.front().a;
  return s < env.edges.back().a;
}

}  // namespace arrmax
