#include "arrmax/coincide.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace arrmax {

bool upper_membership(int gamma, const Rat& x, long k, const DedupView& dd) {
  Point p{x, dd.gamma[gamma].at(x)};
  long above = 0;
  for (size_t g = 0; g < dd.gamma.size(); ++g)
    if (side(dd.gamma[g], p) == Side::Above) above += dd.mu[g];
  return above <= k && k < above + dd.mu[gamma];
}

LevelChain build_pi_k(std::span<const Handle> handles, const DedupView& dd, int k) {
  (void)dd;
  if (k < 0 || k >= static_cast<int>(handles.size())) throw BadK("level index out of range");
  PeelDecomposition pd = peel(handles, k + 1);
  return deperturb_chain(trace_upper_level(handles, pd, k), handles);
}

SegmentSet build_delta_k(const LevelChain& pi, const DedupView& dd, const Rat& bl_x,
                         const Rat& br_x) {
  const size_t m = dd.gamma.size();
  SegmentSet out;
  std::vector<std::optional<Point>> w(m);  // pending left endpoints

  const Rat pi_bl = pi.value_at(bl_x, dd.gamma);
  for (size_t g = 0; g < m; ++g) {
    Rat y = dd.gamma[g].at(bl_x);
    if (y > pi_bl) w[g] = Point{bl_x, y};
  }

  for (size_t vi = 0; vi < pi.verts.size(); ++vi) {
    const ChainVertex& v = pi.verts[vi];
    const Rat& sl = dd.gamma[pi.support_left(vi)].a;
    const Rat& sr = dd.gamma[pi.support_right(vi)].a;
    for (int g : v.incident) {
      const Rat& sg = dd.gamma[g].a;
      // Above the chain just left of v: v closes a pending segment.
      if (sg < sl && w[g]) {
        out.segs.push_back(DeltaSegment{*w[g], v.p, g});
        w[g].reset();
      }
      // Above just right of v: v opens a segment (once per geometric
      // segment, no matter how many copies report it).
      if (sg > sr && !w[g]) w[g] = v.p;
    }
  }

  const Rat pi_br = pi.value_at(br_x, dd.gamma);
  for (size_t g = 0; g < m; ++g) {
    Rat y = dd.gamma[g].at(br_x);
    if (y > pi_br) {
      ARRMAX_CHECK(w[g].has_value(), "unmatched right cut while collecting portions above the level");
      out.segs.push_back(DeltaSegment{*w[g], Point{br_x, y}, g});
      w[g].reset();
    }
  }
  for (size_t g = 0; g < m; ++g)
    ARRMAX_CHECK(!w[g], "pending left endpoint survived the walk");
  return out;
}

bool has_detached(const SegmentSet& delta) {
  const auto& segs = delta.segs;
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      if (segs[i].gamma == segs[j].gamma) continue;
      const Rat lo = std::max(segs[i].l.x, segs[j].l.x);
      const Rat hi = std::min(segs[i].r.x, segs[j].r.x);
      if (lo >= hi) continue;
      Line a{0, (segs[i].r.y - segs[i].l.y) / (segs[i].r.x - segs[i].l.x), Rat()};
      a.b = segs[i].l.y - a.a * segs[i].l.x;
      Line b{0, (segs[j].r.y - segs[j].l.y) / (segs[j].r.x - segs[j].l.x), Rat()};
      b.b = segs[j].l.y - b.a * segs[j].l.x;
      if (a.a == b.a) continue;
      Rat xc = (a.b - b.b) / (b.a - a.a);
      if (xc > lo && xc < hi) return true;  // interior to both
    }
  }
  return false;
}

namespace {

// Lower envelope of the segments by divide and conquer; pieces are
// x-disjoint, gaps allowed.
struct EnvPiece {
  Rat xl, xr;
  int seg;
};

Line seg_line(const DeltaSegment& s) {
  Line l;
  l.a = (s.r.y - s.l.y) / (s.r.x - s.l.x);
  l.b = s.l.y - l.a * s.l.x;
  return l;
}

std::vector<EnvPiece> merge_envelopes(const std::vector<EnvPiece>& A,
                                      const std::vector<EnvPiece>& B,
                                      const std::vector<Line>& lines) {
  std::vector<Rat> xs;
  for (const auto& p : A) xs.push_back(p.xl), xs.push_back(p.xr);
  for (const auto& p : B) xs.push_back(p.xl), xs.push_back(p.xr);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<EnvPiece> out;
  auto push = [&](const Rat& xl, const Rat& xr, int seg) {
    if (xl >= xr) return;
    if (!out.empty() && out.back().seg == seg && out.back().xr == xl)
      out.back().xr = xr;
    else
      out.push_back(EnvPiece{xl, xr, seg});
  };

  // Piece boundaries all lie in xs, so coverage over an elementary
  // interval is all-or-nothing for each side.
  size_t ia = 0, ib = 0;
  for (size_t t = 0; t + 1 < xs.size(); ++t) {
    const Rat& x1 = xs[t];
    const Rat& x2 = xs[t + 1];
    while (ia < A.size() && A[ia].xr <= x1) ++ia;
    while (ib < B.size() && B[ib].xr <= x1) ++ib;
    const bool ca = ia < A.size() && A[ia].xl <= x1;
    const bool cb = ib < B.size() && B[ib].xl <= x1;
    if (!ca && !cb) continue;
    if (ca && !cb) {
      push(x1, x2, A[ia].seg);
      continue;
    }
    if (cb && !ca) {
      push(x1, x2, B[ib].seg);
      continue;
    }
    const Line& la = lines[A[ia].seg];
    const Line& lb = lines[B[ib].seg];
    int s1 = cmp(la.at(x1), lb.at(x1));
    int s2 = cmp(la.at(x2), lb.at(x2));
    ARRMAX_CHECK(s1 != 0 || s2 != 0, "coincident segment lines in envelope merge");
    if (s1 == 0) s1 = s2;
    if (s2 == 0) s2 = s1;
    if (s1 == s2) {
      push(x1, x2, s1 < 0 ? A[ia].seg : B[ib].seg);
    } else {  // one crossing inside the interval
      Rat xc = (la.b - lb.b) / (lb.a - la.a);
      push(x1, xc, s1 < 0 ? A[ia].seg : B[ib].seg);
      push(xc, x2, s2 < 0 ? A[ia].seg : B[ib].seg);
    }
  }
  return out;
}

std::vector<EnvPiece> lower_envelope(const std::vector<DeltaSegment>& segs,
                                     const std::vector<Line>& lines, size_t lo, size_t hi) {
  if (hi - lo == 1)
    return {EnvPiece{segs[lo].l.x, segs[lo].r.x, static_cast<int>(lo)}};
  size_t mid = (lo + hi) / 2;
  return merge_envelopes(lower_envelope(segs, lines, lo, mid),
                         lower_envelope(segs, lines, mid, hi), lines);
}

}  // namespace

MaxLevelResult solve_coincide(const Instance& inst, SearchStrategy strategy) {
  if (inst.empty()) throw EmptyInstance{};

  MaxLevelResult res;
  DedupView dd = dedup(inst);
  const long n = dd.total();
  const size_t m = dd.gamma.size();

  std::vector<long> mu(dd.mu.begin(), dd.mu.end());
  auto vcands = vertical_candidates(inst.verticals, dd.gamma, mu);

  if (m == 0) return merge_vertical_candidates(std::move(res), inst, vcands);

  bool all_parallel = true;
  for (size_t g = 1; g < m; ++g)
    if (dd.gamma[g].a != dd.gamma[0].a) all_parallel = false;
  if (all_parallel)  // no vertices among the non-verticals
    return merge_vertical_candidates(std::move(res), inst, vcands);

  Envelope env = upper_envelope(dd.gamma);
  res.tag = classify(env);

  // Extreme vertices of the deduplicated arrangement pin the cut abscissas.
  std::optional<Rat> leftmost, rightmost;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      if (dd.gamma[i].a == dd.gamma[j].a) continue;
      Rat x = (dd.gamma[i].b - dd.gamma[j].b) / (dd.gamma[j].a - dd.gamma[i].a);
      if (!leftmost || x < *leftmost) leftmost = x;
      if (!rightmost || x > *rightmost) rightmost = x;
    }
  const Rat bl_x = *leftmost - 1, br_x = *rightmost + 1;

  auto handles = perturb(dd);
  PeelDecomposition pd = peel(handles, static_cast<int>(n));

  std::map<int, bool> probed;
  auto probe = [&](int k) {
    auto it = probed.find(k);
    if (it != probed.end()) return it->second;
    LevelChain pi = deperturb_chain(trace_upper_level(handles, pd, k), handles);
    bool r = has_detached(build_delta_k(pi, dd, bl_x, br_x));
    probed.emplace(k, r);
    return r;
  };

  const int top = static_cast<int>(n) - 1;
  std::optional<int> k0;
  if (strategy == SearchStrategy::Binary) {
    if (probe(top)) {
      int lo = 0, hi = top;
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (probe(mid))
          hi = mid;
        else
          lo = mid + 1;
      }
      k0 = lo;
    }
  } else {
    int up = 1;
    while (up < top && !probe(std::min(up, top))) up *= 2;
    up = std::min(up, top);
    if (probe(up)) {
      int lo = up == 1 ? 1 : up / 2 + 1, hi = up;
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (probe(mid))
          hi = mid;
        else
          lo = mid + 1;
      }
      k0 = lo;
    }
  }

  // The detachment predicate is monotone in the level index.
  for (auto it = probed.begin(); it != probed.end(); ++it)
    for (auto jt = std::next(it); jt != probed.end(); ++jt)
      ARRMAX_CHECK(!(it->second && !jt->second), "detachment predicate not monotone");

  if (!k0) {
    // No level has a vertex above it: all distinct lines are concurrent.
    Point common = cross(dd.gamma[0], [&] {
      for (size_t g = 1; g < m; ++g)
        if (dd.gamma[g].a != dd.gamma[0].a) return dd.gamma[g];
      throw BoundViolated("concurrency fallback without a crossing");
    }());
    for (size_t g = 0; g < m; ++g)
      ARRMAX_CHECK(side(dd.gamma[g], common) == Side::On, "no detached vertex yet lines not concurrent");
    res.has_vertices = true;
    res.max_level = 0;
    res.k0 = n;
    res.vertices = {report_at(common, inst)};
    ARRMAX_CHECK(res.vertices[0].level == 0, "concurrent vertex has nonzero level");
    return merge_vertical_candidates(std::move(res), inst, vcands);
  }

  // V0: interior vertices of the lower envelope of Delta_{k0}, verified by
  // an exact multiplicity-weighted recount.
  LevelChain pi = deperturb_chain(trace_upper_level(handles, pd, *k0), handles);
  SegmentSet delta = build_delta_k(pi, dd, bl_x, br_x);
  ARRMAX_CHECK(!delta.segs.empty(), "detached level without portions above it");

  std::vector<Line> seg_lines;
  seg_lines.reserve(delta.segs.size());
  for (const auto& s : delta.segs) seg_lines.push_back(seg_line(s));
  auto env_pieces = lower_envelope(delta.segs, seg_lines, 0, delta.segs.size());

  std::set<Point> winners;
  for (size_t i = 0; i + 1 < env_pieces.size(); ++i) {
    const EnvPiece& a = env_pieces[i];
    const EnvPiece& b = env_pieces[i + 1];
    if (a.seg == b.seg || a.xr != b.xl) continue;
    Rat ya = seg_lines[a.seg].at(a.xr), yb = seg_lines[b.seg].at(a.xr);
    if (ya != yb) continue;  // envelope jump, not a contact
    Point p{a.xr, ya};
    const DeltaSegment& sa = delta.segs[a.seg];
    const DeltaSegment& sb = delta.segs[b.seg];
    if (p.x <= sa.l.x || p.x >= sa.r.x || p.x <= sb.l.x || p.x >= sb.r.x) continue;
    winners.insert(p);
  }

  res.has_vertices = true;
  res.max_level = n - *k0;
  res.k0 = *k0;
  for (const Point& p : winners) {
    ReportedVertex rv = report_at(p, inst);
    if (rv.level != res.max_level) continue;  // touched the level curve, not detached
    res.vertices.push_back(rv);
  }
  ARRMAX_CHECK(!res.vertices.empty(), "no verified detached vertex at the critical level");
  return merge_vertical_candidates(std::move(res), inst, vcands);
}

}  // namespace arrmax
