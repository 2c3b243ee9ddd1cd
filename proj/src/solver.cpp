#include "arrmax/solver.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace arrmax {

int ceil_2log2(long n) {
  ARRMAX_CHECK(n >= 1, "ceil_2log2 needs n >= 1");
  // smallest k with 2^k >= n^2
  unsigned __int128 target = static_cast<unsigned __int128>(n) * n;
  int k = 0;
  unsigned __int128 v = 1;
  while (v < target) v <<= 1, ++k;
  return k;
}

int ceil_4log2(long n) {
  ARRMAX_CHECK(n >= 1 && n <= 4000000000L, "ceil_4log2 range");
  // smallest k with 2^k >= n^4
  unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n;
  unsigned __int128 target = n2 * n2;
  int k = 0;
  for (unsigned __int128 v = 1; v < target; v <<= 1) ++k;
  return k;
}

namespace {

struct Count {
  long above = 0, below = 0;
  int through = 0;
};

Count recount(const Point& p, std::span<const Line> lines) {
  Count c;
  for (const Line& l : lines) {
    switch (side(l, p)) {
      case Side::Above: ++c.above; break;
      case Side::Below: ++c.below; break;
      case Side::On: ++c.through; break;
    }
  }
  return c;
}

}  // namespace

Detection detect_detached(const TopKRegion& region, std::span<const Line> lines) {
  std::vector<const RegionVertex*> cand;
  for (const RegionVertex& v : region.verts)
    if (v.trusted) cand.push_back(&v);
  if (cand.empty()) throw BoundViolated("no trusted vertex in the top-k region");
  std::stable_sort(cand.begin(), cand.end(),
                   [](const RegionVertex* a, const RegionVertex* b) { return a->u + a->d < b->u + b->d; });

  // Discovered u+d is a lower bound for the true count, exact whenever the
  // cluster was fully discovered; an exact recount settles each contender.
  Detection det;
  long best = LONG_MAX;
  for (const RegionVertex* v : cand) {
    if (v->u + v->d > best) break;
    Count c = recount(v->p, lines);
    long t = c.above + c.through;
    if (t < best) {
      best = t;
      det.winners.clear();
    }
    if (t == best) {
      RegionVertex w = *v;
      w.u = static_cast<int>(c.above);
      w.d = c.through;
      det.winners.push_back(std::move(w));
    }
  }
  det.k0 = static_cast<int>(best);
  return det;
}

CaseIIReduction reduce_case_ii(std::span<const Line> lines, const Envelope& env) {
  ARRMAX_CHECK(classify(env) == CaseTag::CaseII, "reduction needs a single-vertex envelope");
  CaseIIReduction red;
  red.apex = env.vertices[0];
  std::set<int> lv_ids(env.incident[0].begin(), env.incident[0].end());
  red.lv.assign(lv_ids.begin(), lv_ids.end());

  std::vector<Line> lv_lines, k_lines;
  for (const Line& l : lines)
    (lv_ids.count(l.id) ? lv_lines : k_lines).push_back(l);
  for (const Line& l : k_lines) red.k_set.push_back(l.id);
  ARRMAX_CHECK(!k_lines.empty(), "reduction needs a nonempty complement");

  Envelope ek = upper_envelope(k_lines);

  // Left rays, top-down = slope ascending; right rays, top-down = slope
  // descending. D^- / D^+ are the longest prefixes missing the complement.
  std::vector<const Line*> by_slope;
  for (const Line& l : lv_lines) by_slope.push_back(&l);
  std::sort(by_slope.begin(), by_slope.end(),
            [](const Line* a, const Line* b) { return a->a < b->a; });

  red.d_minus = 0;
  for (const Line* l : by_slope) {
    if (ray_hits_envelope(red.apex, l->a, RayDir::Left, ek)) break;
    ++red.d_minus;
  }
  red.d_plus = 0;
  for (auto it = by_slope.rbegin(); it != by_slope.rend(); ++it) {
    if (ray_hits_envelope(red.apex, (*it)->a, RayDir::Right, ek)) break;
    ++red.d_plus;
  }
  red.d = std::min(red.d_minus, red.d_plus);
  const long n = static_cast<long>(lines.size());
  red.h = std::max(0, red.d - ceil_2log2(n));
  red.d0 = red.d - red.h;

  std::set<int> removed;
  for (int i = 0; i < red.h; ++i) removed.insert(by_slope[i]->id);
  for (int i = 0; i < red.h; ++i) {
    int id = by_slope[by_slope.size() - 1 - i]->id;
    ARRMAX_CHECK(removed.insert(id).second, "case (ii) removal hit a line twice");
  }
  red.removed.assign(removed.begin(), removed.end());
  for (const Line& l : lines)
    if (!removed.count(l.id)) red.l0.push_back(l);
  return red;
}

namespace {

DedupView dedup_lines(std::span<const Line> lines) {
  Instance tmp;
  tmp.lines.assign(lines.begin(), lines.end());
  return dedup(tmp);
}

}  // namespace

ReportedVertex report_at(const Point& p, const Instance& inst) {
  ReportedVertex rv;
  rv.p = p;
  for (const Line& l : inst.lines) {
    long m = inst.mult_of(l.id);
    switch (side(l, p)) {
      case Side::Below: rv.level += m; break;
      case Side::Above: rv.upper += m; break;
      case Side::On: ++rv.degree; break;
    }
  }
  for (const auto& v : inst.verticals)
    if (v.x0 == p.x) ++rv.degree;
  return rv;
}

MaxLevelResult merge_vertical_candidates(MaxLevelResult res, const Instance& inst,
                                         const std::vector<std::pair<Point, long>>& vcands) {
  long vbest = -1;
  for (const auto& [p, lvl] : vcands) vbest = std::max(vbest, lvl);
  if (vbest < 0) return res;
  if (!res.has_vertices || vbest > res.max_level) {
    res.has_vertices = true;
    res.max_level = vbest;
    res.k0.reset();
    res.vertices.clear();
  }
  if (vbest == res.max_level) {
    std::set<Point> have;
    for (const auto& v : res.vertices) have.insert(v.p);
    for (const auto& [p, lvl] : vcands)
      if (lvl == vbest && !have.count(p)) {
        ReportedVertex rv = report_at(p, inst);
        ARRMAX_CHECK(rv.level == lvl, "vertical candidate level mismatch");
        rv.from_vertical = true;
        res.vertices.push_back(rv);
      }
    std::sort(res.vertices.begin(), res.vertices.end(),
              [](const ReportedVertex& a, const ReportedVertex& b) { return a.p < b.p; });
  }
  return res;
}

MaxLevelResult solve_distinct(const Instance& inst) {
  if (inst.empty()) throw EmptyInstance{};
  if (inst.has_duplicates()) throw std::invalid_argument("duplicates require coincide mode");
  {
    std::set<Rat> vx;
    for (const auto& v : inst.verticals)
      if (inst.mult_of(v.id) > 1 || !vx.insert(v.x0).second)
        throw std::invalid_argument("duplicates require coincide mode");
  }

  MaxLevelResult res;
  const long n = static_cast<long>(inst.lines.size());
  std::vector<long> mult1(inst.lines.size(), 1);
  auto vcands = vertical_candidates(inst.verticals, inst.lines, mult1);

  if (n == 0) return merge_vertical_candidates(std::move(res), inst, vcands);

  Envelope env = upper_envelope(inst.lines);
  res.tag = classify(env);

  if (res.tag == CaseTag::NoVertex) {
    // All lines parallel (or a single line): no regular vertices.
    return merge_vertical_candidates(std::move(res), inst, vcands);
  }

  auto finish_regular = [&](const std::vector<Point>& pts) {
    res.has_vertices = true;
    std::vector<ReportedVertex> out;
    for (const Point& p : pts) out.push_back(report_at(p, inst));
    for (const auto& v : out)
      ARRMAX_CHECK(v.level == out[0].level, "winning vertices disagree on level");
    res.max_level = out[0].level;
    res.k0 = n - res.max_level;
    std::sort(out.begin(), out.end(),
              [](const ReportedVertex& a, const ReportedVertex& b) { return a.p < b.p; });
    res.vertices = std::move(out);
  };

  if (res.tag == CaseTag::CaseI) {
    const int k = std::min<long>(ceil_2log2(n), n - 1);
    auto handles = perturb(dedup_lines(inst.lines));
    TopKRegion region = build_top_k_region(handles, k);
    Detection det = detect_detached(region, inst.lines);
    std::vector<Point> pts;
    for (const auto& w : det.winners) pts.push_back(w.p);
    finish_regular(pts);
    return merge_vertical_candidates(std::move(res), inst, vcands);
  }

  // Case (ii)
  const Point apex = env.vertices[0];
  if (env.incident[0].size() == inst.lines.size()) {
    // K empty: the apex is the only vertex.
    finish_regular({apex});
    return merge_vertical_candidates(std::move(res), inst, vcands);
  }

  CaseIIReduction red = reduce_case_ii(inst.lines, env);
  const long n0 = static_cast<long>(red.l0.size());
  const int k = std::min<long>(ceil_4log2(n), n0 - 1);
  auto handles = perturb(dedup_lines(red.l0));
  TopKRegion region = build_top_k_region(handles, k);
  Detection det = detect_detached(region, red.l0);

  // Candidates from the reduced arrangement, plus the apex itself, compared
  // by their exact level in the full arrangement (the apex level does not
  // shift by h, so it cannot be folded into the reduced comparison).
  std::vector<Point> cand;
  for (const auto& w : det.winners)
    if (!(w.p == apex)) cand.push_back(w.p);
  long cand_level = -1;
  for (const Point& p : cand) {
    Count c = recount(p, inst.lines);
    if (cand_level < 0) cand_level = c.below;
    ARRMAX_CHECK(c.below == cand_level, "reduced winners disagree on full-arrangement level");
  }
  long apex_level = recount(apex, inst.lines).below;

  std::vector<Point> pts;
  if (cand_level > apex_level) {
    pts = std::move(cand);
  } else if (cand_level < apex_level) {
    pts = {apex};
  } else {
    pts = std::move(cand);
    pts.push_back(apex);
  }
  finish_regular(pts);
  return merge_vertical_candidates(std::move(res), inst, vcands);
}

}  // namespace arrmax
