#include "arrmax/testbed.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "arrmax/coincide.hpp"

namespace arrmax {

OracleResult brute_force(const Instance& inst, long cap) {
  if (inst.empty()) throw EmptyInstance{};
  if (cap > 0 && inst.copies_total() > cap)
    throw std::invalid_argument("oracle size cap exceeded (raise or disable the cap)");

  DedupView dd = dedup(inst);
  const size_t m = dd.gamma.size();

  std::set<Point> candidates;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (dd.gamma[i].a != dd.gamma[j].a) candidates.insert(cross(dd.gamma[i], dd.gamma[j]));
  // Only the topmost point of each vertical can be a maximum-level vertex;
  // anything lower on the vertical is strictly dominated.
  if (!dd.gamma.empty()) {
    std::set<Rat> vxs;
    for (const auto& v : inst.verticals) vxs.insert(v.x0);
    for (const Rat& x0 : vxs) {
      Rat top = dd.gamma[0].at(x0);
      for (size_t g = 1; g < m; ++g) top = std::max(top, dd.gamma[g].at(x0));
      candidates.insert(Point{x0, top});
    }
  }

  OracleResult out;
  if (candidates.empty()) return out;
  out.has_vertices = true;
  for (const Point& p : candidates) {
    OracleVertex v;
    v.p = p;
    for (size_t g = 0; g < m; ++g) {
      switch (side(dd.gamma[g], p)) {
        case Side::Below: v.level += dd.mu[g]; break;
        case Side::Above: v.upper += dd.mu[g]; break;
        case Side::On: ++v.degree; break;
      }
    }
    for (const auto& vert : inst.verticals)
      if (vert.x0 == p.x) ++v.degree;
    out.all.push_back(v);
  }
  out.max_level = 0;
  for (const auto& v : out.all) out.max_level = std::max(out.max_level, v.level);
  for (const auto& v : out.all)
    if (v.level == out.max_level) out.max_vertices.push_back(v);
  return out;
}

std::pair<Instance, LowerBoundExpect> gen_lower_bound(int t) {
  ARRMAX_CHECK(t >= 1, "lower-bound construction needs t >= 1");
  const long m = 1L << t;

  // p_i = (3^(i-1), 3^(2(i-1))) for i >= 1, p_0 the origin, mirrored on the left.
  auto px = [&](long i) -> Rat {
    if (i == 0) return Rat(0);
    mpz_class v = 1;
    for (long s = 0; s < std::abs(i) - 1; ++s) v *= 3;
    return i > 0 ? Rat(v) : Rat(-v);
  };
  auto pt = [&](long i) -> Point {
    Rat x = px(i);
    return Point{x, x * x};
  };

  Instance inst;
  int next_id = 1;
  auto chord = [&](long u, long v) {
    Point pu = pt(u), pv = pt(v);
    Rat a = (pv.y - pu.y) / (pv.x - pu.x);
    inst.lines.push_back(Line{next_id, a, pu.y - a * pu.x});
    inst.mult[next_id] = 1;
    ++next_id;
  };

  for (int j = 0; j <= t; ++j) {
    const long step = 1L << (t - j);
    for (long r = 1; r <= (1L << j); ++r) {
      chord((r - 1) * step, r * step);
      chord(-(r - 1) * step, -r * step);
    }
  }
  // Two lines in the cone between the tangent and the vertical at each end.
  const Rat s = 2 * px(m);  // tangent slope at p_m
  for (const Rat& slope : {2 * s, 4 * s}) {
    Point pm = pt(m);
    inst.lines.push_back(Line{next_id, slope, pm.y - slope * pm.x});
    inst.mult[next_id] = 1;
    ++next_id;
  }
  for (const Rat& slope : {-2 * s, -4 * s}) {
    Point pn = pt(-m);
    inst.lines.push_back(Line{next_id, slope, pn.y - slope * pn.x});
    inst.mult[next_id] = 1;
    ++next_id;
  }

  LowerBoundExpect ex;
  ex.n = static_cast<long>(inst.lines.size());
  ARRMAX_CHECK(ex.n == (1L << (t + 2)) + 2, "lower-bound line count off");
  ex.max_level = ex.n - t - 2;
  for (long u = 1; u < m; u += 2) {
    ex.max_vertices.push_back(pt(u));
    ex.max_vertices.push_back(pt(-u));
  }
  std::sort(ex.max_vertices.begin(), ex.max_vertices.end());
  ex.pm = pt(m);
  ex.pm_neg = pt(-m);
  ex.pm_level = ex.n - t - 3;
  return {std::move(inst), std::move(ex)};
}

Instance gen_random(int n, std::uint64_t seed, GenBias bias) {
  ARRMAX_CHECK(n >= 1, "generator needs n >= 1");
  std::mt19937_64 rng(seed);
  auto pick = [&](long lo, long hi) {  // inclusive
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto roll = [&] { return (rng() % 1000000) / 1e6; };

  Instance inst;
  std::set<Rat> used_tangents;
  std::set<std::pair<Rat, Rat>> used_lines;
  std::vector<Point> anchors;
  int next_id = 1;

  // by value: callers pass references into inst.lines, which push_back moves
  auto add_line = [&](Rat a, Rat b, long mult) {
    inst.lines.push_back(Line{next_id, a, b});
    inst.mult[next_id] = mult;
    ++next_id;
    used_lines.insert({std::move(a), std::move(b)});
  };
  auto fresh_tangent_slope = [&]() {
    // tangents to y = x^2: y = 2t x - t^2; distinct t keeps everything in
    // general position (three tangents are never concurrent)
    while (true) {
      Rat t = rat(pick(-6L * n, 6L * n), 2);
      if (used_tangents.insert(t).second) return t;
    }
  };

  long copies = 0;
  while (copies < n) {
    double r = roll();
    if (r < bias.duplicate && !inst.lines.empty()) {
      size_t pickidx = static_cast<size_t>(pick(0, static_cast<long>(inst.lines.size()) - 1));
      if (rng() % 2 == 0) {
        ++inst.mult[inst.lines[pickidx].id];
      } else {
        add_line(inst.lines[pickidx].a, inst.lines[pickidx].b, 1);
      }
      ++copies;
      continue;
    }
    r -= bias.duplicate;
    if (r < bias.parallel && !inst.lines.empty()) {
      const Line& base = inst.lines[static_cast<size_t>(pick(0, static_cast<long>(inst.lines.size()) - 1))];
      for (int attempt = 0; attempt < 32; ++attempt) {
        Rat b = rat(pick(-8L * n, 8L * n), pick(1, 4));
        if (!used_lines.count({base.a, b})) {
          add_line(base.a, b, 1);
          ++copies;
          break;
        }
      }
      continue;
    }
    r -= bias.parallel;
    if (r < bias.concurrent && inst.lines.size() >= 2) {
      // at full bias everything lands on one bundle point
      if (anchors.empty() || roll() < 0.35 * (1 - bias.concurrent)) {
        // a new bundle point: an existing crossing or a fresh grid point
        const Line& l1 = inst.lines[static_cast<size_t>(pick(0, static_cast<long>(inst.lines.size()) - 1))];
        const Line& l2 = inst.lines[static_cast<size_t>(pick(0, static_cast<long>(inst.lines.size()) - 1))];
        if (l1.a != l2.a)
          anchors.push_back(cross(l1, l2));
        else
          anchors.push_back(Point{rat(pick(-2 * n, 2 * n), 2), rat(pick(-2 * n, 2 * n), 2)});
      }
      const Point& p = anchors[static_cast<size_t>(pick(0, static_cast<long>(anchors.size()) - 1))];
      Rat t = fresh_tangent_slope();
      Rat a = 2 * t;  // fresh slope: the new line cannot duplicate anything
      add_line(a, p.y - a * p.x, 1);
      ++copies;
      continue;
    }
    Rat t = fresh_tangent_slope();
    add_line(2 * t, -t * t, 1);
    ++copies;
  }
  return inst;
}

Instance gen_case_ii(int pencil, int low, std::uint64_t seed, bool parallel_k) {
  ARRMAX_CHECK(pencil >= 2 && low >= 1, "case (ii) shape needs a pencil and low lines");
  std::mt19937_64 rng(seed);
  auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  Instance inst;
  int next_id = 1;
  Point apex{rat(pick(-10, 10), 2), rat(pick(-10, 10), 2)};

  std::set<Rat> slopes;
  while (static_cast<int>(slopes.size()) < pencil) slopes.insert(rat(pick(-3 * pencil, 3 * pencil), 2));
  for (const Rat& a : slopes) {
    inst.lines.push_back(Line{next_id, a, apex.y - a * apex.x});
    inst.mult[next_id] = 1;
    ++next_id;
  }
  // Low lines stay far under the pencil crossings so the envelope keeps a
  // single vertex.
  Rat drop = Rat(100) * pencil * pencil;
  std::set<std::pair<Rat, Rat>> used;
  Rat k_slope = parallel_k ? *std::next(slopes.begin(), static_cast<long>(slopes.size()) / 2) : Rat();
  int made = 0;
  while (made < low) {
    Rat a = parallel_k ? k_slope : rat(pick(-2 * pencil, 2 * pencil), 3);
    Rat b = apex.y - a * apex.x - drop - rat(pick(0, 50), 1);
    if (!used.insert({a, b}).second) continue;
    inst.lines.push_back(Line{next_id, a, b});
    inst.mult[next_id] = 1;
    ++next_id;
    ++made;
  }
  return inst;
}

WeightedStats weighted_level_stats(const Instance& inst, int k) {
  for (const auto& [id, mult] : inst.mult)
    if (mult != 1) throw std::invalid_argument("weighted stats need multiplicity-one lines");
  Instance refl;  // lower levels of inst = upper levels of the reflection
  refl.lines.reserve(inst.lines.size());
  for (const Line& l : inst.lines) {
    refl.lines.push_back(Line{l.id, -l.a, -l.b});
    refl.mult[l.id] = 1;
  }
  if (refl.lines.empty() || k < 0 || k >= static_cast<long>(refl.lines.size()))
    throw BadK("weighted stats level out of range");

  DedupView dd = dedup(refl);
  if (dd.gamma.size() != refl.lines.size())
    throw std::invalid_argument("weighted stats need distinct lines");
  auto handles = perturb(dd);
  LevelChain pi = build_pi_k(handles, dd, k);

  WeightedStats stats;
  stats.k = k;
  stats.n = static_cast<long>(inst.lines.size());
  stats.vertex_count = static_cast<long>(pi.verts.size());
  for (const ChainVertex& v : pi.verts) {
    int deg = 0;
    for (const Line& l : refl.lines)
      if (side(l, v.p) == Side::On) ++deg;
    stats.weighted += deg;
  }
  return stats;
}

}  // namespace arrmax
