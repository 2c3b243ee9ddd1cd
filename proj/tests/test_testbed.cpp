#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "arrmax/solver.hpp"
#include "arrmax/testbed.hpp"
#include "doctest.h"

using namespace arrmax;

namespace {

Instance triangle() {
  Instance inst;
  inst.lines = {Line{1, Rat(1), Rat(0)}, Line{2, Rat(-1), Rat(0)}, Line{3, Rat(0), Rat(1)}};
  inst.mult = {{1, 1}, {2, 1}, {3, 1}};
  return inst;
}

}  // namespace

TEST_CASE("oracle on the triangle") {
  OracleResult r = brute_force(triangle());
  CHECK(r.max_level == 1);
  REQUIRE(r.max_vertices.size() == 2);
  CHECK(r.max_vertices[0].p == Point{Rat(-1), Rat(1)});
  CHECK(r.max_vertices[1].p == Point{Rat(1), Rat(1)});
  CHECK(r.all.size() == 3);
}

TEST_CASE("oracle respects multiplicities") {
  Instance inst;
  inst.lines = {Line{1, Rat(1), Rat(0)}, Line{2, Rat(-1), Rat(0)}};
  inst.mult = {{1, 2}, {2, 1}};
  OracleResult r = brute_force(inst);
  CHECK(r.max_level == 0);
  REQUIRE(r.max_vertices.size() == 1);
  CHECK(r.max_vertices[0].p == Point{Rat(0), Rat(0)});
}

TEST_CASE("oracle is order independent") {
  Instance a = gen_random(14, 42, GenBias{0.4, 0.3, 0.2});
  Instance b = a;
  std::reverse(b.lines.begin(), b.lines.end());
  OracleResult ra = brute_force(a), rb = brute_force(b);
  CHECK(ra.max_level == rb.max_level);
  REQUIRE(ra.max_vertices.size() == rb.max_vertices.size());
  for (size_t i = 0; i < ra.max_vertices.size(); ++i)
    CHECK(ra.max_vertices[i].p == rb.max_vertices[i].p);
}

TEST_CASE("oracle cap") {
  Instance big = gen_random(40, 1, GenBias{});
  CHECK_THROWS_AS(brute_force(big, 10), std::invalid_argument);
  CHECK_NOTHROW(brute_force(big, 0));
  CHECK_THROWS_AS(brute_force(Instance{}), EmptyInstance);
}

TEST_CASE("lower-bound construction: counts and levels for small t") {
  for (int t = 1; t <= 3; ++t) {
    auto [inst, expect] = gen_lower_bound(t);
    CHECK(expect.n == (1L << (t + 2)) + 2);
    CHECK(expect.max_level == expect.n - t - 2);
    OracleResult oracle = brute_force(inst);
    CHECK(oracle.max_level == expect.max_level);
    std::set<Point> got;
    for (const auto& v : oracle.max_vertices) got.insert(v.p);
    CHECK(got == std::set<Point>(expect.max_vertices.begin(), expect.max_vertices.end()));
    // level of p_m is n - t - 3
    bool found = false;
    for (const auto& v : oracle.all)
      if (v.p == expect.pm) {
        CHECK(v.level == expect.pm_level);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("lower-bound geometry: crossings on the points or under the parabola, in range") {
  for (int t = 1; t <= 4; ++t) {
    auto [inst, expect] = gen_lower_bound(t);
    const Rat xm = expect.pm.x;
    std::set<Point> pset(expect.max_vertices.begin(), expect.max_vertices.end());
    for (size_t i = 0; i < inst.lines.size(); ++i)
      for (size_t j = i + 1; j < inst.lines.size(); ++j) {
        if (inst.lines[i].a == inst.lines[j].a) continue;
        Point p = cross(inst.lines[i], inst.lines[j]);
        REQUIRE(p.x >= -xm);
        REQUIRE(p.x <= xm);
        REQUIRE(p.y <= p.x * p.x);  // on or below the parabola
      }
  }
}

TEST_CASE("lower-bound level profile: level of p_u is n - t - j - 2") {
  const int t = 3;
  auto [inst, expect] = gen_lower_bound(t);
  OracleResult oracle = brute_force(inst);
  auto level_of = [&](const Point& p) -> long {
    for (const auto& v : oracle.all)
      if (v.p == p) return v.level;
    return -1;
  };
  const long m = 1L << t;
  for (long u = 1; u < m; ++u) {
    long j = 0;
    while ((u >> j) % 2 == 0) ++j;
    mpz_class x = 1;
    for (long s = 0; s < u - 1; ++s) x *= 3;
    Point pu{Rat(x), Rat(x) * Rat(x)};
    CHECK(level_of(pu) == expect.n - t - j - 2);
  }
  // u = 0 has j = t
  CHECK(level_of(Point{Rat(0), Rat(0)}) == expect.n - 2 * t - 2);
}

TEST_CASE("bias-free generator yields general position") {
  for (std::uint64_t seed : {1, 2, 3}) {
    Instance inst = gen_random(5 + 3 * seed, seed, GenBias{});
    std::set<Rat> slopes;
    for (const Line& l : inst.lines) REQUIRE(slopes.insert(l.a).second);
    std::set<Point> pts;
    for (size_t i = 0; i < inst.lines.size(); ++i)
      for (size_t j = i + 1; j < inst.lines.size(); ++j)
        REQUIRE(pts.insert(cross(inst.lines[i], inst.lines[j])).second);
  }
}

TEST_CASE("generator is reproducible and honors forced concurrency") {
  Instance a = gen_random(20, 7, GenBias{0.6, 0.2, 0.1});
  Instance b = gen_random(20, 7, GenBias{0.6, 0.2, 0.1});
  REQUIRE(a.lines.size() == b.lines.size());
  for (size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].a == b.lines[i].a);
    CHECK(a.lines[i].b == b.lines[i].b);
  }
  CHECK(a.mult == b.mult);

  Instance c = gen_random(8, 7, GenBias{1.0, 0, 0});
  OracleResult r = brute_force(c);
  CHECK(r.max_level == 0);  // fully concurrent
}

TEST_CASE("weighted stats") {
  // n lines concurrent at one point, k = 0: one vertex of degree n
  Instance pencil;
  for (int i = 1; i <= 7; ++i) {
    pencil.lines.push_back(Line{i, Rat(i), Rat(0)});
    pencil.mult[i] = 1;
  }
  WeightedStats s0 = weighted_level_stats(pencil, 0);
  CHECK(s0.vertex_count == 1);
  CHECK(s0.weighted == 7);

  // triangle with the bounded edge on the lower envelope
  Instance tri_down;
  tri_down.lines = {Line{1, Rat(1), Rat(0)}, Line{2, Rat(-1), Rat(0)}, Line{3, Rat(0), Rat(-1)}};
  tri_down.mult = {{1, 1}, {2, 1}, {3, 1}};
  WeightedStats st = weighted_level_stats(tri_down, 0);
  CHECK(st.vertex_count == 2);
  CHECK(st.weighted == 4);
  // flat side up instead: the lower envelope is a single crossing
  WeightedStats su = weighted_level_stats(triangle(), 0);
  CHECK(su.vertex_count == 1);
  CHECK(su.weighted == 2);

  CHECK_THROWS_AS(weighted_level_stats(triangle(), 5), BadK);
  Instance dup;
  dup.lines = {Line{1, Rat(0), Rat(0)}};
  dup.mult = {{1, 2}};
  CHECK_THROWS_AS(weighted_level_stats(dup, 0), std::invalid_argument);

  // omega >= 2 |L_k| with equality iff all degrees are 2
  for (std::uint64_t seed = 600; seed < 606; ++seed) {
    Instance inst = gen_random(15, seed, GenBias{0.4, 0.2, 0});
    for (int k : {0, 2, 5}) {
      WeightedStats s = weighted_level_stats(inst, k);
      REQUIRE(s.weighted >= 2 * s.vertex_count);
    }
  }
}

TEST_CASE("case (ii) generator really produces a single envelope vertex") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Instance inst = gen_case_ii(10, 3, seed, seed % 2 == 0);
    Envelope env = upper_envelope(inst.lines);
    REQUIRE(classify(env) == CaseTag::CaseII);
  }
}
