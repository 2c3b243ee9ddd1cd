#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "arrmax/solver.hpp"
#include "arrmax/testbed.hpp"
#include "doctest.h"

using namespace arrmax;

namespace {

Instance mk_inst(std::vector<std::pair<Rat, Rat>> ab) {
  Instance inst;
  int id = 1;
  for (auto& [a, b] : ab) {
    inst.lines.push_back(Line{id, a, b});
    inst.mult[id] = 1;
    ++id;
  }
  return inst;
}

std::set<Point> points_of(const MaxLevelResult& r) {
  std::set<Point> s;
  for (const auto& v : r.vertices) s.insert(v.p);
  return s;
}

std::set<Point> points_of(const OracleResult& r) {
  std::set<Point> s;
  for (const auto& v : r.max_vertices) s.insert(v.p);
  return s;
}

void check_against_oracle(const Instance& inst) {
  MaxLevelResult got = solve_distinct(inst);
  OracleResult want = brute_force(inst);
  REQUIRE(got.has_vertices == want.has_vertices);
  if (!want.has_vertices) return;
  REQUIRE(got.max_level == want.max_level);
  REQUIRE(points_of(got) == points_of(want));
}

}  // namespace

TEST_CASE("log depth helpers") {
  CHECK(ceil_2log2(2) == 2);
  CHECK(ceil_2log2(3) == 4);
  CHECK(ceil_2log2(4) == 4);
  CHECK(ceil_2log2(60) == 12);
  CHECK(ceil_2log2(4096) == 24);
  CHECK(ceil_4log2(3) == 7);
  CHECK(ceil_4log2(4) == 8);
  CHECK(ceil_4log2(6) == 11);
}

TEST_CASE("triangle: two apexes at level 1") {
  MaxLevelResult r = solve_distinct(mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}}));
  CHECK(r.tag == CaseTag::CaseI);
  CHECK(r.max_level == 1);
  REQUIRE(r.k0.has_value());
  CHECK(*r.k0 == 2);
  CHECK(points_of(r) == std::set<Point>{{Rat(-1), Rat(1)}, {Rat(1), Rat(1)}});
  for (const auto& v : r.vertices) {
    CHECK(v.degree == 2);
    CHECK(v.upper == 0);
  }
}

TEST_CASE("concurrent triple: the apex is the only vertex") {
  MaxLevelResult r = solve_distinct(mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(0)}}));
  CHECK(r.tag == CaseTag::CaseII);
  CHECK(r.max_level == 0);
  CHECK(points_of(r) == std::set<Point>{{Rat(0), Rat(0)}});
  CHECK(r.vertices[0].degree == 3);
}

TEST_CASE("case (ii) with a tie between the apex and two ray crossings") {
  // apex pencil {±x, ±x/2, 0} plus y = -3
  MaxLevelResult r = solve_distinct(mk_inst({{Rat(1), Rat(0)},
                                             {Rat(-1), Rat(0)},
                                             {rat(1, 2), Rat(0)},
                                             {rat(-1, 2), Rat(0)},
                                             {Rat(0), Rat(0)},
                                             {Rat(0), Rat(-3)}}));
  CHECK(r.tag == CaseTag::CaseII);
  CHECK(r.max_level == 1);
  CHECK(points_of(r) ==
        std::set<Point>{{Rat(0), Rat(0)}, {Rat(-6), Rat(-3)}, {Rat(6), Rat(-3)}});
  check_against_oracle(mk_inst({{Rat(1), Rat(0)},
                                {Rat(-1), Rat(0)},
                                {rat(1, 2), Rat(0)},
                                {rat(-1, 2), Rat(0)},
                                {Rat(0), Rat(0)},
                                {Rat(0), Rat(-3)}}));
}

TEST_CASE("the apex alone can be the maximum-level vertex") {
  // v = (0,0) with K = {y = -10}: lambda(v) = 1, ray crossings are at level 0
  check_against_oracle(mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(-10)}}));
  MaxLevelResult r = solve_distinct(mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(-10)}}));
  CHECK(r.max_level == 1);
  CHECK(points_of(r) == std::set<Point>{{Rat(0), Rat(0)}});
}

TEST_CASE("reduction parameters for the pencil-over-floor shape") {
  Instance inst = mk_inst({{Rat(1), Rat(0)},
                           {Rat(-1), Rat(0)},
                           {rat(1, 2), Rat(0)},
                           {rat(-1, 2), Rat(0)},
                           {Rat(0), Rat(0)},
                           {Rat(0), Rat(-3)}});
  Envelope env = upper_envelope(inst.lines);
  REQUIRE(classify(env) == CaseTag::CaseII);
  CaseIIReduction red = reduce_case_ii(inst.lines, env);
  CHECK(red.d_minus == 3);  // slopes -1, -1/2, 0 miss y=-3 on the left
  CHECK(red.d_plus == 3);
  CHECK(red.d == 3);
  CHECK(red.h == 0);
  CHECK(red.l0.size() == 6);

  Instance two = mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(-3)}});
  Envelope env2 = upper_envelope(two.lines);
  CaseIIReduction red2 = reduce_case_ii(two.lines, env2);
  CHECK(red2.d_minus == 1);
  CHECK(red2.d_plus == 1);
  CHECK(red2.d == 1);
  CHECK(red2.h == 0);
}

TEST_CASE("case (ii) with h > 0 removes lines but keeps the answer") {
  // big pencil forces D > 2 log2 n
  for (std::uint64_t seed : {1, 2, 3, 4, 5, 6}) {
    Instance inst = gen_case_ii(40, 3, seed);
    Envelope env = upper_envelope(inst.lines);
    REQUIRE(classify(env) == CaseTag::CaseII);
    CaseIIReduction red = reduce_case_ii(inst.lines, env);
    if (red.h > 0) {
      CHECK(red.removed.size() == 2 * static_cast<size_t>(red.h));
      CHECK(red.l0.size() == inst.lines.size() - 2 * red.h);
    }
    check_against_oracle(inst);
  }
}

TEST_CASE("the awkward sub-case: every complement line parallel to a pencil line") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8}) {
    Instance inst = gen_case_ii(30, 4, seed, /*parallel_k=*/true);
    Envelope env = upper_envelope(inst.lines);
    REQUIRE(classify(env) == CaseTag::CaseII);
    check_against_oracle(inst);
  }
}

TEST_CASE("detached detection on the lower-bound construction") {
  auto [inst, expect] = gen_lower_bound(2);
  REQUIRE(static_cast<long>(inst.lines.size()) == expect.n);
  const long n = expect.n;
  auto hs = perturb(dedup(inst));
  const int k = static_cast<int>(std::min<long>(ceil_2log2(n), n - 1));
  TopKRegion region = build_top_k_region(hs, k);
  Detection det = detect_detached(region, inst.lines);
  CHECK(det.k0 == n - expect.max_level);  // = t + 2
  std::set<Point> got;
  for (const auto& w : det.winners) got.insert(w.p);
  CHECK(got == std::set<Point>(expect.max_vertices.begin(), expect.max_vertices.end()));
}

TEST_CASE("single crossing reports k0 = 2") {
  Instance inst = mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}});
  auto hs = perturb(dedup(inst));
  TopKRegion region = build_top_k_region(hs, 1);
  Detection det = detect_detached(region, inst.lines);
  CHECK(det.k0 == 2);
  REQUIRE(det.winners.size() == 1);
  CHECK(det.winners[0].p == Point{Rat(0), Rat(0)});
  MaxLevelResult r = solve_distinct(inst);
  CHECK(r.max_level == 0);
  CHECK(*r.k0 == 2);
}

TEST_CASE("vertical lines") {
  // verticals alone: no vertices
  Instance only_v;
  only_v.verticals = {{1, Rat(0)}, {2, Rat(3)}};
  only_v.mult = {{1, 1}, {2, 1}};
  MaxLevelResult r0 = solve_distinct(only_v);
  CHECK(!r0.has_vertices);

  // a vertical candidate beating every regular vertex
  Instance inst = mk_inst({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}});
  inst.verticals = {{3, Rat(5)}};
  inst.mult[3] = 1;
  MaxLevelResult r1 = solve_distinct(inst);
  CHECK(r1.max_level == 1);
  CHECK(points_of(r1) == std::set<Point>{{Rat(5), Rat(5)}});
  CHECK(r1.vertices[0].from_vertical);
  CHECK(!r1.k0.has_value());

  // all-parallel lines plus a vertical: only the vertical candidate
  Instance par = mk_inst({{Rat(0), Rat(0)}, {Rat(0), Rat(2)}});
  par.verticals = {{3, Rat(1)}};
  par.mult[3] = 1;
  MaxLevelResult r2 = solve_distinct(par);
  CHECK(r2.tag == CaseTag::NoVertex);
  CHECK(r2.max_level == 1);
  CHECK(points_of(r2) == std::set<Point>{{Rat(1), Rat(2)}});

  check_against_oracle(inst);
  check_against_oracle(par);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(solve_distinct(Instance{}), EmptyInstance);
  Instance dup = mk_inst({{Rat(1), Rat(0)}, {Rat(1), Rat(0)}});
  CHECK_THROWS_AS(solve_distinct(dup), std::invalid_argument);
  Instance mu = mk_inst({{Rat(1), Rat(0)}, {Rat(2), Rat(0)}});
  mu.mult[1] = 2;
  CHECK_THROWS_AS(solve_distinct(mu), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random degenerate instances") {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    GenBias bias{0.2 * (seed % 4), 0.15 * (seed % 3), 0};
    Instance inst = gen_random(6 + static_cast<int>(seed % 25), seed, bias);
    check_against_oracle(inst);
  }
}

TEST_CASE("conservation: level + upper + degree = n for reported vertices") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    Instance inst = gen_random(12, seed, GenBias{0.5, 0.2, 0});
    MaxLevelResult r = solve_distinct(inst);
    const long n = static_cast<long>(inst.lines.size());
    for (const auto& v : r.vertices) REQUIRE(v.level + v.upper + v.degree == n);
  }
}
