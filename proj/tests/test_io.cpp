#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "arrmax/io.hpp"
#include "doctest.h"

using namespace arrmax;

TEST_CASE("instance parsing") {
  auto r = parse_instance("# a comment\nL 1 0\nL -1/2 3 2\nV 0.5\n\nL 2.25 -1 # tail note\n");
  REQUIRE(std::holds_alternative<Instance>(r));
  const Instance& inst = std::get<Instance>(r);
  REQUIRE(inst.lines.size() == 3);
  CHECK(inst.lines[0].a == Rat(1));
  CHECK(inst.lines[1].a == rat(-1, 2));
  CHECK(inst.mult_of(inst.lines[1].id) == 2);
  CHECK(inst.lines[2].a == rat(9, 4));
  REQUIRE(inst.verticals.size() == 1);
  CHECK(inst.verticals[0].x0 == rat(1, 2));
  CHECK(inst.copies_total() == 5);
}

TEST_CASE("parse errors carry line numbers") {
  auto r1 = parse_instance("L 1 0\nQ 3\n");
  REQUIRE(std::holds_alternative<ParseFailure>(r1));
  CHECK(std::get<ParseFailure>(r1).line == 2);
  auto r2 = parse_instance("L 1\n");
  CHECK(std::get<ParseFailure>(r2).line == 1);
  auto r3 = parse_instance("L 1 0 0\n");  // mult must be >= 1
  CHECK(std::get<ParseFailure>(r3).line == 1);
  auto r4 = parse_instance("V 1/0\n");
  CHECK(std::get<ParseFailure>(r4).line == 1);
  auto r5 = parse_instance("L 1 2 3 4\n");
  CHECK(std::get<ParseFailure>(r5).line == 1);
}

TEST_CASE("format/parse round trip is exact") {
  for (std::uint64_t seed = 700; seed < 712; ++seed) {
    Instance inst = gen_random(12, seed, GenBias{0.3, 0.3, 0.3});
    if (seed % 3 == 0) {
      inst.verticals.push_back(VerticalLine{1000, rat(7, 3)});
      inst.mult[1000] = 2;
    }
    auto r = parse_instance(format_instance(inst));
    REQUIRE(std::holds_alternative<Instance>(r));
    const Instance& back = std::get<Instance>(r);
    REQUIRE(back.lines.size() == inst.lines.size());
    for (size_t i = 0; i < inst.lines.size(); ++i) {
      CHECK(back.lines[i].a == inst.lines[i].a);
      CHECK(back.lines[i].b == inst.lines[i].b);
      CHECK(back.mult_of(back.lines[i].id) == inst.mult_of(inst.lines[i].id));
    }
    REQUIRE(back.verticals.size() == inst.verticals.size());
    for (size_t i = 0; i < inst.verticals.size(); ++i) {
      CHECK(back.verticals[i].x0 == inst.verticals[i].x0);
      CHECK(back.mult_of(back.verticals[i].id) == inst.mult_of(inst.verticals[i].id));
    }
  }
}

TEST_CASE("result json is deterministic and vertices are sorted") {
  Instance inst = std::get<Instance>(parse_instance("L 1 0\nL -1 0\nL 0 1\n"));
  MaxLevelResult res = solve_distinct(inst);
  SolveMeta meta;
  meta.n = inst.copies_total();
  meta.mode = "distinct";
  std::string a = result_to_json(res, meta);
  std::string b = result_to_json(solve_distinct(inst), meta);
  CHECK(a == b);
  CHECK(a.find("\"schema\": 1") != std::string::npos);
  CHECK(a.find("\"max_level\": 1") != std::string::npos);
  CHECK(a.find("\"-1\"") < a.find("\"1\""));  // (x,y)-sorted
  CHECK(a.find("\"timings_ms\": null") != std::string::npos);

  meta.include_timings = true;
  meta.timings_ms = {{"parse", 0.5}, {"solve", 1.5}};
  std::string c = result_to_json(res, meta);
  CHECK(c.find("timings_ms") != std::string::npos);
  CHECK(c.find("parse") != std::string::npos);
}

TEST_CASE("chain json uses original ids") {
  Instance inst = std::get<Instance>(parse_instance("L 1 0\nL -1 0\n"));
  DedupView dd = dedup(inst);
  auto hs = perturb(dd);
  LevelChain env = build_pi_k(hs, dd, 0);
  std::string j = chain_to_json(env, dd, true);
  CHECK(j.find("\"edges\": [") != std::string::npos);
  CHECK(j.find("\"turns\": true") != std::string::npos);
  CHECK(j.find("\"k\": 0") != std::string::npos);
}

TEST_CASE("svg output") {
  Instance inst = std::get<Instance>(parse_instance("L 1 0\nL -1 0\nL 0 1\n"));
  MaxLevelResult res = solve_distinct(inst);
  PlotOptions opt;
  opt.mark_max = true;
  opt.result = &res;
  std::string svg = svg_plot(inst, opt);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 5);
  // three lines, two marked vertices
  size_t lines = 0, circles = 0;
  for (size_t p = 0; (p = svg.find("<line", p)) != std::string::npos; ++p) ++lines;
  for (size_t p = 0; (p = svg.find("<circle", p)) != std::string::npos; ++p) ++circles;
  CHECK(lines == 3);
  CHECK(circles == 2);
  CHECK(svg == svg_plot(inst, opt));  // deterministic

  Instance par = std::get<Instance>(parse_instance("L 0 0\nL 0 1\n"));
  PlotOptions none;
  std::string svg2 = svg_plot(par, none);
  CHECK(svg2.find("no vertices") != std::string::npos);
}
