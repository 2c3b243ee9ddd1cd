#include "arrmax/io.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace arrmax {

using ordered_json = nlohmann::ordered_json;

std::variant<Instance, ParseFailure> parse_instance(std::string_view text) {
  Instance inst;
  int next_id = 1;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(raw);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    auto need_rat = [&](const char* what) -> std::optional<Rat> {
      std::string s;
      if (!(ls >> s)) return std::nullopt;
      auto r = parse_rat(s);
      if (!r) return std::nullopt;
      (void)what;
      return r;
    };
    auto opt_mult = [&]() -> std::optional<long> {
      std::string s;
      if (!(ls >> s)) return 1;
      if (s[0] == '#') {
        ls.str("");
        return 1;
      }
      try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size() || v < 1) return std::nullopt;
        return v;
      } catch (...) {
        return std::nullopt;
      }
    };
    if (tok == "L") {
      auto a = need_rat("slope"), b = need_rat("intercept");
      if (!a || !b) return ParseFailure{line_no, "expected `L <a> <b> [mult]`"};
      auto m = opt_mult();
      if (!m) return ParseFailure{line_no, "bad multiplicity"};
      inst.lines.push_back(Line{next_id, *a, *b});
      inst.mult[next_id] = *m;
      ++next_id;
    } else if (tok == "V") {
      auto x0 = need_rat("x0");
      if (!x0) return ParseFailure{line_no, "expected `V <x0> [mult]`"};
      auto m = opt_mult();
      if (!m) return ParseFailure{line_no, "bad multiplicity"};
      inst.verticals.push_back(VerticalLine{next_id, *x0});
      inst.mult[next_id] = *m;
      ++next_id;
    } else {
      return ParseFailure{line_no, "unknown record `" + tok + "`"};
    }
    std::string extra;
    if (ls >> extra && extra[0] != '#')
      return ParseFailure{line_no, "trailing token `" + extra + "`"};
  }
  return inst;
}

std::string format_instance(const Instance& inst) {
  std::string out;
  for (const Line& l : inst.lines) {
    out += "L " + rat_str(l.a) + " " + rat_str(l.b);
    if (long m = inst.mult_of(l.id); m != 1) out += " " + std::to_string(m);
    out += "\n";
  }
  for (const VerticalLine& v : inst.verticals) {
    out += "V " + rat_str(v.x0);
    if (long m = inst.mult_of(v.id); m != 1) out += " " + std::to_string(m);
    out += "\n";
  }
  return out;
}

namespace {

const char* case_str(CaseTag t) {
  switch (t) {
    case CaseTag::CaseI: return "I";
    case CaseTag::CaseII: return "II";
    default: return "no-vertex";
  }
}

ordered_json vertex_json(const Point& p, int degree, long level, bool vertical) {
  ordered_json v;
  v["x"] = rat_str(p.x);
  v["y"] = rat_str(p.y);
  v["degree"] = degree;
  v["level"] = level;
  v["source"] = vertical ? "vertical" : "regular";
  return v;
}

}  // namespace

std::string result_to_json(const MaxLevelResult& res, const SolveMeta& meta) {
  ordered_json j;
  j["schema"] = 1;
  j["n"] = meta.n;
  j["mode"] = meta.mode;
  j["case"] = case_str(res.tag);
  if (res.has_vertices)
    j["max_level"] = res.max_level;
  else
    j["max_level"] = nullptr;
  if (res.k0)
    j["k0"] = *res.k0;
  else
    j["k0"] = nullptr;
  if (meta.search.empty())
    j["search"] = nullptr;
  else
    j["search"] = meta.search;
  j["vertices"] = ordered_json::array();
  for (const auto& v : res.vertices)
    j["vertices"].push_back(vertex_json(v.p, v.degree, v.level, v.from_vertical));
  if (meta.include_timings) {
    ordered_json t;
    for (const auto& [k, v] : meta.timings_ms) t[k] = v;
    j["timings_ms"] = t;
  } else {
    j["timings_ms"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string oracle_to_json(const OracleResult& res, long n) {
  ordered_json j;
  j["schema"] = 1;
  j["n"] = n;
  j["mode"] = "oracle";
  if (res.has_vertices)
    j["max_level"] = res.max_level;
  else
    j["max_level"] = nullptr;
  j["vertices"] = ordered_json::array();
  for (const auto& v : res.max_vertices) {
    bool vertical_only = true;  // classified by degree vs non-vertical through-count below
    (void)vertical_only;
    j["vertices"].push_back(vertex_json(v.p, v.degree, v.level, false));
  }
  return j.dump(2) + "\n";
}

std::string chain_to_json(const LevelChain& chain, const DedupView& dd, bool upper) {
  auto orig = [&](int g) { return dd.orig_id[g]; };
  auto pt = [&](const Point& p) {
    return upper ? p : Point{p.x, -p.y};  // lower levels are computed reflected
  };
  ordered_json j;
  j["schema"] = 1;
  j["k"] = chain.k;
  j["upper"] = upper;
  j["edges"] = ordered_json::array();
  for (int g : chain.edges) j["edges"].push_back(orig(g));
  j["vertices"] = ordered_json::array();
  for (const auto& v : chain.verts) {
    ordered_json vj;
    Point p = pt(v.p);
    vj["x"] = rat_str(p.x);
    vj["y"] = rat_str(p.y);
    vj["turns"] = v.turns;
    vj["incident"] = ordered_json::array();
    for (int g : v.incident) vj["incident"].push_back(orig(g));
    j["vertices"].push_back(vj);
  }
  return j.dump(2) + "\n";
}

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string svg_plot(const Instance& inst, const PlotOptions& opt) {
  // Bounding box of all arrangement vertices, padded 20%.
  DedupView dd = dedup(inst);
  std::vector<Point> verts;
  for (size_t i = 0; i < dd.gamma.size(); ++i)
    for (size_t j = i + 1; j < dd.gamma.size(); ++j)
      if (dd.gamma[i].a != dd.gamma[j].a) verts.push_back(cross(dd.gamma[i], dd.gamma[j]));
  for (const auto& v : inst.verticals)
    if (!dd.gamma.empty()) {
      Rat top = dd.gamma[0].at(v.x0);
      for (const auto& g : dd.gamma) top = std::max(top, g.at(v.x0));
      verts.push_back(Point{v.x0, top});
    }

  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  if (!verts.empty()) {
    x0 = x1 = approx(verts[0].x);
    y0 = y1 = approx(verts[0].y);
    for (const Point& p : verts) {
      x0 = std::min(x0, approx(p.x));
      x1 = std::max(x1, approx(p.x));
      y0 = std::min(y0, approx(p.y));
      y1 = std::max(y1, approx(p.y));
    }
  }
  double padx = (x1 - x0) * 0.2 + 1e-9, pady = (y1 - y0) * 0.2 + 1e-9;
  double pad = std::max(padx, pady);
  x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
  if (x1 - x0 < 2 * pad) x0 -= 1, x1 += 1;
  if (y1 - y0 < 2 * pad) y0 -= 1, y1 += 1;

  const double W = 900, H = 700;
  auto sx = [&](double x) { return (x - x0) / (x1 - x0) * W; };
  auto sy = [&](double y) { return H - (y - y0) / (y1 - y0) * H; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"700\" viewBox=\"0 0 900 700\">\n";
  s += "<rect width=\"900\" height=\"700\" fill=\"white\"/>\n";

  auto emit_seg = [&](double ax, double ay, double bx, double by, const char* style) {
    s += "<line x1=\"" + fmt12(sx(ax)) + "\" y1=\"" + fmt12(sy(ay)) + "\" x2=\"" + fmt12(sx(bx)) +
         "\" y2=\"" + fmt12(sy(by)) + "\" " + style + "/>\n";
  };

  // Non-vertical lines clipped to the box in x (y overflow is clipped by
  // the viewport).
  for (const auto& g : dd.gamma) {
    double a = approx(g.a), b = approx(g.b);
    emit_seg(x0, a * x0 + b, x1, a * x1 + b, "stroke=\"#777\" stroke-width=\"1\"");
  }
  for (const auto& v : inst.verticals) {
    double x = approx(v.x0);
    emit_seg(x, y0, x, y1, "stroke=\"#777\" stroke-width=\"1\"");
  }

  if (opt.chain) {
    const LevelChain& c = *opt.chain;
    const DedupView& cdd = opt.chain_dd ? *opt.chain_dd : dd;
    std::vector<std::pair<double, double>> pts;
    std::vector<Point> turns;
    for (const auto& v : c.verts)
      if (v.turns) turns.push_back(v.p);
    double from_x = x0;
    for (size_t e = 0; e < c.edges.size(); ++e) {
      const Line& gl = cdd.gamma[c.edges[e]];
      double a = approx(gl.a), b = approx(gl.b);
      double to_x = e < turns.size() ? approx(turns[e].x) : x1;
      if (e == 0) pts.push_back({from_x, a * from_x + b});
      pts.push_back({to_x, a * to_x + b});
      from_x = to_x;
    }
    std::string poly = "<polyline fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"2.5\" points=\"";
    for (auto& [px, py] : pts) poly += fmt12(sx(px)) + "," + fmt12(sy(py)) + " ";
    poly += "\"/>\n";
    s += poly;
  }

  if (opt.mark_max && opt.result && opt.result->has_vertices) {
    for (const auto& v : opt.result->vertices) {
      s += "<circle cx=\"" + fmt12(sx(approx(v.p.x))) + "\" cy=\"" + fmt12(sy(approx(v.p.y))) +
           "\" r=\"5\" fill=\"none\" stroke=\"#c42828\" stroke-width=\"2\"/>\n";
    }
  }
  if (verts.empty())
    s += "<text x=\"20\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">no vertices</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace arrmax
