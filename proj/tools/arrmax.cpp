// Command-line front end: solve instances, run the brute-force oracle,
// generate inputs, dump level chains, measure weighted levels, benchmark,
// and render SVG figures.
//
// Exit codes: 0 success, 2 parse/usage error, 3 internal invariant failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arrmax/io.hpp"

using namespace arrmax;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto parsed = parse_instance(ss.str());
  if (auto* fail = std::get_if<ParseFailure>(&parsed))
    throw UsageError(path + ":" + std::to_string(fail->line) + ": " + fail->message);
  return std::get<Instance>(std::move(parsed));
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << data;
}

void emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-")
    std::cout << data;
  else
    write_file(path, data);
}

int run(int argc, char** argv) {
  CLI::App app{"maximum-level vertices of line arrangements"};
  app.require_subcommand(1);

  // solve
  std::string file, mode = "auto", search = "binary", json_path;
  bool timings = false;
  auto* solve = app.add_subcommand("solve", "compute all maximum-level vertices");
  solve->add_option("file", file)->required();
  solve->add_option("--mode", mode)->check(CLI::IsMember({"auto", "distinct", "coincide"}));
  solve->add_option("--search", search)->check(CLI::IsMember({"binary", "exponential"}));
  solve->add_option("--json", json_path);
  solve->add_flag("--timings", timings, "include wall-clock phase timings in the JSON");

  // oracle
  std::string ofile, ojson;
  bool no_cap = false;
  auto* oracle = app.add_subcommand("oracle", "brute-force reference answer");
  oracle->add_option("file", ofile)->required();
  oracle->add_option("--json", ojson);
  oracle->add_flag("--no-cap", no_cap, "lift the default size cap");

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  int lb_t = 2;
  std::string gen_out;
  auto* lb = gen->add_subcommand("lowerbound", "logarithmic lower-bound construction");
  lb->add_option("--t", lb_t)->required();
  lb->add_option("--out", gen_out);
  int rn_n = 10;
  std::uint64_t rn_seed = 1;
  double b_conc = 0, b_par = 0, b_dup = 0;
  auto* rnd = gen->add_subcommand("random", "reproducible random instance");
  rnd->add_option("--n", rn_n)->required();
  rnd->add_option("--seed", rn_seed)->required();
  rnd->add_option("--concurrent", b_conc);
  rnd->add_option("--parallel", b_par);
  rnd->add_option("--duplicate", b_dup);
  rnd->add_option("--out", gen_out);
  int cii_pencil = 6, cii_low = 2;
  std::uint64_t cii_seed = 1;
  bool cii_pk = false;
  auto* cii = gen->add_subcommand("caseii", "single-envelope-vertex shape");
  cii->add_option("--pencil", cii_pencil);
  cii->add_option("--low", cii_low);
  cii->add_option("--seed", cii_seed);
  cii->add_flag("--parallel-k", cii_pk);
  cii->add_option("--out", gen_out);

  // levels
  std::string lfile, ljson;
  int lk = 0;
  bool lupper = false;
  auto* levels = app.add_subcommand("levels", "emit the k-level as a JSON polyline");
  levels->add_option("file", lfile)->required();
  levels->add_option("--k", lk)->required();
  levels->add_flag("--upper", lupper);
  levels->add_option("--json", ljson);

  // weighted
  std::string wfile;
  int wk = 0;
  auto* weighted = app.add_subcommand("weighted", "weighted complexity of the k-level");
  weighted->add_option("file", wfile)->required();
  weighted->add_option("--k", wk)->required();

  // bench
  std::string bfamily = "random", bsizes = "256,512,1024", bout;
  int brepeats = 3;
  auto* bench = app.add_subcommand("bench", "scaling measurements (CSV)");
  bench->add_option("--family", bfamily)
      ->check(CLI::IsMember({"random", "mixed", "concurrent", "parallel", "caseii", "lowerbound"}));
  bench->add_option("--sizes", bsizes);
  bench->add_option("--repeats", brepeats);
  bench->add_option("--out", bout);

  // plot
  std::string pfile, pout;
  int pk = -1;
  bool pupper = false, pmark = false;
  auto* plot = app.add_subcommand("plot", "deterministic SVG figure");
  plot->add_option("file", pfile)->required();
  plot->add_option("--out", pout)->required();
  plot->add_option("--k", pk);
  plot->add_flag("--upper", pupper);
  plot->add_flag("--mark-max", pmark);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  if (solve->parsed()) {
    auto t0 = std::chrono::steady_clock::now();
    Instance inst = load_instance(file);
    double parse_ms = ms_since(t0);
    bool dup = inst.has_duplicates() || [&] {
      std::set<Rat> vx;
      for (const auto& v : inst.verticals)
        if (inst.mult_of(v.id) > 1 || !vx.insert(v.x0).second) return true;
      return false;
    }();
    std::string eff_mode = mode;
    if (mode == "auto") eff_mode = dup ? "coincide" : "distinct";
    if (mode == "distinct" && dup) throw UsageError("duplicates require coincide mode");

    auto t1 = std::chrono::steady_clock::now();
    MaxLevelResult res;
    SolveMeta meta;
    meta.n = inst.copies_total();
    meta.mode = eff_mode;
    if (eff_mode == "distinct") {
      res = solve_distinct(inst);
    } else {
      res = solve_coincide(
          inst, search == "binary" ? SearchStrategy::Binary : SearchStrategy::Exponential);
      meta.search = search;
    }
    double solve_ms = ms_since(t1);

    if (!res.has_vertices) {
      std::cout << "no vertices\n";
    } else {
      std::cout << "max level " << res.max_level << " at " << res.vertices.size()
                << (res.vertices.size() == 1 ? " vertex" : " vertices") << "\n";
      for (const auto& v : res.vertices)
        std::cout << "  (" << rat_str(v.p.x) << ", " << rat_str(v.p.y) << ")  degree " << v.degree
                  << (v.from_vertical ? "  [vertical]" : "") << "\n";
    }
    if (!json_path.empty()) {
      meta.include_timings = timings;
      meta.timings_ms = {{"parse", parse_ms}, {"solve", solve_ms}};
      emit(json_path, result_to_json(res, meta));
    }
    return 0;
  }

  if (oracle->parsed()) {
    Instance inst = load_instance(ofile);
    OracleResult res = brute_force(inst, no_cap ? 0 : 1500);
    if (!res.has_vertices)
      std::cout << "no vertices\n";
    else
      std::cout << "max level " << res.max_level << " at " << res.max_vertices.size()
                << (res.max_vertices.size() == 1 ? " vertex" : " vertices") << "\n";
    if (!ojson.empty()) emit(ojson, oracle_to_json(res, inst.copies_total()));
    return 0;
  }

  if (gen->parsed()) {
    Instance inst;
    if (lb->parsed()) {
      inst = gen_lower_bound(lb_t).first;
    } else if (rnd->parsed()) {
      inst = gen_random(rn_n, rn_seed, GenBias{b_conc, b_par, b_dup});
    } else {
      inst = gen_case_ii(cii_pencil, cii_low, cii_seed, cii_pk);
    }
    emit(gen_out, format_instance(inst));
    return 0;
  }

  if (levels->parsed()) {
    Instance inst = load_instance(lfile);
    if (inst.lines.empty()) throw UsageError("levels needs non-vertical lines");
    DedupView dd = dedup(lupper ? inst : [&] {
      Instance refl;
      refl.lines.reserve(inst.lines.size());
      for (const Line& l : inst.lines) refl.lines.push_back(Line{l.id, -l.a, -l.b});
      refl.mult = inst.mult;
      return refl;
    }());
    auto handles = perturb(dd);
    LevelChain chain = build_pi_k(handles, dd, lk);
    emit(ljson, chain_to_json(chain, dd, lupper));
    return 0;
  }

  if (weighted->parsed()) {
    Instance inst = load_instance(wfile);
    WeightedStats st = weighted_level_stats(inst, wk);
    std::cout << "n " << st.n << "  k " << st.k << "  vertices " << st.vertex_count << "  omega "
              << st.weighted << "\n";
    return 0;
  }

  if (bench->parsed()) {
    std::vector<long> sizes;
    for (std::stringstream ss(bsizes); ss.good();) {
      std::string tok;
      std::getline(ss, tok, ',');
      if (!tok.empty()) sizes.push_back(std::stol(tok));
    }
    std::string csv = "family,n,k,vertices,omega,wall_ms\n";
    for (long sz : sizes) {
      for (int rep = 0; rep < brepeats; ++rep) {
        Instance inst;
        std::uint64_t seed = 1000 * static_cast<std::uint64_t>(sz) + rep;
        if (bfamily == "lowerbound")
          inst = gen_lower_bound(static_cast<int>(sz)).first;
        else if (bfamily == "concurrent")
          inst = gen_random(static_cast<int>(sz), seed, GenBias{0.8, 0.05, 0});
        else if (bfamily == "parallel")
          inst = gen_random(static_cast<int>(sz), seed, GenBias{0.05, 0.8, 0});
        else if (bfamily == "mixed")
          inst = gen_random(static_cast<int>(sz), seed, GenBias{0.3, 0.3, 0});
        else if (bfamily == "caseii")
          inst = gen_case_ii(static_cast<int>(sz), std::max(2L, sz / 8), seed);
        else
          inst = gen_random(static_cast<int>(sz), seed, GenBias{});

        const long n = static_cast<long>(inst.lines.size());
        const int k = static_cast<int>(std::min<long>(ceil_2log2(n), n - 1));
        auto t0 = std::chrono::steady_clock::now();
        MaxLevelResult res = solve_distinct(inst);
        double wall = ms_since(t0);
        (void)res;
        auto handles = perturb(dedup(inst));
        TopKRegion region = build_top_k_region(handles, k);
        WeightedStats st = weighted_level_stats(inst, k);
        csv += bfamily + "," + std::to_string(n) + "," + std::to_string(k) + "," +
               std::to_string(region.verts.size()) + "," + std::to_string(st.weighted) + "," +
               std::to_string(wall) + "\n";
      }
    }
    emit(bout, csv);
    return 0;
  }

  if (plot->parsed()) {
    Instance inst = load_instance(pfile);
    PlotOptions opt;
    MaxLevelResult res;
    LevelChain chain;
    DedupView dd;
    if (pmark) {
      bool dup = inst.has_duplicates();
      res = dup ? solve_coincide(inst, SearchStrategy::Binary) : solve_distinct(inst);
      opt.result = &res;
      opt.mark_max = true;
    }
    if (pk >= 0) {
      if (inst.lines.empty()) throw UsageError("plot --k needs non-vertical lines");
      Instance src = inst;
      if (!pupper)
        for (Line& l : src.lines) l.a = -l.a, l.b = -l.b;
      dd = dedup(src);
      auto handles = perturb(dd);
      chain = build_pi_k(handles, dd, pk);
      if (!pupper) {  // reflect the chain back for display
        for (auto& v : chain.verts) v.p.y = -v.p.y;
        for (auto& g : dd.gamma) g.a = -g.a, g.b = -g.b;
      }
      opt.chain = &chain;
      opt.chain_dd = &dd;
    }
    write_file(pout, svg_plot(inst, opt));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
