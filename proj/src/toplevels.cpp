#include "arrmax/toplevels.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace arrmax {

namespace {

// Height of handle h at a perturbed abscissa: a*x + b + eps_h.
PerturbedX height_at(const Handle& h, const PerturbedX& x) {
  PerturbedX v;
  v.main = h.a * x.main + h.b;
  if (sgn(h.a) != 0) {
    v.eps.reserve(x.eps.size() + 1);
    for (const auto& [idx, c] : x.eps) v.eps.push_back({idx, h.a * c});
  }
  v.add_eps(h.eps, Rat(1));
  return v;
}

}  // namespace

PeelDecomposition peel(std::span<const Handle> handles, int k) {
  if (k < 1) throw BadK("peel: layer count must be >= 1");
  const int n = static_cast<int>(handles.size());
  PeelDecomposition pd;
  pd.layer_of.assign(n, -1);
  pd.rank_of.assign(n, -1);

  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  // Slope ascending; within a parallel group the highest copy first.
  std::sort(remaining.begin(), remaining.end(), [&](int i, int j) {
    if (int c = cmp(handles[i].a, handles[j].a); c != 0) return c < 0;
    return cmp_parallel(handles[i], handles[j]) > 0;
  });

  while (static_cast<int>(pd.layers.size()) < k && !remaining.empty()) {
    // Only the top copy of each parallel group can reach the envelope.
    std::vector<int> tops;
    for (size_t i = 0; i < remaining.size(); ++i)
      if (i == 0 || handles[remaining[i]].a != handles[remaining[i - 1]].a)
        tops.push_back(remaining[i]);

    // Upper hull in the dual plane; dual_orient < 0 keeps the middle point
    // strictly above the chord (ties are impossible after perturbation).
    std::vector<int> hull;
    for (int t : tops) {
      while (hull.size() >= 2 &&
             dual_orient(handles[hull[hull.size() - 2]], handles[hull.back()], handles[t]) >= 0)
        hull.pop_back();
      hull.push_back(t);
    }

    int layer = static_cast<int>(pd.layers.size());
    for (size_t r = 0; r < hull.size(); ++r) {
      pd.layer_of[hull[r]] = layer;
      pd.rank_of[hull[r]] = static_cast<int>(r);
    }
    pd.layers.push_back(hull);

    std::vector<int> next;
    next.reserve(remaining.size() - hull.size());
    for (int h : remaining)
      if (pd.layer_of[h] == -1) next.push_back(h);
    remaining = std::move(next);
  }
  pd.layers_exhausted = remaining.empty();
  return pd;
}

namespace {

// State of one peel layer while tracing a single chain: the contiguous
// range [lo, hi] of layer lines strictly above the current chain point
// (heights along a convex-position layer are strictly concave in slope
// rank, so the above-set is always contiguous), plus the layer's
// upper-envelope position `peak`, maintained lazily while the range is
// empty.
struct LayerState {
  int lo = 0, hi = -1;
  int peak = 0;
  bool empty() const { return lo > hi; }
};

class ChainTracer {
 public:
  ChainTracer(std::span<const Handle> hs, const PeelDecomposition& pd, int k)
      : hs_(hs), pd_(pd), k_(k) {
    nlayers_ = std::min<int>(k + 1, static_cast<int>(pd.layers.size()));
    st_.resize(nlayers_);
  }

  PerturbedChain run() {
    init();
    PerturbedChain chain;
    chain.k = k_;
    chain.edges.push_back(support_);
    while (step(chain)) {
    }
    return chain;
  }

 private:
  std::span<const Handle> hs_;
  const PeelDecomposition& pd_;
  int k_, nlayers_;
  std::vector<LayerState> st_;
  int support_ = -1;
  PerturbedX cur_;
  bool at_start_ = true;

  // candidate accumulator for one step
  bool have_best_ = false;
  int best_handle_ = -1;
  PerturbedX best_x_;

  void init() {
    std::vector<int> unions;
    for (int li = 0; li < nlayers_; ++li)
      unions.insert(unions.end(), pd_.layers[li].begin(), pd_.layers[li].end());
    ARRMAX_CHECK(static_cast<int>(unions.size()) >= k_ + 1, "peel union smaller than level index");
    // (k+1)-st highest at x = -infinity
    std::nth_element(unions.begin(), unions.begin() + k_, unions.end(), [&](int i, int j) {
      return above_at_minus_inf(hs_[i], hs_[j]);
    });
    support_ = unions[k_];

    for (int li = 0; li < nlayers_; ++li) {
      const auto& layer = pd_.layers[li];
      // Lines above the start line at -infinity form a slope prefix.
      int c = 0;
      while (c < static_cast<int>(layer.size()) &&
             above_at_minus_inf(hs_[layer[c]], hs_[support_]))
        ++c;
      st_[li].lo = 0;
      st_[li].hi = c - 1;
      st_[li].peak = 0;
    }
  }

  void propose(int m) {
    if (m < 0 || m == support_) return;
    const Handle& hm = hs_[m];
    const Handle& hsup = hs_[support_];
    if (hm.a == hsup.a) return;  // parallel, never crosses
    PerturbedX x = perturbed_intersection_x(hsup, hm);
    if (!at_start_ && cmp(x, cur_) <= 0) return;
    if (!have_best_ || cmp(x, best_x_) < 0) {
      have_best_ = true;
      best_handle_ = m;
      best_x_ = std::move(x);
    }
  }

  int layer_line(int li, int rank) const {
    const auto& layer = pd_.layers[li];
    return rank >= 0 && rank < static_cast<int>(layer.size()) ? layer[rank] : -1;
  }

  // First layer line hit by the support ray when the whole layer lies
  // strictly below the chain point: binary-search the layer's upper
  // envelope for the edge the support line dips under.
  int contact_below(int li) {
    const auto& layer = pd_.layers[li];
    const int m = static_cast<int>(layer.size());
    LayerState& S = st_[li];
    if (m == 1) return layer[0];
    auto breakpoint = [&](int t) {
      return perturbed_intersection_x(hs_[layer[t]], hs_[layer[t + 1]]);
    };
    if (!at_start_) {
      while (S.peak < m - 1 && cmp(breakpoint(S.peak), cur_) <= 0) ++S.peak;
    }
    if (S.peak == m - 1) return layer[m - 1];
    auto support_dips_at = [&](int t) {
      PerturbedX b = breakpoint(t);
      return cmp(height_at(hs_[support_], b), height_at(hs_[layer[t]], b)) < 0;
    };
    int lo = S.peak, hi = m - 1;  // answer in [lo, hi]; hi means "beyond last breakpoint"
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (support_dips_at(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    return layer[lo];
  }

  bool step(PerturbedChain& chain) {
    have_best_ = false;
    const int sup_layer = pd_.layer_of[support_];
    const int sup_rank = pd_.rank_of[support_];
    for (int li = 0; li < nlayers_; ++li) {
      LayerState& S = st_[li];
      if (li == sup_layer) {
        propose(layer_line(li, sup_rank - 1));
        propose(layer_line(li, sup_rank + 1));
        if (!S.empty()) {
          propose(layer_line(li, S.lo));
          propose(layer_line(li, S.hi));
          propose(layer_line(li, S.lo - 1));
          propose(layer_line(li, S.hi + 1));
        }
      } else if (!S.empty()) {
        propose(layer_line(li, S.lo));
        propose(layer_line(li, S.hi));
        propose(layer_line(li, S.lo - 1));
        propose(layer_line(li, S.hi + 1));
      } else {
        propose(contact_below(li));
      }
    }
    if (!have_best_) return false;

    const int m = best_handle_;
    chain.verts.push_back(PerturbedChainVertex{
        support_, m, best_x_,
        Point{best_x_.main, hs_[support_].a * best_x_.main + hs_[support_].b}});
    chain.edges.push_back(m);

    // Range updates. Descending crosser: m leaves its layer's above-range
    // and the old support joins its own layer's range; ascending crosser:
    // the old support drops below the chain.
    const bool m_was_above = hs_[m].a < hs_[support_].a;
    if (m_was_above) {
      LayerState& Sm = st_[pd_.layer_of[m]];
      const int rm = pd_.rank_of[m];
      if (rm == Sm.lo)
        ++Sm.lo;
      else if (rm == Sm.hi)
        --Sm.hi;
      else
        throw BoundViolated("tracer: descending line not at an above-range end");
      if (Sm.empty()) Sm.peak = rm;

      LayerState& Ss = st_[sup_layer];
      if (Ss.empty()) {
        Ss.lo = Ss.hi = sup_rank;
      } else if (sup_rank == Ss.lo - 1) {
        --Ss.lo;
      } else if (sup_rank == Ss.hi + 1) {
        ++Ss.hi;
      } else {
        throw BoundViolated("tracer: support not adjacent to its above-range");
      }
    } else {
      LayerState& Ss = st_[sup_layer];
      if (Ss.empty()) Ss.peak = sup_rank;
    }
    support_ = m;
    cur_ = std::move(best_x_);
    at_start_ = false;
    return true;
  }
};

}  // namespace

PerturbedChain trace_upper_level(std::span<const Handle> handles, const PeelDecomposition& pd,
                                 int k) {
  if (k < 0 || k >= static_cast<int>(handles.size())) throw BadK("level index out of range");
  if (!pd.covers_level(k)) throw BadK("peel decomposition too shallow for this level");
  return ChainTracer(handles, pd, k).run();
}

Rat LevelChain::value_at(const Rat& x, std::span<const Line> gamma_lines) const {
  size_t e = 0;
  for (const ChainVertex& v : verts) {
    if (!v.turns) continue;
    if (v.p.x < x)
      e = v.left_edge + 1;
    else
      break;
  }
  return gamma_lines[edges[e]].at(x);
}

LevelChain deperturb_chain(const PerturbedChain& chain, std::span<const Handle> handles) {
  LevelChain out;
  out.k = chain.k;
  const size_t V = chain.verts.size();
  if (V == 0) {
    out.edges.push_back(handles[chain.edges[0]].gamma);
    return out;
  }

  // Edge i spans verts[i-1]..verts[i]; the two rays are never infinitesimal.
  const size_t E = chain.edges.size();
  std::vector<size_t> kept;
  kept.push_back(0);
  for (size_t e = 1; e + 1 < E; ++e)
    if (chain.verts[e - 1].main.x != chain.verts[e].main.x) kept.push_back(e);
  kept.push_back(E - 1);

  int cur_gamma = handles[chain.edges[kept[0]]].gamma;
  for (size_t s = 0; s + 1 < kept.size(); ++s) {
    const size_t e = kept[s], e2 = kept[s + 1];
    // collapsed vertices between the two kept edges share one main point
    const Point& p = chain.verts[e].main;
    ARRMAX_CHECK(chain.verts[e2 - 1].main == p, "collapsed cluster spans distinct points");
    std::set<int> inc;
    for (size_t v = e; v < e2; ++v) {
      inc.insert(handles[chain.verts[v].h_from].gamma);
      inc.insert(handles[chain.verts[v].h_to].gamma);
    }
    int g2 = handles[chain.edges[e2]].gamma;
    ChainVertex cv;
    cv.p = p;
    cv.incident.assign(inc.begin(), inc.end());
    if (g2 == cur_gamma) {
      cv.turns = false;
      cv.left_edge = static_cast<int>(out.edges.size());
    } else {
      cv.turns = true;
      cv.left_edge = static_cast<int>(out.edges.size());
      out.edges.push_back(cur_gamma);
      cur_gamma = g2;
    }
    out.verts.push_back(std::move(cv));
  }
  out.edges.push_back(cur_gamma);
  return out;
}

TopKRegion build_top_k_region(std::span<const Handle> handles, int k) {
  const int n = static_cast<int>(handles.size());
  if (k < 0 || k >= n) throw BadK("region level out of range");
  PeelDecomposition pd = peel(handles, k + 1);

  TopKRegion region;
  region.k = k;
  region.n_handles = n;

  struct Cluster {
    int u = INT_MAX;
    std::set<int> hset;
  };
  std::map<Point, Cluster> clusters;
  std::unordered_set<uint64_t> seen_pairs;

  for (int j = 0; j <= k; ++j) {
    PerturbedChain chain = trace_upper_level(handles, pd, j);
    for (const PerturbedChainVertex& v : chain.verts) {
      int a = std::min(v.h_from, v.h_to), b = std::max(v.h_from, v.h_to);
      if (!seen_pairs.insert(static_cast<uint64_t>(a) * n + b).second) continue;
      Cluster& cl = clusters[v.main];
      cl.u = std::min(cl.u, j);  // first sighting is on chain u(v)
      cl.hset.insert(a);
      cl.hset.insert(b);
    }
    if (j == k) region.boundary = std::move(chain);
  }

  region.verts.reserve(clusters.size());
  for (auto& [p, cl] : clusters) {
    RegionVertex rv;
    rv.p = p;
    std::set<int> gs;
    for (int h : cl.hset) gs.insert(handles[h].gamma);
    rv.gammas.assign(gs.begin(), gs.end());
    rv.u = cl.u;
    rv.d = static_cast<int>(rv.gammas.size());
    // Complete discovery is guaranteed when every crossing of the cluster
    // lies on a traced chain: u + #handles <= k, or all levels traced.
    rv.trusted = cl.u + static_cast<int>(cl.hset.size()) <= k || k == n - 1;
    region.verts.push_back(std::move(rv));
  }
  return region;
}

}  // namespace arrmax
