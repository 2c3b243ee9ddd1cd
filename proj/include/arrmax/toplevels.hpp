// Top levels of the perturbed (general-position) arrangement: peeling into
// convex-position layers, tracing the k-th upper level, collecting every
// vertex on or above it, and collapsing perturbed level chains back into
// the original degenerate arrangement.
//
// Levels are 0-indexed: level 0 is the upper envelope; an edge is at upper
// level j when exactly j handles pass strictly above it.

#pragma once

#include <span>
#include <vector>

#include "arrmax/perturb.hpp"

namespace arrmax {

// Result of the iterative peeling process. Layer i holds the handles on
// the upper envelope once layers 0..i-1 are removed; every line of layer i
// therefore has at least i handles above it everywhere, so the top k
// levels only involve layers 0..k.
struct PeelDecomposition {
  std::vector<std::vector<int>> layers;  // handle indices, slope ascending
  std::vector<int> layer_of;             // handle -> layer, -1 if not peeled
  std::vector<int> rank_of;              // handle -> position within its layer

  bool covers_level(int k) const {
    return static_cast<int>(layers.size()) >= k + 1 || layers_exhausted;
  }
  bool layers_exhausted = false;  // every handle assigned
};

// Peels up to k layers (fewer if the handles run out). k >= 1 or BadK.
PeelDecomposition peel(std::span<const Handle> handles, int k);

struct PerturbedChainVertex {
  int h_from, h_to;  // handles of the edges meeting here (in trace order)
  PerturbedX x;
  Point main;  // exact main-term coordinates (a vertex of the unperturbed arrangement)
};

// A level of the perturbed arrangement, traced left to right. The chain
// turns at every vertex; edges[i] and edges[i+1] meet at verts[i].
struct PerturbedChain {
  int k = 0;
  std::vector<int> edges;  // handle indices, size verts.size() + 1
  std::vector<PerturbedChainVertex> verts;
};

// Exact k-th upper level of the perturbed arrangement. The decomposition
// must cover level k. Throws BadK when k < 0 or k >= #handles.
PerturbedChain trace_upper_level(std::span<const Handle> handles, const PeelDecomposition& peel,
                                 int k);

// A level chain of the *unperturbed* arrangement: infinitesimal edges
// deleted, consecutive collinear pieces merged. Vertices record both turn
// breakpoints and straight-through passages, with the incident distinct
// lines seen while collapsing (complete for turns; for pass-throughs only
// the lines that produced infinitesimal edges are known).
struct ChainVertex {
  Point p;
  std::vector<int> incident;  // gamma indices, sorted unique
  bool turns = false;
  int left_edge = 0;  // index into LevelChain::edges of the edge ending or passing here
};

struct LevelChain {
  int k = 0;
  std::vector<int> edges;          // gamma indices, size = #turn vertices + 1
  std::vector<ChainVertex> verts;  // x strictly increasing

  // Height of the chain at x (gamma_lines indexed by gamma id).
  Rat value_at(const Rat& x, std::span<const Line> gamma_lines) const;
  // Supporting gamma of the edge left/right of vertex v.
  int support_left(size_t v) const { return edges[verts[v].left_edge]; }
  int support_right(size_t v) const {
    return edges[verts[v].turns ? verts[v].left_edge + 1 : verts[v].left_edge];
  }
};

// Collapse a perturbed chain through F (handle -> gamma). The result is the
// corresponding level of the unperturbed arrangement.
LevelChain deperturb_chain(const PerturbedChain& chain, std::span<const Handle> handles);

// All vertices of the unperturbed arrangement lying on or above its k-th
// upper level, found by tracing the perturbed levels 0..k and collapsing
// crossings that share their main-term point.
struct RegionVertex {
  Point p;
  std::vector<int> gammas;  // distinct lines discovered through this point
  int u = 0;                // upper level (exact whenever trusted)
  int d = 0;                // discovered degree
  bool trusted = false;     // d (hence u + d) is known to be complete
};

struct TopKRegion {
  int k = 0;
  int n_handles = 0;
  std::vector<RegionVertex> verts;  // sorted by (x, y)
  PerturbedChain boundary;          // the perturbed k-th upper level
};

TopKRegion build_top_k_region(std::span<const Handle> handles, int k);

}  // namespace arrmax
