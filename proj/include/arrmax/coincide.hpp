// Maximum-level vertices when input lines may coincide.
//
// The level of a point is the multiplicity-weighted count of distinct
// lines strictly below it, and an edge of multiplicity mu spans mu
// consecutive levels. The solver perturbs all n copies, binary-searches
// the upper levels for the first index k0 whose level curve pi_k has a
// vertex of the deduplicated arrangement strictly above it, and reads the
// answer off the lower envelope of the line portions above pi_{k0}.

#pragma once

#include "arrmax/solver.hpp"
#include "arrmax/toplevels.hpp"

namespace arrmax {

// Does the edge of gamma through abscissa x belong to upper level k of the
// multiset arrangement: U(p) <= k < U(p) + mu(gamma), with U the weighted
// count strictly above p = (x, gamma(x)).
bool upper_membership(int gamma, const Rat& x, long k, const DedupView& dd);

// The k-th upper level of the multiset arrangement as an unperturbed
// chain over the distinct lines (trace the perturbed level, then collapse).
LevelChain build_pi_k(std::span<const Handle> handles, const DedupView& dd, int k);

struct DeltaSegment {
  Point l, r;  // l.x < r.x
  int gamma;
};

struct SegmentSet {
  std::vector<DeltaSegment> segs;
};

// All maximal portions of distinct lines strictly above pi'_k (pi_k with
// its rays replaced by upward verticals at bl_x/br_x), each reported once
// regardless of multiplicity.
SegmentSet build_delta_k(const LevelChain& pi, const DedupView& dd, const Rat& bl_x,
                         const Rat& br_x);

// Is there a pair of segments crossing at a point interior to both (such
// a crossing is a vertex strictly above pi_k)?
bool has_detached(const SegmentSet& delta);

enum class SearchStrategy { Binary, Exponential };

MaxLevelResult solve_coincide(const Instance& inst, SearchStrategy strategy);

}  // namespace arrmax
