// Symbolic parallel-shift perturbation.
//
// Copy number i of an input line y = a*x + b becomes the handle
// y = a*x + b + eps_i, where eps_1 >> eps_2 >> ... >> eps_n are positive
// infinitesimals. Handles sharing (a, b) stay parallel; every other
// degeneracy disappears: no two crossings share an x-coordinate and no
// three pairwise non-parallel handles are concurrent. Comparisons are
// resolved lexicographically: exact main term first, then the eps
// coefficients in ascending index order (the largest infinitesimal wins).

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "arrmax/core.hpp"

namespace arrmax {

struct Handle {
  int eps = 0;    // 1-based infinitesimal index, assigned in input-copy order
  Rat a, b;       // unperturbed coefficients
  int gamma = 0;  // F: index of the distinct line this handle overlaps
};

// One handle per input copy, eps indices 1..n in expanded input order.
std::vector<Handle> perturb(const DedupView& dd);

// An x-coordinate of the perturbed arrangement: main + sum coeff_i * eps_i.
struct PerturbedX {
  Rat main;
  std::vector<std::pair<int, Rat>> eps;  // ascending index, nonzero coeffs

  void add_eps(int idx, Rat coeff);  // keeps order, drops zeros
};

// -1 / 0 / +1; zero only for syntactically identical expressions.
int cmp(const PerturbedX& x1, const PerturbedX& x2);

// x-coordinate of the crossing of two non-parallel handles:
//   main (b_i - b_j)/(a_j - a_i), eps_i coefficient +1/(a_j - a_i),
//   eps_j coefficient -1/(a_j - a_i).
PerturbedX perturbed_intersection_x(const Handle& hi, const Handle& hj);

// Vertical order of two parallel handles (equal slopes): sign of
// (b1 + eps_1) - (b2 + eps_2). Positive when h1 is the higher line.
int cmp_parallel(const Handle& h1, const Handle& h2);

// Sign of the dual-plane orientation det with perturbed intercepts:
//   | a_j - a_i   (b_j + eps_j) - (b_i + eps_i) |
//   | a_m - a_i   (b_m + eps_m) - (b_i + eps_i) |
// For slopes a_i < a_j < a_m this is negative exactly when handle j shows
// on the upper envelope of the three. Never zero for distinct handles
// with pairwise distinct slopes.
int dual_orient(const Handle& hi, const Handle& hj, const Handle& hm);

// True when h1 is above h2 at x = -infinity (slope descending order,
// ties by intercept-plus-eps).
bool above_at_minus_inf(const Handle& h1, const Handle& h2);

}  // namespace arrmax
