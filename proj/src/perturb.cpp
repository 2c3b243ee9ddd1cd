#include "arrmax/perturb.hpp"

#include <algorithm>

namespace arrmax {

std::vector<Handle> perturb(const DedupView& dd) {
  std::vector<Handle> hs;
  hs.reserve(dd.f.size());
  for (size_t i = 0; i < dd.f.size(); ++i) {
    const Line& g = dd.gamma[dd.f[i]];
    hs.push_back(Handle{static_cast<int>(i) + 1, g.a, g.b, dd.f[i]});
  }
  return hs;
}

void PerturbedX::add_eps(int idx, Rat coeff) {
  if (sgn(coeff) == 0) return;
  auto it = std::lower_bound(eps.begin(), eps.end(), idx,
                             [](const auto& e, int i) { return e.first < i; });
  if (it != eps.end() && it->first == idx) {
    it->second += coeff;
    if (sgn(it->second) == 0) eps.erase(it);
  } else {
    eps.insert(it, {idx, std::move(coeff)});
  }
}

int cmp(const PerturbedX& x1, const PerturbedX& x2) {
  if (int c = cmp(x1.main, x2.main); c != 0) return c < 0 ? -1 : 1;
  // eps_i dominates every eps_j with j > i, so the first differing
  // coefficient in index order decides.
  size_t i = 0, j = 0;
  while (i < x1.eps.size() || j < x2.eps.size()) {
    int i1 = i < x1.eps.size() ? x1.eps[i].first : INT_MAX;
    int i2 = j < x2.eps.size() ? x2.eps[j].first : INT_MAX;
    if (i1 < i2) return sgn(x1.eps[i].second) < 0 ? -1 : 1;
    if (i2 < i1) return sgn(x2.eps[j].second) > 0 ? -1 : 1;
    if (int c = cmp(x1.eps[i].second, x2.eps[j].second); c != 0) return c < 0 ? -1 : 1;
    ++i, ++j;
  }
  return 0;
}

PerturbedX perturbed_intersection_x(const Handle& hi, const Handle& hj) {
  if (hi.a == hj.a) throw ParallelError{};
  Rat da = hj.a - hi.a;
  PerturbedX x;
  x.main = (hi.b - hj.b) / da;
  Rat c = 1 / da;
  if (hi.eps < hj.eps) {
    x.eps = {{hi.eps, c}, {hj.eps, -c}};
  } else {
    x.eps = {{hj.eps, -c}, {hi.eps, c}};
  }
  return x;
}

int cmp_parallel(const Handle& h1, const Handle& h2) {
  if (int c = cmp(h1.b, h2.b); c != 0) return c < 0 ? -1 : 1;
  if (h1.eps == h2.eps) return 0;
  return h1.eps < h2.eps ? 1 : -1;  // smaller index = larger infinitesimal
}

int dual_orient(const Handle& hi, const Handle& hj, const Handle& hm) {
  Rat dji = hj.a - hi.a, dmi = hm.a - hi.a;
  Rat main = dji * (hm.b - hi.b) - dmi * (hj.b - hi.b);
  if (int s = sgn(main); s != 0) return s;
  // eps coefficients of the det, in handle order (i, j, m).
  struct Term {
    int idx;
    Rat coeff;
  };
  Term terms[3] = {{hi.eps, hm.a - hj.a}, {hj.eps, -dmi}, {hm.eps, dji}};
  std::sort(std::begin(terms), std::end(terms),
            [](const Term& s, const Term& t) { return s.idx < t.idx; });
  for (const Term& t : terms)
    if (int s = sgn(t.coeff); s != 0) return s;
  return 0;
}

bool above_at_minus_inf(const Handle& h1, const Handle& h2) {
  if (int c = cmp(h1.a, h2.a); c != 0) return c < 0;
  return cmp_parallel(h1, h2) > 0;
}

}  // namespace arrmax
