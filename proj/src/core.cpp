#include "arrmax/core.hpp"

#include <set>

namespace arrmax {

bool Instance::has_duplicates() const {
  std::set<std::pair<Rat, Rat>> seen;
  for (const auto& l : lines) {
    if (mult_of(l.id) > 1) return true;
    if (!seen.insert({l.a, l.b}).second) return true;
  }
  return false;
}

IntersectResult intersect(const Line& l1, const Line& l2) {
  if (l1.a == l2.a) {
    if (l1.b == l2.b) return Coincident{};
    return Parallel{};
  }
  Rat x = (l1.b - l2.b) / (l2.a - l1.a);
  return Point{x, l1.a * x + l1.b};
}

Point cross(const Line& l1, const Line& l2) {
  if (l1.a == l2.a) throw ParallelError{};
  Rat x = (l1.b - l2.b) / (l2.a - l1.a);
  return Point{x, l1.a * x + l1.b};
}

DedupView dedup(const Instance& inst) {
  DedupView v;
  std::map<std::pair<Rat, Rat>, int> index;
  for (const auto& l : inst.lines) {
    long m = inst.mult_of(l.id);
    auto key = std::make_pair(l.a, l.b);
    auto it = index.find(key);
    int g;
    if (it == index.end()) {
      g = static_cast<int>(v.gamma.size());
      index.emplace(key, g);
      v.gamma.push_back(Line{g, l.a, l.b});
      v.mu.push_back(0);
      v.orig_id.push_back(l.id);
    } else {
      g = it->second;
    }
    v.mu[g] += m;
    for (long c = 0; c < m; ++c) v.f.push_back(g);
  }
  return v;
}

}  // namespace arrmax
