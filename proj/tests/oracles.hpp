#pragma once

// Independent brute-force reference computations used by the unit and
// acceptance tests. Nothing here calls the library's rank or totalization code.

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "eqcalc/chain_complex.hpp"
#include "eqcalc/gset.hpp"

namespace oracle {

using eqcalc::Rational;

// Rank by plain dense Gaussian elimination over Q.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

inline std::size_t dense_rank(const eqcalc::SparseMatrix& m) { return dense_rank(m.dense()); }

// Betti numbers from dense ranks.
inline eqcalc::GradedRanks homology(const eqcalc::ChainComplex& c) {
  eqcalc::GradedRanks h;
  for (auto& [n, k] : c.dims()) {
    std::size_t b = k - dense_rank(c.d(n)) - dense_rank(c.d(n + 1));
    if (b) h[n] = b;
  }
  return h;
}

// Reduced rational homology of the order complex of a finite poset given by a
// strict-order predicate, from the simplicial chain complex with augmentation.
inline eqcalc::GradedRanks reduced_nerve_homology(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
  std::map<int, std::vector<std::vector<std::size_t>>> simplices;
  simplices[-1].push_back({});
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (!cur.empty()) simplices[static_cast<int>(cur.size()) - 1].push_back(cur);
    for (std::size_t y = 0; y < n; ++y) {
      if (!cur.empty() && !less(cur.back(), y)) continue;
      cur.push_back(y);
      rec();
      cur.pop_back();
    }
  };
  rec();
  std::map<int, std::size_t> ranks;
  for (auto& [p, list] : simplices) {
    if (p < 0) continue;
    const auto& faces = simplices[p - 1];
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < faces.size(); ++i) index[faces[i]] = i;
    std::vector<std::vector<Rational>> d(faces.size(), std::vector<Rational>(list.size()));
    for (std::size_t j = 0; j < list.size(); ++j)
      for (std::size_t i = 0; i < list[j].size(); ++i) {
        auto f = list[j];
        f.erase(f.begin() + static_cast<long>(i));
        d[index.at(f)][j] += (i % 2 == 0) ? 1 : -1;
      }
    ranks[p] = dense_rank(d);
  }
  eqcalc::GradedRanks h;
  for (auto& [p, list] : simplices) {
    std::size_t b = list.size() - (ranks.count(p) ? ranks[p] : 0) - (ranks.count(p + 1) ? ranks[p + 1] : 0);
    if (b) h[p] = b;
  }
  return h;
}

// Rational homology of the pair (N(A), N(B)) for B a subset of A closed under
// passing to faces of chains; chains of a poset restricted to objects in A,
// modulo those lying entirely in B.
inline eqcalc::GradedRanks relative_nerve_homology(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less,
                                                   const std::vector<bool>& in_a, const std::vector<bool>& in_b) {
  std::map<int, std::vector<std::vector<std::size_t>>> simplices;
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (!cur.empty()) {
      bool all_b = true;
      for (auto x : cur) all_b = all_b && in_b[x];
      if (!all_b) simplices[static_cast<int>(cur.size()) - 1].push_back(cur);
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (!in_a[y] || (!cur.empty() && !less(cur.back(), y))) continue;
      cur.push_back(y);
      rec();
      cur.pop_back();
    }
  };
  rec();
  std::map<int, std::size_t> ranks;
  for (auto& [p, list] : simplices) {
    if (p == 0) continue;
    auto& faces = simplices[p - 1];
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < faces.size(); ++i) index[faces[i]] = i;
    std::vector<std::vector<Rational>> d(faces.size(), std::vector<Rational>(list.size()));
    for (std::size_t j = 0; j < list.size(); ++j)
      for (std::size_t i = 0; i < list[j].size(); ++i) {
        auto f = list[j];
        f.erase(f.begin() + static_cast<long>(i));
        auto it = index.find(f);
        if (it != index.end()) d[it->second][j] += (i % 2 == 0) ? 1 : -1;
      }
    ranks[p] = dense_rank(d);
  }
  eqcalc::GradedRanks h;
  for (auto& [p, list] : simplices) {
    std::size_t b = list.size() - (ranks.count(p) ? ranks[p] : 0) - (ranks.count(p + 1) ? ranks[p + 1] : 0);
    if (b) h[p] = b;
  }
  return h;
}

inline std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Is there a G-map K -> J sending distinct orbits to distinct orbits? Exhaustive
// over all functions.
inline bool brute_tree_leq(const eqcalc::GSet& k, const eqcalc::GSet& j) {
  if (k.size() == 0) return true;
  if (j.size() == 0) return false;
  const auto& g = k.group();
  auto korb = k.orbits();
  auto jorb = j.orbits();
  std::vector<std::size_t> orbit_of(j.size());
  for (std::size_t o = 0; o < jorb.size(); ++o)
    for (auto p : jorb[o]) orbit_of[p] = o;
  std::vector<eqcalc::Point> f(k.size(), 0);
  while (true) {
    bool ok = true;
    for (eqcalc::Element x = 0; x < g.order() && ok; ++x)
      for (eqcalc::Point p = 0; p < k.size() && ok; ++p) ok = f[k.act(x, p)] == j.act(x, f[p]);
    if (ok) {
      std::set<std::size_t> hit;
      for (auto& o : korb) hit.insert(orbit_of[f[o.front()]]);
      if (hit.size() == korb.size()) return true;
    }
    std::size_t i = 0;
    while (i < f.size() && ++f[i] == j.size()) f[i++] = 0;
    if (i == f.size()) return false;
  }
}

}  // namespace oracle
