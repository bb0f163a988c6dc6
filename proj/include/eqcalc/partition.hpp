#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "eqcalc/chain_complex.hpp"
#include "eqcalc/gset.hpp"

namespace eqcalc {

// Set partition of {0..k-1} as a restricted growth string: p[i] is the block of
// i, blocks numbered in order of first appearance.
using SetPartition = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxPartitionGround = 7;

inline SetPartition normalize_partition(const std::vector<std::uint32_t>& labels) {
  std::map<std::uint32_t, std::uint8_t> rename;
  SetPartition out;
  for (auto l : labels) {
    auto it = rename.try_emplace(l, static_cast<std::uint8_t>(rename.size())).first;
    out.push_back(it->second);
  }
  return out;
}

inline std::size_t block_count(const SetPartition& p) {
  std::size_t n = 0;
  for (auto b : p) n = std::max<std::size_t>(n, b + 1u);
  return n;
}

// All set partitions of {0..k-1}, lexicographic in restricted growth form.
inline std::vector<SetPartition> enumerate_set_partitions(std::size_t k) {
  std::vector<SetPartition> out;
  SetPartition cur;
  std::function<void(std::uint8_t)> rec = [&](std::uint8_t blocks) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::uint8_t b = 0; b <= blocks && b < k; ++b) {
      cur.push_back(b);
      rec(std::max<std::uint8_t>(blocks, static_cast<std::uint8_t>(b + 1)));
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// a refines b: points together in a are together in b.
inline bool refines(const SetPartition& a, const SetPartition& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j] && b[i] != b[j]) return false;
  return true;
}

// Image of p under the point permutation perm: i and j share a block of the
// image iff perm^{-1} i and perm^{-1} j share a block of p.
inline SetPartition act_on_partition(const std::vector<Point>& perm, const SetPartition& p) {
  std::vector<std::uint32_t> labels(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) labels[perm[i]] = p[i];
  return normalize_partition(labels);
}

// Set partitions of the points of an H-set, ordered by refinement.
class PartitionPoset {
 public:
  explicit PartitionPoset(GSet ground) : ground_(std::move(ground)) {
    const std::size_t k = ground_.size();
    if (k == 0) throw PreconditionError("partition poset needs a nonempty set");
    if (k > kMaxPartitionGround) throw InputError("partition ground set larger than " + std::to_string(kMaxPartitionGround));
    parts_ = enumerate_set_partitions(k);
    for (std::size_t i = 0; i < parts_.size(); ++i) index_.emplace(parts_[i], i);
    leq_.assign(parts_.size() * parts_.size(), 0);
    for (std::size_t a = 0; a < parts_.size(); ++a)
      for (std::size_t b = 0; b < parts_.size(); ++b) leq_[a * parts_.size() + b] = refines(parts_[a], parts_[b]);
    const auto& g = ground_.group();
    action_.assign(g.order(), std::vector<std::uint32_t>(parts_.size()));
    for (Element x = 0; x < g.order(); ++x) {
      std::vector<Point> perm(k);
      for (Point i = 0; i < k; ++i) perm[i] = ground_.act(x, i);
      for (std::size_t a = 0; a < parts_.size(); ++a)
        action_[x][a] = static_cast<std::uint32_t>(index_.at(act_on_partition(perm, parts_[a])));
    }
    std::vector<std::uint32_t> discrete(k);
    for (std::size_t i = 0; i < k; ++i) discrete[i] = static_cast<std::uint32_t>(i);
    bottom_ = index_.at(normalize_partition(discrete));
    top_ = index_.at(SetPartition(k, 0));
  }

  const GSet& ground() const { return ground_; }
  std::size_t k() const { return ground_.size(); }
  std::size_t size() const { return parts_.size(); }
  const SetPartition& partition(std::size_t i) const { return parts_[i]; }
  const std::vector<SetPartition>& partitions() const { return parts_; }
  std::size_t index_of(const SetPartition& p) const { return index_.at(p); }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * parts_.size() + b]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  std::size_t act(Element g, std::size_t a) const { return action_[g][a]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  bool is_fixed(std::size_t a, const ElementSet& l) const {
    for (auto x : l.members())
      if (act(x, a) != a) return false;
    return true;
  }

 private:
  GSet ground_;
  std::vector<SetPartition> parts_;
  std::map<SetPartition, std::size_t> index_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::vector<std::uint32_t>> action_;
  std::size_t bottom_ = 0, top_ = 0;
};

// Strictly increasing chains of partitions from bottom to top, restricted to
// the objects allowed by `keep`, grouped by number of elements.
inline std::map<std::size_t, std::vector<std::vector<std::uint32_t>>> strict_chains(
    const PartitionPoset& pp, const std::function<bool(std::size_t)>& keep) {
  std::map<std::size_t, std::vector<std::vector<std::uint32_t>>> out;
  std::vector<std::uint32_t> cur{static_cast<std::uint32_t>(pp.bottom())};
  std::function<void()> rec = [&]() {
    std::size_t last = cur.back();
    if (last == pp.top()) {
      out[cur.size()].push_back(cur);
      return;
    }
    for (std::size_t y = 0; y < pp.size(); ++y) {
      if (!pp.less(last, y) || !keep(y)) continue;
      cur.push_back(static_cast<std::uint32_t>(y));
      rec();
      cur.pop_back();
    }
  };
  if (pp.bottom() == pp.top()) {
    out[1].push_back(cur);
    return out;
  }
  rec();
  for (auto& [n, list] : out) std::sort(list.begin(), list.end());
  return out;
}

// Pointed simplicial set T_K: level p holds the basepoint (index 0) and the
// chains bottom = l_0 <= ... <= l_p = top; level 0 is the basepoint alone
// unless |K| = 1, where bottom = top. Face d_i
// deletes l_i and collapses to the basepoint when the result no longer starts
// at bottom and ends at top; degeneracy s_i repeats l_i.
struct TComplex {
  using Simplex = std::vector<std::uint32_t>;

  PartitionPoset poset;
  ElementSet acting;    // group elements whose action is recorded
  ElementSet fixed_by;  // empty for the full complex
  std::vector<std::vector<Simplex>> levels;
  std::vector<std::map<Simplex, std::size_t>> index;
  // faces[p][s][i] for p >= 1, degeneracies[p][s][i] for p < top level,
  // action[p][g][s] for g in the whole group.
  std::vector<std::vector<std::vector<std::size_t>>> faces, degeneracies;
  std::vector<std::vector<std::vector<std::size_t>>> action;

  std::size_t max_level() const { return levels.size() - 1; }
  std::size_t size(std::size_t p) const { return levels[p].size(); }
};

namespace detail {

inline void fill_structure_maps(TComplex& t) {
  const auto& pp = t.poset;
  const std::size_t top = t.max_level();
  t.index.assign(top + 1, {});
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t s = 0; s < t.levels[p].size(); ++s) t.index[p].emplace(t.levels[p][s], s);
  auto lookup = [&](std::size_t p, const TComplex::Simplex& c) -> std::size_t {
    auto it = t.index[p].find(c);
    return it == t.index[p].end() ? 0 : it->second;
  };
  t.faces.assign(top + 1, {});
  t.degeneracies.assign(top + 1, {});
  for (std::size_t p = 0; p <= top; ++p) {
    for (std::size_t s = 0; s < t.levels[p].size(); ++s) {
      const auto& c = t.levels[p][s];
      if (p >= 1) {
        std::vector<std::size_t> f(p + 1, 0);
        if (s != 0)
          for (std::size_t i = 0; i <= p; ++i) {
            auto d = c;
            d.erase(d.begin() + static_cast<long>(i));
            if (d.front() == pp.bottom() && d.back() == pp.top()) f[i] = lookup(p - 1, d);
          }
        t.faces[p].push_back(std::move(f));
      }
      if (p < top) {
        std::vector<std::size_t> dg(p + 1, 0);
        if (s != 0)
          for (std::size_t i = 0; i <= p; ++i) {
            auto d = c;
            d.insert(d.begin() + static_cast<long>(i), c[i]);
            dg[i] = lookup(p + 1, d);
          }
        t.degeneracies[p].push_back(std::move(dg));
      }
    }
  }
  const auto& g = pp.ground().group();
  t.action.assign(top + 1, std::vector<std::vector<std::size_t>>(g.order()));
  for (std::size_t p = 0; p <= top; ++p)
    for (Element x = 0; x < g.order(); ++x) {
      auto& row = t.action[p][x];
      row.assign(t.levels[p].size(), 0);
      if (!t.acting.contains(x)) continue;
      for (std::size_t s = 1; s < t.levels[p].size(); ++s) {
        auto c = t.levels[p][s];
        for (auto& e : c) e = static_cast<std::uint32_t>(pp.act(x, e));
        row[s] = lookup(p, c);
      }
    }
}

}  // namespace detail

inline TComplex build_T(const GSet& k, std::size_t max_level = 3) {
  TComplex t{PartitionPoset(k), k.group().all_elements(), {}, {}, {}, {}, {}, {}};
  const auto& pp = t.poset;
  t.levels.assign(max_level + 1, {TComplex::Simplex{}});
  if (pp.bottom() == pp.top()) t.levels[0].push_back({static_cast<std::uint32_t>(pp.bottom())});
  for (std::size_t p = 1; p <= max_level; ++p) {
    TComplex::Simplex cur{static_cast<std::uint32_t>(pp.bottom())};
    std::function<void()> rec = [&]() {
      if (cur.size() == p) {
        if (pp.leq(cur.back(), pp.top())) {
          cur.push_back(static_cast<std::uint32_t>(pp.top()));
          t.levels[p].push_back(cur);
          cur.pop_back();
        }
        return;
      }
      for (std::size_t y = 0; y < pp.size(); ++y) {
        if (!pp.leq(cur.back(), y)) continue;
        cur.push_back(static_cast<std::uint32_t>(y));
        rec();
        cur.pop_back();
      }
    };
    rec();
    std::sort(t.levels[p].begin() + 1, t.levels[p].end());
  }
  detail::fill_structure_maps(t);
  return t;
}

// Levelwise fixed points of the subgroup l; the result records only the action of l.
inline TComplex fixed_subcomplex(const TComplex& t, const Subgroup& l) {
  if (!l.elements().subset_of(t.acting)) throw PreconditionError("subgroup does not act on this complex");
  TComplex out{t.poset, l.elements(), t.fixed_by | l.elements(), {}, {}, {}, {}, {}};
  out.levels.assign(t.levels.size(), {});
  for (std::size_t p = 0; p < t.levels.size(); ++p)
    for (std::size_t s = 0; s < t.levels[p].size(); ++s) {
      bool fixed = true;
      for (auto x : l.members()) fixed = fixed && t.action[p][x][s] == s;
      if (fixed) out.levels[p].push_back(t.levels[p][s]);
    }
  detail::fill_structure_maps(out);
  return out;
}

// Strict chains bottom < ... < top through partitions fixed by l (all when l is empty).
inline std::map<std::size_t, std::vector<std::vector<std::uint32_t>>> fixed_strict_chains(const PartitionPoset& pp,
                                                                                            const ElementSet& l) {
  return strict_chains(pp, [&](std::size_t a) { return pp.is_fixed(a, l); });
}

// Non-basepoint non-degenerate m-simplices: strict chains with m + 1 elements.
inline std::size_t nondegenerate_count(const PartitionPoset& pp, std::size_t m, const ElementSet& l = {}) {
  auto ch = fixed_strict_chains(pp, l);
  auto it = ch.find(m + 1);
  return it == ch.end() ? 0 : it->second.size();
}

inline std::size_t nondegenerate_count(const TComplex& t, std::size_t m) {
  return nondegenerate_count(t.poset, m, t.fixed_by);
}

// Strictly increasing chains with `length` elements anywhere in the poset.
inline std::size_t strict_chain_count(const PartitionPoset& pp, std::size_t length) {
  if (length == 0) return 1;
  std::vector<std::size_t> ending(pp.size(), 1);
  for (std::size_t step = 1; step < length; ++step) {
    std::vector<std::size_t> next(pp.size(), 0);
    for (std::size_t b = 0; b < pp.size(); ++b)
      for (std::size_t a = 0; a < pp.size(); ++a)
        if (pp.less(a, b)) next[b] += ending[a];
    ending = std::move(next);
  }
  std::size_t n = 0;
  for (auto e : ending) n += e;
  return n;
}

namespace detail {

// Normalized reduced chains of T restricted to partitions fixed by l.
inline ChainComplex normalized_t_chains(const PartitionPoset& pp, const ElementSet& l) {
  auto ch = fixed_strict_chains(pp, l);
  Dims dims;
  std::map<int, std::map<std::vector<std::uint32_t>, std::size_t>> idx;
  for (auto& [n, list] : ch) {
    dims[static_cast<int>(n) - 1] = list.size();
    for (std::size_t i = 0; i < list.size(); ++i) idx[static_cast<int>(n) - 1][list[i]] = i;
  }
  std::map<int, SparseMatrix> d;
  for (auto& [n, list] : ch) {
    int p = static_cast<int>(n) - 1;
    if (p < 1) continue;
    MatrixBuilder b(dim_at(dims, p - 1), list.size());
    for (std::size_t j = 0; j < list.size(); ++j)
      for (int i = 1; i < p; ++i) {
        auto f = list[j];
        f.erase(f.begin() + i);
        b.add(idx[p - 1].at(f), j, (i % 2 == 0) ? 1 : -1);
      }
    d[p] = b.build();
  }
  return ChainComplex(dims, d);
}

}  // namespace detail

inline constexpr std::size_t kMaxTHomology = 6;

// Reduced rational homology of |T_K|, optionally of the fixed points of l.
inline GradedRanks t_homology(const GSet& k, const ElementSet& l = {}) {
  if (k.size() > kMaxTHomology) throw InputError("t_homology supports |K| <= " + std::to_string(kMaxTHomology));
  PartitionPoset pp(k);
  return homology(detail::normalized_t_chains(pp, l));
}

// Reduced homology of the nerve of the proper part of the partition poset of k
// points, augmented in degree -1.
inline GradedRanks proper_partition_nerve_homology(std::size_t k) {
  if (k < 2 || k > kMaxPartitionGround) throw InputError("proper partition nerve needs 2 <= k <= 7");
  PartitionPoset pp(GSet::trivial(FiniteGroup::trivial(), k));
  std::vector<std::size_t> proper;
  for (std::size_t a = 0; a < pp.size(); ++a)
    if (a != pp.bottom() && a != pp.top()) proper.push_back(a);
  std::map<int, std::vector<std::vector<std::size_t>>> simplices;
  simplices[-1].push_back({});
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (!cur.empty()) simplices[static_cast<int>(cur.size()) - 1].push_back(cur);
    for (auto y : proper) {
      if (!cur.empty() && !pp.less(cur.back(), y)) continue;
      cur.push_back(y);
      rec();
      cur.pop_back();
    }
  };
  rec();
  Dims dims;
  std::map<int, std::map<std::vector<std::size_t>, std::size_t>> idx;
  for (auto& [p, list] : simplices) {
    dims[p] = list.size();
    for (std::size_t i = 0; i < list.size(); ++i) idx[p][list[i]] = i;
  }
  std::map<int, SparseMatrix> d;
  for (auto& [p, list] : simplices) {
    if (p < 0) continue;
    MatrixBuilder b(dims[p - 1], list.size());
    for (std::size_t j = 0; j < list.size(); ++j)
      for (std::size_t i = 0; i < list[j].size(); ++i) {
        auto f = list[j];
        f.erase(f.begin() + static_cast<long>(i));
        b.add(idx[p - 1].at(f), j, (i % 2 == 0) ? 1 : -1);
      }
    d[p] = b.build();
  }
  return homology(ChainComplex(dims, d));
}

struct SnaithCount {
  std::size_t multisets = 0;
  std::size_t partition_classes = 0;
};

// Multisets of positive integers summing to k, enumerated directly, against the
// number of integer partitions of k from the pentagonal-number recurrence.
inline SnaithCount snaith_index_count(std::size_t k) {
  if (k > 40) throw InputError("snaith_index_count supports k <= 40");
  SnaithCount out;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t largest) {
    if (left == 0) {
      ++out.multisets;
      return;
    }
    for (std::size_t part = std::min(left, largest); part >= 1; --part) rec(left - part, part);
  };
  rec(k, k);
  std::vector<long long> p(k + 1, 0);
  p[0] = 1;
  for (std::size_t n = 1; n <= k; ++n) {
    long long s = 0;
    for (long long j = 1;; ++j) {
      long long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
      if (g1 > static_cast<long long>(n)) break;
      long long sign = (j % 2 == 1) ? 1 : -1;
      s += sign * p[n - static_cast<std::size_t>(g1)];
      if (g2 <= static_cast<long long>(n)) s += sign * p[n - static_cast<std::size_t>(g2)];
    }
    p[n] = s;
  }
  out.partition_classes = static_cast<std::size_t>(p[k]);
  return out;
}

}  // namespace eqcalc
