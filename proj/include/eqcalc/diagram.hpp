#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "eqcalc/chain_complex.hpp"
#include "eqcalc/poset.hpp"

namespace eqcalc {

using CoverMaps = std::map<std::pair<std::size_t, std::size_t>, ChainMap>;

// Functor from a finite poset to chain complexes, specified on covering
// relations. Optional group structure: for each group element g and object i
// a chain map value(i) -> value(g i).
class PosetDiagram {
 public:
  PosetDiagram() = default;

  PosetDiagram(GPoset shape, std::vector<ChainComplex> values, CoverMaps cover_maps, bool validate = true)
      : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != shape_.size()) throw ValidationError("diagram", "one value per object required");
    for (auto& [a, b] : shape_.covers()) {
      auto it = cover_maps.find({a, b});
      ChainMap f = it == cover_maps.end() ? ChainMap(values_[a].dims(), values_[b].dims()) : it->second;
      if (prune(f.source()) != values_[a].dims() || prune(f.target()) != values_[b].dims())
        throw ValidationError("diagram", "map " + shape_.label(a) + " -> " + shape_.label(b) + " has wrong dims");
      if (validate) validate_chain_map(f, values_[a], values_[b]);
      maps_.emplace(std::make_pair(a, b), std::move(f));
    }
    for (auto& [key, f] : cover_maps)
      if (!maps_.count(key)) throw ValidationError("diagram", "map given on a relation that is not a cover");
    compose_all(validate);
  }

  const GPoset& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  const ChainComplex& value(std::size_t i) const { return values_[i]; }

  // Structure map for i <= j.
  ChainMap map(std::size_t i, std::size_t j) const {
    if (i == j) return ChainMap::identity(values_[i].dims());
    auto it = maps_.find({i, j});
    if (it == maps_.end()) throw PreconditionError("objects are not comparable");
    return it->second;
  }
  const ChainMap& map_ref(std::size_t i, std::size_t j) const { return maps_.at({i, j}); }

  bool has_group_structure() const { return !group_maps_.empty(); }
  const ChainMap& group_map(Element g, std::size_t i) const { return group_maps_.at(g).at(i); }

  // Attach and validate g-structure maps value(i) -> value(g i).
  void set_group_structure(std::vector<std::vector<ChainMap>> gm, bool validate = true) {
    const auto& grp = shape_.group();
    if (gm.size() != grp.order()) throw ValidationError("group structure", "one row per group element");
    for (Element g = 0; g < grp.order(); ++g) {
      if (gm[g].size() != size()) throw ValidationError("group structure", "one map per object");
      for (std::size_t i = 0; i < size(); ++i) {
        const auto& f = gm[g][i];
        if (prune(f.source()) != values_[i].dims() || prune(f.target()) != values_[shape_.act(g, i)].dims())
          throw ValidationError("group structure", "dims mismatch");
        if (validate) validate_chain_map(f, values_[i], values_[shape_.act(g, i)]);
      }
    }
    if (validate) {
      for (std::size_t i = 0; i < size(); ++i)
        if (!(gm[grp.identity()][i] == ChainMap::identity(values_[i].dims())))
          throw ValidationError("group structure", "identity acts nontrivially");
      for (Element g = 0; g < grp.order(); ++g)
        for (Element h = 0; h < grp.order(); ++h)
          for (std::size_t i = 0; i < size(); ++i)
            if (!(gm[grp.mul(g, h)][i] == gm[g][shape_.act(h, i)].after(gm[h][i])))
              throw ValidationError("group structure", "not associative");
      for (auto& [key, f] : maps_) {
        auto [a, b] = key;
        for (Element g = 0; g < grp.order(); ++g) {
          auto lhs = gm[g][b].after(f);
          auto rhs = map(shape_.act(g, a), shape_.act(g, b)).after(gm[g][a]);
          if (!(lhs == rhs)) throw ValidationError("group structure", "not natural");
        }
      }
    }
    group_maps_ = std::move(gm);
  }

 private:
  void compose_all(bool validate) {
    // Process sources from the top down so that map(c, j) exists for every
    // upper cover c of i.
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> height(size(), 0);
    // height = length of longest chain upwards
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& [a, b] : shape_.covers())
        if (height[a] < height[b] + 1) {
          height[a] = height[b] + 1;
          changed = true;
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return height[x] < height[y]; });
    for (auto i : order) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (!shape_.less(i, j)) continue;
        std::optional<ChainMap> result;
        for (auto c : shape_.upper_covers(i)) {
          if (!shape_.leq(c, j)) continue;
          ChainMap via = (c == j) ? maps_.at({i, j}) : maps_.at({c, j}).after(maps_.at({i, c}));
          if (!result) {
            result = via;
            if (!validate) break;
          } else if (!(*result == via)) {
            throw ValidationError("functoriality", "two paths " + shape_.label(i) + " -> " + shape_.label(j) +
                                                       " give different maps");
          }
        }
        if (!maps_.count({i, j})) maps_.emplace(std::make_pair(i, j), *result);
      }
    }
  }

  GPoset shape_;
  std::vector<ChainComplex> values_;
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> maps_;
  std::vector<std::vector<ChainMap>> group_maps_;
};

using Chain = std::vector<std::uint32_t>;

// Bousfield-Kan totalization of a diagram restricted to a set of objects,
// keeping the chain/degree block layout so that maps can be assembled.
struct Totalization {
  ChainComplex complex;
  std::vector<Chain> chains;
  std::map<Chain, std::size_t> index;
  // per chain: internal degree -> offset inside the total degree block
  std::vector<std::map<int, std::size_t>> offset;
  bool is_limit = false;

  int total_degree(std::size_t chain, int internal) const {
    int p = static_cast<int>(chains[chain].size()) - 1;
    return is_limit ? internal - p : internal + p;
  }
};

namespace detail {

inline std::vector<std::uint8_t> object_filter(std::size_t n, const std::vector<std::size_t>* objects) {
  std::vector<std::uint8_t> in(n, objects ? 0 : 1);
  if (objects)
    for (auto x : *objects) in.at(x) = 1;
  return in;
}

// Strict chains within `in`, starting (upward) or ending (downward) at objects
// with nonzero value. Deterministic DFS order.
inline std::vector<Chain> enumerate_chains(const PosetDiagram& d, const std::vector<std::uint8_t>& in, bool upward) {
  const auto& p = d.shape();
  const std::size_t n = p.size();
  std::vector<Chain> out;
  Chain cur;
  std::function<void(std::size_t)> rec = [&](std::size_t last) {
    out.push_back(cur);
    for (std::size_t y = 0; y < n; ++y) {
      if (!in[y]) continue;
      if (upward ? !p.less(last, y) : !p.less(y, last)) continue;
      cur.push_back(static_cast<std::uint32_t>(y));
      rec(y);
      cur.pop_back();
    }
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!in[x] || d.value(x).is_zero()) continue;
    cur = {static_cast<std::uint32_t>(x)};
    rec(x);
  }
  if (!upward)
    for (auto& c : out) std::reverse(c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline void layout(Totalization& t, const PosetDiagram& d, Dims& dims) {
  for (std::size_t c = 0; c < t.chains.size(); ++c) {
    t.index.emplace(t.chains[c], c);
    std::uint32_t obj = t.is_limit ? t.chains[c].back() : t.chains[c].front();
    std::map<int, std::size_t> offs;
    for (auto& [n, k] : d.value(obj).dims()) {
      int m = t.total_degree(c, n);
      offs[n] = dims[m];
      dims[m] += k;
    }
    t.offset.push_back(std::move(offs));
  }
}

}  // namespace detail

// hocolim = sum over chains i_0 < ... < i_p of D(i_0)[p];
// d(s x) = s dx + (-1)^n sum_k (-1)^k d_k s x, with d_0 applying D(i_0 < i_1).
inline Totalization hocolim(const PosetDiagram& d, const std::vector<std::size_t>* objects = nullptr) {
  Totalization t;
  t.is_limit = false;
  auto in = detail::object_filter(d.size(), objects);
  t.chains = detail::enumerate_chains(d, in, true);
  Dims dims;
  detail::layout(t, d, dims);
  std::map<int, MatrixBuilder> builders;
  for (auto& [m, k] : dims) builders.emplace(m, MatrixBuilder(dim_at(dims, m - 1), k));
  for (std::size_t c = 0; c < t.chains.size(); ++c) {
    const Chain& s = t.chains[c];
    const int p = static_cast<int>(s.size()) - 1;
    const auto& val = d.value(s.front());
    for (auto& [n, k] : val.dims()) {
      int m = n + p;
      auto& mb = builders.at(m);
      std::size_t col = t.offset[c].at(n);
      if (val.dim(n - 1)) mb.add_block(t.offset[c].at(n - 1), col, val.d(n));
      if (p == 0) continue;
      for (int f = 0; f <= p; ++f) {
        Chain face = s;
        face.erase(face.begin() + f);
        auto it = t.index.find(face);
        if (it == t.index.end()) continue;  // face starts at a zero value
        Rational sign = ((n + f) % 2 == 0) ? 1 : -1;
        auto off = t.offset[it->second].find(n);
        if (off == t.offset[it->second].end()) continue;
        std::size_t row = off->second;
        if (f == 0) mb.add_block(row, col, d.map_ref(s[0], s[1])[n], sign);
        else mb.add_block(row, col, SparseMatrix::identity(k), sign);
      }
    }
  }
  std::map<int, SparseMatrix> diff;
  for (auto& [m, mb] : builders) diff[m] = mb.build();
  t.complex = ChainComplex(dims, std::move(diff), false);
  return t;
}

// holim = product over chains i_0 < ... < i_p of D(i_p)[-p];
// (Df)(t) = d f(t) + (-1)^m sum_k (-1)^k f(d_k t), the last face applying
// D(i_{q-1} < i_q); m is the total degree of f.
inline Totalization holim(const PosetDiagram& d, const std::vector<std::size_t>* objects = nullptr) {
  Totalization t;
  t.is_limit = true;
  auto in = detail::object_filter(d.size(), objects);
  t.chains = detail::enumerate_chains(d, in, false);
  Dims dims;
  detail::layout(t, d, dims);
  std::map<int, MatrixBuilder> builders;
  for (auto& [m, k] : dims) builders.emplace(m, MatrixBuilder(dim_at(dims, m - 1), k));
  const auto& shape = d.shape();
  for (std::size_t c = 0; c < t.chains.size(); ++c) {
    const Chain& s = t.chains[c];
    const int p = static_cast<int>(s.size()) - 1;
    const auto& val = d.value(s.back());
    for (auto& [n, k] : val.dims()) {
      int m = n - p;
      auto& mb = builders.at(m);
      std::size_t col = t.offset[c].at(n);
      if (val.dim(n - 1)) mb.add_block(t.offset[c].at(n - 1), col, val.d(n));
      // cofaces: insert one object at position f = 0..p+1
      for (int f = 0; f <= p + 1; ++f) {
        for (std::size_t x = 0; x < shape.size(); ++x) {
          if (!in[x]) continue;
          if (f > 0 && !shape.less(s[f - 1], x)) continue;
          if (f <= p && !shape.less(x, s[f])) continue;
          Chain tau = s;
          tau.insert(tau.begin() + f, static_cast<std::uint32_t>(x));
          auto it = t.index.find(tau);
          if (it == t.index.end()) continue;  // ends at a zero value
          Rational sign = (((m % 2) + 2 + f) % 2 == 0) ? 1 : -1;
          auto off = t.offset[it->second].find(n);
          if (off == t.offset[it->second].end()) continue;
          std::size_t row = off->second;
          if (f == p + 1) mb.add_block(row, col, d.map_ref(s.back(), static_cast<std::uint32_t>(x))[n], sign);
          else mb.add_block(row, col, SparseMatrix::identity(k), sign);
        }
      }
    }
  }
  std::map<int, SparseMatrix> diff;
  for (auto& [m, mb] : builders) diff[m] = mb.build();
  t.complex = ChainComplex(dims, std::move(diff), false);
  return t;
}

// Restriction holim over a larger object set -> holim over a smaller one.
inline ChainMap holim_restriction(const Totalization& big, const Totalization& small, const PosetDiagram& d) {
  std::map<int, MatrixBuilder> mb;
  for (auto& [m, k] : small.complex.dims()) mb.emplace(m, MatrixBuilder(k, big.complex.dim(m)));
  for (std::size_t c = 0; c < small.chains.size(); ++c) {
    std::size_t bc = big.index.at(small.chains[c]);
    for (auto& [n, k] : d.value(small.chains[c].back()).dims()) {
      int m = small.total_degree(c, n);
      mb.at(m).add_block(small.offset[c].at(n), big.offset[bc].at(n), SparseMatrix::identity(k));
    }
  }
  std::map<int, SparseMatrix> f;
  for (auto& [m, b] : mb) f[m] = b.build();
  return ChainMap(big.complex.dims(), small.complex.dims(), std::move(f));
}

// Inclusion hocolim over a smaller object set -> hocolim over a larger one.
inline ChainMap hocolim_inclusion(const Totalization& small, const Totalization& big, const PosetDiagram& d) {
  std::map<int, MatrixBuilder> mb;
  for (auto& [m, k] : big.complex.dims()) mb.emplace(m, MatrixBuilder(k, small.complex.dim(m)));
  for (std::size_t c = 0; c < small.chains.size(); ++c) {
    std::size_t bc = big.index.at(small.chains[c]);
    for (auto& [n, k] : d.value(small.chains[c].front()).dims()) {
      int m = small.total_degree(c, n);
      mb.at(m).add_block(big.offset[bc].at(n), small.offset[c].at(n), SparseMatrix::identity(k));
    }
  }
  std::map<int, SparseMatrix> f;
  for (auto& [m, b] : mb) f[m] = b.build();
  return ChainMap(small.complex.dims(), big.complex.dims(), std::move(f));
}

// A -> holim given a compatible cone phi_i : A -> D(i) (length-zero chains only).
inline ChainMap map_into_holim(const ChainComplex& a, const Totalization& t, const PosetDiagram& d,
                               const std::function<ChainMap(std::size_t)>& phi) {
  std::map<int, MatrixBuilder> mb;
  for (auto& [m, k] : t.complex.dims()) mb.emplace(m, MatrixBuilder(k, a.dim(m)));
  for (std::size_t c = 0; c < t.chains.size(); ++c) {
    if (t.chains[c].size() != 1) continue;
    ChainMap f = phi(t.chains[c][0]);
    for (auto& [n, k] : d.value(t.chains[c][0]).dims()) mb.at(n).add_block(t.offset[c].at(n), 0, f[n]);
  }
  std::map<int, SparseMatrix> f;
  for (auto& [m, b] : mb) f[m] = b.build();
  return ChainMap(a.dims(), t.complex.dims(), std::move(f));
}

// hocolim -> B given a compatible cocone psi_i : D(i) -> B.
inline ChainMap map_out_of_hocolim(const Totalization& t, const PosetDiagram& d, const ChainComplex& b,
                                   const std::function<ChainMap(std::size_t)>& psi) {
  std::map<int, MatrixBuilder> mb;
  for (auto& [m, k] : b.dims()) mb.emplace(m, MatrixBuilder(k, t.complex.dim(m)));
  for (std::size_t c = 0; c < t.chains.size(); ++c) {
    if (t.chains[c].size() != 1) continue;
    ChainMap f = psi(t.chains[c][0]);
    for (auto& [n, k] : d.value(t.chains[c][0]).dims())
      if (b.dim(n)) mb.at(n).add_block(0, t.offset[c].at(n), f[n]);
  }
  std::map<int, SparseMatrix> f;
  for (auto& [m, x] : mb) f[m] = x.build();
  return ChainMap(t.complex.dims(), b.dims(), std::move(f));
}

// value(initial) -> holim over the other objects is a quasi-isomorphism.
inline bool is_cartesian(const PosetDiagram& d) {
  auto init = d.shape().initial_object();
  if (!init) throw PreconditionError("cartesian check needs an initial object");
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (i != *init) rest.push_back(i);
  Totalization t = holim(d, &rest);
  ChainMap f = map_into_holim(d.value(*init), t, d, [&](std::size_t i) { return d.map(*init, i); });
  return is_quasi_isomorphism(f, d.value(*init), t.complex);
}

// hocolim over the face of `objects` below `top` -> value(top) is a quasi-isomorphism.
inline bool is_cocartesian_at(const PosetDiagram& d, const std::vector<std::size_t>& objects, std::size_t top) {
  std::vector<std::size_t> rest;
  for (auto i : objects)
    if (i != top) rest.push_back(i);
  Totalization t = hocolim(d, &rest);
  ChainMap f = map_out_of_hocolim(t, d, d.value(top), [&](std::size_t i) { return d.map(i, top); });
  return is_quasi_isomorphism(f, t.complex, d.value(top));
}

inline bool is_cocartesian(const PosetDiagram& d) {
  auto top = d.shape().terminal_object();
  if (!top) throw PreconditionError("cocartesian check needs a terminal object");
  std::vector<std::size_t> all(d.size());
  std::iota(all.begin(), all.end(), 0);
  return is_cocartesian_at(d, all, *top);
}

// Restriction of a diagram to a full subposet (objects in the given order).
inline PosetDiagram restrict_diagram(const PosetDiagram& d, const std::vector<std::size_t>& objects) {
  GPoset sub = d.shape().full_subposet(objects);
  std::vector<ChainComplex> vals;
  for (auto i : objects) vals.push_back(d.value(i));
  CoverMaps maps;
  for (auto& [a, b] : sub.covers()) maps.emplace(std::make_pair(a, b), d.map(objects[a], objects[b]));
  return PosetDiagram(std::move(sub), std::move(vals), std::move(maps), false);
}

}  // namespace eqcalc
