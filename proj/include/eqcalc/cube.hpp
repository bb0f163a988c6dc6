#pragma once

#include <random>
#include <set>

#include "eqcalc/diagram.hpp"

namespace eqcalc {

// ---------------------------------------------------------------- cubes over P(J_+)

inline std::vector<std::size_t> face_objects(const SubsetPoset& sp, Mask s) {
  std::vector<std::size_t> out;
  for (Mask t : all_subsets_of(s)) {
    auto i = sp.index_of(t);
    if (!i) throw PreconditionError("cube shape is missing a subset of " + mask_label(sp.ground, s));
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Restriction to P(S) is cocartesian for every S outside St(J_+).
struct StrongCocartesianReport {
  bool ok = true;
  std::vector<Mask> checked;
  std::optional<Mask> counterexample;
};

inline StrongCocartesianReport strong_cocartesian_report(const SubsetPoset& sp, const PosetDiagram& d, const GSet& j) {
  if (sp.ground.size() != j.size() + 1) throw PreconditionError("cube shape does not match J_+");
  StrongCocartesianReport r;
  for (Mask s : outside_star(j)) {
    r.checked.push_back(s);
    if (!is_cocartesian_at(d, face_objects(sp, s), *sp.index_of(s))) {
      r.ok = false;
      r.counterexample = s;
      return r;
    }
  }
  return r;
}

inline bool is_strongly_cocartesian(const SubsetPoset& sp, const PosetDiagram& d, const GSet& j) {
  return strong_cocartesian_report(sp, d, j).ok;
}

// For every U: the iterated pushout of the X_{U n o_+} over X_{U n +} maps
// quasi-isomorphically to X_U. Returns the first failing U.
inline std::optional<Mask> iterated_pushout_counterexample(const SubsetPoset& sp, const PosetDiagram& d, const GSet& j) {
  GSet jplus = j.with_basepoint();
  Mask plus = basepoint_mask(jplus);
  auto ops = pointed_orbit_masks(jplus);
  for (std::size_t u = 0; u < sp.subsets.size(); ++u) {
    Mask um = sp.subsets[u];
    std::vector<std::size_t> objs{*sp.index_of(um & plus)};
    for (Mask op : ops) objs.push_back(*sp.index_of(um & op));
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    Totalization t = hocolim(d, &objs);
    ChainMap f = map_out_of_hocolim(t, d, d.value(u), [&](std::size_t i) { return d.map(i, u); });
    if (!is_quasi_isomorphism(f, t.complex, d.value(u))) return um;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Lambda cube

struct LambdaCube {
  SubsetPoset shape;                 // P(J_+)
  SubsetPoset star;                  // St(J_+), the union of all St(U)
  PosetDiagram coefficients;         // c at the empty set, 0 elsewhere, over St(J_+)
  std::vector<Totalization> values;  // Lambda_U = hocolim over St(U), per object of shape
  PosetDiagram diagram;
};

// Lambda_U = hocolim_{St(U)} of the diagram with c at the empty set and 0
// elsewhere; U <= V induces the inclusion of hocolims. The group acts on c
// trivially and on chains through its action on J_+.
inline LambdaCube lambda_cube(const GSet& j, const ChainComplex& c, bool with_group = true) {
  GSet jplus = j.with_basepoint();
  LambdaCube lc;
  lc.shape = power_poset(jplus);
  lc.star = star_category(j, full_mask(jplus.size()));
  std::vector<ChainComplex> cvals(lc.star.subsets.size());
  cvals[0] = c;
  lc.coefficients = PosetDiagram(lc.star.poset, cvals, {}, false);
  const std::size_t n = lc.shape.subsets.size();
  std::vector<ChainComplex> vals;
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<std::size_t> objs;
    for (Mask w : star_masks(jplus, lc.shape.subsets[u])) objs.push_back(*lc.star.index_of(w));
    lc.values.push_back(hocolim(lc.coefficients, &objs));
    vals.push_back(lc.values.back().complex);
  }
  CoverMaps maps;
  for (auto& [a, b] : lc.shape.poset.covers())
    maps.emplace(std::make_pair(a, b), hocolim_inclusion(lc.values[a], lc.values[b], lc.coefficients));
  lc.diagram = PosetDiagram(lc.shape.poset, vals, std::move(maps), false);
  if (with_group) {
    const auto& g = j.group();
    std::vector<std::vector<ChainMap>> gm(g.order());
    for (Element x = 0; x < g.order(); ++x)
      for (std::size_t u = 0; u < n; ++u) {
        const auto& src = lc.values[u];
        const auto& tgt = lc.values[lc.shape.poset.act(x, u)];
        std::map<int, MatrixBuilder> mb;
        for (auto& [m, k] : tgt.complex.dims()) mb.emplace(m, MatrixBuilder(k, src.complex.dim(m)));
        for (std::size_t ch = 0; ch < src.chains.size(); ++ch) {
          Chain moved;
          for (auto o : src.chains[ch]) moved.push_back(lc.star.poset.act(x, o));
          std::size_t tc = tgt.index.at(moved);
          for (auto& [deg, k] : c.dims())
            mb.at(src.total_degree(ch, deg))
                .add_block(tgt.offset[tc].at(deg), src.offset[ch].at(deg), SparseMatrix::identity(k));
        }
        std::map<int, SparseMatrix> comps;
        for (auto& [m, b] : mb) comps[m] = b.build();
        gm[x].push_back(ChainMap(src.complex.dims(), tgt.complex.dims(), std::move(comps)));
      }
    lc.diagram.set_group_structure(std::move(gm), false);
  }
  return lc;
}

// ---------------------------------------------------------------- covering lemma

// St(J_+) covered by the punctured orbit cubes P(o_+) minus o_+, indexed by the
// orbits of J (as a G-set with trivial action).
struct StarOrbitCover {
  SubsetPoset star;
  EquivariantCover cover;
};

inline StarOrbitCover star_orbit_cover(const GSet& j) {
  GSet jplus = j.with_basepoint();
  StarOrbitCover out{star_category(j, full_mask(jplus.size())), {}};
  auto ops = pointed_orbit_masks(jplus);
  out.cover.index = GSet::trivial(j.group(), ops.size());
  for (Mask op : ops) {
    std::vector<std::size_t> piece;
    for (std::size_t i = 0; i < out.star.subsets.size(); ++i)
      if (mask_subset(out.star.subsets[i], op)) piece.push_back(i);
    out.cover.pieces.push_back(std::move(piece));
  }
  return out;
}

struct CoveringReport {
  bool ok = false;
  GradedRanks holim_homology;
  GradedRanks cover_homology;
};

// holim(D) -> holim over nonempty U of holim over the intersection of the
// pieces indexed by U is a quasi-isomorphism.
inline CoveringReport verify_covering_lemma(const PosetDiagram& d, const EquivariantCover& cover) {
  auto check = validate_equivariant_cover(d.shape(), cover);
  if (!check) throw PreconditionError("invalid cover: " + check.reason);
  const std::size_t m = cover.index.size();
  if (m > 6) throw PreconditionError("cover index too large");
  GSet idx = GSet::trivial(FiniteGroup::trivial(), m);
  std::vector<Mask> nonempty;
  for (Mask u : all_subsets_of(full_mask(m)))
    if (u) nonempty.push_back(u);
  SubsetPoset cube = make_subset_poset(idx, nonempty, false);
  Totalization whole = holim(d);
  std::vector<Totalization> parts;
  std::vector<ChainComplex> vals;
  for (Mask u : cube.subsets) {
    std::vector<std::size_t> objs;
    for (std::size_t x = 0; x < d.size(); ++x) {
      bool all = true;
      for (std::size_t jj = 0; jj < m && all; ++jj)
        if (u >> jj & 1) all = std::find(cover.pieces[jj].begin(), cover.pieces[jj].end(), x) != cover.pieces[jj].end();
      if (all) objs.push_back(x);
    }
    parts.push_back(holim(d, &objs));
    vals.push_back(parts.back().complex);
  }
  CoverMaps maps;
  for (auto& [a, b] : cube.poset.covers())
    maps.emplace(std::make_pair(a, b), holim_restriction(parts[a], parts[b], d));
  PosetDiagram y(cube.poset, vals, std::move(maps), false);
  Totalization outer = holim(y);
  ChainMap f = map_into_holim(whole.complex, outer, y, [&](std::size_t u) { return holim_restriction(whole, parts[u], d); });
  CoveringReport r;
  r.holim_homology = homology(whole.complex);
  r.cover_homology = homology(outer.complex);
  r.ok = is_quasi_isomorphism(f, whole.complex, outer.complex);
  return r;
}

// ---------------------------------------------------------------- decomposition

struct DecompReport {
  bool ok = false;
  GradedRanks initial;
  std::vector<GradedRanks> fibers;  // per object
  GradedRanks total;
};

// sections[(a, b)] : value(b) -> value(a) for each cover a < b.
inline DecompReport verify_decomp(const PosetDiagram& p, const CoverMaps& sections) {
  const auto& shape = p.shape();
  auto init = shape.initial_object();
  if (!init) throw PreconditionError("shape has no initial object");
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> s;
  for (auto& [a, b] : shape.covers()) {
    auto it = sections.find({a, b});
    if (it == sections.end())
      throw PreconditionError("no section for " + shape.label(a) + " < " + shape.label(b));
    const ChainMap& sec = it->second;
    try {
      validate_chain_map(sec, p.value(b), p.value(a));
    } catch (const ValidationError& e) {
      throw PreconditionError("section for " + shape.label(a) + " < " + shape.label(b) + " is not a chain map");
    }
    if (!(p.map_ref(a, b).after(sec) == ChainMap::identity(p.value(b).dims())))
      throw PreconditionError("map " + shape.label(a) + " < " + shape.label(b) + " is not split by its section");
    s.emplace(std::make_pair(a, b), sec);
  }
  // Sections on all relations, by composing along covers from the top down.
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t a = 0; a < shape.size(); ++a)
      for (auto c : shape.upper_covers(a))
        for (std::size_t b = 0; b < shape.size(); ++b) {
          if (!shape.less(c, b) || !s.count({c, b})) continue;
          ChainMap v = s.at({a, c}).after(s.at({c, b}));
          auto [it, fresh] = s.emplace(std::make_pair(a, b), v);
          if (fresh) grew = true;
          else if (!(it->second == v)) throw PreconditionError("sections are not functorial");
        }
  }
  for (std::size_t a = 0; a < shape.size(); ++a)
    for (std::size_t b = 0; b < shape.size(); ++b)
      for (std::size_t c = 0; c < shape.size(); ++c)
        if (shape.less(a, b) && shape.less(b, c))
          if (!(s.at({a, b}) == s.at({a, c}).after(p.map_ref(b, c))))
            throw PreconditionError("sections fail to commute for " + shape.label(a) + " < " + shape.label(b) +
                                    " < " + shape.label(c));
  DecompReport r;
  r.initial = homology(p.value(*init));
  for (std::size_t i = 0; i < shape.size(); ++i) {
    std::vector<std::size_t> above;
    for (std::size_t j = 0; j < shape.size(); ++j)
      if (shape.less(i, j)) above.push_back(j);
    Totalization t = holim(p, &above);
    ChainMap f = map_into_holim(p.value(i), t, p, [&](std::size_t j) { return p.map(i, j); });
    auto h = homology(fiber(f, p.value(i), t.complex));
    for (auto& [n, k] : h) r.total[n] += k;
    r.fibers.push_back(std::move(h));
  }
  r.ok = r.total == r.initial;
  return r;
}

// ---------------------------------------------------------------- random data

inline ChainMap conjugate_map(const ChainMap& f, const std::map<int, std::pair<SparseMatrix, SparseMatrix>>& src,
                              const std::map<int, std::pair<SparseMatrix, SparseMatrix>>& tgt) {
  std::map<int, SparseMatrix> h;
  for (auto& [n, m] : f.components()) h[n] = tgt.at(n).first * m * src.at(n).second;
  return ChainMap(f.source(), f.target(), std::move(h));
}

using BasisChange = std::map<int, std::pair<SparseMatrix, SparseMatrix>>;  // degree -> (g, g^-1)

inline BasisChange random_basis_change(const Dims& dims, std::mt19937_64& rng) {
  BasisChange b;
  for (auto& [n, k] : dims) b.emplace(n, random_unimodular(k, rng));
  return b;
}

inline ChainComplex conjugate_complex(const ChainComplex& c, const BasisChange& b) {
  std::map<int, SparseMatrix> d;
  for (auto& [n, m] : c.differentials()) d[n] = b.at(n - 1).first * m * b.at(n).second;
  return ChainComplex(c.dims(), std::move(d), false);
}

// Sum of spheres and disks in degrees [lo, hi], in a random basis.
inline ChainComplex random_complex(std::mt19937_64& rng, int lo, int hi, std::size_t max_summands) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(max_summands, 1));
  std::uniform_int_distribution<int> deg(lo, hi);
  std::bernoulli_distribution disk(0.4);
  std::vector<ChainComplex> parts;
  for (std::size_t i = count(rng); i > 0; --i) {
    int n = deg(rng);
    if (disk(rng) && n > lo) {
      parts.push_back(ChainComplex({{n, 1}, {n - 1, 1}}, {{n, SparseMatrix::identity(1)}}));
    } else {
      parts.push_back(ChainComplex::concentrated(n));
    }
  }
  ChainComplex c;
  for (auto& p : parts) c = direct_sum(c, p);
  return conjugate_complex(c, random_basis_change(c.dims(), rng));
}

// Re-base every value of a diagram by a random unimodular change of basis.
inline PosetDiagram conjugate_diagram(const PosetDiagram& d, std::mt19937_64& rng) {
  std::vector<BasisChange> b;
  std::vector<ChainComplex> vals;
  for (std::size_t i = 0; i < d.size(); ++i) {
    b.push_back(random_basis_change(d.value(i).dims(), rng));
    vals.push_back(conjugate_complex(d.value(i), b.back()));
  }
  CoverMaps maps;
  for (auto& [a, c] : d.shape().covers()) maps.emplace(std::make_pair(a, c), conjugate_map(d.map_ref(a, c), b[a], b[c]));
  return PosetDiagram(d.shape(), std::move(vals), std::move(maps), false);
}

// Interval [a, b] = {x : a <= x <= b}; value v on it, identities inside, zero
// outside.
inline PosetDiagram interval_diagram(const GPoset& shape, std::size_t a, std::size_t b, const ChainComplex& v) {
  std::vector<ChainComplex> vals(shape.size());
  auto in = [&](std::size_t x) { return shape.leq(a, x) && shape.leq(x, b); };
  for (std::size_t x = 0; x < shape.size(); ++x)
    if (in(x)) vals[x] = v;
  CoverMaps maps;
  for (auto& [x, y] : shape.covers())
    if (in(x) && in(y)) maps.emplace(std::make_pair(x, y), ChainMap::identity(v.dims()));
  return PosetDiagram(shape, std::move(vals), std::move(maps), false);
}

inline PosetDiagram direct_sum(const PosetDiagram& a, const PosetDiagram& b) {
  std::vector<ChainComplex> vals;
  for (std::size_t i = 0; i < a.size(); ++i) vals.push_back(direct_sum(a.value(i), b.value(i)));
  CoverMaps maps;
  for (auto& [x, y] : a.shape().covers()) {
    const auto& f = a.map_ref(x, y);
    const auto& g = b.map_ref(x, y);
    std::set<int> degs;
    for (auto& [n, k] : vals[x].dims()) degs.insert(n);
    std::map<int, SparseMatrix> kept;
    for (int n : degs)
      if (vals[y].dim(n)) kept[n] = block_diagonal({f[n], g[n]});
    maps.emplace(std::make_pair(x, y), ChainMap(vals[x].dims(), vals[y].dims(), std::move(kept)));
  }
  return PosetDiagram(a.shape(), std::move(vals), std::move(maps), false);
}

struct RandomDiagram {
  PosetDiagram diagram;
  std::vector<std::pair<std::size_t, std::size_t>> intervals;
  std::vector<ChainComplex> piece_values;
};

// Sum of random interval pieces with random sphere/disk values, re-based.
inline RandomDiagram random_interval_diagram(const GPoset& shape, std::mt19937_64& rng, std::size_t pieces,
                                             double point_probability = 0.25, int lo = 0, int hi = 2) {
  std::uniform_int_distribution<std::size_t> obj(0, shape.size() - 1);
  std::bernoulli_distribution point(point_probability);
  RandomDiagram out;
  PosetDiagram acc = interval_diagram(shape, 0, 0, ChainComplex());
  for (std::size_t i = 0; i < pieces; ++i) {
    std::size_t a = obj(rng), b = obj(rng);
    if (point(rng)) b = a;
    else if (!shape.leq(a, b)) {
      if (shape.leq(b, a)) std::swap(a, b);
      else b = a;
    }
    out.intervals.emplace_back(a, b);
    out.piece_values.push_back(random_complex(rng, lo, hi, 2));
    acc = direct_sum(acc, interval_diagram(shape, a, b, out.piece_values.back()));
  }
  out.diagram = conjugate_diagram(acc, rng);
  return out;
}

// Split diagram over a poset with an initial object: value(init) = A + B with
// a split projection onto A, every other object a re-based copy of A, and
// maps/sections the induced isomorphisms.
struct SplitDiagram {
  PosetDiagram diagram;
  CoverMaps sections;
};

inline SplitDiagram random_split_diagram(const GPoset& shape, std::mt19937_64& rng, int lo = 0, int hi = 2) {
  auto init = shape.initial_object();
  if (!init) throw PreconditionError("split diagrams need an initial object");
  ChainComplex a = random_complex(rng, lo, hi, 3);
  ChainComplex b = random_complex(rng, lo, hi, 2);
  ChainComplex ab = direct_sum(a, b);
  std::map<int, SparseMatrix> proj, incl;
  for (auto& [n, k] : ab.dims()) {
    MatrixBuilder p(a.dim(n), k), q(k, a.dim(n));
    p.add_block(0, 0, SparseMatrix::identity(a.dim(n)));
    q.add_block(0, 0, SparseMatrix::identity(a.dim(n)));
    proj[n] = p.build();
    incl[n] = q.build();
  }
  ChainMap pr(ab.dims(), a.dims(), proj), in(a.dims(), ab.dims(), incl);
  std::vector<BasisChange> base(shape.size());
  std::vector<ChainComplex> vals(shape.size());
  for (std::size_t x = 0; x < shape.size(); ++x) {
    const ChainComplex& src = x == *init ? ab : a;
    base[x] = random_basis_change(src.dims(), rng);
    vals[x] = conjugate_complex(src, base[x]);
  }
  CoverMaps maps, secs;
  for (auto& [x, y] : shape.covers()) {
    if (x == *init) {
      maps.emplace(std::make_pair(x, y), conjugate_map(pr, base[x], base[y]));
      secs.emplace(std::make_pair(x, y), conjugate_map(in, base[y], base[x]));
    } else {
      maps.emplace(std::make_pair(x, y), conjugate_map(ChainMap::identity(a.dims()), base[x], base[y]));
      secs.emplace(std::make_pair(x, y), conjugate_map(ChainMap::identity(a.dims()), base[y], base[x]));
    }
  }
  return {PosetDiagram(shape, std::move(vals), std::move(maps), true), std::move(secs)};
}

}  // namespace eqcalc
