#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "eqcalc/gset.hpp"
#include "eqcalc/linalg.hpp"

namespace eqcalc {

// Graph of rho : H -> Sigma_k inside G x Sigma_k, stored through the H-set
// rho*k: one stabilizer per orbit (lattice indices of subgroups of H, each the
// smallest index in its H-conjugacy class), sorted. Sigma_k-conjugacy of rho is
// isomorphism of H-sets, so this is canonical for fixed H.
struct GraphSubgroup {
  std::size_t domain = 0;
  std::size_t k = 0;
  std::vector<std::size_t> stabilizers;

  std::size_t orbit_count() const { return stabilizers.size(); }
  bool is_trivial_action() const {
    return std::all_of(stabilizers.begin(), stabilizers.end(), [&](auto s) { return s == domain; });
  }
  auto operator<=>(const GraphSubgroup&) const = default;
  bool operator==(const GraphSubgroup&) const = default;
};

// Representative of the H-conjugacy class of a subgroup l of h.
inline std::size_t h_class_rep(const SubgroupLattice& lat, std::size_t h, std::size_t l) {
  std::size_t best = l;
  for (auto x : lat.subgroup(h).members()) best = std::min(best, lat.conjugate(x, l));
  return best;
}

// H-conjugacy class representatives of subgroups of h, ascending.
inline std::vector<std::size_t> h_class_reps(const SubgroupLattice& lat, std::size_t h) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < lat.size(); ++l)
    if (lat.contains(h, l) && h_class_rep(lat, h, l) == l) out.push_back(l);
  return out;
}

inline std::size_t hset_degree(const SubgroupLattice& lat, std::size_t h, const std::vector<std::size_t>& stabs) {
  std::size_t k = 0;
  for (auto s : stabs) k += lat.subgroup(h).order() / lat.subgroup(s).order();
  return k;
}

// One representative per Sigma_k-conjugacy class of homomorphisms h -> Sigma_k,
// i.e. per isomorphism class of h-sets of size k.
inline std::vector<GraphSubgroup> enumerate_hom_classes(const SubgroupLattice& lat, std::size_t h, std::size_t k) {
  auto reps = h_class_reps(lat, h);
  const std::size_t ho = lat.subgroup(h).order();
  std::vector<GraphSubgroup> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (left == 0) {
      out.push_back({h, k, cur});
      return;
    }
    for (std::size_t i = from; i < reps.size(); ++i) {
      std::size_t sz = ho / lat.subgroup(reps[i]).order();
      if (sz > left) continue;
      cur.push_back(reps[i]);
      rec(i, left - sz);
      cur.pop_back();
    }
  };
  rec(0, k);
  for (auto& g : out) std::sort(g.stabilizers.begin(), g.stabilizers.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical representative of the G x Sigma_k-conjugacy class: move the domain
// to its class representative, then minimize over its normalizer.
inline GraphSubgroup canonical_graph(const SubgroupLattice& lat, const GraphSubgroup& gr) {
  const auto& g = lat.group();
  std::size_t rep = lat.class_rep(gr.domain);
  auto x = lat.conjugator(gr.domain, rep);
  if (!x) throw PreconditionError("no conjugator to class representative");
  auto transport = [&](Element y, const std::vector<std::size_t>& stabs) {
    std::vector<std::size_t> out;
    for (auto s : stabs) out.push_back(h_class_rep(lat, rep, lat.conjugate(y, s)));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto moved = transport(*x, gr.stabilizers);
  auto best = moved;
  for (Element y = 0; y < g.order(); ++y)
    if (lat.conjugate(y, rep) == rep) best = std::min(best, transport(y, moved));
  return {rep, gr.k, best};
}

// Kernel of rho: intersection of the H-cores of the orbit stabilizers.
inline std::size_t kernel_of(const SubgroupLattice& lat, const GraphSubgroup& gr) {
  ElementSet s = lat.subgroup(gr.domain).elements();
  for (auto st : gr.stabilizers)
    for (auto x : lat.subgroup(gr.domain).members()) s = s & lat.subgroup(lat.conjugate(x, st)).elements();
  return lat.index_of(s);
}

// Explicit permutation action of the domain on {0, ..., k-1}: orbits in order,
// points of each orbit the cosets of its stabilizer.
inline GSet graph_hset(const SubgroupLattice& lat, const GraphSubgroup& gr) {
  const auto& h = lat.subgroup(gr.domain);
  EmbeddedGroup emb = as_group(h);
  GSet out = GSet::empty(emb.group);
  for (auto s : gr.stabilizers) {
    ElementSet local;
    for (auto x : lat.subgroup(s).members()) local.insert(emb.restriction.at(x));
    out = GSet::disjoint_union(out, GSet::coset_space(Subgroup(emb.group, local)));
  }
  return out;
}

// A set of graph subgroups of G x Sigma_k up to conjugacy, as sorted canonical
// representatives.
struct FamilySet {
  std::size_t k = 0;
  std::vector<GraphSubgroup> members;

  bool contains(const GraphSubgroup& canonical) const {
    return std::binary_search(members.begin(), members.end(), canonical);
  }
  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool operator==(const FamilySet&) const = default;
};

inline FamilySet make_family(const SubgroupLattice& lat, std::size_t k, const std::vector<GraphSubgroup>& graphs) {
  FamilySet f{k, {}};
  for (auto& g : graphs) f.members.push_back(canonical_graph(lat, g));
  std::sort(f.members.begin(), f.members.end());
  f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
  return f;
}

// All graph subgroups of G x Sigma_k (subgroups meeting 1 x Sigma_k trivially).
inline FamilySet family_Fk(const SubgroupLattice& lat, std::size_t k) {
  std::vector<GraphSubgroup> all;
  for (auto& cls : lat.classes())
    for (auto& g : enumerate_hom_classes(lat, cls.front(), k)) all.push_back(g);
  return make_family(lat, k, all);
}

// Graphs whose H-set has exactly n - 1 orbits, plus the trivial actions when k = n.
inline FamilySet family_Fk_n(const SubgroupLattice& lat, std::size_t k, std::size_t n) {
  FamilySet all = family_Fk(lat, k);
  FamilySet out{k, {}};
  for (auto& g : all.members)
    if ((n >= 1 && g.orbit_count() == n - 1) || (k == n && g.is_trivial_action())) out.members.push_back(g);
  return out;
}

// R_K: all subgroups of the graph of rho_K, i.e. the restrictions of K.
inline FamilySet family_RK(const SubgroupLattice& lat, const GSet& kset) {
  std::vector<GraphSubgroup> graphs;
  for (std::size_t l = 0; l < lat.size(); ++l) {
    GraphSubgroup gr{l, kset.size(), {}};
    std::vector<bool> seen(kset.size(), false);
    const auto& lsub = lat.subgroup(l);
    for (Point p = 0; p < kset.size(); ++p) {
      if (seen[p]) continue;
      ElementSet stab;
      for (auto x : lsub.members()) {
        seen[kset.act(x, p)] = true;
        if (kset.act(x, p) == p) stab.insert(x);
      }
      gr.stabilizers.push_back(h_class_rep(lat, l, lat.index_of(stab)));
    }
    std::sort(gr.stabilizers.begin(), gr.stabilizers.end());
    graphs.push_back(gr);
  }
  return make_family(lat, kset.size(), graphs);
}

// R(<n): members with fewer than n orbits.
inline FamilySet truncate_family(const FamilySet& r, std::size_t n) {
  FamilySet out{r.k, {}};
  for (auto& g : r.members)
    if (g.orbit_count() < n) out.members.push_back(g);
  return out;
}

// R(n): members with exactly n - 1 orbits, plus trivial ones when k = n.
inline FamilySet layer_family(const FamilySet& r, std::size_t n) {
  FamilySet out{r.k, {}};
  for (auto& g : r.members)
    if ((n >= 1 && g.orbit_count() == n - 1) || (r.k == n && g.is_trivial_action())) out.members.push_back(g);
  return out;
}

// Is h maximal among subgroups normal in G, contained in the domain, on which
// rho is trivial? Checked literally over all normal subgroups.
inline bool is_q_index(const SubgroupLattice& lat, const GraphSubgroup& gr, std::size_t h) {
  std::size_t ker = kernel_of(lat, gr);
  auto ok = [&](std::size_t n) { return lat.is_normal(n) && lat.contains(gr.domain, n) && lat.contains(ker, n); };
  if (!ok(h)) return false;
  for (auto n : lat.normal_indices())
    if (n != h && ok(n) && lat.contains(n, h)) return false;
  return true;
}

// Q_{k,H}: graphs (L, rho) with H <= L, rho trivial on H, H maximal as above.
inline FamilySet family_Q(const SubgroupLattice& lat, std::size_t k, std::size_t h) {
  if (!lat.is_normal(h)) throw PreconditionError("Q_{k,H} needs H normal in G");
  FamilySet out{k, {}};
  for (auto& g : family_Fk(lat, k).members)
    if (is_q_index(lat, g, h)) out.members.push_back(g);
  return out;
}

inline FamilySet family_Q_n(const SubgroupLattice& lat, std::size_t k, std::size_t h, std::size_t n) {
  FamilySet q = family_Q(lat, k, h);
  FamilySet out{k, {}};
  for (auto& g : q.members)
    if ((n >= 1 && g.orbit_count() == n - 1) || (k == n && g.is_trivial_action())) out.members.push_back(g);
  return out;
}

// Fixed points of the universal space of R at Gamma: S^0 iff Gamma is
// conjugate to a member.
inline bool universal_fixed_is_s0(const SubgroupLattice& lat, const FamilySet& r, const GraphSubgroup& gamma) {
  return r.contains(canonical_graph(lat, gamma));
}

// Order of the automorphism group of the h-set: prod m_K! |N_H(K)/K|^{m_K}.
inline Integer hset_automorphism_order(const SubgroupLattice& lat, std::size_t h, const std::vector<std::size_t>& stabs) {
  std::map<std::size_t, std::size_t> mult;
  for (auto s : stabs) ++mult[h_class_rep(lat, h, s)];
  Integer out = 1;
  for (auto& [s, m] : mult) {
    std::size_t nh = 0;
    for (auto x : lat.subgroup(h).members())
      if (lat.conjugate(x, s) == s) ++nh;
    Integer w = static_cast<unsigned long>(nh / lat.subgroup(s).order());
    for (std::size_t i = 1; i <= m; ++i) out *= static_cast<unsigned long>(i);
    for (std::size_t i = 0; i < m; ++i) out *= w;
  }
  return out;
}

struct HandyClass {
  GraphSubgroup rho;  // domain h, not canonicalized over G
  Integer aut_order;
};

// Classes of rho : h -> Sigma_k whose graph lies in r, with automorphism orders.
inline std::vector<HandyClass> handy_index(const SubgroupLattice& lat, std::size_t h, std::size_t k, const FamilySet& r) {
  std::vector<HandyClass> out;
  if (r.k != k && !r.empty()) return out;
  for (auto& g : enumerate_hom_classes(lat, h, k))
    if (r.contains(canonical_graph(lat, g))) out.push_back({g, hset_automorphism_order(lat, h, g.stabilizers)});
  return out;
}

inline std::string describe_graph(const SubgroupLattice& lat, const GraphSubgroup& g) {
  std::map<std::size_t, std::size_t> mult;
  for (auto s : g.stabilizers) ++mult[s];
  std::string s = "H=" + lat.subgroup(g.domain).describe() + " acting on " + std::to_string(g.k) + " points: ";
  if (g.stabilizers.empty()) return s + "empty";
  bool first = true;
  for (auto& [st, m] : mult) {
    if (!first) s += " + ";
    s += (m > 1 ? std::to_string(m) + "x" : "") + "H/" + lat.subgroup(st).describe();
    first = false;
  }
  return s;
}

}  // namespace eqcalc
