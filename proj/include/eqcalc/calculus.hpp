#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqcalc/catalog.hpp"
#include "eqcalc/families.hpp"
#include "eqcalc/partition.hpp"

namespace eqcalc {

// Iso classes of G-sets ordered by K <= J (a G-map K -> J injective on orbits),
// with the Hasse covers as edges (lower, upper).
struct TreeDiagram {
  std::vector<GSetClass> nodes;
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::string> labels;

  std::string to_dot() const {
    std::ostringstream out;
    out << "digraph tree {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) out << "  n" << i << " [label=\"" << labels[i] << "\"];\n";
    for (auto& [a, b] : edges) out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
  }
};

inline std::string key_label(const std::vector<std::size_t>& key) {
  std::string s = "[";
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? "," : "") + std::to_string(key[i]);
  return s + "]";
}

inline TreeDiagram goodwillie_tree(const SubgroupLattice& lat, std::size_t max_orbits, std::size_t max_size) {
  TreeDiagram t;
  t.nodes = enumerate_gset_iso_classes(lat, max_size, max_orbits);
  const std::size_t n = t.nodes.size();
  t.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.leq[a][b] = tree_leq(lat, t.nodes[a].set, t.nodes[b].set);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !t.leq[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (c != a && c != b && t.leq[a][c] && t.leq[c][b]) cover = false;
      if (cover) t.edges.emplace_back(a, b);
    }
  for (auto& node : t.nodes) t.labels.push_back(key_label(node.key) + " " + describe_gset(lat, node.set));
  return t;
}

// For each G-orbit of J a choice of H-orbit inside it; each choice w gives the
// H-set given by the union of the chosen H-orbits.
struct RestrictionIndex {
  std::vector<std::vector<std::vector<Point>>> h_orbits;  // per G-orbit, its H-orbits
  std::vector<std::vector<std::size_t>> choices;        // index into h_orbits per G-orbit
  std::vector<GSet> unions;                             // H-sets, over the group of H
};

inline RestrictionIndex restriction_index(const GSet& j, const Subgroup& h) {
  RestrictionIndex out;
  GSet jh = restrict_to(j, h);
  auto h_orbs = jh.orbits();
  for (auto& o : j.orbits()) {
    std::vector<std::vector<Point>> inside;
    for (auto& ho : h_orbs)
      if (std::find(o.begin(), o.end(), ho.front()) != o.end()) inside.push_back(ho);
    out.h_orbits.push_back(std::move(inside));
  }
  std::vector<std::size_t> cur(out.h_orbits.size(), 0);
  if (std::any_of(out.h_orbits.begin(), out.h_orbits.end(), [](auto& v) { return v.empty(); })) return out;
  while (true) {
    out.choices.push_back(cur);
    std::size_t i = 0;
    while (i < cur.size() && ++cur[i] == out.h_orbits[i].size()) cur[i++] = 0;
    if (i == cur.size()) break;
  }
  for (auto& choice : out.choices) {
    std::vector<Point> pts;
    for (std::size_t o = 0; o < choice.size(); ++o)
      for (auto p : out.h_orbits[o][choice[o]]) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    std::vector<std::vector<Point>> act(jh.group().order(), std::vector<Point>(pts.size()));
    for (Element x = 0; x < jh.group().order(); ++x)
      for (std::size_t i = 0; i < pts.size(); ++i)
        act[x][i] = static_cast<Point>(std::lower_bound(pts.begin(), pts.end(), jh.act(x, pts[i])) - pts.begin());
    out.unions.emplace_back(jh.group(), std::move(act));
  }
  return out;
}

// Geometric H-fixed points of the nG-excisive approximation of the K-indexed
// smash power vanish iff n < |K| and n <= |K/H|.
inline bool png_triviality(const GSet& k, const Subgroup& h, std::size_t n) {
  return n < k.size() && n <= restrict_to(k, h).orbits().size();
}

struct ConnectivityEstimate {
  long long increment = 0;  // min over nonempty U of p(U) - |U| + 1
  bool diverges = false;    // increment >= 1
  long long after_m = 0;    // m * increment
};

// Brute-force minimum over nonempty U in the power set of n points plus a basepoint.
inline ConnectivityEstimate connectivity_estimate(const GSet& k, std::size_t n, std::size_t m) {
  if (n > 20) throw InputError("connectivity_estimate supports n <= 20");
  const long long orbits = static_cast<long long>(k.orbits().size());
  const long long points = static_cast<long long>(k.size());
  std::optional<long long> best;
  for (std::uint64_t u = 1; u < (std::uint64_t{1} << (n + 1)); ++u) {
    long long size = std::popcount(u);
    bool plus = (u >> n) & 1;
    long long v = (plus ? points : orbits) - size + 1;
    best = best ? std::min(*best, v) : v;
  }
  ConnectivityEstimate e;
  e.increment = *best;
  e.diverges = e.increment >= 1;
  e.after_m = static_cast<long long>(m) * e.increment;
  return e;
}

struct TowerStage {
  std::size_t n = 0;
  FamilySet below;      // R(<n)
  FamilySet layer;      // R(n)
  FamilySet excisive;   // family of the n-th approximation
};

struct SymmetricPowerTower {
  std::vector<TowerStage> stages;
  std::size_t stabilization = 0;  // first n whose approximation is all of R
};

// Stages 1..k: the approximation equals R(<n) below k and R from k on.
inline SymmetricPowerTower symmetric_power_tower(std::size_t k, const FamilySet& r) {
  SymmetricPowerTower t;
  for (std::size_t n = 1; n <= k; ++n) {
    TowerStage s{n, truncate_family(r, n), layer_family(r, n), n < k ? truncate_family(r, n) : r};
    if (!t.stabilization && s.excisive == r) t.stabilization = n;
    t.stages.push_back(std::move(s));
  }
  return t;
}

// Name of a catalog group isomorphic to g, or "order n".
inline std::string identify_group(const FiniteGroup& g) {
  for (auto& name : catalog_names()) {
    auto c = catalog_group(name);
    if (c.order() == g.order() && are_isomorphic(c, g)) return name;
  }
  return "order " + std::to_string(g.order());
}

struct Summand {
  std::size_t subgroup = 0;  // lattice index of H
  std::size_t k = 0;         // only for the higher splitting
  std::size_t classes = 0;   // only for the higher splitting
  FiniteGroup aux;           // G/H or the Weyl group
  std::string aux_name;
};

struct SplittingDescriptor {
  std::string variant;
  std::vector<Summand> summands;
};

enum class TomDieckMode { AbelianNormal, Conjugacy };

inline SplittingDescriptor tomdieck_summands(const SubgroupLattice& lat, TomDieckMode mode) {
  SplittingDescriptor d;
  if (mode == TomDieckMode::AbelianNormal) {
    for (std::size_t h = 0; h < lat.size(); ++h)
      if (!lat.is_normal(h)) throw PreconditionError("normal-subgroup splitting needs every subgroup normal");
    d.variant = "normal-subgroup";
    for (std::size_t h = 0; h < lat.size(); ++h) {
      auto q = quotient_group(lat.group(), lat.subgroup(h)).group;
      d.summands.push_back({h, 0, 0, q, identify_group(q)});
    }
  } else {
    d.variant = "classical";
    for (auto& cls : lat.classes()) {
      auto w = weyl_group(lat.group(), lat.subgroup(cls.front()));
      d.summands.push_back({cls.front(), 0, 0, w, identify_group(w)});
    }
  }
  return d;
}

inline SplittingDescriptor higher_tomdieck_summands(const SubgroupLattice& lat, std::size_t n) {
  if (n < 1) throw InputError("higher splitting needs n >= 1");
  SplittingDescriptor d{"higher", {}};
  const std::size_t order = lat.group().order();
  for (auto h : lat.normal_indices()) {
    auto q = quotient_group(lat.group(), lat.subgroup(h)).group;
    auto name = identify_group(q);
    for (std::size_t k = n; k <= n * order; ++k) {
      auto f = family_Q_n(lat, k, h, n);
      if (!f.empty()) d.summands.push_back({h, k, f.size(), q, name});
    }
  }
  return d;
}

struct LayerEntry {
  std::size_t k = 0;
  FamilySet family;                                   // F_k(n)
  std::optional<GradedRanks> t_ranks;                 // absent beyond the homology bound
  std::vector<std::pair<std::size_t, std::vector<HandyClass>>> index;  // per subgroup class rep
};

struct LayerDescriptor {
  std::size_t n = 0;
  bool partial = false;
  std::vector<LayerEntry> entries;
};

inline LayerDescriptor identity_layer_descriptor(const SubgroupLattice& lat, std::size_t n) {
  if (n < 1) throw InputError("identity layers need n >= 1");
  LayerDescriptor d{n, false, {}};
  for (std::size_t k = n; k <= n * lat.group().order(); ++k) {
    LayerEntry e{k, family_Fk_n(lat, k, n), std::nullopt, {}};
    if (k <= kMaxTHomology)
      e.t_ranks = t_homology(GSet::trivial(FiniteGroup::trivial(), k));
    else
      d.partial = true;
    for (auto& cls : lat.classes()) e.index.emplace_back(cls.front(), handy_index(lat, cls.front(), k, e.family));
    d.entries.push_back(std::move(e));
  }
  return d;
}

}  // namespace eqcalc
