#pragma once

#include <json.hpp>

#include "eqcalc/calculus.hpp"
#include "eqcalc/poset.hpp"

namespace eqcalc {

using Json = nlohmann::ordered_json;

inline Json ranks_json(const GradedRanks& h) {
  Json out = Json::array();
  for (auto& [n, r] : h) out.push_back(Json{{"degree", n}, {"rank", r}});
  return out;
}

inline Json group_json(const SubgroupLattice& lat) {
  const auto& g = lat.group();
  Json subs = Json::array();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& h = lat.subgroup(i);
    Json members = Json::array();
    for (auto x : h.members()) members.push_back(g.label(x));
    subs.push_back(Json{{"index", i},
                        {"order", h.order()},
                        {"class", lat.class_of(i)},
                        {"normal", lat.is_normal(i)},
                        {"members", members}});
  }
  Json classes = Json::array();
  for (auto& cls : lat.classes()) classes.push_back(cls);
  return Json{{"order", g.order()},
              {"abelian", g.is_abelian()},
              {"elements", g.labels()},
              {"subgroup_count", lat.size()},
              {"class_count", lat.classes().size()},
              {"normal_count", lat.normal_indices().size()},
              {"subgroups", subs},
              {"classes", classes}};
}

inline Json gset_json(const SubgroupLattice& lat, const GSet& x) {
  Json orbits = Json::array();
  for (auto& o : x.orbits()) {
    std::size_t stab = lat.index_of(x.stabilizer(o.front()));
    orbits.push_back(Json{{"points", o}, {"stabilizer", stab}, {"stabilizer_class", lat.class_of(stab)}});
  }
  return Json{{"size", x.size()},
              {"orbit_count", orbits.size()},
              {"key", iso_key(lat, x)},
              {"description", describe_gset(lat, x)},
              {"basepoint", x.basepoint() ? Json(*x.basepoint()) : Json(nullptr)},
              {"orbits", orbits}};
}

inline Json tree_json(const SubgroupLattice& lat, const TreeDiagram& t) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    nodes.push_back(Json{{"id", i},
                         {"key", t.nodes[i].key},
                         {"size", t.nodes[i].set.size()},
                         {"description", describe_gset(lat, t.nodes[i].set)}});
  Json edges = Json::array();
  for (auto& [a, b] : t.edges) edges.push_back(Json{{"lower", a}, {"upper", b}});
  return Json{{"nodes", nodes}, {"edges", edges}};
}

inline Json graph_json(const SubgroupLattice& lat, const GraphSubgroup& g) {
  std::map<std::size_t, std::size_t> mult;
  for (auto s : g.stabilizers) ++mult[s];
  Json types = Json::array();
  for (auto& [s, m] : mult) types.push_back(Json{{"stabilizer", s}, {"multiplicity", m}});
  return Json{{"subgroup", g.domain},
              {"k", g.k},
              {"orbit_count", g.orbit_count()},
              {"trivial", g.is_trivial_action()},
              {"orbit_types", types},
              {"description", describe_graph(lat, g)}};
}

inline Json family_json(const SubgroupLattice& lat, const FamilySet& f) {
  Json members = Json::array();
  for (auto& m : f.members) members.push_back(graph_json(lat, m));
  return Json{{"k", f.k}, {"size", f.size()}, {"empty", f.empty()}, {"members", members}};
}

inline Json handy_json(const SubgroupLattice& lat, const std::vector<HandyClass>& idx) {
  Json out = Json::array();
  for (auto& c : idx) out.push_back(Json{{"rho", graph_json(lat, c.rho)}, {"aut_order", c.aut_order.get_str()}});
  return out;
}

inline Json tcomplex_json(const TComplex& t) {
  Json parts = Json::array();
  for (auto& p : t.poset.partitions()) {
    Json blocks = Json::array();
    for (auto b : p) blocks.push_back(b);
    parts.push_back(blocks);
  }
  Json levels = Json::array();
  for (std::size_t p = 0; p <= t.max_level(); ++p) {
    Json simplices = Json::array();
    for (std::size_t s = 0; s < t.size(p); ++s) {
      Json e{{"id", s}, {"chain", t.levels[p][s]}, {"basepoint", s == 0}};
      if (p >= 1) e["faces"] = t.faces[p][s];
      if (p < t.max_level()) e["degeneracies"] = t.degeneracies[p][s];
      simplices.push_back(e);
    }
    levels.push_back(Json{{"level", p}, {"simplices", simplices}});
  }
  return Json{{"k", t.poset.k()}, {"partitions", parts}, {"levels", levels}};
}

inline Json splitting_json(const SubgroupLattice& lat, const SplittingDescriptor& d) {
  Json summands = Json::array();
  for (auto& s : d.summands) {
    Json e{{"subgroup", s.subgroup}, {"subgroup_order", lat.subgroup(s.subgroup).order()}};
    if (d.variant == "higher") {
      e["k"] = s.k;
      e["classes"] = s.classes;
    }
    e["group_order"] = s.aux.order();
    e["group"] = s.aux_name;
    summands.push_back(e);
  }
  return Json{{"variant", d.variant}, {"summand_count", d.summands.size()}, {"summands", summands}};
}

inline Json layer_json(const SubgroupLattice& lat, const LayerDescriptor& d) {
  Json entries = Json::array();
  for (auto& e : d.entries) {
    Json idx = Json::array();
    for (auto& [h, list] : e.index) idx.push_back(Json{{"subgroup", h}, {"classes", handy_json(lat, list)}});
    entries.push_back(Json{{"k", e.k},
                           {"empty", e.family.empty()},
                           {"family", family_json(lat, e.family)},
                           {"t_homology", e.t_ranks ? ranks_json(*e.t_ranks) : Json(nullptr)},
                           {"index", idx}});
  }
  return Json{{"n", d.n}, {"partial", d.partial}, {"entries", entries}};
}

}  // namespace eqcalc
