#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqcalc/calculus.hpp"
#include "eqcalc/cube.hpp"
#include "eqcalc/serialize.hpp"

namespace eqcalc {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::size_t checked = 0;
  std::optional<std::string> counterexample;
  Json details = Json::object();

  void fail(std::string what) {
    if (ok) counterexample = std::move(what);
    ok = false;
  }
  Json to_json() const {
    Json j{{"suite", name}, {"ok", ok}, {"checked", checked}};
    j["counterexample"] = counterexample ? Json(*counterexample) : Json(nullptr);
    j["details"] = details;
    return j;
  }
};

// The Lambda cube of c over every G-set J with |J| <= max_size is strongly
// cocartesian and each face outside the star is an iterated pushout.
inline SuiteResult check_strongly_cocartesian(const std::vector<std::string>& groups, std::size_t max_size) {
  SuiteResult r{"strongly-cocartesian"};
  ChainComplex c({{0, 1}, {2, 1}}, {});
  for (auto& name : groups) {
    SubgroupLattice lat(catalog_group(name));
    std::size_t count = 0;
    for (auto& cls : enumerate_gset_iso_classes(lat, max_size)) {
      auto lc = lambda_cube(cls.set, c, false);
      auto rep = strong_cocartesian_report(lc.shape, lc.diagram, cls.set);
      ++r.checked;
      ++count;
      if (!rep.ok)
        r.fail(name + " J=" + describe_gset(lat, cls.set) + " face " + mask_label(lc.shape.ground, *rep.counterexample));
      if (auto bad = iterated_pushout_counterexample(lc.shape, lc.diagram, cls.set))
        r.fail(name + " J=" + describe_gset(lat, cls.set) + " iterated pushout at " + mask_label(lc.shape.ground, *bad));
    }
    r.details[name] = count;
  }
  return r;
}

// Random diagrams over covered posets: star orbit covers, delooping covers for
// k <= 2, and a one-piece cover.
inline SuiteResult check_covering(std::uint64_t seed, std::size_t count = 50) {
  SuiteResult r{"covering"};
  std::mt19937_64 rng(seed);
  auto c2 = catalog_group("C2");
  auto c3 = catalog_group("C3");
  SubgroupLattice l2(c2), l3(c3);
  struct Case {
    std::string label;
    GPoset poset;
    EquivariantCover cover;
  };
  std::vector<Case> cases;
  for (auto& [lat, key] : std::vector<std::pair<const SubgroupLattice*, std::vector<std::size_t>>>{
           {&l2, {0, 0}}, {&l2, {0, 1}}, {&l2, {0, 0, 1}}, {&l3, {0, 1}}}) {
    GSet j = gset_from_orbit_types(*lat, key);
    auto soc = star_orbit_cover(j);
    cases.push_back({"star orbit cover, G=" + identify_group(lat->group()) + ", J=" + describe_gset(*lat, j), soc.star.poset, soc.cover});
  }
  for (std::size_t k = 1; k <= 2; ++k) {
    GSet j = gset_from_orbit_types(l2, {0});
    auto dc = delooping_cover(j, 0, k);
    cases.push_back({"delooping cover k=" + std::to_string(k), dc.poset, dc.cover});
  }
  {
    auto p = power_poset(GSet::trivial(FiniteGroup::trivial(), 2));
    cases.push_back({"one-piece cover", p.poset, EquivariantCover{GSet::trivial(FiniteGroup::trivial(), 1), {{0, 1, 2, 3}}}});
  }
  std::map<std::string, std::size_t> per;
  for (std::size_t t = 0; t < count; ++t) {
    auto& cs = cases[t % cases.size()];
    auto rd = random_interval_diagram(cs.poset, rng, 3);
    auto rep = verify_covering_lemma(rd.diagram, cs.cover);
    ++r.checked;
    ++per[cs.label];
    if (!rep.ok)
      r.fail(cs.label + " trial " + std::to_string(t) + ": holim " + format_ranks(rep.holim_homology) + " vs cover " +
             format_ranks(rep.cover_homology));
  }
  for (auto& [k, v] : per) r.details[k] = v;
  return r;
}

// Random split diagrams over normal-subgroup lattices.
inline SuiteResult check_decomp(std::uint64_t seed, std::size_t count = 100) {
  SuiteResult r{"decomp"};
  std::mt19937_64 rng(seed);
  const std::vector<std::string> groups{"C2", "V4", "S3", "D4"};
  std::vector<GPoset> shapes;
  for (auto& g : groups) shapes.push_back(normal_subgroup_poset(SubgroupLattice(catalog_group(g))));
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t i = t % groups.size();
    auto sd = random_split_diagram(shapes[i], rng);
    auto rep = verify_decomp(sd.diagram, sd.sections);
    ++r.checked;
    if (!rep.ok)
      r.fail(groups[i] + " trial " + std::to_string(t) + ": initial " + format_ranks(rep.initial) + " vs fibers " +
             format_ranks(rep.total));
  }
  r.details["groups"] = groups;
  return r;
}

// F_k is the disjoint union over normal H of Q_{k,H}.
inline SuiteResult check_q_partition(const std::vector<std::string>& groups, std::size_t max_k) {
  SuiteResult r{"q-partition"};
  for (auto& name : groups) {
    SubgroupLattice lat(catalog_group(name));
    Json sizes = Json::array();
    for (std::size_t k = 1; k <= max_k; ++k) {
      auto fk = family_Fk(lat, k);
      std::vector<GraphSubgroup> all;
      for (auto h : lat.normal_indices())
        for (auto& m : family_Q(lat, k, h).members) all.push_back(m);
      std::sort(all.begin(), all.end());
      bool disjoint = std::adjacent_find(all.begin(), all.end()) == all.end();
      ++r.checked;
      if (!disjoint) r.fail(name + " k=" + std::to_string(k) + ": the Q families overlap");
      all.erase(std::unique(all.begin(), all.end()), all.end());
      if (all != fk.members)
        r.fail(name + " k=" + std::to_string(k) + ": union has " + std::to_string(all.size()) + " classes, F_k has " +
               std::to_string(fk.size()));
      sizes.push_back(fk.size());
    }
    r.details[name] = sizes;
  }
  return r;
}

inline SuiteResult check_snaith(std::size_t max_k) {
  SuiteResult r{"snaith"};
  for (std::size_t k = 1; k <= max_k; ++k) {
    auto c = snaith_index_count(k);
    ++r.checked;
    if (c.multisets != c.partition_classes)
      r.fail("k=" + std::to_string(k) + ": " + std::to_string(c.multisets) + " vs " + std::to_string(c.partition_classes));
    r.details[std::to_string(k)] = Json::array({c.multisets, c.partition_classes});
  }
  return r;
}

// The H-fixed part of P(J) is isomorphic, through the projection, to P(J/H).
inline SuiteResult check_fixedposet(const std::vector<std::string>& groups, std::size_t max_size, std::size_t max_orbits) {
  SuiteResult r{"fixedposet"};
  for (auto& name : groups) {
    SubgroupLattice lat(catalog_group(name));
    for (auto& cls : enumerate_gset_iso_classes(lat, max_size, max_orbits)) {
      auto p = power_poset(cls.set);
      for (auto hi : lat.normal_indices()) {
        const auto& h = lat.subgroup(hi);
        auto q = quotient_gset(cls.set, h);
        std::vector<std::pair<Mask, Mask>> pairs;
        for (std::size_t i = 0; i < p.subsets.size(); ++i) {
          if (!p.poset.is_fixed(i, h.elements())) continue;
          Mask img = 0;
          for (std::size_t x = 0; x < cls.set.size(); ++x)
            if (p.subsets[i] >> x & 1) img |= Mask{1} << q.projection[x];
          pairs.emplace_back(p.subsets[i], img);
        }
        ++r.checked;
        bool ok = pairs.size() == (std::size_t{1} << q.set.size());
        for (auto& [a, ia] : pairs)
          for (auto& [b, ib] : pairs) ok = ok && (a == b) == (ia == ib) && mask_subset(a, b) == mask_subset(ia, ib);
        if (!ok) r.fail(name + " J=" + describe_gset(lat, cls.set) + " H=" + h.describe());
      }
    }
  }
  return r;
}

// Random chain cubes: cartesian iff cocartesian.
inline SuiteResult check_cartesian_cocartesian(std::uint64_t seed, std::size_t count = 100) {
  SuiteResult r{"cartesian-cocartesian"};
  std::mt19937_64 rng(seed);
  std::size_t cartesian = 0;
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t n = 1 + t % 3;
    auto shape = power_poset(GSet::trivial(FiniteGroup::trivial(), n)).poset;
    auto rd = random_interval_diagram(shape, rng, 3);
    bool c = is_cartesian(rd.diagram), cc = is_cocartesian(rd.diagram);
    ++r.checked;
    cartesian += c;
    if (c != cc) r.fail("trial " + std::to_string(t) + " (dimension " + std::to_string(n) + ")");
  }
  r.details["cartesian"] = cartesian;
  r.details["not_cartesian"] = count - cartesian;
  return r;
}

}  // namespace eqcalc
