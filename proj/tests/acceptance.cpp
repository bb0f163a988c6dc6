#include <iostream>
#include <functional>
#include <map>

#include "eqcalc/verify.hpp"
#include "oracles.hpp"

using namespace eqcalc;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

Verdict from_suite(const SuiteResult& r) {
  Verdict v;
  v.detail = std::to_string(r.checked) + " checks";
  if (!r.ok) v.fail(*r.counterexample);
  return v;
}

Verdict star_counts() {
  SubgroupLattice lat(catalog_group("C2"));
  GSet j = gset_from_orbit_types(lat, {lat.trivial_index(), lat.trivial_index(), lat.trivial_index()});
  auto orbs = j.unpointed_orbits();
  std::size_t whole = star_category(j, full_mask(j.size())).subsets.size();
  Mask u = orbit_mask(orbs[0]) | (Mask{1} << orbs[1][0]) | (Mask{1} << orbs[2][0]) | (Mask{1} << j.size());
  std::size_t partial = star_category(j, u).subsets.size();
  Verdict v{true, "counts " + std::to_string(whole) + ", " + std::to_string(partial)};
  if (whole != 10 || partial != 11) v.fail("expected 10 and 11, got " + std::to_string(whole) + " and " + std::to_string(partial));
  return v;
}

Verdict partition_homology() {
  Verdict v;
  for (std::size_t k = 3; k <= 6; ++k) {
    GradedRanks expect{{static_cast<int>(k) - 3, oracle::factorial(k - 1)}};
    auto h = proper_partition_nerve_homology(k);
    if (h != expect) v.fail("proper nerve k=" + std::to_string(k) + ": " + format_ranks(h));
  }
  std::map<int, int> degree;
  for (std::size_t k = 2; k <= 5; ++k) {
    auto h = t_homology(GSet::trivial(FiniteGroup::trivial(), k));
    if (h.size() != 1 || h.begin()->second != oracle::factorial(k - 1))
      v.fail("T_" + std::to_string(k) + ": " + format_ranks(h));
    else
      degree[static_cast<int>(k)] = h.begin()->first;
  }
  if (!v.ok) return v;
  const int slope = degree[3] - degree[2], offset = degree[2] - 2 * slope;
  for (auto& [k, d] : degree)
    if (d != slope * k + offset) v.fail("T_" + std::to_string(k) + " degree " + std::to_string(d) + " off the linear fit");
  if (v.ok) v.detail = "nerve ranks 2,6,24,120; T_k degree = " + std::to_string(slope) + "k" +
                       (offset < 0 ? "" : "+") + std::to_string(offset);
  return v;
}

Verdict identity_layers() {
  SubgroupLattice lat(catalog_group("C2"));
  Verdict v{true, "n=1 and n=2 layers as expected"};
  auto l1 = identity_layer_descriptor(lat, 1);
  for (auto& e : l1.entries) {
    if (e.k == 1 && e.family.empty()) v.fail("n=1: F_1(1) empty");
    if (e.k >= 2 && !e.family.empty()) v.fail("n=1: F_" + std::to_string(e.k) + "(1) nonempty");
  }
  auto l2 = identity_layer_descriptor(lat, 2);
  for (auto& e : l2.entries) {
    if (e.k != 2) {
      if (!e.family.empty()) v.fail("n=2: F_" + std::to_string(e.k) + "(2) nonempty");
      continue;
    }
    if (e.family.empty()) v.fail("n=2: F_2(2) empty");
    for (auto& [h, list] : e.index) {
      if (h != lat.whole_index()) continue;
      std::vector<std::string> orders;
      for (auto& c : list) orders.push_back(c.aut_order.get_str());
      if (orders != std::vector<std::string>{"2", "2"}) {
        std::string got;
        for (auto& o : orders) got += (got.empty() ? "" : ",") + o;
        v.fail("n=2: Aut orders for H=G are (" + got + ")");
      }
    }
  }
  return v;
}

Verdict triviality_vs_connectivity() {
  Verdict v;
  std::size_t checked = 0;
  for (auto& name : catalog_names()) {
    SubgroupLattice lat(catalog_group(name));
    const auto& g = lat.subgroup(lat.whole_index());
    for (auto& cls : enumerate_gset_iso_classes(lat, 4))
      for (std::size_t n = 1; n <= 4; ++n) {
        ++checked;
        bool pred = png_triviality(cls.set, g, n);
        bool conn = connectivity_estimate(cls.set, n, 1).increment >= 1;
        if (pred != conn) v.fail(name + " K=" + describe_gset(lat, cls.set) + " n=" + std::to_string(n));
      }
  }
  if (v.ok) v.detail = std::to_string(checked) + " cases agree";
  return v;
}

Verdict tree_order() {
  Verdict v;
  SubgroupLattice lat(catalog_group("C2"));
  auto t = goodwillie_tree(lat, 4, 4);
  const std::size_t n = t.nodes.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (!t.leq[a][a]) v.fail("not reflexive at " + t.labels[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (t.leq[a][b] != oracle::brute_tree_leq(t.nodes[a].set, t.nodes[b].set))
        v.fail("map search disagrees on " + t.labels[a] + " <= " + t.labels[b]);
      if (a != b && t.leq[a][b] && t.leq[b][a]) v.fail("not antisymmetric: " + t.labels[a] + ", " + t.labels[b]);
      for (std::size_t c = 0; c < n; ++c)
        if (t.leq[a][b] && t.leq[b][c] && !t.leq[a][c])
          v.fail("not transitive: " + t.labels[a] + ", " + t.labels[b] + ", " + t.labels[c]);
    }
  }
  std::vector<std::size_t> chain(5, n);
  for (std::size_t i = 0; i < n; ++i) {
    bool trivial = true;
    for (auto c : t.nodes[i].key) trivial = trivial && lat.classes()[c].front() == lat.whole_index();
    if (trivial && t.nodes[i].set.size() <= 4) chain[t.nodes[i].set.size()] = i;
  }
  for (std::size_t s = 1; s < 4; ++s) {
    if (chain[s] == n || chain[s + 1] == n) {
      v.fail("missing trivial set of size " + std::to_string(s));
      break;
    }
    if (!t.leq[chain[s]][chain[s + 1]] || t.leq[chain[s + 1]][chain[s]])
      v.fail("trivial chain breaks at " + std::to_string(s) + " < " + std::to_string(s + 1));
  }
  if (goodwillie_tree(SubgroupLattice(catalog_group("C2")), 4, 4).to_dot() != t.to_dot()) v.fail("DOT output differs");
  if (v.ok) v.detail = std::to_string(n) + " classes, " + std::to_string(t.edges.size()) + " covers";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"star-category counts", star_counts},
      {"strong cocartesianity of Lambda",
       [] { return from_suite(check_strongly_cocartesian({"C2", "C3", "V4", "S3"}, 4)); }},
      {"covering lemma", [] { return from_suite(check_covering(kDefaultSeed, 50)); }},
      {"decomposition lemma", [] { return from_suite(check_decomp(kDefaultSeed, 100)); }},
      {"partition-complex homology", partition_homology},
      {"family partition", [] { return from_suite(check_q_partition(catalog_names(), 6)); }},
      {"identity layers", identity_layers},
      {"triviality vs connectivity", triviality_vs_connectivity},
      {"Snaith indexing", [] { return from_suite(check_snaith(12)); }},
      {"tree order", tree_order},
      {"cartesian iff cocartesian", [] { return from_suite(check_cartesian_cocartesian(kDefaultSeed, 100)); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failed += !v.ok;
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << v.detail << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
