#include <gtest/gtest.h>

#include "eqcalc/catalog.hpp"
#include "eqcalc/gset.hpp"

using namespace eqcalc;

namespace {

// Brute-force search for an equivariant map K -> J injective on orbits:
// tries every function on orbit representatives.
bool brute_tree_leq(const GSet& k, const GSet& j) {
  auto ko = k.orbits();
  std::vector<Point> img(ko.size(), 0);
  if (ko.empty()) return true;
  if (j.size() == 0) return false;
  auto jo = j.orbits();
  std::vector<std::size_t> orbit_of(j.size());
  for (std::size_t i = 0; i < jo.size(); ++i)
    for (auto y : jo[i]) orbit_of[y] = i;
  while (true) {
    // rep of orbit a -> img[a] extends to a G-map iff Stab(rep) fixes img[a].
    bool ok = true;
    std::vector<bool> used(jo.size(), false);
    for (std::size_t a = 0; a < ko.size() && ok; ++a) {
      for (Element g = 0; g < k.group().order() && ok; ++g)
        if (k.act(g, ko[a][0]) == ko[a][0] && j.act(g, img[a]) != img[a]) ok = false;
      if (used[orbit_of[img[a]]]) ok = false;
      used[orbit_of[img[a]]] = true;
    }
    if (ok) return true;
    std::size_t p = 0;
    while (p < img.size() && ++img[p] == j.size()) img[p++] = 0;
    if (p == img.size()) return false;
  }
}

}  // namespace

TEST(GSet, OrbitsAndFixedPoints) {
  auto s3 = catalog_group("S3");
  SubgroupLattice lat(s3);
  auto x = gset_from_orbit_types(lat, {0, 1, lat.whole_index()});
  auto orbs = orbit_decomposition(x);
  ASSERT_EQ(orbs.size(), 3u);
  std::size_t total = 0;
  for (auto& o : orbs) {
    EXPECT_EQ(o.points.size() * o.stabilizer.order(), s3.order());
    total += o.points.size();
  }
  EXPECT_EQ(total, x.size());
  EXPECT_EQ(fixed_points(x, lat.subgroup(lat.whole_index())).size(), 1u);
  EXPECT_EQ(fixed_points(x, lat.subgroup(0)).size(), x.size());
}

TEST(GSet, QuotientByNormalSubgroup) {
  auto v4 = catalog_group("V4");
  SubgroupLattice lat(v4);
  auto j = GSet::coset_space(lat.subgroup(0));
  for (auto i : lat.normal_indices()) {
    auto q = quotient_gset(j, lat.subgroup(i));
    EXPECT_EQ(q.set.size(), 4 / lat.subgroup(i).order());
    for (Element g = 0; g < v4.order(); ++g)
      for (Point x = 0; x < j.size(); ++x)
        EXPECT_EQ(q.projection[j.act(g, x)], q.set.act(q.quotient.projection[g], q.projection[x]));
  }
}

TEST(GSet, EquivariantMaps) {
  auto c2 = catalog_group("C2");
  auto free = GSet::coset_space(enumerate_subgroups(c2)[0]);
  auto pt = GSet::trivial(c2, 1);
  EquivariantMap f(free, pt, {0, 0});
  EXPECT_TRUE(is_injective_on_orbits(f));
  EXPECT_THROW(EquivariantMap(pt, free, {0}), ValidationError);
  auto two = GSet::trivial(c2, 2);
  EquivariantMap g(two, pt, {0, 0});
  EXPECT_FALSE(is_injective_on_orbits(g));
}

TEST(GSet, IsoClassEnumeration) {
  auto c2 = catalog_group("C2");
  SubgroupLattice lat(c2);
  EXPECT_EQ(enumerate_gset_iso_classes(lat, 2).size(), 4u);
  auto s3 = catalog_group("S3");
  SubgroupLattice ls3(s3);
  std::size_t transitive = 0;
  for (auto& c : enumerate_gset_iso_classes(ls3, 6))
    if (c.key.size() == 1) ++transitive;
  EXPECT_EQ(transitive, 4u);
}

TEST(GSet, TreeOrderExamples) {
  auto c2 = catalog_group("C2");
  SubgroupLattice lat(c2);
  auto free = GSet::coset_space(lat.subgroup(0));
  auto pt = GSet::trivial(c2, 1);
  EXPECT_TRUE(tree_leq(lat, free, pt));
  EXPECT_FALSE(tree_leq(lat, pt, free));
  auto two_free = GSet::disjoint_union(free, free);
  EXPECT_TRUE(tree_leq(lat, two_free, GSet::disjoint_union(free, pt)));
}

TEST(GSet, TreeOrderMatchesBruteForceAndIsAPartialOrderOnClasses) {
  for (std::string name : {"C2", "C3", "V4", "S3"}) {
    auto g = catalog_group(name);
    SubgroupLattice lat(g);
    auto classes = enumerate_gset_iso_classes(lat, 4);
    const auto n = classes.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        leq[a][b] = tree_leq(lat, classes[a].set, classes[b].set);
        EXPECT_EQ(leq[a][b], brute_tree_leq(classes[a].set, classes[b].set)) << name << " " << a << " " << b;
      }
    for (std::size_t a = 0; a < n; ++a) {
      EXPECT_TRUE(leq[a][a]);
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && leq[a][b]) EXPECT_FALSE(leq[b][a]) << "antisymmetry " << name;
        for (std::size_t c = 0; c < n; ++c)
          if (leq[a][b] && leq[b][c]) EXPECT_TRUE(leq[a][c]);
      }
    }
  }
}

TEST(GSet, RestrictionToSubgroup) {
  auto s3 = catalog_group("S3");
  SubgroupLattice lat(s3);
  auto x = GSet::coset_space(lat.subgroup(1));  // three points
  auto r = restrict_to(x, lat.subgroup(lat.whole_index() - 1));
  EXPECT_EQ(r.group().order(), 3u);
  EXPECT_EQ(r.orbits().size(), 1u);
}

TEST(GSet, FileParsing) {
  auto s3 = catalog_group("S3");
  SubgroupLattice lat(s3);
  auto x = parse_gset_file(lat, "orbit: 2 x G/1\norbit: G/<(1 2)>  # three points\nbasepoint: yes\n");
  EXPECT_EQ(x.size(), 6u + 6u + 3u + 1u);
  EXPECT_TRUE(x.basepoint().has_value());
  auto y = parse_gset_file(lat, "orbit: G/#5\n");
  EXPECT_EQ(y.size(), 1u);
  EXPECT_THROW(parse_gset_file(lat, "orbit: G/<(1 4)>\n"), InputError);
  EXPECT_THROW(parse_gset_file(lat, "orbits G/1\n"), InputError);
}
