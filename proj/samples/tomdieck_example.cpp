#include <iostream>

#include "eqcalc/calculus.hpp"

using namespace eqcalc;

// Prints the tom Dieck summands of each catalog group and the higher splitting
// for n = 2.
int main() {
  for (auto& name : catalog_names()) {
    SubgroupLattice lat(catalog_group(name));
    bool all_normal = lat.normal_indices().size() == lat.size();
    auto d = tomdieck_summands(lat, all_normal ? TomDieckMode::AbelianNormal : TomDieckMode::Conjugacy);
    std::cout << name << " (" << d.variant << "):";
    for (auto& s : d.summands) std::cout << " " << lat.subgroup(s.subgroup).describe() << "->" << s.aux_name;
    auto h = higher_tomdieck_summands(lat, 2);
    std::cout << "\n  n=2 higher summands: " << h.summands.size() << "\n";
  }
}
