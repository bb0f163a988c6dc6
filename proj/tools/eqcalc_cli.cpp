#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "eqcalc/verify.hpp"

using namespace eqcalc;

namespace {

struct Config {
  std::string group = "C2";
  std::string gset;
  std::string subset;
  std::string family = "fk";
  std::string subgroup = "G";
  std::string mode = "auto";
  std::size_t n = 1;
  std::size_t k = 2;
  std::size_t max_size = 4;
  std::size_t max_orbits = 4;
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

struct Output {
  Json json;
  std::optional<std::string> dot;
  bool verification_failed = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteGroup resolve_group(const std::string& spec) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return catalog_group(spec);
  if (std::filesystem::exists(spec)) return parse_group_file(read_file(spec));
  throw InputError("unknown group '" + spec + "' (not a catalog name or readable file)");
}

GSet resolve_gset(const SubgroupLattice& lat, const Config& c) {
  if (c.gset.empty()) throw InputError("--gset <file> is required");
  return parse_gset_file(lat, read_file(c.gset));
}

GSet resolve_unpointed(const SubgroupLattice& lat, const Config& c) {
  GSet j = resolve_gset(lat, c);
  if (j.basepoint()) throw InputError("J must be unpointed; the basepoint of J_+ is added automatically");
  return j;
}

// Comma-separated point ids, '+' for the basepoint; empty means all of J.
Mask parse_subset(const GSet& j, const std::string& text) {
  if (text.empty()) return full_mask(j.size());
  Mask m = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "+") {
      m |= Mask{1} << j.size();
      continue;
    }
    std::size_t p = 0;
    try {
      p = std::stoul(item);
    } catch (const std::exception&) {
      throw InputError("bad point '" + item + "' in --subset");
    }
    if (p >= j.size()) throw InputError("point " + item + " out of range");
    m |= Mask{1} << p;
  }
  return m;
}

std::string table(const Json& j, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string out;
  if (j.is_object()) {
    for (auto& [key, v] : j.items()) {
      if (v.is_structured() && !v.empty())
        out += pad + key + ":\n" + table(v, indent + 2);
      else
        out += pad + key + ": " + v.dump() + "\n";
    }
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) return pad + j.dump() + "\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad + "- [" + std::to_string(i) + "]\n" + table(j[i], indent + 2);
    }
  } else {
    out += pad + j.dump() + "\n";
  }
  return out;
}

Output group_info(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  return {group_json(lat)};
}

Output gset_orbits(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  return {gset_json(lat, resolve_gset(lat, c))};
}

Output tree_hasse(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  auto t = goodwillie_tree(lat, c.max_orbits, c.max_size);
  return {tree_json(lat, t), t.to_dot()};
}

Output star_count(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  GSet j = resolve_unpointed(lat, c);
  GSet jp = j.with_basepoint();
  Mask u = parse_subset(j, c.subset);
  auto st = star_category(j, u);
  Json objects = Json::array();
  for (Mask s : st.subsets) objects.push_back(mask_label(jp, s));
  return {Json{{"J", describe_gset(lat, j)}, {"U", mask_label(jp, u)}, {"count", st.subsets.size()}, {"objects", objects}},
          st.poset.to_dot("star")};
}

Output lambda_classify_cmd(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  GSet j = resolve_unpointed(lat, c);
  GSet jp = j.with_basepoint();
  std::vector<Mask> us;
  if (c.subset.empty())
    us = all_subsets_of(full_mask(jp.size()));
  else
    us.push_back(parse_subset(j, c.subset));
  std::sort(us.begin(), us.end(), SubsetPoset::order);
  Json list = Json::array();
  for (Mask u : us) list.push_back(Json{{"U", mask_label(jp, u)}, {"type", lambda_classify(j, u).to_string()}});
  return {Json{{"J", describe_gset(lat, j)}, {"classifications", list}}};
}

Output families_enum(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  FamilySet f;
  Json head{{"family", c.family}, {"k", c.k}};
  if (c.family == "fk") {
    f = family_Fk(lat, c.k);
  } else if (c.family == "fk-n") {
    f = family_Fk_n(lat, c.k, c.n);
    head["n"] = c.n;
  } else if (c.family == "q" || c.family == "q-n") {
    std::size_t h = parse_subgroup_spec(lat, c.subgroup);
    f = c.family == "q" ? family_Q(lat, c.k, h) : family_Q_n(lat, c.k, h, c.n);
    head["subgroup"] = h;
    if (c.family == "q-n") head["n"] = c.n;
  } else if (c.family == "rk" || c.family == "rk-below" || c.family == "rk-layer") {
    GSet kset = resolve_gset(lat, c);
    f = family_RK(lat, kset);
    head["K"] = describe_gset(lat, kset);
    head["k"] = kset.size();
    if (c.family != "rk") {
      f = c.family == "rk-below" ? truncate_family(f, c.n) : layer_family(f, c.n);
      head["n"] = c.n;
    }
  } else {
    throw InputError("unknown family '" + c.family + "' (fk, fk-n, q, q-n, rk, rk-below, rk-layer)");
  }
  head["result"] = family_json(lat, f);
  return {head};
}

Output partition_homology(const Config& c) {
  GSet k = c.gset.empty() ? GSet::trivial(FiniteGroup::trivial(), c.k) : [&] {
    SubgroupLattice lat(resolve_group(c.group));
    return resolve_gset(lat, c);
  }();
  PartitionPoset pp(k);
  Json counts = Json::array();
  for (std::size_t m = 0; m <= k.size() + 1; ++m) counts.push_back(nondegenerate_count(pp, m));
  Json j{{"k", k.size()}, {"set_partitions", pp.size()}, {"nondegenerate_counts", counts}};
  j["t_homology"] = ranks_json(t_homology(k));
  if (k.size() >= 2) j["proper_nerve_homology"] = ranks_json(proper_partition_nerve_homology(k.size()));
  return {j};
}

Output tomdieck(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  TomDieckMode mode;
  if (c.mode == "abelian-normal") {
    mode = TomDieckMode::AbelianNormal;
  } else if (c.mode == "conjugacy") {
    mode = TomDieckMode::Conjugacy;
  } else if (c.mode == "auto") {
    mode = lat.normal_indices().size() == lat.size() ? TomDieckMode::AbelianNormal : TomDieckMode::Conjugacy;
  } else {
    throw InputError("unknown mode '" + c.mode + "' (auto, abelian-normal, conjugacy)");
  }
  return {splitting_json(lat, tomdieck_summands(lat, mode))};
}

Output higher_tomdieck(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  auto j = splitting_json(lat, higher_tomdieck_summands(lat, c.n));
  j["n"] = c.n;
  return {j};
}

Output identity_layers(const Config& c) {
  SubgroupLattice lat(resolve_group(c.group));
  return {layer_json(lat, identity_layer_descriptor(lat, c.n))};
}

std::vector<std::string> suite_groups(const Config& c, const CLI::App* sub, std::vector<std::string> defaults) {
  if (sub->count("--group")) return {c.group};
  return defaults;
}

Output check(const std::string& lemma, const Config& c, const CLI::App* sub) {
  SuiteResult r;
  if (lemma == "strongly-cocartesian")
    r = check_strongly_cocartesian(suite_groups(c, sub, {"C2", "C3", "V4", "S3"}), c.max_size);
  else if (lemma == "covering")
    r = check_covering(c.seed);
  else if (lemma == "decomp")
    r = check_decomp(c.seed);
  else if (lemma == "q-partition")
    r = check_q_partition(suite_groups(c, sub, catalog_names()), c.k);
  else if (lemma == "snaith")
    r = check_snaith(c.k);
  else if (lemma == "fixedposet")
    r = check_fixedposet(suite_groups(c, sub, catalog_names()), c.max_size, c.max_orbits);
  else if (lemma == "cartesian")
    r = check_cartesian_cocartesian(c.seed);
  else
    throw InputError("unknown lemma '" + lemma + "'");
  Json j = r.to_json();
  j["seed"] = c.seed;
  return {j, std::nullopt, !r.ok};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-group combinatorics and chain-level cube calculus"};
  app.require_subcommand(1);
  Config cfg;
  std::function<Output()> action;
  std::string lemma;

  auto common = [&](CLI::App* s) {
    s->add_option("--group", cfg.group, "catalog name or group file")->capture_default_str();
    s->add_option("--format", cfg.format, "json | dot | table")->capture_default_str();
    s->add_option("--out", cfg.out, "write output to this file");
    return s;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, std::function<Output()> fn) {
    auto* s = common(parent->add_subcommand(name, desc));
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  auto* group = app.add_subcommand("group", "group queries")->require_subcommand(1);
  leaf(group, "info", "subgroup lattice summary", [&] { return group_info(cfg); });

  auto* gset = app.add_subcommand("gset", "G-set queries")->require_subcommand(1);
  leaf(gset, "orbits", "orbit decomposition", [&] { return gset_orbits(cfg); })->add_option("--gset", cfg.gset);

  auto* tree = app.add_subcommand("tree", "Goodwillie tree")->require_subcommand(1);
  auto* hasse = leaf(tree, "hasse", "iso classes of G-sets under the tree order", [&] { return tree_hasse(cfg); });
  hasse->add_option("--max-size", cfg.max_size)->capture_default_str();
  hasse->add_option("--max-orbits", cfg.max_orbits)->capture_default_str();

  auto* star = app.add_subcommand("star", "star categories")->require_subcommand(1);
  auto* sc = leaf(star, "count", "objects of St(U)", [&] { return star_count(cfg); });
  sc->add_option("--gset", cfg.gset);
  sc->add_option("--subset", cfg.subset, "points of U, comma separated, '+' for the basepoint (default: J)");

  auto* lambda = app.add_subcommand("lambda", "Lambda cube vertices")->require_subcommand(1);
  auto* lc = leaf(lambda, "classify", "homotopy type of each vertex", [&] { return lambda_classify_cmd(cfg); });
  lc->add_option("--gset", cfg.gset);
  lc->add_option("--subset", cfg.subset, "a single U (default: every subset of J_+)");

  auto* fam = app.add_subcommand("families", "graph-subgroup families")->require_subcommand(1);
  auto* fe = leaf(fam, "enum", "enumerate a family", [&] { return families_enum(cfg); });
  fe->add_option("--family", cfg.family, "fk | fk-n | q | q-n | rk | rk-below | rk-layer")->capture_default_str();
  fe->add_option("--k", cfg.k)->capture_default_str();
  fe->add_option("--n", cfg.n)->capture_default_str();
  fe->add_option("--subgroup", cfg.subgroup, "normal subgroup for q: 1, G, #i or <gens>")->capture_default_str();
  fe->add_option("--gset", cfg.gset, "K for the rk families");

  auto* part = app.add_subcommand("partition", "partition complexes")->require_subcommand(1);
  auto* ph = leaf(part, "homology", "homology of T_K and the proper partition nerve", [&] { return partition_homology(cfg); });
  ph->add_option("--k", cfg.k)->capture_default_str();
  ph->add_option("--gset", cfg.gset, "H-set K (default: k points with trivial action)");

  auto* td = leaf(&app, "tomdieck", "tom Dieck splitting summands", [&] { return tomdieck(cfg); });
  td->add_option("--mode", cfg.mode, "auto | abelian-normal | conjugacy")->capture_default_str();
  leaf(&app, "higher-tomdieck", "higher splitting summands", [&] { return higher_tomdieck(cfg); })
      ->add_option("--n", cfg.n)
      ->capture_default_str();
  leaf(&app, "identity-layers", "index data of the identity layers", [&] { return identity_layers(cfg); })
      ->add_option("--n", cfg.n)
      ->capture_default_str();

  auto* chk = common(app.add_subcommand("check", "run a verifier suite"));
  chk->add_option("lemma", lemma,
                  "strongly-cocartesian | covering | decomp | q-partition | snaith | fixedposet | cartesian")
      ->required();
  chk->add_option("--seed", cfg.seed)->capture_default_str();
  chk->add_option("--k", cfg.k, "bound on k (snaith, q-partition)");
  chk->add_option("--max-size", cfg.max_size)->capture_default_str();
  chk->add_option("--max-orbits", cfg.max_orbits)->capture_default_str();
  chk->callback([&] {
    if (!chk->count("--k")) cfg.k = lemma == "snaith" ? 12 : 6;
    action = [&] { return check(lemma, cfg, chk); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.format != "json" && cfg.format != "dot" && cfg.format != "table")
      throw InputError("unknown format '" + cfg.format + "'");
    Output o = action();
    std::string text;
    if (cfg.format == "dot") {
      if (!o.dot) throw InputError("this command has no DOT output");
      text = *o.dot;
    } else if (cfg.format == "table") {
      text = table(o.json);
    } else {
      text = o.json.dump(2) + "\n";
    }
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw InputError("cannot write " + cfg.out);
      f << text;
    }
    if (o.verification_failed) {
      std::cerr << "verification failed: " << o.json["counterexample"].get<std::string>() << "\n";
      return 1;
    }
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
