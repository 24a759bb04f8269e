#include "doctest.h"

#include <map>

#include "../src/classify.h"
#include "testutil.h"

using namespace odo;
using namespace testutil;

TEST_CASE("initial seeds at limit 5") {
  auto seeds = initial_seeds(5.0);
  REQUIRE(seeds.size() == 8);
  std::set<std::string> expect;
  for (const auto& l : lines("w1_seeds.txt")) {
    auto a = l.find(' ');
    expect.insert(canonical_key(pair_of(l.substr(a + 1))));
  }
  CHECK(canonical_set(seeds) == expect);
}

TEST_CASE("annular-multiplicity families") {
  std::vector<BigraphPair> survivors;
  for (const char* f : {"w12.txt", "w11.txt", "w10.txt"})
    for (const auto& p : fixture_pairs(f)) survivors.push_back(p);
  auto fams = partition_by_annular_multiplicity(survivors);
  REQUIRE(fams.size() == 3);
  CHECK(fams.at(2).size() == 7);
  CHECK(fams.at(1).size() == 3);
  CHECK(fams.at(0).size() == 1);
  CHECK(canonical_set(fams.at(2)) == canonical_set(fixture_pairs("w12.txt")));
  CHECK(canonical_set(fams.at(1)) == canonical_set(fixture_pairs("w11.txt")));
  CHECK(canonical_set(fams.at(0)) == canonical_set(fixture_pairs("w10.txt")));
}

TEST_CASE("full pipeline reproduces the published statement") {
  PipelineOptions opt;
  opt.threads = 4;
  auto rep = run_index5_classification(opt);
  CHECK(canonical_set(rep.final_vines) ==
        canonical_set(fixture_pairs("v_infinity.txt")));
  CHECK(canonical_set(rep.final_weeds) ==
        canonical_set(fixture_pairs("w_infinity.txt")));
  CHECK(rep.warnings.empty());
  std::string details;
  CHECK(diff_against_fixtures(rep, fixtures_dir(), details) == 0);

  // per-run checkpoints: named trees from the survey figures
  std::map<std::string, const OdometerResult*> runs;
  for (const auto& fr : rep.family_runs) runs[fr.name] = &fr.result;
  for (auto [run, fig] : std::vector<std::pair<std::string, std::string>>{
           {"o2a", "fig_o2a"},
           {"o2c", "fig_o2c"},
           {"e2", "fig_e2"},
           {"gamma5321", "fig_gamma3"},
           {"gamma4321", "fig_gamma2"}}) {
    CAPTURE(run);
    REQUIRE(runs.count(run));
    CHECK(tree_signature(tree_to_json(runs.at(run)->tree)) ==
          tree_signature(fixture_tree(fig)));
  }

  REQUIRE(runs.count("a10-1"));
  CHECK(tree_signature(tree_to_json(runs.at("a10-1")->tree)) ==
        tree_signature(fixture_tree("fig_10")));
  std::set<std::string> sigs11, figs11;
  for (const auto& fr : rep.family_runs)
    if (fr.name.rfind("a11-", 0) == 0)
      sigs11.insert(tree_signature(tree_to_json(fr.result.tree)));
  for (const char* f : {"fig_11a", "fig_11b", "fig_11c"})
    figs11.insert(tree_signature(fixture_tree(f)));
  CHECK(sigs11 == figs11);

  // family runs partition the triple-point vines by figure
  auto vines_of = [&](const std::string& prefix) {
    std::set<std::string> out;
    for (const auto& fr : rep.family_runs)
      if (fr.name.rfind(prefix, 0) == 0)
        for (const auto& v : fr.result.statement.vines)
          out.insert(canonical_key(v));
    return out;
  };
  std::set<std::string> v12 = canonical_set(fixture_pairs("v12.txt"));
  CHECK(vines_of("a12-") == v12);
  std::set<std::string> v11;
  for (const char* f : {"v11a.txt", "v11b.txt", "v11c.txt"})
    for (const auto& k : canonical_set(fixture_pairs(f))) v11.insert(k);
  CHECK(vines_of("a11-") == v11);
  CHECK(vines_of("a10-") == canonical_set(fixture_pairs("v10.txt")));
}
