#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "../src/classify.h"
#include "../src/odometer.h"
#include "../src/spectral.h"
#include "testutil.h"

using namespace odo;
using namespace testutil;

namespace {

const double kLimit = 3 + std::sqrt(3.0);

std::set<std::string> graph_canonical_set(const std::vector<BigraphWithDuals>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(canonical_key(g));
  return out;
}

std::set<std::string> graph_fixture_set(const std::string& file) {
  std::set<std::string> out;
  for (const auto& l : lines(file)) out.insert(canonical_key(parse_bigraph(l)));
  return out;
}

// Independent brute force: all one-depth extensions of g by up to six
// nonincreasing nonzero rows with entries <= 2, norm^2 <= limit, all dual
// involutions when the new depth is even, deduped canonically.
std::set<std::string> brute_extensions(const BigraphWithDuals& g, double limit) {
  int c = g.rank(g.depth());
  std::vector<Row> rows;
  {
    Row r(c, 0);
    while (true) {
      int i = 0;
      while (i < c && r[i] == 2) r[i++] = 0;
      if (i == c) break;
      ++r[i];
      rows.push_back(r);
    }
  }
  std::set<std::string> out;
  bool even = (g.depth() + 1) % 2 == 0;
  std::function<void(std::size_t, std::vector<Row>&)> rec =
      [&](std::size_t start, std::vector<Row>& acc) {
        if (!acc.empty()) {
          BigraphWithDuals e = g;
          e.matrices.push_back(acc);
          double n = graph_norm(e.matrices);
          if (n * n <= limit + 1e-9) {
            if (!even) {
              out.insert(canonical_key(e));
            } else {
              // all involutions of the new vertices
              int k = static_cast<int>(acc.size());
              std::vector<int> inv(k);
              std::function<void(int)> duals = [&](int i) {
                while (i < k && inv[i] != 0) ++i;
                if (i == k) {
                  BigraphWithDuals f = e;
                  Involution iv(k);
                  for (int j = 0; j < k; ++j) iv[j] = inv[j] - 1;
                  f.duals.push_back(iv);
                  out.insert(canonical_key(f));
                  return;
                }
                inv[i] = i + 1;  // fixed point
                duals(i + 1);
                inv[i] = 0;
                for (int j = i + 1; j < k; ++j) {
                  if (inv[j]) continue;
                  inv[i] = j + 1;
                  inv[j] = i + 1;
                  duals(i + 1);
                  inv[i] = inv[j] = 0;
                }
              };
              duals(0);
            }
          } else {
            return;  // adding rows only raises the norm
          }
        }
        if (acc.size() == 6) return;
        for (std::size_t i = start; i < rows.size(); ++i) {
          acc.push_back(rows[i]);
          rec(i, acc);
          acc.pop_back();
        }
      };
  std::vector<Row> acc;
  // rows must be nonincreasing: iterate in descending order
  std::sort(rows.begin(), rows.end(), std::greater<>());
  rec(0, acc);
  return out;
}

}  // namespace

TEST_CASE("one-graph extensions of the worked-example seed") {
  BigraphPair seed = pair_of(lines("sec4_seed.txt")[0]);
  auto o1 = extend_graph(seed.g1, kLimit);
  auto o2 = extend_graph(seed.g2, kLimit);
  CHECK(o1.size() == 13);
  CHECK(o2.size() == 2);
  CHECK(graph_canonical_set(o1) == graph_fixture_set("sec4_O1.txt"));
  CHECK(graph_canonical_set(o2) == graph_fixture_set("sec4_O2.txt"));
}

TEST_CASE("extend_graph matches a brute-force oracle") {
  for (const char* s : {"bwd1v1v1duals1v1", "bwd1v1v1v1duals1v1v1",
                        "bwd1v1v1p1duals1v1", "bwd1v1p1duals1v1x2"}) {
    BigraphWithDuals g = parse_bigraph(s);
    for (double limit : {2.5, 3.2}) {
      CAPTURE(s);
      CAPTURE(limit);
      CHECK(graph_canonical_set(extend_graph(g, limit)) ==
            brute_extensions(g, limit));
    }
  }
}

TEST_CASE("worked-example run, step by step") {
  BigraphPair seed = pair_of(lines("sec4_seed.txt")[0]);
  OdometerOptions opt;

  opt.max_steps = 1;
  auto r1 = run_odometer(seed, kLimit, opt);
  CHECK(canonical_set(r1.statement.weeds) ==
        canonical_set(fixture_pairs("sec4_w1.txt")));
  CHECK(tree_signature(tree_to_json(r1.tree)) ==
        tree_signature(fixture_tree("sec4_step1")));

  opt.max_steps = 2;
  auto r2 = run_odometer(seed, kLimit, opt);
  CHECK(canonical_set(r2.statement.weeds) ==
        canonical_set(fixture_pairs("sec4_step2_weeds.txt")));
  CHECK(canonical_set(r2.statement.vines) ==
        canonical_set(fixture_pairs("sec4_step2_vines.txt")));
  CHECK(tree_signature(tree_to_json(r2.tree)) ==
        tree_signature(fixture_tree("sec4_step2")));

  opt.max_steps = 3;
  auto r3 = run_odometer(seed, kLimit, opt);
  CHECK(tree_signature(tree_to_json(r3.tree)) ==
        tree_signature(fixture_tree("sec4_step3")));

  opt.max_steps = -1;
  auto rf = run_odometer(seed, kLimit, opt);
  CHECK(rf.statement.weeds.empty());
  CHECK(canonical_set(rf.statement.vines) ==
        canonical_set(fixture_pairs("sec4_final_vines.txt")));
  CHECK(tree_signature(tree_to_json(rf.tree)) ==
        tree_signature(fixture_tree("sec4_final")));
}

TEST_CASE("threading and the vine shortcut do not change the outcome") {
  BigraphPair seed = pair_of(lines("sec4_seed.txt")[0]);
  OdometerOptions base;
  auto ref = run_odometer(seed, kLimit, base);
  auto dump = [](const OdometerResult& r) {
    std::string s;
    for (const auto& v : r.statement.vines) s += serialize_pair(v) + ";";
    s += "|";
    for (const auto& w : r.statement.weeds) s += serialize_pair(w) + ";";
    return s;
  };
  OdometerOptions threaded = base;
  threaded.threads = 4;
  CHECK(dump(run_odometer(seed, kLimit, threaded)) == dump(ref));
  // on this seed the shortcut only removes candidates that fail the
  // interior test anyway, so it changes nothing
  OdometerOptions shortcut = base;
  shortcut.vine_shortcut = true;
  auto sc = run_odometer(seed, kLimit, shortcut);
  CHECK(dump(sc) == dump(ref));
  CHECK(tree_signature(tree_to_json(sc.tree)) ==
        tree_signature(tree_to_json(ref.tree)));
}

TEST_CASE("norm is monotone along extensions and truncations") {
  std::mt19937 rng(777);
  int built = 0;
  while (built < 1000) {
    BigraphWithDuals g = parse_bigraph("bwd1v1duals1v1");
    double prev = graph_norm(g);
    while (g.depth() < 6) {
      auto ext = extend_graph(g, 5.0);
      if (ext.empty()) break;
      g = ext[std::uniform_int_distribution<std::size_t>(0, ext.size() - 1)(rng)];
      double n = graph_norm(g);
      CHECK(n >= prev - 1e-12);
      for (int d = 1; d < g.depth(); ++d)
        CHECK(graph_norm(truncate_graph(g, d)) <= n + 1e-12);
      prev = n;
      ++built;
      if (built >= 1000) break;
    }
  }
}

TEST_CASE("stop patterns freeze matching weeds") {
  BigraphPair seed = pair_of(lines("sec4_seed.txt")[0]);
  OdometerOptions opt;
  opt.stop_weeds = fixture_pairs("sec4_step2_weeds.txt");
  auto r = run_odometer(seed, kLimit, opt);
  // the two step-2 weeds stay frozen instead of being ground down
  CHECK(canonical_set(r.statement.weeds) == canonical_set(opt.stop_weeds));
  for (const auto& w : r.statement.weeds) {
    bool matched = false;
    for (const auto& s : opt.stop_weeds) matched = matched || starts_like(w, s);
    CHECK(matched);
  }
}
