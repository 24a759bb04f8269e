#include "doctest.h"

#include <map>

#include "../src/obstructions.h"
#include "testutil.h"

using namespace odo;
using namespace testutil;

namespace {

// "name g1 g2" lines.
std::map<std::string, BigraphPair> named_pairs(const std::string& file) {
  std::map<std::string, BigraphPair> out;
  for (const auto& l : lines(file)) {
    auto a = l.find(' '), b = l.find(' ', a + 1);
    out.emplace(l.substr(0, a),
                parse_pair(l.substr(a + 1, b - a - 1), l.substr(b + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("published pairs pass associativity everywhere") {
  for (const auto& p : fixture_pairs("v_infinity.txt")) {
    CHECK(associativity_check(p, AssocScope::IncludeDeepest).ok());
    CHECK(associativity_check(p, AssocScope::InteriorOnly).ok());
  }
}

TEST_CASE("associativity failure example") {
  // mismatched dual data on an extension breaks the count comparison
  BigraphPair good = pair_of(
      "bwd1v1v1v1p1v1x0p0x1duals1v1v1x2 bwd1v1v1v1p1v1x0p0x1duals1v1v1x2");
  BigraphPair bad = pair_of(
      "bwd1v1v1v1p1v1x0p0x1duals1v1v1x2 bwd1v1v1v1p1v1x0p0x1duals1v1v2x1");
  CHECK(associativity_check(good, AssocScope::IncludeDeepest).ok());
  auto r = associativity_check(bad, AssocScope::IncludeDeepest);
  CHECK(r.applicable);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("is_forbidden core") {
  std::set<int> a{0}, b{1}, c{0, 1};
  CHECK(is_forbidden(a, b, a, b));        // matched straight
  CHECK(is_forbidden(a, b, b, a));        // matched crossed
  CHECK_FALSE(is_forbidden(a, c, a, c));  // overlap on either side saves it
  CHECK_FALSE(is_forbidden(a, b, a, c));
  std::set<int> d{2};
  CHECK_FALSE(is_forbidden(a, b, a, d));  // neither matching holds
  CHECK(is_forbidden({}, {}, {}, {}));    // empty branches are forbidden
}

TEST_CASE("triple-point check on the branch-candidate lists") {
  // in each list only a fixed-length tail is eliminated
  for (auto [file, killed] : std::vector<std::pair<std::string, int>>{
           {"eq_o1a.txt", 6}, {"eq_o1c.txt", 2}, {"eq_e1.txt", 20}}) {
    auto ps = fixture_pairs(file);
    int n = static_cast<int>(ps.size());
    for (int i = 0; i < n; ++i) {
      auto r = triple_point_check(ps[i]);
      REQUIRE(r.applicable);
      CHECK(r.pass == (i < n - killed));
    }
  }
}

TEST_CASE("triple-point check kills the bare seeds") {
  for (const auto& [name, p] : named_pairs("w1_seeds.txt")) {
    auto r = triple_point_check(p);
    if (!r.applicable) continue;  // quadruple-point seeds
    CHECK_FALSE(r.pass);
  }
}

TEST_CASE("dual-count check on the seeds") {
  auto seeds = named_pairs("w1_seeds.txt");
  REQUIRE(seeds.size() == 8);
  for (const auto& [name, p] : seeds) {
    auto r = dual_count_check(p);
    if (name == "e1" || name == "e2") {
      CHECK_FALSE(r.applicable);  // even supertransitivity
    } else {
      REQUIRE(r.applicable);
      CHECK(r.pass == (name != "o1b" && name != "o2b"));
    }
  }
}

TEST_CASE("even-quadruple prefix check") {
  CHECK(serialize_pair(even_quadruple_pattern()) ==
        "bwd1v1v1p1p1v1x0x0duals1v1v1 bwd1v1v1p1p1v1x0x0duals1v1v1");
  auto we2 = fixture_pairs("w_e2.txt");
  REQUIRE(we2.size() == 3);
  CHECK_FALSE(even_quadruple_prefix_check(we2[0]).ok());  // the even-quad weed
  CHECK(even_quadruple_prefix_check(we2[1]).ok());
  CHECK(even_quadruple_prefix_check(we2[2]).ok());
  // the surviving quadruple weeds are not of this shape
  for (const auto& p : fixture_pairs("w_infinity.txt"))
    CHECK(even_quadruple_prefix_check(p).ok());
}
