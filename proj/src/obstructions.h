// Tests that kill candidate bigraph pairs: associativity of the two graded
// multiplications, the triple-point and quadruple-point dual-data
// obstructions, and the forbidden even-quadruple prefix.
#pragma once

#include <set>
#include <string>

#include "bigraph.h"

namespace odo {

struct CheckResult {
  bool applicable = true;  // false: hypotheses not met, check says nothing
  bool pass = true;        // meaningful iff applicable
  std::string witness;     // first failure found, empty on pass
  bool ok() const { return !applicable || pass; }
};

enum class AssocScope {
  InteriorOnly,    // skip vertex pairs that are both at the deepest depths
  IncludeDeepest,  // test everything except the root/root pair
};

// Both multiplications agree on all vertex pairs (V in g1, W in g2, equal
// depth parity) within scope.
CheckResult associativity_check(const BigraphPair& p, AssocScope scope);

// The combinatorial core of the triple-point obstruction.
bool is_forbidden(const std::set<int>& a1, const std::set<int>& a2,
                  const std::set<int>& a1d, const std::set<int>& a2d);

// Triple-point obstruction at an initial triple point (branch into exactly
// two vertices at depth n+1, n the supertransitivity).  Evaluated on both
// orientations of the pair; fails if either is forbidden.
CheckResult triple_point_check(const BigraphPair& p);

// For odd supertransitivity n: the (self-dual, dual-pair) counts at depth
// n+1 must agree between the graphs.
CheckResult dual_count_check(const BigraphPair& p);

// Fails iff the pair starts like the forbidden even-quadruple pattern.
CheckResult even_quadruple_prefix_check(const BigraphPair& p);
const BigraphPair& even_quadruple_pattern();

}  // namespace odo
