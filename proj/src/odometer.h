// Depth-by-depth enumeration of bigraph pairs below an index limit: one-step
// extensions, the weed/vine step, and the full driver with stop patterns.
#pragma once

#include <string>
#include <vector>

#include "bigraph.h"

namespace odo {

struct OdometerOptions {
  double slack = 1e-3;        // enumeration norm budget is sqrt(limit) + slack
  long max_steps = -1;        // depth levels to run; -1 = until no weeds remain
  std::vector<BigraphPair> stop_weeds;  // freeze weeds that start like one of these
  bool apply_associativity = true;
  // Skip equal extensions whose one-sided restriction already passed as a
  // vine.  Off by default: such a candidate can still pass its own interior
  // test and must then be kept as a weed.
  bool vine_shortcut = false;
  // Target the open index interval below the limit: drop any candidate whose
  // first graph (in canonical form) already has squared norm at the limit,
  // since everything it can grow into has index at least the limit.  Off by
  // default, which treats the interval as closed and keeps such candidates.
  bool open_limit = false;
  int threads = 1;
};

// "Everything below the limit starts like a translate of a vine or extends a
// translate of a weed."
struct ClassificationStatement {
  BigraphPair seed;
  double index_limit = 0;
  std::vector<BigraphPair> vines, weeds;  // sorted by canonical key
};

struct OdometerTree {
  struct Node {
    std::string label;  // serialized pair (representative labeling)
    bool red = false;   // weed of the final statement
    int parent = -1;
    std::vector<int> children;
  };
  std::vector<Node> nodes;  // nodes[0] = seed
  std::string to_dot() const;
};

// All one-depth extensions of a single graph with norm^2 <= limit + 1e-9
// (new rows nonincreasing; all dual data if the new depth is even), deduped
// by canonical form, sorted by canonical key.
std::vector<BigraphWithDuals> extend_graph(const BigraphWithDuals& g, double limit,
                                           double slack = 1e-3);

// One-depth extensions of an equal-depth pair to an equal-depth pair.
std::vector<BigraphPair> extend_pair_equal(const BigraphPair& w, double limit,
                                           double slack = 1e-3);
// Extensions of exactly one graph; nonempty only when the new depth is even.
std::vector<BigraphPair> extend_pair_unequal(const BigraphPair& w, double limit,
                                             double slack = 1e-3);

struct StepResult {
  std::vector<BigraphPair> new_weeds;  // equal extensions passing the interior test
  std::vector<BigraphPair> new_vines;  // {w} + unequal extensions passing everywhere
};
StepResult odometer_step(const BigraphPair& w, double limit, const OdometerOptions& opt);

struct OdometerResult {
  ClassificationStatement statement;
  OdometerTree tree;
  long steps = 0;
};
OdometerResult run_odometer(const BigraphPair& seed, double limit,
                            const OdometerOptions& opt = {});

}  // namespace odo
