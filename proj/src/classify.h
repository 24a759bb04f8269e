// The full index-5 classification pipeline: seed generation, the dual-count
// and triple-point eliminations, annular-multiplicity families, per-family
// odometer runs and the quadruple-point weed eliminations.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "odometer.h"

namespace odo {

// Minimal branch structures (first branch point, both parities) below the
// index limit, deduped; the two graphs must agree on the first nontrivial
// annular multiplicity and pass the interior associativity test.
std::vector<BigraphPair> initial_seeds(double index_limit);

// Key: a_{n+2} of the first graph, n the supertransitivity.
std::map<std::int64_t, std::vector<BigraphPair>> partition_by_annular_multiplicity(
    const std::vector<BigraphPair>& ws);

struct FamilyRun {
  std::string name;
  OdometerResult result;
};

struct PipelineOptions {
  double index_limit = 5.0;
  double slack = 1e-3;
  int threads = 1;
};

struct PipelineReport {
  std::vector<BigraphPair> final_vines, final_weeds;  // sorted by canonical key
  std::vector<FamilyRun> family_runs;
  std::vector<std::string> warnings;  // inconclusive screens etc.
  nlohmann::json log;                 // structured per-stage record
};

PipelineReport run_index5_classification(const PipelineOptions& opt = {});

// Compares final vines/weeds with <dir>/v_infinity.txt and
// <dir>/w_infinity.txt (one pair per line); returns the number of
// differences and appends details.
int diff_against_fixtures(const PipelineReport& r, const std::string& dir,
                          std::string& details);

nlohmann::json report_to_json(const PipelineReport& r);

// Nested {"g1","g2","red","children"} form of an odometer tree.
nlohmann::json tree_to_json(const OdometerTree& t);

}  // namespace odo
