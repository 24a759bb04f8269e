// Graph norms, quantum integers and dimension (Perron-Frobenius style)
// screens used to kill enumeration branches.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bigraph.h"

namespace odo {

// Operator norm of the adjacency matrix (largest eigenvalue); the index of
// the corresponding object is its square.
double graph_norm(const BigraphWithDuals& g);
double graph_norm(const std::vector<Matrix>& matrices);

// [n] = (q^n - q^-n) / (q - q^-1).
double quantum_integer(int n, double q);

// Largest root of q + 1/q = norm, i.e. the q-parameter of a graph norm >= 2.
double q_of_norm(double norm);

// A linear functional on vertex dimensions: sum of coeff * dim(flat vertex).
using DimFunctional = std::vector<std::pair<int, double>>;

// Dimensions at eigenvalue q + 1/q, normalized to 1 at the root, solving the
// eigenvector equation at every vertex of depth < depth(g) as one linear
// system.  Individual coordinates (and functionals) may be determined even
// when the system as a whole is not.
struct DimensionSolution {
  bool consistent = true;
  std::vector<double> values;        // flat vertex order; meaningful iff known
  std::vector<char> known;           // 1 iff coordinate is determined
  // Value of a functional if it is determined by the system.
  std::optional<double> evaluate(const DimFunctional& f) const;

  // internal: particular solution + kernel basis (column per kernel vector)
  std::vector<std::vector<double>> kernel;
};
DimensionSolution dimension_vector(const BigraphWithDuals& g, double q);

// Checks lo < f(q) < hi for q sampled densely in the open interval
// (q_lo, q_hi).  `holds` is false if any sample violates the bounds or the
// functional is undetermined/inconsistent somewhere; `worst_*` record the
// extremal sample closest to (or past) a bound.
struct ScreenResult {
  bool holds = true;
  bool determined = true;
  double min_value = 0, max_value = 0;
  double argmin_q = 0, argmax_q = 0;
};
ScreenResult dimension_screen(const BigraphWithDuals& g, const DimFunctional& f,
                              double q_lo, double q_hi, double lo, double hi,
                              int samples = 10000);

}  // namespace odo
