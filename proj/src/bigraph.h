// Core data model: graded bipartite graphs with dual data ("bigraphs"), the
// bwd...duals... string codec, canonical forms, translates/truncations and
// annular invariants.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace odo {

// Thrown by the codec.  `structural` distinguishes well-formed strings that
// describe an inconsistent graph from plain syntax errors.
struct ParseError : std::runtime_error {
  bool structural;
  std::size_t pos;
  ParseError(bool structural_, std::size_t pos_, const std::string& msg)
      : std::runtime_error(msg), structural(structural_), pos(pos_) {}
};

using Row = std::vector<int>;
using Matrix = std::vector<Row>;      // rows: depth-d vertices, cols: depth-(d-1)
using Involution = std::vector<int>;  // 0-based images, inv[inv[i]] == i

struct BigraphWithDuals {
  std::vector<Matrix> matrices;       // M_1..M_D
  std::vector<Involution> duals;      // one involution per even depth 0,2,...

  int depth() const { return static_cast<int>(matrices.size()); }
  int rank(int d) const;              // number of vertices at depth d
  int vertex_count() const;
  int vertex_index(int d, int i) const;           // flat id, depth-major
  // Full symmetric adjacency matrix over all vertices, flat order.
  std::vector<std::vector<int>> adjacency() const;

  bool operator==(const BigraphWithDuals&) const = default;
};

struct BigraphPair {
  BigraphWithDuals g1, g2;
  const BigraphWithDuals& graph(int i) const { return i ? g2 : g1; }
  BigraphWithDuals& graph(int i) { return i ? g2 : g1; }
  bool equal_depths() const { return g1.depth() == g2.depth(); }
  bool operator==(const BigraphPair&) const = default;
};

BigraphWithDuals parse_bigraph(const std::string& text);
std::string serialize_bigraph(const BigraphWithDuals& g);
void validate_graph(const BigraphWithDuals& g);  // throws ParseError(structural)
void validate_pair(const BigraphPair& p);        // pair invariants

BigraphPair parse_pair(const std::string& a, const std::string& b);
std::string serialize_pair(const BigraphPair& p);  // "<g1> <g2>"

int supertransitivity(const BigraphWithDuals& g);
int supertransitivity(const BigraphPair& p);

BigraphWithDuals truncate_graph(const BigraphWithDuals& g, int d);
BigraphPair truncate_pair(const BigraphPair& p, int d1, int d2);

// Prepend a chain of length k.  For pairs k must be even; the single-graph
// version also accepts odd k (used only for norm checks, where the invented
// trivial dual data at the shifted even depths is irrelevant).
BigraphWithDuals translate_graph(const BigraphWithDuals& g, int k);
BigraphPair translate(const BigraphPair& p, int k);

// True iff p is an extension of a translate of seed.
bool starts_like(const BigraphPair& p, const BigraphPair& seed);

// Isomorphism-class representative: minimal over depth-preserving
// relabelings (shared at odd depths, independent per graph at even depths)
// and over the two orderings of the pair.
BigraphPair canonical_form(const BigraphPair& p);
BigraphWithDuals canonical_form(const BigraphWithDuals& g);
std::string canonical_key(const BigraphPair& p);
std::string canonical_key(const BigraphWithDuals& g);

// Number of closed walks of length 2r based at the root.
std::int64_t loop_count(const BigraphWithDuals& g, int r);
// a_n, n >= 1 (a_0 is 1 by convention); requires depth(g) >= n.
std::int64_t annular_multiplicity(const BigraphWithDuals& g, int n);

struct DualCountSummary {
  int self_dual = 0;           // a
  int non_self_dual_pairs = 0; // b
  bool operator==(const DualCountSummary&) const = default;
};
// (a, b) at depth n+1 for odd supertransitivity n; requires depth >= n+1.
DualCountSummary dual_counts_at_branch(const BigraphWithDuals& g);

}  // namespace odo
