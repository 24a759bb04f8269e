#include "obstructions.h"

#include <algorithm>

namespace odo {

namespace {

struct Vertex {
  int g, d, j;
};

// Dual vertex: even depth -> involution image in the same graph, odd depth
// -> same index in the other graph.
Vertex dual_of(const BigraphPair& p, Vertex v) {
  if (v.d % 2 == 0) return {v.g, v.d, p.graph(v.g).duals[v.d / 2][v.j]};
  return {1 - v.g, v.d, v.j};
}

// Adjacency multiplicity between two vertices of the same graph at depths
// differing by one; 0 if out of range.
int mult(const BigraphPair& p, Vertex a, Vertex b) {
  if (a.g != b.g) return 0;
  const BigraphWithDuals& g = p.graph(a.g);
  if (a.d > b.d) std::swap(a, b);
  if (b.d != a.d + 1) return 0;
  if (b.d > g.depth() || a.j >= g.rank(a.d) || b.j >= g.rank(b.d)) return 0;
  return g.matrices[b.d - 1][b.j][a.j];
}

}  // namespace

CheckResult associativity_check(const BigraphPair& p, AssocScope scope) {
  CheckResult res;
  int d1 = p.g1.depth(), d2 = p.g2.depth();
  for (int dv = 0; dv <= d1; ++dv) {
    for (int dw = dv % 2; dw <= d2; dw += 2) {
      if (dv == 0 && dw == 0) continue;
      if (scope == AssocScope::InteriorOnly && dv == d1 && dw == d2) continue;
      for (int jv = 0; jv < p.g1.rank(dv); ++jv) {
        for (int jw = 0; jw < p.g2.rank(dw); ++jw) {
          Vertex v{0, dv, jv}, w{1, dw, jw};
          Vertex vd = dual_of(p, v), wd = dual_of(p, w);
          long long c1 = 0, c2 = 0;
          for (int dz : {dv - 1, dv + 1}) {
            if (dz < 0 || dz > d1) continue;
            for (int jz = 0; jz < p.g1.rank(dz); ++jz) {
              int e = mult(p, v, {0, dz, jz});
              if (!e) continue;
              c1 += static_cast<long long>(e) * mult(p, dual_of(p, {0, dz, jz}), wd);
            }
          }
          for (int du : {dw - 1, dw + 1}) {
            if (du < 0 || du > d2) continue;
            for (int ju = 0; ju < p.g2.rank(du); ++ju) {
              int e = mult(p, w, {1, du, ju});
              if (!e) continue;
              c2 += static_cast<long long>(e) * mult(p, dual_of(p, {1, du, ju}), vd);
            }
          }
          if (c1 != c2) {
            res.pass = false;
            res.witness = "V=(" + std::to_string(dv) + "," + std::to_string(jv) +
                          ") W=(" + std::to_string(dw) + "," + std::to_string(jw) +
                          "): " + std::to_string(c1) + " != " + std::to_string(c2);
            return res;
          }
        }
      }
    }
  }
  return res;
}

bool is_forbidden(const std::set<int>& a1, const std::set<int>& a2,
                  const std::set<int>& a1d, const std::set<int>& a2d) {
  auto disjoint = [](const std::set<int>& x, const std::set<int>& y) {
    for (int e : x)
      if (y.count(e)) return false;
    return true;
  };
  if (!disjoint(a1, a2) || !disjoint(a1d, a2d)) return false;
  return (a1 == a1d && a2 == a2d) || (a1 == a2d && a2 == a1d);
}

CheckResult triple_point_check(const BigraphPair& p) {
  CheckResult res;
  int n = supertransitivity(p);
  const Matrix branch{{1}, {1}};
  if (p.g1.depth() < n + 1 || p.g2.depth() < n + 1 ||
      p.g1.matrices[n] != branch || p.g2.matrices[n] != branch) {
    res.applicable = false;
    return res;
  }
  for (int orient = 0; orient < 2; ++orient) {
    const BigraphWithDuals& g = p.graph(orient);
    const BigraphWithDuals& h = p.graph(1 - orient);
    std::set<int> a[2], ad[2];
    if (g.depth() >= n + 2) {
      const Matrix& m = g.matrices[n + 1];
      for (int r = 0; r < static_cast<int>(m.size()); ++r)
        for (int i = 0; i < 2; ++i)
          if (m[r][i]) a[i].insert(r);
    }
    if (n % 2 == 0) {
      // n+2 even: duals of the neighbor sets under g's own involution.
      for (int i = 0; i < 2; ++i)
        for (int x : a[i]) ad[i].insert(g.duals[(n + 2) / 2][x]);
    } else {
      // n+2 odd: duals live in the other graph at the same indices.
      if (h.depth() >= n + 2) {
        const Matrix& m = h.matrices[n + 1];
        for (int r = 0; r < static_cast<int>(m.size()); ++r)
          for (int i = 0; i < 2; ++i)
            if (m[r][i]) ad[i].insert(r);
      }
    }
    if (is_forbidden(a[0], a[1], ad[0], ad[1])) {
      res.pass = false;
      res.witness = orient == 0 ? "forbidden" : "forbidden (reversed)";
      return res;
    }
  }
  return res;
}

CheckResult dual_count_check(const BigraphPair& p) {
  CheckResult res;
  int n = supertransitivity(p);
  if (n % 2 != 1 || p.g1.depth() < n + 1 || p.g2.depth() < n + 1) {
    res.applicable = false;
    return res;
  }
  DualCountSummary s1 = dual_counts_at_branch(p.g1);
  DualCountSummary s2 = dual_counts_at_branch(p.g2);
  if (!(s1 == s2)) {
    res.pass = false;
    res.witness = "(" + std::to_string(s1.self_dual) + "," +
                  std::to_string(s1.non_self_dual_pairs) + ") != (" +
                  std::to_string(s2.self_dual) + "," +
                  std::to_string(s2.non_self_dual_pairs) + ")";
  }
  return res;
}

const BigraphPair& even_quadruple_pattern() {
  static const BigraphPair pat = parse_pair("bwd1v1v1p1p1v1x0x0duals1v1v1",
                                            "bwd1v1v1p1p1v1x0x0duals1v1v1");
  return pat;
}

CheckResult even_quadruple_prefix_check(const BigraphPair& p) {
  CheckResult res;
  if (starts_like(p, even_quadruple_pattern())) {
    res.pass = false;
    res.witness = "starts like the forbidden even-quadruple pattern";
  }
  return res;
}

}  // namespace odo
