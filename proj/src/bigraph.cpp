#include "bigraph.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace odo {

int BigraphWithDuals::rank(int d) const {
  if (d == 0) return 1;
  return static_cast<int>(matrices[d - 1].size());
}

int BigraphWithDuals::vertex_count() const {
  int n = 0;
  for (int d = 0; d <= depth(); ++d) n += rank(d);
  return n;
}

int BigraphWithDuals::vertex_index(int d, int i) const {
  int n = 0;
  for (int e = 0; e < d; ++e) n += rank(e);
  return n + i;
}

std::vector<std::vector<int>> BigraphWithDuals::adjacency() const {
  int n = vertex_count();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int d = 1; d <= depth(); ++d) {
    const Matrix& m = matrices[d - 1];
    for (int r = 0; r < static_cast<int>(m.size()); ++r)
      for (int c = 0; c < static_cast<int>(m[r].size()); ++c) {
        int u = vertex_index(d, r), v = vertex_index(d - 1, c);
        a[u][v] = a[v][u] = m[r][c];
      }
  }
  return a;
}

// ---------------------------------------------------------------- codec

namespace {

[[noreturn]] void syntax(std::size_t pos, const std::string& msg) {
  throw ParseError(false, pos, "syntax error at " + std::to_string(pos) + ": " + msg);
}
[[noreturn]] void structural(const std::string& msg) {
  throw ParseError(true, 0, "structural error: " + msg);
}

}  // namespace

BigraphWithDuals parse_bigraph(const std::string& text) {
  std::size_t i = 0;
  auto digit = [&]() -> int {
    if (i >= text.size() || text[i] < '0' || text[i] > '9')
      syntax(i, "expected digit");
    return text[i++] - '0';
  };
  if (text.compare(0, 3, "bwd") != 0) syntax(0, "expected 'bwd'");
  i = 3;

  BigraphWithDuals g;
  // Matrices, separated by 'v'; rows by 'p'; entries by 'x'.  The section
  // ends at the 'd' of "duals".
  for (;;) {
    Matrix m;
    for (;;) {
      Row row;
      row.push_back(digit());
      while (i < text.size() && text[i] == 'x') {
        ++i;
        row.push_back(digit());
      }
      m.push_back(std::move(row));
      if (i < text.size() && text[i] == 'p') {
        ++i;
        continue;
      }
      break;
    }
    g.matrices.push_back(std::move(m));
    if (i < text.size() && text[i] == 'v') {
      ++i;
      continue;
    }
    break;
  }
  if (text.compare(i, 5, "duals") != 0) syntax(i, "expected 'duals'");
  i += 5;
  for (;;) {
    Involution inv;
    inv.push_back(digit() - 1);  // stored 0-based
    while (i < text.size() && text[i] == 'x') {
      ++i;
      inv.push_back(digit() - 1);
    }
    g.duals.push_back(std::move(inv));
    if (i < text.size() && text[i] == 'v') {
      ++i;
      continue;
    }
    break;
  }
  if (i != text.size()) syntax(i, "trailing characters");
  validate_graph(g);
  return g;
}

std::string serialize_bigraph(const BigraphWithDuals& g) {
  std::string s = "bwd";
  for (std::size_t d = 0; d < g.matrices.size(); ++d) {
    if (d) s += 'v';
    for (std::size_t r = 0; r < g.matrices[d].size(); ++r) {
      if (r) s += 'p';
      for (std::size_t c = 0; c < g.matrices[d][r].size(); ++c) {
        if (c) s += 'x';
        s += static_cast<char>('0' + g.matrices[d][r][c]);
      }
    }
  }
  s += "duals";
  for (std::size_t k = 0; k < g.duals.size(); ++k) {
    if (k) s += 'v';
    for (std::size_t j = 0; j < g.duals[k].size(); ++j) {
      if (j) s += 'x';
      s += static_cast<char>('1' + g.duals[k][j]);
    }
  }
  return s;
}

void validate_graph(const BigraphWithDuals& g) {
  if (g.matrices.empty()) structural("graph has no matrices");
  for (int d = 1; d <= g.depth(); ++d) {
    const Matrix& m = g.matrices[d - 1];
    if (m.empty()) structural("empty matrix at depth " + std::to_string(d));
    int cols = d == 1 ? 1 : static_cast<int>(g.matrices[d - 2].size());
    for (const Row& row : m) {
      if (static_cast<int>(row.size()) != cols)
        structural("matrix at depth " + std::to_string(d) + " has a row of width " +
                   std::to_string(row.size()) + ", expected " + std::to_string(cols));
      if (std::all_of(row.begin(), row.end(), [](int e) { return e == 0; }))
        structural("zero row at depth " + std::to_string(d));
    }
  }
  int want = g.depth() / 2 + 1;  // even depths 0, 2, ..., <= depth
  if (static_cast<int>(g.duals.size()) != want)
    structural("expected " + std::to_string(want) + " dual groups, got " +
               std::to_string(g.duals.size()));
  for (int k = 0; k < want; ++k) {
    const Involution& inv = g.duals[k];
    int n = g.rank(2 * k);
    if (static_cast<int>(inv.size()) != n)
      structural("dual group at depth " + std::to_string(2 * k) + " has size " +
                 std::to_string(inv.size()) + ", expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      if (inv[j] < 0 || inv[j] >= n)
        structural("dual image out of range at depth " + std::to_string(2 * k));
    }
    for (int j = 0; j < n; ++j)
      if (inv[inv[j]] != j)
        structural("dual data at depth " + std::to_string(2 * k) + " is not an involution");
  }
}

void validate_pair(const BigraphPair& p) {
  validate_graph(p.g1);
  validate_graph(p.g2);
  int d1 = p.g1.depth(), d2 = p.g2.depth();
  if (std::abs(d1 - d2) > 1) structural("pair depths differ by more than one");
  if (d1 != d2 && std::max(d1, d2) % 2 != 0)
    structural("deeper graph of an unequal-depth pair must have even depth");
  if (supertransitivity(p.g1) != supertransitivity(p.g2))
    structural("graphs have different supertransitivity");
  for (int d = 1; d <= std::min(d1, d2); d += 2)
    if (p.g1.rank(d) != p.g2.rank(d))
      structural("vertex counts differ at odd depth " + std::to_string(d));
}

BigraphPair parse_pair(const std::string& a, const std::string& b) {
  BigraphPair p{parse_bigraph(a), parse_bigraph(b)};
  validate_pair(p);
  return p;
}

std::string serialize_pair(const BigraphPair& p) {
  return serialize_bigraph(p.g1) + " " + serialize_bigraph(p.g2);
}

// ------------------------------------------------- basic transformations

int supertransitivity(const BigraphWithDuals& g) {
  int n = 0;
  while (n < g.depth() && g.matrices[n] == Matrix{{1}}) ++n;
  return n;
}

int supertransitivity(const BigraphPair& p) {
  return std::min(supertransitivity(p.g1), supertransitivity(p.g2));
}

BigraphWithDuals truncate_graph(const BigraphWithDuals& g, int d) {
  if (d < 1 || d > g.depth()) throw std::invalid_argument("bad truncation depth");
  BigraphWithDuals t;
  t.matrices.assign(g.matrices.begin(), g.matrices.begin() + d);
  t.duals.assign(g.duals.begin(), g.duals.begin() + (d / 2 + 1));
  return t;
}

BigraphPair truncate_pair(const BigraphPair& p, int d1, int d2) {
  return {truncate_graph(p.g1, d1), truncate_graph(p.g2, d2)};
}

BigraphWithDuals translate_graph(const BigraphWithDuals& g, int k) {
  if (k < 0) throw std::invalid_argument("negative translate");
  if (k == 0) return g;
  BigraphWithDuals t;
  t.matrices.assign(static_cast<std::size_t>(k), Matrix{{1}});
  t.matrices.insert(t.matrices.end(), g.matrices.begin(), g.matrices.end());
  if (k % 2 == 0) {
    t.duals.assign(static_cast<std::size_t>(k / 2), Involution{0});
    t.duals.insert(t.duals.end(), g.duals.begin(), g.duals.end());
  } else {
    // Odd shift: old odd depths become even; dual data there is undefined,
    // fill with identities.  Only used for shape/norm computations.
    for (int e = 0; e <= t.depth(); e += 2) {
      Involution id(t.rank(e));
      std::iota(id.begin(), id.end(), 0);
      t.duals.push_back(std::move(id));
    }
  }
  validate_graph(t);
  return t;
}

BigraphPair translate(const BigraphPair& p, int k) {
  if (k % 2 != 0) throw std::invalid_argument("pair translate must be even");
  return {translate_graph(p.g1, k), translate_graph(p.g2, k)};
}

// ------------------------------------------------------- canonical form

namespace {

// Minimizes, over depth-preserving relabelings of a fixed ordering of the
// pair, the string formed per depth d by the relabeled entries of M_d of
// each graph followed (at even d) by the relabeled dual data.  Odd-depth
// relabelings are shared between the two graphs.
struct CanonSearch {
  const BigraphWithDuals* g[2] = {nullptr, nullptr};
  int dmax = 0;
  // perm[i][d]: new index -> old index, for d = 0..depth(i)
  std::vector<std::vector<int>> perm[2], best_perm[2];
  std::string cur, best;
  bool have_best = false;

  void run(const BigraphWithDuals* a, const BigraphWithDuals* b) {
    g[0] = a;
    g[1] = b;
    dmax = a->depth();
    if (b) dmax = std::max(dmax, b->depth());
    for (int i = 0; i < 2; ++i) {
      if (!g[i]) continue;
      perm[i].resize(g[i]->depth() + 1);
      perm[i][0] = {0};
    }
    descend(1);
  }

  void append_chunk(int d) {
    for (int i = 0; i < 2; ++i) {
      if (!g[i] || d > g[i]->depth()) continue;
      const Matrix& m = g[i]->matrices[d - 1];
      const std::vector<int>& pd = perm[i][d];
      const std::vector<int>& pc = perm[i][d - 1];
      for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[0].size(); ++c)
          cur += static_cast<char>('0' + m[pd[r]][pc[c]]);
    }
    if (d % 2 == 0) {
      for (int i = 0; i < 2; ++i) {
        if (!g[i] || d > g[i]->depth()) continue;
        const Involution& inv = g[i]->duals[d / 2];
        const std::vector<int>& pd = perm[i][d];
        std::vector<int> pos(pd.size());
        for (std::size_t j = 0; j < pd.size(); ++j) pos[pd[j]] = static_cast<int>(j);
        for (std::size_t j = 0; j < pd.size(); ++j)
          cur += static_cast<char>('0' + pos[inv[pd[j]]]);
      }
    }
  }

  // Row string of vertex r at depth d of graph i, columns in the order fixed
  // by the parent permutation.
  std::string row_key(int i, int d, int r) const {
    const Matrix& m = g[i]->matrices[d - 1];
    const std::vector<int>& pc = perm[i][d - 1];
    std::string s;
    for (std::size_t c = 0; c < m[0].size(); ++c)
      s += static_cast<char>('0' + m[r][pc[c]]);
    return s;
  }

  // The minimal chunk orders rows ascending by key; only ties within equal
  // keys leave freedom.  All such permutations (new -> old).
  static std::vector<std::vector<int>> sorting_perms(
      const std::vector<std::string>& keys) {
    int n = static_cast<int>(keys.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<std::vector<int>> out;
    std::function<void(int, std::vector<int>&)> rec = [&](int start,
                                                          std::vector<int>& acc) {
      if (start == n) {
        out.push_back(acc);
        return;
      }
      int end = start;
      while (end < n && keys[idx[end]] == keys[idx[start]]) ++end;
      std::vector<int> block(idx.begin() + start, idx.begin() + end);
      do {
        acc.insert(acc.end(), block.begin(), block.end());
        rec(end, acc);
        acc.resize(start);
      } while (std::next_permutation(block.begin(), block.end()));
      // restore sorted order for the caller's next_permutation cycle
    };
    std::vector<int> acc;
    rec(0, acc);
    return out;
  }

  // Branch and bound: all prefixes at a given depth have the same length, so
  // a branch dies as soon as its prefix exceeds the best complete string.
  void descend(int d) {
    if (d > dmax) {
      if (!have_best || cur < best) {
        best = cur;
        best_perm[0] = perm[0];
        best_perm[1] = perm[1];
        have_best = true;
      }
      return;
    }
    bool has0 = d <= g[0]->depth();
    bool has1 = g[1] && d <= g[1]->depth();
    bool shared = has0 && has1 && d % 2 == 1 && g[0]->rank(d) == g[1]->rank(d);
    std::vector<std::vector<int>> c0{{}}, c1{{}};
    if (shared) {
      // one permutation orders both matrix blocks; the first block dominates
      std::vector<std::string> keys(g[0]->rank(d));
      for (int r = 0; r < g[0]->rank(d); ++r)
        keys[r] = row_key(0, d, r) + '|' + row_key(1, d, r);
      c0 = sorting_perms(keys);
    } else {
      for (int i = 0; i < 2; ++i) {
        bool has = i ? has1 : has0;
        if (!has) continue;
        std::vector<std::string> keys(g[i]->rank(d));
        for (int r = 0; r < g[i]->rank(d); ++r) keys[r] = row_key(i, d, r);
        (i ? c1 : c0) = sorting_perms(keys);
      }
    }
    for (const auto& a : c0) {
      if (has0) perm[0][d] = a;
      if (shared) perm[1][d] = a;
      for (const auto& b : c1) {
        if (has1 && !shared) perm[1][d] = b;
        std::size_t mark = cur.size();
        append_chunk(d);
        if (!have_best || best.compare(0, cur.size(), cur) >= 0) descend(d + 1);
        cur.resize(mark);
      }
    }
  }

  BigraphWithDuals rebuild(int i) const {
    const BigraphWithDuals& src = *g[i];
    BigraphWithDuals out;
    for (int d = 1; d <= src.depth(); ++d) {
      const Matrix& m = src.matrices[d - 1];
      const std::vector<int>& pd = best_perm[i][d];
      const std::vector<int>& pc = best_perm[i][d - 1];
      Matrix nm(m.size(), Row(m[0].size()));
      for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[0].size(); ++c)
          nm[r][c] = m[pd[r]][pc[c]];
      out.matrices.push_back(std::move(nm));
    }
    for (int e = 0; e <= src.depth(); e += 2) {
      const Involution& inv = src.duals[e / 2];
      const std::vector<int>& pd = best_perm[i][e];
      std::vector<int> pos(pd.size());
      for (std::size_t j = 0; j < pd.size(); ++j) pos[pd[j]] = static_cast<int>(j);
      Involution ninv(pd.size());
      for (std::size_t j = 0; j < pd.size(); ++j) ninv[j] = pos[inv[pd[j]]];
      out.duals.push_back(std::move(ninv));
    }
    return out;
  }
};

BigraphPair canon_ordered(const BigraphWithDuals& a, const BigraphWithDuals& b) {
  CanonSearch s;
  s.run(&a, &b);
  return {s.rebuild(0), s.rebuild(1)};
}

}  // namespace

BigraphPair canonical_form(const BigraphPair& p) {
  BigraphPair a = canon_ordered(p.g1, p.g2);
  BigraphPair b = canon_ordered(p.g2, p.g1);
  return serialize_pair(a) <= serialize_pair(b) ? a : b;
}

BigraphWithDuals canonical_form(const BigraphWithDuals& g) {
  CanonSearch s;
  s.run(&g, nullptr);
  return s.rebuild(0);
}

std::string canonical_key(const BigraphPair& p) { return serialize_pair(canonical_form(p)); }
std::string canonical_key(const BigraphWithDuals& g) {
  return serialize_bigraph(canonical_form(g));
}

bool starts_like(const BigraphPair& p, const BigraphPair& seed) {
  int s1 = seed.g1.depth(), s2 = seed.g2.depth();
  for (int k = 0; ; k += 2) {
    bool any = false;
    std::string want;
    for (auto [t1, t2] : {std::pair{s1 + k, s2 + k}, std::pair{s2 + k, s1 + k}}) {
      if (t1 > p.g1.depth() || t2 > p.g2.depth()) continue;
      any = true;
      if (want.empty()) want = canonical_key(translate(seed, k));
      if (canonical_key(truncate_pair(p, t1, t2)) == want) return true;
      if (s1 == s2) break;
    }
    if (!any) return false;
  }
}

// -------------------------------------------------- annular invariants

std::int64_t loop_count(const BigraphWithDuals& g, int r) {
  auto a = g.adjacency();
  int n = static_cast<int>(a.size());
  std::vector<std::int64_t> v(n, 0), w(n);
  v[0] = 1;  // root is vertex 0 (depth 0)
  for (int step = 0; step < 2 * r; ++step) {
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += a[i][j] * v[j];
      w[i] = s;
    }
    v.swap(w);
  }
  return v[0];
}

std::int64_t annular_multiplicity(const BigraphWithDuals& g, int n) {
  if (n < 1) throw std::invalid_argument("annular multiplicity needs n >= 1");
  if (g.depth() < n)
    throw std::invalid_argument("graph too shallow for annular multiplicity");
  auto binom = [](int a, int b) -> std::int64_t {
    if (b < 0 || b > a) return 0;
    std::int64_t v = 1;
    for (int j = 1; j <= b; ++j) v = v * (a - b + j) / j;
    return v;
  };
  // Invert the triangular system w_r = Cat(r) a_0 + sum_{1<=m<=r} C(2r,r-m) a_m
  // with a_0 = 1.
  std::vector<std::int64_t> a(n + 1);
  a[0] = 1;
  for (int r = 1; r <= n; ++r) {
    std::int64_t w = loop_count(g, r);
    std::int64_t rest = (binom(2 * r, r) - binom(2 * r, r - 1));  // Cat(r) a_0
    for (int m = 1; m < r; ++m) rest += binom(2 * r, r - m) * a[m];
    a[r] = w - rest;
  }
  return a[n];
}

DualCountSummary dual_counts_at_branch(const BigraphWithDuals& g) {
  int n = supertransitivity(g);
  if (n % 2 != 1 || g.depth() < n + 1)
    throw std::invalid_argument("dual counts need odd supertransitivity and depth >= n+1");
  const Involution& inv = g.duals[(n + 1) / 2];
  DualCountSummary s;
  for (std::size_t j = 0; j < inv.size(); ++j)
    if (inv[j] == static_cast<int>(j)) ++s.self_dual;
  s.non_self_dual_pairs = (static_cast<int>(inv.size()) - s.self_dual) / 2;
  return s;
}

}  // namespace odo
