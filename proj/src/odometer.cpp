#include "odometer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <set>

#include "obstructions.h"
#include "spectral.h"

namespace odo {

namespace {

double norm2(const std::vector<Matrix>& ms) {
  double n = graph_norm(ms);
  return n * n;
}

// Candidate new rows: nonzero, entries 0..cap, in descending lexicographic
// order (extension matrices keep their rows nonincreasing).
std::vector<Row> candidate_rows(int cols, int cap) {
  std::vector<Row> out;
  Row r(cols, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == cols) {
      if (std::any_of(r.begin(), r.end(), [](int e) { return e != 0; }))
        out.push_back(r);
      return;
    }
    for (int e = 0; e <= cap; ++e) {
      r[i] = e;
      rec(i + 1);
    }
    r[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end(), std::greater<Row>());
  return out;
}

// All nonincreasing row sets whose extension stays within the budget and
// whose exact norm^2 is within limit + 1e-9.
std::vector<Matrix> row_sets(const std::vector<Matrix>& base, double limit, double slack) {
  int cols = static_cast<int>(base.back().size());
  double budget = std::sqrt(limit) + slack;
  double budget2 = budget * budget;
  int cap = static_cast<int>(budget);
  auto cands = candidate_rows(cols, cap);
  std::vector<Matrix> out;
  Matrix cur;
  std::vector<Matrix> ext = base;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    for (std::size_t i = start; i < cands.size(); ++i) {
      cur.push_back(cands[i]);
      ext.push_back(cur);
      double n2 = norm2(ext);
      ext.pop_back();
      if (n2 <= budget2) {
        if (n2 <= limit + 1e-9) out.push_back(cur);
        rec(i);  // repeats allowed; indices nondecreasing keep rows nonincreasing
      }
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Involution> involutions(int k) {
  std::vector<Involution> out;
  Involution inv(k, -1);
  std::function<void()> rec = [&]() {
    int i = 0;
    while (i < k && inv[i] != -1) ++i;
    if (i == k) {
      out.push_back(inv);
      return;
    }
    inv[i] = i;
    rec();
    for (int j = i + 1; j < k; ++j) {
      if (inv[j] != -1) continue;
      inv[i] = j;
      inv[j] = i;
      rec();
      inv[j] = -1;
    }
    inv[i] = -1;
  };
  rec();
  return out;
}

// One-depth extensions of a single graph, no dedup, base labeling kept.
std::vector<BigraphWithDuals> raw_extensions(const BigraphWithDuals& g, double limit,
                                             double slack) {
  std::vector<BigraphWithDuals> out;
  int nd = g.depth() + 1;
  for (const Matrix& m : row_sets(g.matrices, limit, slack)) {
    BigraphWithDuals e = g;
    e.matrices.push_back(m);
    if (nd % 2 == 0) {
      for (const Involution& inv : involutions(static_cast<int>(m.size()))) {
        e.duals.resize(nd / 2);
        e.duals.push_back(inv);
        out.push_back(e);
      }
    } else {
      out.push_back(e);
    }
  }
  return out;
}

void dedup_sort_pairs(std::vector<BigraphPair>& v) {
  std::map<std::string, BigraphPair> m;
  for (auto& p : v) m.emplace(canonical_key(p), p);
  v.clear();
  for (auto& [k, p] : m) v.push_back(std::move(p));
}

bool try_validate(const BigraphPair& p) {
  try {
    validate_pair(p);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace

std::vector<BigraphWithDuals> extend_graph(const BigraphWithDuals& g, double limit,
                                           double slack) {
  std::map<std::string, BigraphWithDuals> m;
  for (auto& e : raw_extensions(g, limit, slack)) m.emplace(canonical_key(e), e);
  std::vector<BigraphWithDuals> out;
  for (auto& [k, e] : m) out.push_back(std::move(e));
  return out;
}

std::vector<BigraphPair> extend_pair_equal(const BigraphPair& w, double limit,
                                           double slack) {
  std::vector<BigraphPair> out;
  if (!w.equal_depths()) return out;
  int nd = w.g1.depth() + 1;
  if (nd % 2 == 0) {
    // Even new depth: both sides extend independently.
    auto e1 = raw_extensions(w.g1, limit, slack);
    auto e2 = raw_extensions(w.g2, limit, slack);
    for (const auto& a : e1)
      for (const auto& b : e2) {
        BigraphPair p{a, b};
        if (try_validate(p)) out.push_back(std::move(p));
      }
  } else {
    // Odd new depth: the new vertices are shared.  Normalizing one side's
    // rows fixes their labeling; the other side's rows are free tuples.
    auto sets1 = row_sets(w.g1.matrices, limit, slack);
    double budget = std::sqrt(limit) + slack;
    double budget2 = budget * budget;
    int cols2 = w.g2.rank(w.g2.depth());
    auto cands2 = candidate_rows(cols2, static_cast<int>(budget));
    std::map<int, std::vector<Matrix>> tuples_by_size;
    std::set<int> sizes;
    for (const auto& m : sets1) sizes.insert(static_cast<int>(m.size()));
    for (int k : sizes) {
      Matrix cur;
      std::vector<Matrix> ext = w.g2.matrices;
      std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == k) {
          tuples_by_size[k].push_back(cur);
          return;
        }
        for (const Row& r : cands2) {
          cur.push_back(r);
          ext.push_back(cur);
          double n2 = norm2(ext);
          ext.pop_back();
          if (n2 <= budget2 &&
              (static_cast<int>(cur.size()) < k || n2 <= limit + 1e-9))
            rec();
          cur.pop_back();
        }
      };
      rec();
    }
    for (const auto& m1 : sets1) {
      std::vector<Matrix> full1 = w.g1.matrices;
      full1.push_back(m1);
      if (norm2(full1) > limit + 1e-9) continue;
      for (const auto& m2 : tuples_by_size[static_cast<int>(m1.size())]) {
        BigraphPair p = w;
        p.g1.matrices.push_back(m1);
        p.g2.matrices.push_back(m2);
        if (try_validate(p)) out.push_back(std::move(p));
      }
    }
  }
  dedup_sort_pairs(out);
  return out;
}

std::vector<BigraphPair> extend_pair_unequal(const BigraphPair& w, double limit,
                                             double slack) {
  std::vector<BigraphPair> out;
  if (!w.equal_depths()) return out;
  int nd = w.g1.depth() + 1;
  if (nd % 2 != 0) return out;  // the deeper graph must have even depth
  for (int side = 0; side < 2; ++side) {
    for (auto& e : raw_extensions(w.graph(side), limit, slack)) {
      BigraphPair p = w;
      p.graph(side) = e;
      if (try_validate(p)) out.push_back(std::move(p));
    }
  }
  dedup_sort_pairs(out);
  return out;
}

namespace {

// In open-interval mode a pair is discarded once its leading graph reaches
// the limit: the index of any completion matches the leading graph's squared
// norm in the limit, so such a pair only yields objects at or above it.
bool leading_graph_at_limit(const BigraphPair& p, double limit) {
  double n = graph_norm(canonical_form(p).g1);
  return n * n >= limit - 1e-6;
}

}  // namespace

StepResult odometer_step(const BigraphPair& w, double limit, const OdometerOptions& opt) {
  StepResult r;
  std::set<std::string> vine_keys;  // passing unequal vines, for the shortcut
  std::vector<BigraphPair> cands;
  cands.push_back(w);
  for (auto& u : extend_pair_unequal(w, limit, opt.slack)) cands.push_back(std::move(u));
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (opt.open_limit && leading_graph_at_limit(cands[i], limit)) continue;
    if (!opt.apply_associativity ||
        associativity_check(cands[i], AssocScope::IncludeDeepest).pass) {
      r.new_vines.push_back(cands[i]);
      if (i > 0) vine_keys.insert(canonical_key(cands[i]));
    }
  }
  int old_depth = w.g1.depth();
  for (auto& e : extend_pair_equal(w, limit, opt.slack)) {
    if (opt.vine_shortcut && !vine_keys.empty() && e.equal_depths() &&
        (vine_keys.count(canonical_key({e.g1, truncate_graph(e.g2, old_depth)})) ||
         vine_keys.count(canonical_key({truncate_graph(e.g1, old_depth), e.g2})))) {
      // A one-sided restriction already passed everywhere; everything below
      // this candidate is covered by that vine and the candidate itself
      // fails its interior test, so skip the test and drop it.
      continue;
    }
    if (opt.open_limit && leading_graph_at_limit(e, limit)) continue;
    bool keep = !opt.apply_associativity ||
                associativity_check(e, AssocScope::InteriorOnly).pass;
    if (keep) r.new_weeds.push_back(std::move(e));
  }
  dedup_sort_pairs(r.new_vines);
  dedup_sort_pairs(r.new_weeds);
  return r;
}

std::string OdometerTree::to_dot() const {
  std::string s = "digraph odometer {\n  node [shape=box, fontsize=9];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s += "  n" + std::to_string(i) + " [label=\"" + nodes[i].label + "\"";
    if (nodes[i].red) s += ", style=filled, fillcolor=\"#ff9999\"";
    s += "];\n";
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent >= 0)
      s += "  n" + std::to_string(nodes[i].parent) + " -> n" + std::to_string(i) + ";\n";
  s += "}\n";
  return s;
}

OdometerResult run_odometer(const BigraphPair& seed, double limit,
                            const OdometerOptions& opt) {
  OdometerResult res;
  res.statement.seed = seed;
  res.statement.index_limit = limit;
  res.tree.nodes.push_back({serialize_pair(seed), false, -1, {}});

  struct Active {
    BigraphPair p;
    int node;
    std::string key;
  };
  std::vector<Active> active{{seed, 0, canonical_key(seed)}};
  std::vector<int> weed_nodes;  // frozen weeds
  std::vector<BigraphPair> frozen;
  std::set<std::string> vine_keys;

  while (!active.empty() && (opt.max_steps < 0 || res.steps < opt.max_steps)) {
    ++res.steps;
    std::sort(active.begin(), active.end(),
              [](const Active& a, const Active& b) { return a.key < b.key; });
    std::vector<StepResult> results(active.size());
    if (opt.threads > 1 && active.size() > 1) {
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= active.size()) return;
          results[i] = odometer_step(active[i].p, limit, opt);
        }
      };
      std::vector<std::future<void>> fs;
      for (int t = 0; t < opt.threads; ++t)
        fs.push_back(std::async(std::launch::async, worker));
      for (auto& f : fs) f.get();
    } else {
      for (std::size_t i = 0; i < active.size(); ++i)
        results[i] = odometer_step(active[i].p, limit, opt);
    }
    std::vector<Active> next_active;
    std::set<std::string> level_seen;
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (auto& v : results[i].new_vines)
        if (vine_keys.insert(canonical_key(v)).second)
          res.statement.vines.push_back(v);
      for (auto& nw : results[i].new_weeds) {
        std::string key = canonical_key(nw);
        if (!level_seen.insert(key).second) continue;
        int node = static_cast<int>(res.tree.nodes.size());
        res.tree.nodes.push_back({serialize_pair(nw), false, active[i].node, {}});
        res.tree.nodes[active[i].node].children.push_back(node);
        bool stop = std::any_of(opt.stop_weeds.begin(), opt.stop_weeds.end(),
                                [&](const BigraphPair& s) { return starts_like(nw, s); });
        if (stop) {
          frozen.push_back(nw);
          weed_nodes.push_back(node);
        } else {
          next_active.push_back({std::move(nw), node, std::move(key)});
        }
      }
    }
    active = std::move(next_active);
  }

  for (std::size_t i = 0; i < frozen.size(); ++i) {
    res.statement.weeds.push_back(frozen[i]);
    res.tree.nodes[weed_nodes[i]].red = true;
  }
  for (auto& a : active) {  // unfinished (step-limited) weeds
    res.statement.weeds.push_back(a.p);
    res.tree.nodes[a.node].red = true;
  }
  auto bykey = [](const BigraphPair& a, const BigraphPair& b) {
    return canonical_key(a) < canonical_key(b);
  };
  std::sort(res.statement.vines.begin(), res.statement.vines.end(), bykey);
  std::sort(res.statement.weeds.begin(), res.statement.weeds.end(), bykey);
  return res;
}

}  // namespace odo
