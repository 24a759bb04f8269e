#include "classify.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "obstructions.h"
#include "spectral.h"

namespace odo {

namespace {

BigraphPair pair_of(const std::string& line) {
  auto sp = line.find(' ');
  return parse_pair(line.substr(0, sp), line.substr(sp + 1));
}

// ---- configuration for the standard index-5 run: stop patterns for the
// families whose weeds are killed afterwards, and the targets of those
// kills with their dimension-screen data.

const char* kSeedO2a = "bwd1v1v1v1p1p1duals1v1v1x2x3 bwd1v1v1v1p1p1duals1v1v1x2x3";
const char* kSeedO2c = "bwd1v1v1v1p1p1duals1v1v2x1x3 bwd1v1v1v1p1p1duals1v1v2x1x3";
const char* kSeedE2 = "bwd1v1v1p1p1duals1v1 bwd1v1v1p1p1duals1v1";

const char* kWeedQp =
    "bwd1v1v1v1p1p1v1x0x0duals1v1v1x2x3 bwd1v1v1v1p1p1v1x0x0duals1v1v1x2x3";
const char* kWeedG5321 =
    "bwd1v1v1v1p1p1v1x0x0p0x1x0v1x0duals1v1v1x2x3v1 "
    "bwd1v1v1v1p1p1v1x0x0p0x1x0v1x0duals1v1v1x2x3v1";
const char* kWeedQ =
    "bwd1v1v1v1p1p1v1x0x0duals1v1v1x3x2 bwd1v1v1v1p1p1v1x0x0duals1v1v1x3x2";
const char* kWeedEvenQuad =
    "bwd1v1v1p1p1v1x0x0duals1v1v1 bwd1v1v1p1p1v1x0x0duals1v1v1";
const char* kWeedG4321 =
    "bwd1v1v1p1p1v1x0x0p0x1x0v1x0duals1v1v1x2 "
    "bwd1v1v1p1p1v1x0x0p0x1x0v1x0duals1v1v1x2";
const char* kWeedA4A5 =
    "bwd1v1v1p1p1v1x0x0p0x1x0v1x0p0x1duals1v1v1x2 "
    "bwd1v1v1p1p1v1x0x0p0x1x0v1x0p0x1duals1v1v1x2";
const char* kWeedG4621 =
    "bwd1v1v1v1v1p1p1v1x0x0p0x1x0v1x0v1v1v1duals1v1v1v1x2v1v1 "
    "bwd1v1v1v1v1p1p1v1x0x0p0x1x0v1x0v1v1v1duals1v1v1v1x2v1v1";

const char* kStopsW10[] = {
    "bwd1v1v1v1p1v1x0p1x0v1x0v1p1duals1v1v1x2v1 "
    "bwd1v1v1v1p1v1x0p0x1v1x0p1x0p0x1v0x1x0p0x0x1duals1v1v1x2v3x2x1",
    "bwd1v1v1v1p1v1x0p1x0v1x0p0x1v1x0p1x0p0x1v0x1x0p0x0x1v1x0p0x1p0x1duals1v1v1x2v1x2v2x1 "
    "bwd1v1v1v1p1v1x0p0x1v1x0p1x0p0x1p0x1v0x1x0x0p0x0x0x1p1x0x0x0v1x0x0p0x1x0p0x1x0p0x0x1"
    "v0x0x0x1p1x0x0x0p0x1x0x0duals1v1v1x2v4x2x3x1v3x2x1x4",
    "bwd1v1v1v1p1v1x0p1x0v1x0p0x1v1x0p0x1v1x0p0x1v1x0p0x1duals1v1v1x2v1x2v2x1 "
    "bwd1v1v1v1p1v1x0p0x1v1x0p1x0p0x1p0x1v0x0x0x1p1x0x0x0v1x0p0x1v0x1p1x0duals1v1v1x2v4x2x3x1v1x2",
};

std::vector<BigraphPair> pairs_of(std::initializer_list<const char*> lines) {
  std::vector<BigraphPair> out;
  for (const char* l : lines) out.push_back(pair_of(l));
  return out;
}

constexpr long kSafetyMaxSteps = 64;  // well beyond any expected run

nlohmann::json pair_json(const BigraphPair& p) { return serialize_pair(p); }

nlohmann::json tree_node_json(const OdometerTree& t, int i) {
  const auto& n = t.nodes[i];
  auto sp = n.label.find(' ');
  nlohmann::json j{{"g1", n.label.substr(0, sp)},
                   {"g2", n.label.substr(sp + 1)},
                   {"red", n.red},
                   {"children", nlohmann::json::array()}};
  for (int c : n.children) j["children"].push_back(tree_node_json(t, c));
  return j;
}

}  // namespace

std::vector<BigraphPair> initial_seeds(double index_limit) {
  std::vector<BigraphPair> out;
  for (int n : {2, 3}) {
    BigraphWithDuals chain;
    chain.matrices.assign(n, Matrix{{1}});
    chain.duals.assign(n / 2 + 1, Involution{0});
    BigraphPair base{chain, chain};
    // Strictly below the limit: branch shapes whose norm^2 reaches the
    // limit itself cannot begin a pair of smaller index.
    for (auto& p : extend_pair_equal(base, index_limit - 1e-6)) {
      if (supertransitivity(p) > n) continue;  // still a chain, not a branch
      if (annular_multiplicity(p.g1, n + 1) != annular_multiplicity(p.g2, n + 1))
        continue;
      if (!associativity_check(p, AssocScope::InteriorOnly).pass) continue;
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const BigraphPair& a, const BigraphPair& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

std::map<std::int64_t, std::vector<BigraphPair>> partition_by_annular_multiplicity(
    const std::vector<BigraphPair>& ws) {
  std::map<std::int64_t, std::vector<BigraphPair>> out;
  for (const auto& w : ws) {
    int n = supertransitivity(w);
    out[annular_multiplicity(w.g1, n + 2)].push_back(w);
  }
  return out;
}

namespace {

struct Pipeline {
  PipelineOptions opt;
  PipelineReport rep;
  OdometerOptions oo;

  void warn(const std::string& w) {
    rep.warnings.push_back(w);
    rep.log["warnings"].push_back(w);
  }

  void add_vines(const std::vector<BigraphPair>& vs) {
    for (const auto& v : vs) rep.final_vines.push_back(v);
  }

  const OdometerResult& run_family(const std::string& name, const BigraphPair& seed,
                                   std::vector<BigraphPair> stops) {
    OdometerOptions o = oo;
    o.stop_weeds = std::move(stops);
    o.max_steps = kSafetyMaxSteps;
    rep.family_runs.push_back({name, run_odometer(seed, opt.index_limit, o)});
    const auto& r = rep.family_runs.back().result;
    nlohmann::json j{{"name", name},
                     {"seed", pair_json(seed)},
                     {"steps", r.steps},
                     {"vines", nlohmann::json::array()},
                     {"weeds", nlohmann::json::array()}};
    for (const auto& v : r.statement.vines) j["vines"].push_back(pair_json(v));
    for (const auto& w : r.statement.weeds) j["weeds"].push_back(pair_json(w));
    rep.log["runs"].push_back(j);
    return r;
  }

  void eliminate(const BigraphPair& w, const std::string& reason,
                 const std::string& witness) {
    rep.log["eliminated"].push_back(
        {{"pair", pair_json(w)}, {"reason", reason}, {"witness", witness}});
  }

  void retain_weed(const BigraphPair& w, const std::string& note) {
    rep.final_weeds.push_back(w);
    rep.log["retained_weeds"].push_back({{"pair", pair_json(w)}, {"note", note}});
  }

  // Dimension screen on an embedded representative: the functional must lie
  // strictly inside (lo, hi) for every admissible q.  Returns true when the
  // weed (and with it every untranslated extension) is impossible.
  bool screen(const BigraphWithDuals& g, const DimFunctional& f, double lo, double hi,
              const std::string& what) {
    double q_lo = q_of_norm(graph_norm(g));
    double q_hi = q_of_norm(std::sqrt(opt.index_limit));
    ScreenResult r = dimension_screen(g, f, q_lo, q_hi, lo, hi);
    rep.log["screens"].push_back({{"what", what},
                                  {"q_lo", q_lo},
                                  {"q_hi", q_hi},
                                  {"lo", lo},
                                  {"hi", hi},
                                  {"min", r.min_value},
                                  {"max", r.max_value},
                                  {"holds", r.holds}});
    return r.holds;
  }

  void handle_g4621(const BigraphPair& w) {
    BigraphPair rep_pair = pair_of(kWeedG4621);
    DimFunctional f{{rep_pair.g1.vertex_index(10, 0), 1.0}};
    bool untranslated_dead = screen(rep_pair.g1, f, -1e18, 1.0, "g4621 tail dimension");
    double t2 = graph_norm(translate(rep_pair, 2).g1);
    bool translated_dead = t2 * t2 > opt.index_limit + 1e-9;
    rep.log["screens"].back()["translate2_index"] = t2 * t2;
    if (untranslated_dead && translated_dead) {
      eliminate(w, "dimension screen + translate index", "dim < 1; translate(2) over limit");
    } else {
      warn("g4621 screen inconclusive");
      retain_weed(w, "screen inconclusive");
    }
  }

  void handle_quad_weed(const BigraphPair& w) {
    auto k = canonical_key(w);
    auto c = even_quadruple_prefix_check(w);
    if (!c.ok()) {
      eliminate(w, "even quadruple prefix", c.witness);
      return;
    }
    if (k == canonical_key(pair_of(kWeedG5321))) {
      BigraphPair rep_pair = pair_of(kWeedG5321);
      DimFunctional f{{rep_pair.g1.vertex_index(5, 1), 1.0}};
      bool dead = screen(rep_pair.g1, f, 2 * std::cos(M_PI / 5), 2 * std::cos(M_PI / 6),
                         "g5321 univalent dimension");
      const auto& r = run_family("gamma5321", translate(rep_pair, 2), {});
      add_vines(r.statement.vines);
      for (const auto& x : r.statement.weeds) retain_weed(x, "unexpected gamma5321 weed");
      if (dead)
        eliminate(w, "dimension gap (untranslated) + sub-run (translated)", "");
      else {
        warn("g5321 screen inconclusive");
        retain_weed(w, "screen inconclusive");
      }
      return;
    }
    if (k == canonical_key(pair_of(kWeedG4321))) {
      BigraphPair rep_pair = pair_of(kWeedG4321);
      DimFunctional f{{rep_pair.g1.vertex_index(3, 2), 1.0}};
      bool dead = screen(rep_pair.g1, f, 2 * std::cos(M_PI / 6), 2 * std::cos(M_PI / 7),
                         "g4321 univalent dimension");
      const auto& r = run_family("gamma4321", translate(rep_pair, 2), {pair_of(kWeedG4621)});
      add_vines(r.statement.vines);
      for (const auto& x : r.statement.weeds) {
        if (canonical_key(x) == canonical_key(pair_of(kWeedG4621)))
          handle_g4621(x);
        else
          retain_weed(x, "unexpected gamma4321 weed");
      }
      if (dead)
        eliminate(w, "dimension gap (untranslated) + sub-run (translated)", "");
      else {
        warn("g4321 screen inconclusive");
        retain_weed(w, "screen inconclusive");
      }
      return;
    }
    if (k == canonical_key(pair_of(kWeedA4A5))) {
      BigraphPair rep_pair = pair_of(kWeedA4A5);
      DimFunctional f{{rep_pair.g1.vertex_index(5, 0), 1.0},
                      {rep_pair.g1.vertex_index(5, 1), 1.0}};
      bool untranslated_dead =
          screen(rep_pair.g1, f, -1e18, 2.0, "a4a5 depth-5 dimension sum");
      double t1 = graph_norm(translate_graph(rep_pair.g1, 1));
      bool translated_dead = t1 * t1 >= opt.index_limit - 1e-9;
      rep.log["screens"].back()["translate1_index"] = t1 * t1;
      if (untranslated_dead && translated_dead)
        eliminate(w, "dimension sum < 2 + translate index", "");
      else {
        warn("a4a5 screen inconclusive");
        retain_weed(w, "screen inconclusive");
      }
      return;
    }
    retain_weed(w, "no applicable elimination");
  }

  void run() {
    double L = opt.index_limit;
    oo.slack = opt.slack;
    oo.threads = opt.threads;
    // The final statement targets indices strictly below the limit, so pairs
    // whose leading graph is already at the limit are discarded throughout.
    oo.open_limit = true;

    auto seeds = initial_seeds(L);
    for (const auto& s : seeds) rep.log["seeds"].push_back(pair_json(s));

    std::vector<BigraphPair> triples, quads;
    for (const auto& s : seeds) {
      auto dc = dual_count_check(s);
      if (!dc.ok()) {
        eliminate(s, "dual count", dc.witness);
        continue;
      }
      int n = supertransitivity(s);
      int k = s.g1.rank(n + 1);
      if (k == 2)
        triples.push_back(s);
      else if (k == 3)
        quads.push_back(s);
      else {
        warn("seed with unexpected branch size retained as weed");
        retain_weed(s, "unhandled branch size");
      }
    }

    // Triple-point seeds: one extension step, then the triple-point filter.
    std::vector<BigraphPair> survivors;
    for (const auto& s : triples) {
      StepResult st = odometer_step(s, L, oo);
      for (const auto& v : st.new_vines) {
        auto t = triple_point_check(v);
        if (t.ok()) {
          warn("triple-point vine survived, added to final vines");
          rep.final_vines.push_back(v);
        } else {
          eliminate(v, "triple point (vine)", t.witness);
        }
      }
      for (const auto& w : st.new_weeds) {
        auto t = triple_point_check(w);
        if (t.ok())
          survivors.push_back(w);
        else
          eliminate(w, "triple point", t.witness);
      }
    }

    auto fams = partition_by_annular_multiplicity(survivors);
    for (auto& [a2, members] : fams) {
      rep.log["families"][std::to_string(a2)] = members.size();
      std::sort(members.begin(), members.end(),
                [](const BigraphPair& a, const BigraphPair& b) {
                  return canonical_key(a) < canonical_key(b);
                });
      int idx = 0;
      for (const auto& m : members) {
        ++idx;
        std::vector<BigraphPair> stops;
        if (a2 == 0) stops = pairs_of({kStopsW10[0], kStopsW10[1], kStopsW10[2]});
        const auto& r = run_family(
            "a1" + std::to_string(a2) + "-" + std::to_string(idx), m, stops);
        add_vines(r.statement.vines);
        for (const auto& w : r.statement.weeds) {
          if (a2 == 0)
            retain_weed(w, "stopped weed");
          else {
            warn("unexpected weed in family a1" + std::to_string(a2));
            retain_weed(w, "unexpected weed");
          }
        }
      }
    }

    // Quadruple-point seeds: full runs with the configured stop patterns,
    // then the per-weed eliminations.
    std::map<std::string, std::pair<std::string, std::vector<BigraphPair>>> cfg{
        {canonical_key(pair_of(kSeedO2a)),
         {"o2a", pairs_of({kWeedQp, kWeedG5321})}},
        {canonical_key(pair_of(kSeedO2c)), {"o2c", pairs_of({kWeedQ})}},
        {canonical_key(pair_of(kSeedE2)),
         {"e2", pairs_of({kWeedEvenQuad, kWeedG4321, kWeedA4A5})}},
    };
    std::vector<BigraphPair> quad_weeds;
    int qidx = 0;
    for (const auto& s : quads) {
      ++qidx;
      auto it = cfg.find(canonical_key(s));
      std::string name = it != cfg.end() ? it->second.first
                                         : "quad-" + std::to_string(qidx);
      std::vector<BigraphPair> stops =
          it != cfg.end() ? it->second.second : std::vector<BigraphPair>{};
      const auto& r = run_family(name, s, stops);
      add_vines(r.statement.vines);
      for (const auto& w : r.statement.weeds) quad_weeds.push_back(w);
    }
    for (const auto& w : quad_weeds) handle_quad_weed(w);

    auto bykey = [](const BigraphPair& a, const BigraphPair& b) {
      return canonical_key(a) < canonical_key(b);
    };
    auto dedup = [&](std::vector<BigraphPair>& v) {
      std::sort(v.begin(), v.end(), bykey);
      v.erase(std::unique(v.begin(), v.end(),
                          [](const BigraphPair& a, const BigraphPair& b) {
                            return canonical_key(a) == canonical_key(b);
                          }),
              v.end());
    };
    dedup(rep.final_vines);
    dedup(rep.final_weeds);
    rep.log["final"] = {{"vines", rep.final_vines.size()},
                        {"weeds", rep.final_weeds.size()}};
  }
};

}  // namespace

PipelineReport run_index5_classification(const PipelineOptions& opt) {
  Pipeline p;
  p.opt = opt;
  p.rep.log = nlohmann::json::object();
  p.run();
  return std::move(p.rep);
}

int diff_against_fixtures(const PipelineReport& r, const std::string& dir,
                          std::string& details) {
  int diffs = 0;
  auto compare = [&](const std::string& file, const std::vector<BigraphPair>& got) {
    std::ifstream in(dir + "/" + file);
    if (!in) {
      details += "cannot open " + dir + "/" + file + "\n";
      ++diffs;
      return;
    }
    std::set<std::string> want;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) want.insert(canonical_key(pair_of(line)));
    std::set<std::string> have;
    for (const auto& p : got) have.insert(canonical_key(p));
    for (const auto& k : want)
      if (!have.count(k)) {
        details += file + ": missing " + k + "\n";
        ++diffs;
      }
    for (const auto& k : have)
      if (!want.count(k)) {
        details += file + ": extra " + k + "\n";
        ++diffs;
      }
  };
  compare("v_infinity.txt", r.final_vines);
  compare("w_infinity.txt", r.final_weeds);
  return diffs;
}

nlohmann::json tree_to_json(const OdometerTree& t) { return tree_node_json(t, 0); }

nlohmann::json report_to_json(const PipelineReport& r) {
  nlohmann::json j;
  j["vines"] = nlohmann::json::array();
  for (const auto& v : r.final_vines) j["vines"].push_back(serialize_pair(v));
  j["weeds"] = nlohmann::json::array();
  for (const auto& w : r.final_weeds) j["weeds"].push_back(serialize_pair(w));
  j["warnings"] = r.warnings;
  j["log"] = r.log;
  j["trees"] = nlohmann::json::object();
  for (const auto& fr : r.family_runs)
    j["trees"][fr.name] = tree_node_json(fr.result.tree, 0);
  return j;
}

}  // namespace odo
