// Command-line front end: codec checks, norms, dimension vectors,
// obstruction tests, odometer runs and the full classification.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "../src/classify.h"
#include "../src/obstructions.h"
#include "../src/spectral.h"

using nlohmann::json;
using namespace odo;

namespace {

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  return v ? std::atoi(v) : fallback;
}

double env_double(const char* name, double fallback) {
  const char* v = std::getenv(name);
  return v ? std::atof(v) : fallback;
}

// 2 = syntax error, 3 = structural error.
int error_exit(const ParseError& e) {
  std::cerr << e.what() << "\n";
  return e.structural ? 3 : 2;
}

std::vector<BigraphPair> load_pairs(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::vector<BigraphPair> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto sp = line.find(' ');
    out.push_back(parse_pair(line.substr(0, sp), line.substr(sp + 1)));
  }
  return out;
}

json statement_json(const ClassificationStatement& s) {
  json j{{"seed", serialize_pair(s.seed)},
         {"index_limit", s.index_limit},
         {"vines", json::array()},
         {"weeds", json::array()}};
  for (const auto& v : s.vines) j["vines"].push_back(serialize_pair(v));
  for (const auto& w : s.weeds) j["weeds"].push_back(serialize_pair(w));
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigraph pair enumerator"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output");

  // ---- parse
  auto* cparse = app.add_subcommand("parse", "parse and re-serialize");
  std::vector<std::string> parse_args;
  cparse->add_option("graph", parse_args, "one graph or a pair")->expected(1, 2);

  // ---- norm
  auto* cnorm = app.add_subcommand("norm", "graph norm and index");
  std::string norm_arg;
  cnorm->add_option("graph", norm_arg)->required();

  // ---- dims
  auto* cdims = app.add_subcommand("dims", "dimension vector at a given q");
  std::string dims_arg;
  double dims_q = 0;
  cdims->add_option("graph", dims_arg)->required();
  cdims->add_option("--q", dims_q, "q parameter")->required();

  // ---- check
  auto* ccheck = app.add_subcommand("check", "obstruction tests on a pair");
  std::vector<std::string> check_args;
  bool f_assoc = false, f_global = false, f_triple = false, f_dual = false,
       f_evenquad = false, f_all = false;
  ccheck->add_option("pair", check_args)->expected(2);
  ccheck->add_flag("--assoc", f_assoc, "interior associativity");
  ccheck->add_flag("--assoc-global", f_global, "associativity incl. deepest");
  ccheck->add_flag("--triple", f_triple, "triple-point obstruction");
  ccheck->add_flag("--dual-count", f_dual, "dual count match");
  ccheck->add_flag("--evenquad", f_evenquad, "even-quadruple prefix");
  ccheck->add_flag("--all", f_all, "all checks");

  // ---- odometer
  auto* codo = app.add_subcommand("odometer", "run the odometer from a seed");
  std::vector<std::string> odo_args;
  double limit = 0;
  OdometerOptions oo;
  oo.slack = env_double("ODO_SLACK", oo.slack);
  oo.threads = env_int("ODO_THREADS", 1);
  std::string stop_file, dot_file;
  codo->add_option("pair", odo_args)->expected(2);
  codo->add_option("--index-limit", limit)->required();
  codo->add_option("--slack", oo.slack);
  codo->add_option("--max-steps", oo.max_steps);
  codo->add_option("--stop-weeds", stop_file, "file with stop patterns, one pair per line");
  codo->add_option("--threads", oo.threads);
  codo->add_option("--dot", dot_file, "write tree as DOT");
  bool no_assoc = false, shortcut = false, open_limit = false;
  codo->add_flag("--no-associativity", no_assoc);
  codo->add_flag("--vine-shortcut", shortcut,
                 "drop equal extensions subsumed by a passing vine");
  codo->add_flag("--open-limit", open_limit,
                 "target indices strictly below the limit: drop pairs whose "
                 "leading graph is already at the limit");

  // ---- classify
  auto* ccls = app.add_subcommand("classify", "full classification pipeline");
  PipelineOptions po;
  po.slack = env_double("ODO_SLACK", po.slack);
  po.threads = env_int("ODO_THREADS", 1);
  std::string fixtures;
  ccls->add_option("--index-limit", po.index_limit);
  ccls->add_option("--slack", po.slack);
  ccls->add_option("--threads", po.threads);
  ccls->add_option("--fixtures", fixtures, "directory with v_infinity.txt/w_infinity.txt");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cparse) {
      if (parse_args.size() == 1) {
        BigraphWithDuals g = parse_bigraph(parse_args[0]);
        if (as_json) {
          json j{{"graph", serialize_bigraph(g)},
                 {"depth", g.depth()},
                 {"supertransitivity", supertransitivity(g)},
                 {"canonical", canonical_key(g)}};
          std::cout << j.dump() << "\n";
        } else {
          std::cout << serialize_bigraph(g) << "\n";
        }
      } else {
        BigraphPair p = parse_pair(parse_args[0], parse_args[1]);
        if (as_json) {
          json j{{"pair", serialize_pair(p)},
                 {"supertransitivity", supertransitivity(p)},
                 {"canonical", canonical_key(p)}};
          std::cout << j.dump() << "\n";
        } else {
          std::cout << serialize_pair(p) << "\n";
        }
      }
      return 0;
    }

    if (*cnorm) {
      BigraphWithDuals g = parse_bigraph(norm_arg);
      double n = graph_norm(g);
      if (as_json)
        std::cout << json{{"norm", n}, {"index", n * n}}.dump() << "\n";
      else
        std::cout << "norm " << n << " index " << n * n << "\n";
      return 0;
    }

    if (*cdims) {
      BigraphWithDuals g = parse_bigraph(dims_arg);
      auto sol = dimension_vector(g, dims_q);
      json vals = json::array();
      for (std::size_t i = 0; i < sol.values.size(); ++i) {
        if (sol.known[i])
          vals.push_back(sol.values[i]);
        else
          vals.push_back(nullptr);
      }
      if (as_json)
        std::cout << json{{"q", dims_q}, {"consistent", sol.consistent}, {"dims", vals}}.dump()
                  << "\n";
      else
        std::cout << vals.dump() << "\n";
      return 0;
    }

    if (*ccheck) {
      BigraphPair p = parse_pair(check_args[0], check_args[1]);
      json out = json::object();
      bool all_pass = true;
      auto record = [&](const std::string& name, const CheckResult& c) {
        out[name] = {{"applicable", c.applicable}, {"pass", c.pass}, {"witness", c.witness}};
        if (!c.ok()) all_pass = false;
      };
      if (f_all || f_assoc)
        record("associativity_interior", associativity_check(p, AssocScope::InteriorOnly));
      if (f_all || f_global)
        record("associativity_global", associativity_check(p, AssocScope::IncludeDeepest));
      if (f_all || f_triple) record("triple_point", triple_point_check(p));
      if (f_all || f_dual) record("dual_count", dual_count_check(p));
      if (f_all || f_evenquad) record("even_quadruple", even_quadruple_prefix_check(p));
      if (as_json)
        std::cout << out.dump() << "\n";
      else
        for (auto& [k, v] : out.items())
          std::cout << k << ": "
                    << (!v["applicable"].get<bool>() ? "n/a"
                        : v["pass"].get<bool>()      ? "pass"
                                                     : "FAIL " + v["witness"].get<std::string>())
                    << "\n";
      return all_pass ? 0 : 1;
    }

    if (*codo) {
      BigraphPair seed = parse_pair(odo_args[0], odo_args[1]);
      double idx = std::max(graph_norm(seed.g1), graph_norm(seed.g2));
      if (limit <= idx * idx + 1e-9) {
        std::cerr << "index limit " << limit << " does not exceed the seed index "
                  << idx * idx << "\n";
        return 4;
      }
      if (!stop_file.empty()) oo.stop_weeds = load_pairs(stop_file);
      oo.apply_associativity = !no_assoc;
      oo.vine_shortcut = shortcut;
      oo.open_limit = open_limit;
      OdometerResult r = run_odometer(seed, limit, oo);
      if (!dot_file.empty()) {
        std::ofstream out(dot_file);
        out << r.tree.to_dot();
      }
      if (as_json) {
        json j = statement_json(r.statement);
        j["steps"] = r.steps;
        j["tree"] = tree_to_json(r.tree);
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "steps " << r.steps << "\n";
        std::cout << "vines (" << r.statement.vines.size() << "):\n";
        for (const auto& v : r.statement.vines) std::cout << "  " << serialize_pair(v) << "\n";
        std::cout << "weeds (" << r.statement.weeds.size() << "):\n";
        for (const auto& w : r.statement.weeds) std::cout << "  " << serialize_pair(w) << "\n";
      }
      return 0;
    }

    if (*ccls) {
      PipelineReport r = run_index5_classification(po);
      if (as_json) {
        std::cout << report_to_json(r).dump() << "\n";
      } else {
        std::cout << "vines (" << r.final_vines.size() << "):\n";
        for (const auto& v : r.final_vines) std::cout << "  " << serialize_pair(v) << "\n";
        std::cout << "weeds (" << r.final_weeds.size() << "):\n";
        for (const auto& w : r.final_weeds) std::cout << "  " << serialize_pair(w) << "\n";
        for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
      }
      if (!fixtures.empty()) {
        std::string details;
        int diffs = diff_against_fixtures(r, fixtures, details);
        if (diffs) {
          std::cerr << details;
          return 5;
        }
      }
      return 0;
    }
  } catch (const ParseError& e) {
    return error_exit(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
