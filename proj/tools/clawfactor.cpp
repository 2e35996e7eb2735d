// clawfactor: exact toolkit for bounded-cycle 2-factors in claw-free graphs.
//
// Exit codes: 0 success / property holds; 1 negative outcome (hypotheses
// fail, violation witness, invalid certificate, no such structure);
// 2 usage or input errors; 3 search budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "clawfactor/generators.hpp"
#include "clawfactor/json_io.hpp"

using namespace clawfactor;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Output {
  bool as_json = true;

  void emit(const json& j, const std::string& text) const {
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text;
  }
};

std::string describe_two_factor(const TwoFactor& tf) {
  std::ostringstream out;
  out << tf.cycles.size() << " cycle(s)\n";
  for (const auto& c : tf.cycles) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
      out << (i ? " " : "") << c.vertices[i];
    out << "\n";
  }
  return out.str();
}

std::string describe_system(const DominatingSystem& ds) {
  std::ostringstream out;
  out << "cardinality " << ds.cardinality() << " (" << ds.trails.size() << " trail(s), "
      << ds.stars.size() << " star(s))\n";
  for (const auto& t : ds.trails) {
    out << "trail:";
    for (int v : trail_vertex_walk(ds.host, t)) out << " " << v;
    out << "\n";
  }
  for (const auto& s : ds.stars) {
    out << "star " << s.center << ":";
    for (int leaf : star_leaves(ds.host, s)) out << " " << leaf;
    out << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for bounded-cycle 2-factors in claw-free graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::uint64_t seed = 1;
  long long budget_cap = kDefaultNodeBudget;
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for all randomized generation");
  app.add_option("--budget", budget_cap, "node budget for exhaustive searches");

  std::string graph_path, system_path, cert_path;
  int opt_k = 1;
  bool trace = false, min_cycles = false, min_system = false;
  std::string family = "trianglefree";
  int gen_max_edges = 6, gen_n = 10, gen_count = 10, gen_density = 500, gen_k = 1;

  auto* check = app.add_subcommand("check-hypotheses", "evaluate both hypotheses for k");
  check->add_option("--k", opt_k, "cycle bound")->required();
  check->add_option("graph", graph_path, "graph file or -")->required();

  auto* cl = app.add_subcommand("closure", "compute the closure of a claw-free graph");
  cl->add_flag("--trace", trace, "print the completion steps");
  cl->add_option("graph", graph_path)->required();

  auto* lg = app.add_subcommand("line-graph", "line graph with the edge-vertex bijection");
  lg->add_option("graph", graph_path)->required();

  auto* rg = app.add_subcommand("root-graph", "triangle-free root of a line graph");
  rg->add_option("graph", graph_path)->required();

  auto* tf_cmd = app.add_subcommand("two-factor", "find a 2-factor");
  tf_cmd->add_flag("--min-cycles", min_cycles, "exhaustive minimum cycle count");
  tf_cmd->add_option("graph", graph_path)->required();

  auto* ds_cmd = app.add_subcommand("dominating-system", "dominating systems of a host graph");
  ds_cmd->add_flag("--min", min_system, "exhaustive minimum cardinality");
  ds_cmd->add_option("graph", graph_path)->required();

  auto* conv = app.add_subcommand("convert-system", "convert a system to a 2-factor of the line graph");
  conv->add_option("graph", graph_path, "host graph")->required();
  conv->add_option("system", system_path, "system JSON file")->required();

  auto* bs = app.add_subcommand("bounded-system", "dominating system of cardinality at most k, or a witness");
  bs->add_option("--k", opt_k)->required();
  bs->add_option("graph", graph_path)->required();

  auto* run = app.add_subcommand("run", "full pipeline: certificate for a 2-factor with at most k cycles");
  run->add_option("--k", opt_k)->required();
  run->add_option("graph", graph_path)->required();

  auto* part = app.add_subcommand("partition", "degenerate cycle partition into at most k parts");
  part->add_option("--k", opt_k)->required();
  part->add_option("graph", graph_path)->required();

  auto* gen = app.add_subcommand("gen", "deterministic graph corpora");
  gen->add_option("--family", family, "trianglefree | clawfree | extremal")
      ->check(CLI::IsMember({"trianglefree", "clawfree", "extremal"}));
  gen->add_option("--max-edges", gen_max_edges, "edge bound (trianglefree)");
  gen->add_option("--n", gen_n, "order (clawfree)");
  gen->add_option("--count", gen_count, "number of graphs (clawfree)");
  gen->add_option("--density", gen_density, "edge density in permille (clawfree)");
  gen->add_option("--k", gen_k, "family index (extremal)");

  auto* verify = app.add_subcommand("verify", "re-validate a pipeline certificate");
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();

  CLI11_PARSE(app, argc, argv);
  Output out{format == "json"};
  Budget budget(budget_cap);

  try {
    if (*check) {
      Graph g = parse_graph(read_input(graph_path));
      auto report = evaluate_hypotheses(g, opt_k, budget);
      std::ostringstream text;
      text << "n=" << report.n << " alpha=" << report.alpha << " delta=" << report.min_degree
           << " sigma_" << opt_k + 1 << "="
           << (report.sigma_value ? std::to_string(*report.sigma_value) : "inf")
           << " sigma_ok=" << report.sigma_ok
           << " degree_condition_ok=" << report.degree_condition_ok << "\n";
      out.emit(report_to_json(report), text.str());
      return (report.sigma_ok && report.degree_condition_ok) ? kExitOk : kExitNegative;
    }
    if (*cl) {
      Graph g = parse_graph(read_input(graph_path));
      auto t = closure(g);
      json j{{"output", graph_to_json(t.output)}};
      std::ostringstream text;
      text << serialize_graph(t.output);
      if (trace) {
        j["steps"] = closure_trace_to_json(t)["steps"];
        for (const auto& s : t.steps) {
          text << "complete " << s.vertex << ":";
          for (int id : s.added_edge_ids) {
            auto [a, b] = t.output.edge(id);
            text << " (" << a << "," << b << ")";
          }
          text << "\n";
        }
      }
      out.emit(j, text.str());
      return kExitOk;
    }
    if (*lg) {
      Graph g = parse_graph(read_input(graph_path));
      auto c = line_graph(g);
      out.emit(correspondence_to_json(c), serialize_graph(c.line));
      return kExitOk;
    }
    if (*rg) {
      Graph g = parse_graph(read_input(graph_path));
      try {
        auto c = root_graph(g);
        out.emit(correspondence_to_json(c), serialize_graph(c.root));
        return kExitOk;
      } catch (const NotALineGraphError& e) {
        out.emit(json{{"error", "not-a-line-graph"}, {"detail", e.what()}},
                 std::string("not a line graph: ") + e.what() + "\n");
        return kExitNegative;
      } catch (const NoTriangleFreeRootError& e) {
        out.emit(json{{"error", "no-triangle-free-root"}, {"detail", e.what()}},
                 std::string("no triangle-free root: ") + e.what() + "\n");
        return kExitNegative;
      }
    }
    if (*tf_cmd) {
      Graph g = parse_graph(read_input(graph_path));
      if (min_cycles) {
        auto res = min_cycle_two_factor_bruteforce(g, budget);
        if (!res) {
          out.emit(json{{"two_factor", nullptr}}, "no 2-factor\n");
          return kExitNegative;
        }
        json j = two_factor_to_json(res->first);
        j["min_cycles"] = res->second;
        out.emit(j, "minimum cycles: " + std::to_string(res->second) + "\n" +
                        describe_two_factor(res->first));
        return kExitOk;
      }
      auto res = two_factor(g);
      if (!res) {
        out.emit(json{{"two_factor", nullptr}}, "no 2-factor\n");
        return kExitNegative;
      }
      out.emit(two_factor_to_json(*res), describe_two_factor(*res));
      return kExitOk;
    }
    if (*ds_cmd) {
      Graph g = parse_graph(read_input(graph_path));
      if (!min_system) {
        std::cerr << "dominating-system requires --min (exhaustive minimum search)\n";
        return kExitInput;
      }
      auto res = min_system_exhaustive(g, SystemMode::kStrict, budget);
      if (!res) {
        out.emit(json{{"system", nullptr}}, "no dominating system\n");
        return kExitNegative;
      }
      json j = system_to_json(res->first);
      j["min_cardinality"] = res->second;
      out.emit(j, "minimum cardinality: " + std::to_string(res->second) + "\n" +
                      describe_system(res->first));
      return kExitOk;
    }
    if (*conv) {
      Graph g = parse_graph(read_input(graph_path));
      json sys_json = json::parse(read_input(system_path));
      DominatingSystem ds = system_from_json(sys_json, g);
      if (auto v = validate_system(ds); !v) {
        out.emit(json{{"error", "invalid-system"}, {"detail", v.message}},
                 "invalid system: " + v.message + "\n");
        return kExitNegative;
      }
      auto corr = line_graph(g);
      TwoFactor tf = system_to_two_factor(ds, corr);
      out.emit(two_factor_to_json(tf), describe_two_factor(tf));
      return kExitOk;
    }
    if (*bs) {
      Graph g = parse_graph(read_input(graph_path));
      if (!is_triangle_free(g)) throw ParseError("host graph must be triangle-free");
      auto outcome = find_bounded_system(g, opt_k, budget);
      if (outcome.system) {
        out.emit(system_to_json(*outcome.system), describe_system(*outcome.system));
        return kExitOk;
      }
      if (outcome.witness) {
        out.emit(json{{"witness", witness_to_json(g, *outcome.witness)}},
                 "degree-condition violation witness of size " +
                     std::to_string(outcome.witness->matching_edge_ids.size()) + "\n");
        return kExitNegative;
      }
      out.emit(json{{"sigma_violation", sigma_violation_to_json(*outcome.sigma_violation)}},
               "degree-sum violation: independent set with sum " +
                   std::to_string(outcome.sigma_violation->degree_sum) + "\n");
      return kExitNegative;
    }
    if (*run) {
      Graph g = parse_graph(read_input(graph_path));
      try {
        auto cert = run_pipeline(g, opt_k, budget);
        out.emit(certificate_to_json(cert),
                 "certificate with " + std::to_string(cert.closure_two_factor.cycles.size()) +
                     " cycle(s) in the closure\n");
        return kExitOk;
      } catch (const HypothesesFailError& e) {
        out.emit(json{{"error", "hypotheses-fail"}, {"report", report_to_json(e.report)}},
                 std::string(e.what()) + "\n");
        return kExitNegative;
      } catch (const NotClawFreeError& e) {
        out.emit(json{{"error", "not-claw-free"},
                      {"witness", {e.witness[0], e.witness[1], e.witness[2], e.witness[3]}}},
                 std::string(e.what()) + "\n");
        return kExitNegative;
      }
    }
    if (*part) {
      Graph g = parse_graph(read_input(graph_path));
      try {
        auto dp = run_degenerate_partition(g, opt_k, budget);
        std::ostringstream text;
        text << dp.parts.size() << " part(s)\n";
        for (const auto& p : dp.parts) {
          for (std::size_t i = 0; i < p.size(); ++i) text << (i ? " " : "") << p[i];
          text << "\n";
        }
        out.emit(partition_to_json(dp), text.str());
        return kExitOk;
      } catch (const HypothesesFailError& e) {
        out.emit(json{{"error", "hypotheses-fail"}, {"report", report_to_json(e.report)}},
                 std::string(e.what()) + "\n");
        return kExitNegative;
      } catch (const NotClawFreeError& e) {
        out.emit(json{{"error", "not-claw-free"},
                      {"witness", {e.witness[0], e.witness[1], e.witness[2], e.witness[3]}}},
                 std::string(e.what()) + "\n");
        return kExitNegative;
      }
    }
    if (*gen) {
      std::ostringstream text;
      if (family == "trianglefree") {
        for (const auto& g : enumerate_connected_triangle_free(gen_max_edges))
          text << serialize_graph(g) << "\n";
      } else if (family == "clawfree") {
        SplitMix64 rng(seed);
        for (int i = 0; i < gen_count; ++i)
          text << serialize_graph(random_claw_free(gen_n, gen_density, rng)) << "\n";
      } else {
        text << serialize_graph(build_extremal(gen_k)) << "\n";
      }
      std::cout << text.str();
      return kExitOk;
    }
    if (*verify) {
      json j = json::parse(read_input(cert_path));
      PipelineCertificate cert = certificate_from_json(j);
      auto v = verify_certificate(cert, budget);
      out.emit(json{{"valid", v.ok}, {"detail", v.message}},
               v.ok ? "certificate valid\n" : "certificate INVALID: " + v.message + "\n");
      return v.ok ? kExitOk : kExitNegative;
    }
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NotClawFreeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NoTwoFactorError& e) {
    std::cerr << "no 2-factor: " << e.what() << "\n";
    return kExitNegative;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
