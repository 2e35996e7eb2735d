#ifndef CLAWFACTOR_JSON_IO_HPP
#define CLAWFACTOR_JSON_IO_HPP

#include <json.hpp>

#include "clawfactor/closure.hpp"
#include "clawfactor/degree_conditions.hpp"
#include "clawfactor/dominating_system.hpp"
#include "clawfactor/graph.hpp"
#include "clawfactor/line_graph.hpp"
#include "clawfactor/pipeline.hpp"
#include "clawfactor/proof_search.hpp"

namespace clawfactor {

using nlohmann::json;

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph::from_edges(j.at("n").get<int>(), std::move(edges));
}

inline json report_to_json(const HypothesisReport& r) {
  json j{{"k", r.k},
         {"n", r.n},
         {"sigma", r.sigma_value ? json(*r.sigma_value) : json("inf")},
         {"sigma_ok", r.sigma_ok},
         {"degree_condition_ok", r.degree_condition_ok},
         {"alpha", r.alpha},
         {"min_degree", r.min_degree}};
  j["violating_set"] = r.violating_set ? json(*r.violating_set) : json(nullptr);
  return j;
}

inline HypothesisReport report_from_json(const json& j) {
  HypothesisReport r;
  r.k = j.at("k").get<int>();
  r.n = j.at("n").get<int>();
  if (!j.at("sigma").is_string()) r.sigma_value = j.at("sigma").get<long long>();
  r.sigma_ok = j.at("sigma_ok").get<bool>();
  r.degree_condition_ok = j.at("degree_condition_ok").get<bool>();
  r.alpha = j.at("alpha").get<int>();
  r.min_degree = j.at("min_degree").get<int>();
  if (!j.at("violating_set").is_null())
    r.violating_set = j.at("violating_set").get<std::vector<int>>();
  return r;
}

// Trails serialize as vertex walks, stars as center plus leaf list.
inline json system_to_json(const DominatingSystem& ds) {
  json trails = json::array();
  for (const auto& t : ds.trails) trails.push_back(trail_vertex_walk(ds.host, t));
  json stars = json::array();
  for (const auto& s : ds.stars)
    stars.push_back({{"center", s.center}, {"leaves", star_leaves(ds.host, s)}});
  return {{"mode", ds.mode == SystemMode::kStrict ? "strict" : "relaxed"},
          {"trails", trails},
          {"stars", stars}};
}

inline DominatingSystem system_from_json(const json& j, const Graph& host) {
  DominatingSystem ds;
  ds.host = host;
  ds.mode = j.at("mode").get<std::string>() == "relaxed" ? SystemMode::kRelaxed
                                                         : SystemMode::kStrict;
  for (const auto& walk_j : j.at("trails")) {
    auto walk = walk_j.get<std::vector<int>>();
    if (walk.size() < 3) throw ParseError("trail walk shorter than 3 vertices");
    ClosedTrail t;
    t.anchor = walk[0];
    for (std::size_t i = 0; i < walk.size(); ++i) {
      int id = host.edge_id(walk[i], walk[(i + 1) % walk.size()]);
      if (id < 0) throw ParseError("trail walk uses a non-edge");
      t.edge_ids.push_back(id);
    }
    ds.trails.push_back(std::move(t));
  }
  for (const auto& s_j : j.at("stars")) {
    Star s;
    s.center = s_j.at("center").get<int>();
    for (int leaf : s_j.at("leaves").get<std::vector<int>>()) {
      int id = host.edge_id(s.center, leaf);
      if (id < 0) throw ParseError("star leaf is not adjacent to the center");
      s.leaf_edge_ids.push_back(id);
    }
    ds.stars.push_back(std::move(s));
  }
  return ds;
}

inline json two_factor_to_json(const TwoFactor& tf) {
  json cycles = json::array();
  for (const auto& c : tf.cycles) cycles.push_back(c.vertices);
  return {{"cycles", cycles}};
}

inline TwoFactor two_factor_from_json(const json& j) {
  TwoFactor tf;
  for (const auto& c : j.at("cycles")) tf.cycles.push_back(Cycle{c.get<std::vector<int>>()});
  return tf;
}

inline json correspondence_to_json(const RootCorrespondence& c) {
  json pairs = json::array();
  for (int e = 0; e < c.root.edge_count(); ++e) {
    auto [a, b] = c.root.edge(e);
    pairs.push_back({{"root_edge", {a, b}}, {"line_vertex", c.edge_to_vertex[e]}});
  }
  return {{"root", graph_to_json(c.root)}, {"line", graph_to_json(c.line)}, {"pairs", pairs}};
}

inline RootCorrespondence correspondence_from_json(const json& j) {
  RootCorrespondence c;
  c.root = graph_from_json(j.at("root"));
  c.line = graph_from_json(j.at("line"));
  c.edge_to_vertex.assign(c.root.edge_count(), -1);
  for (const auto& p : j.at("pairs")) {
    int a = p.at("root_edge").at(0).get<int>();
    int b = p.at("root_edge").at(1).get<int>();
    int id = c.root.edge_id(a, b);
    if (id < 0) throw ParseError("bijection names a non-edge of the root");
    c.edge_to_vertex[id] = p.at("line_vertex").get<int>();
  }
  return c;
}

inline json closure_trace_to_json(const ClosureTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json added = json::array();
    for (int id : s.added_edge_ids) {
      auto [a, b] = t.output.edge(id);
      added.push_back({a, b});
    }
    steps.push_back({{"vertex", s.vertex}, {"added", added}});
  }
  return {{"input", graph_to_json(t.input)}, {"output", graph_to_json(t.output)},
          {"steps", steps}};
}

inline ClosureTrace closure_trace_from_json(const json& j) {
  ClosureTrace t;
  t.input = graph_from_json(j.at("input"));
  t.output = graph_from_json(j.at("output"));
  for (const auto& s : j.at("steps")) {
    ClosureStep step;
    step.vertex = s.at("vertex").get<int>();
    for (const auto& e : s.at("added")) {
      int id = t.output.edge_id(e.at(0).get<int>(), e.at(1).get<int>());
      if (id < 0) throw ParseError("closure step adds a non-edge of the output");
      step.added_edge_ids.push_back(id);
    }
    t.steps.push_back(std::move(step));
  }
  return t;
}

inline json witness_to_json(const Graph& host, const ViolationWitness& w) {
  json phi = json::array();
  for (auto [v, img] : w.phi) phi.push_back({v, img});
  json edges = json::array();
  for (int id : w.matching_edge_ids) {
    auto [a, b] = host.edge(id);
    edges.push_back({a, b});
  }
  return {{"star_center", w.star_center}, {"leaf", w.leaf},     {"u", w.u_set},
          {"w", w.w_set},                 {"phi", phi},         {"matching_edges", edges},
          {"size", w.matching_edge_ids.size()}};
}

inline json sigma_violation_to_json(const SigmaViolation& sv) {
  return {{"line_vertices", sv.line_vertices}, {"degree_sum", sv.degree_sum}};
}

inline json partition_to_json(const DegeneratePartition& dp) {
  json parts = json::array();
  for (const auto& p : dp.parts) parts.push_back(p);
  return {{"parts", parts}};
}

inline constexpr const char* kCertificateFormat = "clawfactor-certificate-v1";

inline json certificate_to_json(const PipelineCertificate& cert) {
  json j;
  j["format"] = kCertificateFormat;
  j["k"] = cert.k;
  j["input"] = graph_to_json(cert.input);
  j["hypotheses"] = report_to_json(cert.hypotheses);
  j["closure"] = closure_trace_to_json(cert.closure_trace);
  j["root"] = correspondence_to_json(cert.root);
  j["system"] = system_to_json(cert.system);
  j["closure_two_factor"] = two_factor_to_json(cert.closure_two_factor);
  j["input_two_factor"] =
      cert.input_two_factor ? two_factor_to_json(*cert.input_two_factor) : json(nullptr);
  return j;
}

inline PipelineCertificate certificate_from_json(const json& j) {
  if (j.at("format").get<std::string>() != kCertificateFormat)
    throw ParseError("unknown certificate format");
  PipelineCertificate cert;
  cert.k = j.at("k").get<int>();
  cert.input = graph_from_json(j.at("input"));
  cert.hypotheses = report_from_json(j.at("hypotheses"));
  cert.closure_trace = closure_trace_from_json(j.at("closure"));
  cert.root = correspondence_from_json(j.at("root"));
  cert.system = system_from_json(j.at("system"), cert.root.root);
  cert.closure_two_factor = two_factor_from_json(j.at("closure_two_factor"));
  if (!j.at("input_two_factor").is_null())
    cert.input_two_factor = two_factor_from_json(j.at("input_two_factor"));
  return cert;
}

}  // namespace clawfactor

#endif  // CLAWFACTOR_JSON_IO_HPP
