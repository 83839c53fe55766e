// graph_io.hpp — mgraph/1 JSON interchange. The loader revalidates every
// graph invariant; lengths round-trip at full double precision.
#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "specgraph/graph.hpp"

namespace specgraph {

inline nlohmann::json to_json(const MetricGraph& g) {
  nlohmann::json j;
  j["format"] = "mgraph/1";
  j["root"] = g.root();
  if (g.options().allow_degree_two) j["allow_degree_two"] = true;
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices()) {
    vs.push_back({{"id", v.id},
                  {"sphere", v.sphere},
                  {"ambient_degree", v.ambient_degree},
                  {"condition", to_string(v.condition)},
                  {"frontier", v.frontier}});
  }
  auto& es = j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    es.push_back(
        {{"id", e.id}, {"source", e.source}, {"target", e.target}, {"length", e.length}});
  }
  return j;
}

inline MetricGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != std::string("mgraph/1"))
    throw validation_error("not an mgraph/1 document");
  std::vector<Vertex> vertices;
  for (const auto& jv : j.at("vertices")) {
    Vertex v;
    v.id = jv.at("id").get<int>();
    v.sphere = jv.at("sphere").get<int>();
    v.ambient_degree = jv.at("ambient_degree").get<int>();
    v.condition = condition_from_string(jv.at("condition").get<std::string>());
    v.frontier = jv.at("frontier").get<bool>();
    if (v.frontier && v.condition != VertexCondition::dirichlet)
      throw validation_error("frontier vertex " + std::to_string(v.id) +
                             " must carry the dirichlet condition");
    vertices.push_back(v);
  }
  std::vector<Edge> edges;
  for (const auto& je : j.at("edges")) {
    Edge e;
    e.id = je.at("id").get<int>();
    e.source = je.at("source").get<int>();
    e.target = je.at("target").get<int>();
    e.length = je.at("length").get<double>();
    edges.push_back(e);
  }
  GraphOptions opts;
  opts.allow_degree_two = j.value("allow_degree_two", false);
  return MetricGraph::create(std::move(vertices), std::move(edges), j.value("root", 0), opts);
}

inline void save(const MetricGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open '" + path + "' for writing");
  out << to_json(g).dump(2) << "\n";
}

inline MetricGraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("malformed graph file '" + path + "': " + e.what());
  }
  try {
    return graph_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("malformed graph file '" + path + "': " + e.what());
  }
}

}  // namespace specgraph
