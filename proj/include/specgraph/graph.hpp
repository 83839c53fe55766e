// graph.hpp — finite truncations of (possibly infinite) metric graphs.
//
// A MetricGraph stores vertices with sphere index (combinatorial distance to
// the root), the degree each vertex has in the full ambient graph, a vertex
// condition (kirchhoff / dirichlet / neumann) and a frontier flag marking
// truncation artifacts. Edges carry positive lengths and are oriented so the
// source lies on the smaller (or equal) sphere.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace specgraph {

class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

class lookup_error : public std::runtime_error {
 public:
  explicit lookup_error(const std::string& what) : std::runtime_error(what) {}
};

class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

enum class VertexCondition { kirchhoff, dirichlet, neumann };

inline const char* to_string(VertexCondition c) {
  switch (c) {
    case VertexCondition::kirchhoff: return "kirchhoff";
    case VertexCondition::dirichlet: return "dirichlet";
    case VertexCondition::neumann: return "neumann";
  }
  return "kirchhoff";
}

inline VertexCondition condition_from_string(const std::string& s) {
  if (s == "kirchhoff") return VertexCondition::kirchhoff;
  if (s == "dirichlet") return VertexCondition::dirichlet;
  if (s == "neumann") return VertexCondition::neumann;
  throw validation_error("unknown vertex condition '" + s + "'");
}

struct Vertex {
  int id = 0;
  int sphere = 0;          // combinatorial distance to the root
  int ambient_degree = 1;  // degree in the full (possibly infinite) graph
  VertexCondition condition = VertexCondition::kirchhoff;
  bool frontier = false;   // ambient star not fully present in the truncation
};

struct Edge {
  int id = 0;
  int source = 0;  // initial vertex, on the smaller sphere
  int target = 0;
  double length = 1.0;
};

struct GraphOptions {
  // Vertices of ambient degree 2 are inessential and rejected unless set.
  bool allow_degree_two = false;
};

class MetricGraph {
 public:
  MetricGraph() = default;

  static MetricGraph create(std::vector<Vertex> vertices, std::vector<Edge> edges,
                            int root = 0, GraphOptions options = {}) {
    MetricGraph g;
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.root_ = root;
    g.options_ = options;
    g.normalize_frontier_conditions();
    g.build_adjacency();
    g.validate();
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int root() const { return root_; }
  const GraphOptions& options() const { return options_; }

  const Vertex& vertex(int id) const {
    if (id < 0 || id >= vertex_count())
      throw lookup_error("unknown vertex id " + std::to_string(id));
    return vertices_[static_cast<size_t>(id)];
  }
  const Edge& edge(int id) const {
    if (id < 0 || id >= edge_count())
      throw lookup_error("unknown edge id " + std::to_string(id));
    return edges_[static_cast<size_t>(id)];
  }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge ids incident to v.
  std::span<const int> incident(int v) const {
    const auto& vx = vertex(v);
    (void)vx;
    auto lo = adjacency_offsets_[static_cast<size_t>(v)];
    auto hi = adjacency_offsets_[static_cast<size_t>(v) + 1];
    return {adjacency_edges_.data() + lo, static_cast<size_t>(hi - lo)};
  }

  int degree(int v) const { return static_cast<int>(incident(v).size()); }

  int other_end(int edge_id, int v) const {
    const Edge& e = edge(edge_id);
    return e.source == v ? e.target : e.source;
  }

  bool is_dirichlet(int v) const { return vertex(v).condition == VertexCondition::dirichlet; }
  bool is_frontier(int v) const { return vertex(v).frontier; }

  double total_length() const { return total_length_; }
  int max_sphere() const { return max_sphere_; }

  bool has_frontier() const { return frontier_count_ > 0; }
  int frontier_count() const { return frontier_count_; }

 private:
  void normalize_frontier_conditions() {
    // Frontier vertices carry the Dirichlet condition for all spectral work.
    for (auto& v : vertices_)
      if (v.frontier) v.condition = VertexCondition::dirichlet;
  }

  void build_adjacency() {
    size_t n = vertices_.size();
    adjacency_offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
      if (e.source < 0 || e.source >= static_cast<int>(n) || e.target < 0 ||
          e.target >= static_cast<int>(n))
        throw validation_error("edge " + std::to_string(e.id) + " references unknown vertex");
      ++adjacency_offsets_[static_cast<size_t>(e.source) + 1];
      ++adjacency_offsets_[static_cast<size_t>(e.target) + 1];
    }
    for (size_t i = 0; i < n; ++i) adjacency_offsets_[i + 1] += adjacency_offsets_[i];
    adjacency_edges_.resize(edges_.size() * 2);
    std::vector<int64_t> cursor(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
    for (const auto& e : edges_) {
      adjacency_edges_[static_cast<size_t>(cursor[static_cast<size_t>(e.source)]++)] = e.id;
      adjacency_edges_[static_cast<size_t>(cursor[static_cast<size_t>(e.target)]++)] = e.id;
    }
  }

  void validate() {
    const int n = vertex_count();
    const int m = edge_count();
    if (n == 0) throw validation_error("graph has no vertices");
    if (m == 0) throw validation_error("graph has no edges");
    for (int i = 0; i < n; ++i)
      if (vertices_[static_cast<size_t>(i)].id != i)
        throw validation_error("vertex ids must be dense integers 0..n-1 (found " +
                               std::to_string(vertices_[static_cast<size_t>(i)].id) +
                               " at position " + std::to_string(i) + ")");
    for (int j = 0; j < m; ++j)
      if (edges_[static_cast<size_t>(j)].id != j)
        throw validation_error("edge ids must be dense integers 0..m-1");
    if (root_ < 0 || root_ >= n) throw validation_error("root vertex does not exist");
    if (vertices_[static_cast<size_t>(root_)].sphere != 0)
      throw validation_error("root vertex must have sphere index 0");

    std::unordered_set<int64_t> seen;
    seen.reserve(static_cast<size_t>(m) * 2);
    for (const auto& e : edges_) {
      if (!(e.length > 0.0) || !std::isfinite(e.length))
        throw validation_error("edge " + std::to_string(e.id) +
                               " violates 0 < length < inf (length=" + std::to_string(e.length) + ")");
      if (e.source == e.target)
        throw validation_error("edge " + std::to_string(e.id) + " is a loop");
      int a = std::min(e.source, e.target), b = std::max(e.source, e.target);
      int64_t key = static_cast<int64_t>(a) * (static_cast<int64_t>(n) + 1) + b;
      if (!seen.insert(key).second) {
        // name both offending edge ids
        for (const auto& f : edges_) {
          if (f.id == e.id) continue;
          if (std::min(f.source, f.target) == a && std::max(f.source, f.target) == b)
            throw validation_error("multiple edges between vertices " + std::to_string(a) +
                                   " and " + std::to_string(b) + " (edge ids " +
                                   std::to_string(f.id) + ", " + std::to_string(e.id) + ")");
        }
      }
      const Vertex& s = vertices_[static_cast<size_t>(e.source)];
      const Vertex& t = vertices_[static_cast<size_t>(e.target)];
      if (s.sphere > t.sphere)
        throw validation_error("edge " + std::to_string(e.id) +
                               " violates the sphere orientation (source sphere " +
                               std::to_string(s.sphere) + " > target sphere " +
                               std::to_string(t.sphere) + ")");
    }

    // Spheres must equal BFS distance from the root.
    std::vector<int> dist(static_cast<size_t>(n), -1);
    std::queue<int> bfs;
    dist[static_cast<size_t>(root_)] = 0;
    bfs.push(root_);
    int reached = 0;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      ++reached;
      for (int eid : incident(v)) {
        int u = other_end(eid, v);
        if (dist[static_cast<size_t>(u)] < 0) {
          dist[static_cast<size_t>(u)] = dist[static_cast<size_t>(v)] + 1;
          bfs.push(u);
        }
      }
    }
    if (reached != n) throw validation_error("graph is not connected");
    for (int v = 0; v < n; ++v)
      if (vertices_[static_cast<size_t>(v)].sphere != dist[static_cast<size_t>(v)])
        throw validation_error("vertex " + std::to_string(v) +
                               " sphere index does not match BFS distance from the root");

    max_sphere_ = 0;
    total_length_ = 0.0;
    frontier_count_ = 0;
    for (const auto& e : edges_) total_length_ += e.length;
    for (const auto& v : vertices_) {
      max_sphere_ = std::max(max_sphere_, v.sphere);
      int deg = degree(v.id);
      if (deg > v.ambient_degree)
        throw validation_error("vertex " + std::to_string(v.id) + " truncated degree " +
                               std::to_string(deg) + " exceeds ambient degree " +
                               std::to_string(v.ambient_degree));
      if (!v.frontier && deg != v.ambient_degree)
        throw validation_error("non-frontier vertex " + std::to_string(v.id) +
                               " has incomplete star (degree " + std::to_string(deg) +
                               " < ambient " + std::to_string(v.ambient_degree) + ")");
      if (v.frontier && deg == v.ambient_degree)
        throw validation_error("frontier vertex " + std::to_string(v.id) +
                               " has a complete star");
      if (v.condition != VertexCondition::kirchhoff && v.ambient_degree != 1 && !v.frontier)
        throw validation_error("vertex " + std::to_string(v.id) +
                               " carries a loose-end condition but is neither a loose end "
                               "nor a frontier vertex");
      if (v.ambient_degree == 2 && !options_.allow_degree_two)
        throw validation_error("vertex " + std::to_string(v.id) +
                               " has ambient degree 2 (inessential); pass allow_degree_two "
                               "to accept it");
      if (v.frontier) ++frontier_count_;
    }
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  int root_ = 0;
  GraphOptions options_;
  std::vector<int64_t> adjacency_offsets_;
  std::vector<int> adjacency_edges_;
  double total_length_ = 0.0;
  int max_sphere_ = 0;
  int frontier_count_ = 0;
};

// m(v): sum of the lengths of the edges incident to v in the truncation.
inline double vertex_weight(const MetricGraph& g, int v) {
  double m = 0.0;
  for (int eid : g.incident(v)) m += g.edge(eid).length;
  return m;
}

inline std::vector<double> vertex_weights(const MetricGraph& g) {
  std::vector<double> m(static_cast<size_t>(g.vertex_count()), 0.0);
  for (const auto& e : g.edges()) {
    m[static_cast<size_t>(e.source)] += e.length;
    m[static_cast<size_t>(e.target)] += e.length;
  }
  return m;
}

}  // namespace specgraph
