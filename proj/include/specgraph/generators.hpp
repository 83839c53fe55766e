// generators.hpp — parametric constructors for the example families: Bethe
// lattices, antitrees, the sparse tree with pendant bundles, and Z^d lattices.
// All generators emit truncations with correct sphere indices, ambient
// degrees and frontier flags; the root is always vertex 0.
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "specgraph/graph.hpp"

namespace specgraph {

using LengthRule = std::function<double(int)>;      // edge generation -> length
using SphereSizeRule = std::function<int64_t(int)>; // sphere index -> size

inline LengthRule unit_lengths() {
  return [](int) { return 1.0; };
}

// Rooted tree in which every vertex has ambient degree beta. The root has
// beta children, every other interior vertex beta-1; leaves at the requested
// depth are frontier vertices. Edges from sphere n to n+1 have length
// lengths(n).
inline MetricGraph bethe(int beta, int depth, const LengthRule& lengths = unit_lengths()) {
  if (beta < 3) throw validation_error("bethe: beta must be >= 3");
  if (depth < 1) throw validation_error("bethe: depth must be >= 1");
  double estimate = 1.0 + beta * (std::pow(beta - 1.0, depth) - 1.0) / (beta - 2.0);
  if (estimate > static_cast<double>(1 << 27))
    throw resource_error("bethe: truncation would hold ~" + std::to_string(estimate) +
                         " vertices");
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  vertices.push_back({0, 0, beta, VertexCondition::kirchhoff, false});
  std::vector<int> current{0};
  int next_id = 1;
  for (int d = 1; d <= depth; ++d) {
    std::vector<int> next;
    double len = lengths(d - 1);
    for (int parent : current) {
      int children = (d == 1) ? beta : beta - 1;
      for (int c = 0; c < children; ++c) {
        bool leaf = (d == depth);
        vertices.push_back({next_id, d, beta,
                            leaf ? VertexCondition::dirichlet : VertexCondition::kirchhoff,
                            leaf});
        edges.push_back({static_cast<int>(edges.size()), parent, next_id, len});
        next.push_back(next_id);
        ++next_id;
      }
    }
    current = std::move(next);
  }
  return MetricGraph::create(std::move(vertices), std::move(edges));
}

// Antitree from explicit sphere-size and length rules: complete bipartite
// joins between consecutive spheres, no intra-sphere edges. Every edge from
// S_n to S_{n+1} has length lengths(n). The last sphere is the frontier.
inline MetricGraph antitree_custom(int depth, const SphereSizeRule& sphere_size,
                                   const LengthRule& lengths) {
  if (depth < 1) throw validation_error("antitree: depth must be >= 1");
  std::vector<int64_t> sizes(static_cast<size_t>(depth) + 2);
  for (int n = 0; n <= depth + 1; ++n) {
    sizes[static_cast<size_t>(n)] = sphere_size(n);
    if (sizes[static_cast<size_t>(n)] < 1)
      throw validation_error("antitree: sphere sizes must be >= 1");
  }
  if (sizes[0] != 1) throw validation_error("antitree: sphere 0 must hold the root only");
  std::vector<int> first(static_cast<size_t>(depth) + 1);
  int64_t total = 0;
  for (int n = 0; n <= depth; ++n) {
    first[static_cast<size_t>(n)] = static_cast<int>(total);
    total += sizes[static_cast<size_t>(n)];
  }
  if (total > (int64_t{1} << 30)) throw resource_error("antitree: vertex count too large");

  std::vector<Vertex> vertices;
  vertices.reserve(static_cast<size_t>(total));
  for (int n = 0; n <= depth; ++n) {
    int64_t ambient = (n == 0 ? 0 : sizes[static_cast<size_t>(n) - 1]) +
                      sizes[static_cast<size_t>(n) + 1];
    bool frontier = (n == depth);
    for (int64_t i = 0; i < sizes[static_cast<size_t>(n)]; ++i)
      vertices.push_back({static_cast<int>(first[static_cast<size_t>(n)] + i), n,
                          static_cast<int>(ambient),
                          frontier ? VertexCondition::dirichlet : VertexCondition::kirchhoff,
                          frontier});
  }
  int64_t edge_total = 0;
  for (int n = 0; n < depth; ++n)
    edge_total += sizes[static_cast<size_t>(n)] * sizes[static_cast<size_t>(n) + 1];
  if (edge_total > (int64_t{1} << 31) - 1) throw resource_error("antitree: edge count too large");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(edge_total));
  for (int n = 0; n < depth; ++n) {
    double len = lengths(n);
    for (int64_t i = 0; i < sizes[static_cast<size_t>(n)]; ++i)
      for (int64_t j = 0; j < sizes[static_cast<size_t>(n) + 1]; ++j)
        edges.push_back({static_cast<int>(edges.size()),
                         static_cast<int>(first[static_cast<size_t>(n)] + i),
                         static_cast<int>(first[static_cast<size_t>(n) + 1] + j), len});
  }
  GraphOptions opts;
  // the root of a slowly growing antitree (s_1 = 2) has ambient degree 2
  for (const auto& v : vertices)
    if (v.ambient_degree == 2) opts.allow_degree_two = true;
  return MetricGraph::create(std::move(vertices), std::move(edges), 0, opts);
}

// Polynomially growing antitree: s_n = (n+1)^q spheres, edge lengths
// (n+1)^{-s} between S_n and S_{n+1}.
inline MetricGraph antitree(int q, double s, int depth) {
  if (q < 1) throw validation_error("antitree: q must be >= 1");
  if (s < 0.0) throw validation_error("antitree: s must be >= 0");
  auto sizes = [q](int n) {
    int64_t v = 1;
    for (int i = 0; i < q; ++i) v *= (n + 1);
    return v;
  };
  auto lengths = [s](int n) { return std::pow(static_cast<double>(n + 1), -s); };
  return antitree_custom(depth, sizes, lengths);
}

struct SparseTreeOptions {
  int64_t edge_budget = 10'000'000;
  bool dirichlet_pendants = false;  // pendant loose ends default to Neumann
};

// Half-line with unit edges and pendant bundles: vertex v_n with n = j^2
// carries 2^{j^2} pendant edges, every other v_n (n >= 1) one pendant. The
// last spine vertex is the frontier.
inline MetricGraph sparse_tree(int depth, SparseTreeOptions options = {}) {
  if (depth < 1) throw validation_error("sparse_tree: depth must be >= 1");
  if (depth > 60) throw resource_error("sparse_tree: pendant bundle exceeds any budget");
  auto pendant_count = [](int n) -> int64_t {
    int r = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r == n) return int64_t{1} << n;  // n = j^2, bundle of 2^{j^2}
    return 1;
  };
  int64_t edge_total = depth;
  for (int n = 1; n <= depth; ++n) edge_total += pendant_count(n);
  if (edge_total > options.edge_budget)
    throw resource_error("sparse_tree: " + std::to_string(edge_total) +
                         " edges exceed the edge budget of " +
                         std::to_string(options.edge_budget));

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  // spine
  for (int n = 0; n <= depth; ++n) {
    int ambient = (n == 0) ? 1 : 2 + static_cast<int>(pendant_count(n));
    bool frontier = (n == depth);
    VertexCondition cond = VertexCondition::kirchhoff;
    if (n == 0) cond = VertexCondition::neumann;  // genuine loose end of the half-line
    if (frontier) cond = VertexCondition::dirichlet;
    vertices.push_back({n, n, ambient, cond, frontier});
    if (n > 0) edges.push_back({static_cast<int>(edges.size()), n - 1, n, 1.0});
  }
  VertexCondition pendant_cond =
      options.dirichlet_pendants ? VertexCondition::dirichlet : VertexCondition::neumann;
  int next_id = depth + 1;
  for (int n = 1; n <= depth; ++n) {
    int64_t c = pendant_count(n);
    for (int64_t i = 0; i < c; ++i) {
      vertices.push_back({next_id, n + 1, 1, pendant_cond, false});
      edges.push_back({static_cast<int>(edges.size()), n, next_id, 1.0});
      ++next_id;
    }
  }
  return MetricGraph::create(std::move(vertices), std::move(edges));
}

// Z^d truncated to the closed l1 ball of the given radius, uniform edge
// lengths, ambient degree 2d. Vertices on the outer shell are the frontier.
// d = 1 produces inessential (degree-2) vertices; the graph is built with
// the degree-two override.
inline MetricGraph lattice(int dim, int radius, double length = 1.0) {
  if (dim < 1) throw validation_error("lattice: dimension must be >= 1");
  if (radius < 1) throw validation_error("lattice: radius must be >= 1");
  if (!(length > 0.0)) throw validation_error("lattice: length must be positive");

  // enumerate points with |x|_1 <= radius, ordered by (sphere, lexicographic)
  std::vector<std::vector<int>> points;
  std::vector<int> point(static_cast<size_t>(dim), -radius);
  while (true) {
    int norm = 0;
    for (int c : point) norm += std::abs(c);
    if (norm <= radius) points.push_back(point);
    int i = dim - 1;
    while (i >= 0 && point[static_cast<size_t>(i)] == radius) {
      point[static_cast<size_t>(i)] = -radius;
      --i;
    }
    if (i < 0) break;
    ++point[static_cast<size_t>(i)];
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    int na = 0, nb = 0;
    for (int c : a) na += std::abs(c);
    for (int c : b) nb += std::abs(c);
    if (na != nb) return na < nb;
    return a < b;
  });
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<int>(i);

  std::vector<Vertex> vertices;
  for (size_t i = 0; i < points.size(); ++i) {
    int norm = 0;
    for (int c : points[i]) norm += std::abs(c);
    bool frontier = (norm == radius);
    vertices.push_back({static_cast<int>(i), norm, 2 * dim,
                        frontier ? VertexCondition::dirichlet : VertexCondition::kirchhoff,
                        frontier});
  }
  std::vector<Edge> edges;
  for (size_t i = 0; i < points.size(); ++i) {
    int norm = 0;
    for (int c : points[i]) norm += std::abs(c);
    for (int axis = 0; axis < dim; ++axis) {
      for (int step : {-1, 1}) {
        std::vector<int> nb = points[i];
        nb[static_cast<size_t>(axis)] += step;
        int nb_norm = 0;
        for (int c : nb) nb_norm += std::abs(c);
        if (nb_norm != norm + 1 || nb_norm > radius) continue;
        auto it = index.find(nb);
        if (it == index.end()) continue;
        edges.push_back({static_cast<int>(edges.size()), static_cast<int>(i), it->second,
                         length});
      }
    }
  }
  GraphOptions opts;
  opts.allow_degree_two = (dim == 1);
  return MetricGraph::create(std::move(vertices), std::move(edges), 0, opts);
}

enum class Family { bethe, antitree, sparse_tree, lattice };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::bethe: return "bethe";
    case Family::antitree: return "antitree";
    case Family::sparse_tree: return "sparse_tree";
    case Family::lattice: return "lattice";
  }
  return "bethe";
}

struct FamilySpec {
  Family family = Family::bethe;
  int beta = 3;       // bethe
  int q = 1;          // antitree
  double s = 1.0;     // antitree
  int depth = 4;      // bethe / antitree / sparse_tree
  int dim = 1;        // lattice
  int radius = 4;     // lattice
  double length = 1.0;
  bool dirichlet_pendants = false;

  std::string label() const {
    std::string out = to_string(family);
    switch (family) {
      case Family::bethe:
        out += "(beta=" + std::to_string(beta) + ",depth=" + std::to_string(depth) + ")";
        break;
      case Family::antitree: {
        char sbuf[32];
        std::snprintf(sbuf, sizeof(sbuf), "%g", s);
        out += "(q=" + std::to_string(q) + ",s=" + sbuf +
               ",depth=" + std::to_string(depth) + ")";
        break;
      }
      case Family::sparse_tree:
        out += "(depth=" + std::to_string(depth) + ")";
        break;
      case Family::lattice:
        out += "(dim=" + std::to_string(dim) + ",radius=" + std::to_string(radius) + ")";
        break;
    }
    return out;
  }
};

// Realize a family at its configured truncation depth, or at depth_override.
inline MetricGraph make_graph(const FamilySpec& spec, int depth_override = -1) {
  int depth = depth_override > 0 ? depth_override : spec.depth;
  switch (spec.family) {
    case Family::bethe:
      return bethe(spec.beta, depth, [&spec](int) { return spec.length; });
    case Family::antitree:
      return antitree(spec.q, spec.s, depth);
    case Family::sparse_tree: {
      SparseTreeOptions o;
      o.dirichlet_pendants = spec.dirichlet_pendants;
      return sparse_tree(depth, o);
    }
    case Family::lattice:
      return lattice(spec.dim, depth_override > 0 ? depth_override : spec.radius, spec.length);
  }
  throw validation_error("unknown family");
}

}  // namespace specgraph
