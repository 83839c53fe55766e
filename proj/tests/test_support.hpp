// Shared helpers for the test suites: random connected metric graphs with
// valid sphere indices, and an independent Sturm-bisection eigenvalue oracle
// for symmetric tridiagonal pencils.
#pragma once

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "specgraph/graph.hpp"
#include "specgraph/weighted.hpp"

namespace testsupport {

// Random connected simple graph: spanning tree plus extra edges, random
// lengths, spheres recomputed by BFS, loose ends Neumann or Dirichlet.
inline specgraph::MetricGraph random_graph(std::mt19937& rng, int n,
                                           double extra_edge_prob = 0.3,
                                           bool dirichlet_leaves = false) {
  using namespace specgraph;
  std::uniform_real_distribution<double> len(0.3, 1.7);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) {
    int p = static_cast<int>(rng() % static_cast<unsigned>(v));
    pairs.emplace_back(p, v);
    used.insert({p, v});
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!used.count({a, b}) && coin(rng) < extra_edge_prob) {
        pairs.emplace_back(a, b);
        used.insert({a, b});
      }
  // BFS spheres from vertex 0
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (auto [a, b] : pairs) {
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);
  }
  std::vector<int> sphere(static_cast<size_t>(n), -1);
  std::queue<int> bfs;
  sphere[0] = 0;
  bfs.push(0);
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int u : adj[static_cast<size_t>(v)])
      if (sphere[static_cast<size_t>(u)] < 0) {
        sphere[static_cast<size_t>(u)] = sphere[static_cast<size_t>(v)] + 1;
        bfs.push(u);
      }
  }
  std::vector<int> degree(static_cast<size_t>(n), 0);
  for (auto [a, b] : pairs) {
    ++degree[static_cast<size_t>(a)];
    ++degree[static_cast<size_t>(b)];
  }
  std::vector<Vertex> vs;
  for (int v = 0; v < n; ++v) {
    VertexCondition cond = VertexCondition::kirchhoff;
    if (degree[static_cast<size_t>(v)] == 1)
      cond = (dirichlet_leaves && coin(rng) < 0.5) ? VertexCondition::dirichlet
                                                   : VertexCondition::neumann;
    vs.push_back({v, sphere[static_cast<size_t>(v)], degree[static_cast<size_t>(v)], cond,
                  false});
  }
  std::vector<Edge> es;
  for (auto [a, b] : pairs) {
    int s = a, t = b;
    if (sphere[static_cast<size_t>(s)] > sphere[static_cast<size_t>(t)]) std::swap(s, t);
    es.push_back({static_cast<int>(es.size()), s, t, len(rng)});
  }
  GraphOptions opts;
  opts.allow_degree_two = true;
  return MetricGraph::create(std::move(vs), std::move(es), 0, opts);
}

// Random connected weighted graph whose d is intrinsic by construction:
// m(v) = sum of d^2 b over the star plus a nonnegative slack. At least one
// vertex is Dirichlet when requested, and at least one stays free.
inline specgraph::WeightedGraph random_intrinsic_graph(std::mt19937& rng, int n,
                                                       bool with_dirichlet) {
  using namespace specgraph;
  std::uniform_real_distribution<double> weight(0.2, 2.0);
  std::uniform_real_distribution<double> slack(0.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::set<std::pair<int, int>> used;
  std::vector<WEdge> edges;
  for (int v = 1; v < n; ++v) {
    int p = static_cast<int>(rng() % static_cast<unsigned>(v));
    edges.push_back({static_cast<int>(edges.size()), p, v, weight(rng), weight(rng), true});
    used.insert({p, v});
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!used.count({a, b}) && coin(rng) < 0.25) {
        edges.push_back({static_cast<int>(edges.size()), a, b, weight(rng), weight(rng), true});
        used.insert({a, b});
      }
  std::vector<double> load(static_cast<size_t>(n), 0.0);
  for (const auto& e : edges) {
    load[static_cast<size_t>(e.source)] += e.d * e.d * e.b;
    load[static_cast<size_t>(e.target)] += e.d * e.d * e.b;
  }
  std::vector<WVertex> vertices;
  int dirichlet_at = with_dirichlet ? static_cast<int>(rng() % static_cast<unsigned>(n)) : -1;
  for (int v = 0; v < n; ++v)
    vertices.push_back({v, load[static_cast<size_t>(v)] + slack(rng),
                        v == dirichlet_at || (with_dirichlet && coin(rng) < 0.2)});
  bool any_free = false;
  for (const auto& v : vertices) any_free |= !v.dirichlet;
  if (!any_free) vertices[static_cast<size_t>((dirichlet_at + 1) % n)].dirichlet = false;
  return WeightedGraph::create(std::move(vertices), std::move(edges));
}

// Smallest generalized eigenvalue of a symmetric tridiagonal pencil
// (diag c-couplings against diagonal masses) by Sturm-sequence bisection on
// the symmetrized matrix. Entirely independent of the library solvers.
//
// couplings c[i] joins node i and i+1; mass[i] > 0; Dirichlet truncation is
// expressed by simply omitting the last node from the arrays and keeping its
// coupling in the diagonal of node n-1.
struct TridiagonalPencil {
  std::vector<double> diag;  // stiffness diagonal
  std::vector<double> off;   // stiffness off-diagonal
  std::vector<double> mass;
};

inline int sturm_count_below(const TridiagonalPencil& t, double x) {
  // eigenvalues of M^{-1/2} A M^{-1/2} below x
  int n = static_cast<int>(t.diag.size());
  int count = 0;
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = t.diag[static_cast<size_t>(i)] / t.mass[static_cast<size_t>(i)] - x;
    double b2 = 0.0;
    if (i > 0) {
      double b = t.off[static_cast<size_t>(i) - 1] /
                 std::sqrt(t.mass[static_cast<size_t>(i)] * t.mass[static_cast<size_t>(i) - 1]);
      b2 = b * b;
    }
    d = (i == 0) ? a : a - b2 / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

inline double tridiagonal_lambda0(const TridiagonalPencil& t, double lo = -1.0,
                                  double hi = 20.0) {
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count_below(t, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Radial reduction of the equilateral rooted tree with branching beta and
// Dirichlet truncation at the given depth: node n aggregates sphere n.
inline TridiagonalPencil bethe_radial_pencil(int beta, int depth) {
  TridiagonalPencil t;
  int free_nodes = depth;  // spheres 0 .. depth-1; sphere `depth` is Dirichlet
  std::vector<double> edges_below(static_cast<size_t>(free_nodes) + 1);
  std::vector<double> sphere_size(static_cast<size_t>(free_nodes));
  for (int n = 0; n <= free_nodes; ++n)
    edges_below[static_cast<size_t>(n)] = beta * std::pow(beta - 1.0, n);
  for (int n = 0; n < free_nodes; ++n)
    sphere_size[static_cast<size_t>(n)] =
        (n == 0) ? 1.0 : beta * std::pow(beta - 1.0, n - 1.0);
  for (int n = 0; n < free_nodes; ++n) {
    double below = (n == 0) ? 0.0 : edges_below[static_cast<size_t>(n) - 1];
    double above = edges_below[static_cast<size_t>(n)];
    t.diag.push_back(below + above);
    t.mass.push_back(beta * sphere_size[static_cast<size_t>(n)]);
    if (n + 1 < free_nodes) t.off.push_back(-edges_below[static_cast<size_t>(n)]);
  }
  return t;
}

}  // namespace testsupport
