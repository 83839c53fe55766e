// spectra.hpp — direct eigenvalue computation for finite truncations: the
// difference Laplacian as a generalized matrix pencil, and continuous
// piecewise-linear finite elements for the metric Laplacian. Dirichlet
// vertices (loose-end Dirichlet and frontier) are eliminated from both
// systems; vertex continuity makes the Kirchhoff condition natural.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "specgraph/generators.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/metrics.hpp"
#include "specgraph/sparse_eigen.hpp"

namespace specgraph {

struct DiscreteSystem {
  SpMat stiffness;  // L[v][u] = -1/|e_uv|, L[v][v] = sum 1/|e|
  SpMat mass;       // diag m(v)
  std::vector<int> index_to_vertex;
  std::vector<int> vertex_to_index;  // -1 for eliminated (Dirichlet) vertices
};

inline DiscreteSystem assemble_discrete(const MetricGraph& g) {
  DiscreteSystem sys;
  sys.vertex_to_index.assign(static_cast<size_t>(g.vertex_count()), -1);
  for (const auto& v : g.vertices()) {
    if (v.condition == VertexCondition::dirichlet) continue;
    sys.vertex_to_index[static_cast<size_t>(v.id)] = static_cast<int>(sys.index_to_vertex.size());
    sys.index_to_vertex.push_back(v.id);
  }
  int n = static_cast<int>(sys.index_to_vertex.size());
  if (n == 0) throw validation_error("assemble_discrete: every vertex is Dirichlet");
  std::vector<Eigen::Triplet<double>> lt, dt;
  auto m = vertex_weights(g);
  for (int i = 0; i < n; ++i) {
    int v = sys.index_to_vertex[static_cast<size_t>(i)];
    dt.emplace_back(i, i, m[static_cast<size_t>(v)]);
  }
  for (const auto& e : g.edges()) {
    double w = 1.0 / e.length;
    int i = sys.vertex_to_index[static_cast<size_t>(e.source)];
    int j = sys.vertex_to_index[static_cast<size_t>(e.target)];
    if (i >= 0) lt.emplace_back(i, i, w);
    if (j >= 0) lt.emplace_back(j, j, w);
    if (i >= 0 && j >= 0) {
      lt.emplace_back(i, j, -w);
      lt.emplace_back(j, i, -w);
    }
  }
  sys.stiffness.resize(n, n);
  sys.stiffness.setFromTriplets(lt.begin(), lt.end());
  sys.mass.resize(n, n);
  sys.mass.setFromTriplets(dt.begin(), dt.end());
  return sys;
}

struct FemSystem {
  SpMat stiffness;
  SpMat mass;
  double h_target = 0.0;
  int nodes = 0;
  std::vector<int> vertex_node;           // node id per vertex, -1 when eliminated
  std::vector<int> edge_segments;         // subdivision count per edge
};

// Continuous piecewise-linear elements on every edge, glued at vertex nodes.
// Each edge of length l is split into ceil(l / h_target) segments; segment
// matrices are the standard 1/h * [1,-1;-1,1] stiffness and h/6 * [2,1;1,2]
// consistent mass.
inline FemSystem assemble_quantum_fem(const MetricGraph& g, double h_target) {
  if (!(h_target > 0.0)) throw validation_error("assemble_quantum_fem: h_target must be > 0");
  FemSystem sys;
  sys.h_target = h_target;
  sys.vertex_node.assign(static_cast<size_t>(g.vertex_count()), -1);
  int next = 0;
  for (const auto& v : g.vertices())
    if (v.condition != VertexCondition::dirichlet)
      sys.vertex_node[static_cast<size_t>(v.id)] = next++;
  std::vector<Eigen::Triplet<double>> kt, mt;
  sys.edge_segments.reserve(static_cast<size_t>(g.edge_count()));
  for (const auto& e : g.edges()) {
    int segs = std::max(1, static_cast<int>(std::ceil(e.length / h_target)));
    sys.edge_segments.push_back(segs);
    double h = e.length / segs;
    // node chain: vertex_node[source], interior nodes, vertex_node[target]
    std::vector<int> chain(static_cast<size_t>(segs) + 1);
    chain.front() = sys.vertex_node[static_cast<size_t>(e.source)];
    chain.back() = sys.vertex_node[static_cast<size_t>(e.target)];
    for (int i = 1; i < segs; ++i) chain[static_cast<size_t>(i)] = next++;
    for (int s = 0; s < segs; ++s) {
      int a = chain[static_cast<size_t>(s)], b = chain[static_cast<size_t>(s) + 1];
      double k = 1.0 / h, m2 = h / 3.0, m1 = h / 6.0;
      if (a >= 0) {
        kt.emplace_back(a, a, k);
        mt.emplace_back(a, a, m2);
      }
      if (b >= 0) {
        kt.emplace_back(b, b, k);
        mt.emplace_back(b, b, m2);
      }
      if (a >= 0 && b >= 0) {
        kt.emplace_back(a, b, -k);
        kt.emplace_back(b, a, -k);
        mt.emplace_back(a, b, m1);
        mt.emplace_back(b, a, m1);
      }
    }
  }
  sys.nodes = next;
  if (next == 0) throw validation_error("assemble_quantum_fem: no free nodes");
  sys.stiffness.resize(next, next);
  sys.stiffness.setFromTriplets(kt.begin(), kt.end());
  sys.mass.resize(next, next);
  sys.mass.setFromTriplets(mt.begin(), mt.end());
  return sys;
}

// Single-edge test-function ceiling for the truncation eigenvalue: a
// Dirichlet half wave on any edge, improved to a quarter wave when one
// endpoint is a genuine Neumann loose end.
inline double single_edge_ceiling(const MetricGraph& g) {
  constexpr double pi = std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  auto neumann_end = [&g](int v) {
    const Vertex& vx = g.vertex(v);
    return vx.condition == VertexCondition::neumann && vx.ambient_degree == 1;
  };
  for (const auto& e : g.edges()) {
    double base = pi / e.length;
    if (neumann_end(e.source) || neumann_end(e.target)) base *= 0.5;
    best = std::min(best, base * base);
  }
  return best;
}

inline double default_mesh(const MetricGraph& g) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) lo = std::min(lo, e.length);
  return lo / 20.0;
}

inline SpectralResult discrete_lambda0(const MetricGraph& g, double tol = 1e-8) {
  auto sys = assemble_discrete(g);
  auto r = smallest_eigenvalue(sys.stiffness, sys.mass, tol);
  r.truncation_depth = g.max_sphere();
  return r;
}

inline SpectralResult quantum_lambda0(const MetricGraph& g, double h_target = -1.0,
                                      double tol = 1e-8) {
  if (h_target <= 0.0) h_target = default_mesh(g);
  auto sys = assemble_quantum_fem(g, h_target);
  auto r = smallest_eigenvalue(sys.stiffness, sys.mass, tol);
  r.h_target = h_target;
  r.truncation_depth = g.max_sphere();
  return r;
}

enum class SpectralMode { quantum, discrete };

// lambda0 per truncation depth. Nested Dirichlet domains make the sequence
// nonincreasing; the final entry is the best upper approximation available.
inline SpectralResult lambda0_sequence(const FamilySpec& spec, const std::vector<int>& depths,
                                       SpectralMode mode, double h_target = -1.0,
                                       double tol = 1e-8) {
  if (depths.empty()) throw validation_error("lambda0_sequence: no depths");
  for (size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1])
      throw validation_error("lambda0_sequence: depths must increase");
  SpectralResult out;
  std::vector<int> hist_depths;
  std::vector<double> hist_values;
  for (int d : depths) {
    MetricGraph g = make_graph(spec, d);
    SpectralResult r = (mode == SpectralMode::quantum) ? quantum_lambda0(g, h_target, tol)
                                                       : discrete_lambda0(g, tol);
    hist_depths.push_back(d);
    hist_values.push_back(r.lambda0);
    out = r;
  }
  out.history_depths = std::move(hist_depths);
  out.monotone_history = std::move(hist_values);
  for (size_t i = 1; i < out.monotone_history.size(); ++i)
    if (out.monotone_history[i] > out.monotone_history[i - 1] + 10.0 * tol)
      throw numeric_error("lambda0_sequence: history is not nonincreasing at depth " +
                          std::to_string(out.history_depths[i]));
  out.truncation_depth = depths.back();
  return out;
}

// Equilateral spectral transfer lambda_disc = 1 - cos(sqrt(lambda_quantum)),
// valid for lambda_quantum in [0, pi^2], and its inverse.
inline double equilateral_transfer(double lambda_quantum) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  if (lambda_quantum < -1e-12 || lambda_quantum > pi2 * (1.0 + 1e-12))
    throw validation_error("equilateral_transfer: argument outside [0, pi^2]");
  lambda_quantum = std::clamp(lambda_quantum, 0.0, pi2);
  return 1.0 - std::cos(std::sqrt(lambda_quantum));
}

inline double equilateral_transfer_inverse(double lambda_discrete) {
  if (lambda_discrete < -1e-12 || lambda_discrete > 2.0 + 1e-12)
    throw validation_error("equilateral_transfer_inverse: argument outside [0, 2]");
  lambda_discrete = std::clamp(lambda_discrete, 0.0, 2.0);
  double root = std::acos(1.0 - lambda_discrete);
  return root * root;
}

struct PlNorms {
  double l2_norm_sq = 0.0;   // exact L2 norm of the piecewise-linear interpolant
  double energy = 0.0;       // integral of |f'|^2
  double l2m_norm_sq = 0.0;  // sum m(v) f(v)^2
};

// Exact norms of the piecewise-linear function with the given vertex values.
// Values must vanish on Dirichlet vertices.
inline PlNorms pl_utilities(const MetricGraph& g, std::span<const double> f) {
  if (static_cast<int>(f.size()) != g.vertex_count())
    throw validation_error("pl_utilities: need one value per vertex");
  for (const auto& v : g.vertices())
    if (v.condition == VertexCondition::dirichlet && f[static_cast<size_t>(v.id)] != 0.0)
      throw validation_error("pl_utilities: value at Dirichlet vertex " +
                             std::to_string(v.id) + " must be zero");
  PlNorms out;
  for (const auto& e : g.edges()) {
    double a = f[static_cast<size_t>(e.source)], b = f[static_cast<size_t>(e.target)];
    out.l2_norm_sq += e.length * (a * a + a * b + b * b) / 3.0;
    out.energy += (a - b) * (a - b) / e.length;
  }
  auto m = vertex_weights(g);
  for (const auto& v : g.vertices())
    out.l2m_norm_sq += m[static_cast<size_t>(v.id)] * f[static_cast<size_t>(v.id)] *
                       f[static_cast<size_t>(v.id)];
  return out;
}

struct CoareaContinuous {
  double lhs_f = 0.0;    // integral of |f'|
  double rhs_f = 0.0;    // level-set band sum for h = f
  double lhs_f2 = 0.0;   // integral of |(f^2)'|
  double rhs_f2 = 0.0;   // level-set band sum for h = f^2
};

// Level-set identity for piecewise-linear h = f and h = f^2: the integral of
// |h'| equals the integral over t of the number of interior level crossings.
// Both sides are evaluated exactly (band summation on the right).
inline CoareaContinuous coarea_continuous_check(const MetricGraph& g,
                                                std::span<const double> f) {
  if (static_cast<int>(f.size()) != g.vertex_count())
    throw validation_error("coarea_continuous_check: need one value per vertex");
  CoareaContinuous out;
  std::vector<double> levels_f, levels_f2;
  for (const auto& e : g.edges()) {
    double a = f[static_cast<size_t>(e.source)], b = f[static_cast<size_t>(e.target)];
    out.lhs_f += std::abs(a - b);
    bool sign_change = (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
    out.lhs_f2 += sign_change ? a * a + b * b : std::abs(a * a - b * b);
  }
  for (const auto& v : g.vertices()) {
    levels_f.push_back(f[static_cast<size_t>(v.id)]);
    levels_f2.push_back(f[static_cast<size_t>(v.id)] * f[static_cast<size_t>(v.id)]);
  }
  std::sort(levels_f.begin(), levels_f.end());
  levels_f.erase(std::unique(levels_f.begin(), levels_f.end()), levels_f.end());
  for (size_t i = 0; i + 1 < levels_f.size(); ++i) {
    double width = levels_f[i + 1] - levels_f[i];
    double mid = 0.5 * (levels_f[i] + levels_f[i + 1]);
    long long crossings = 0;
    for (const auto& e : g.edges()) {
      double a = f[static_cast<size_t>(e.source)], b = f[static_cast<size_t>(e.target)];
      if (std::min(a, b) < mid && mid < std::max(a, b)) ++crossings;
    }
    out.rhs_f += width * static_cast<double>(crossings);
  }
  levels_f2.push_back(0.0);
  std::sort(levels_f2.begin(), levels_f2.end());
  levels_f2.erase(std::unique(levels_f2.begin(), levels_f2.end()), levels_f2.end());
  for (size_t i = 0; i + 1 < levels_f2.size(); ++i) {
    double width = levels_f2[i + 1] - levels_f2[i];
    double mid = 0.5 * (levels_f2[i] + levels_f2[i + 1]);
    long long crossings = 0;
    for (const auto& e : g.edges()) {
      double a = f[static_cast<size_t>(e.source)], b = f[static_cast<size_t>(e.target)];
      bool sign_change = (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
      double a2 = a * a, b2 = b * b;
      if (sign_change) {
        // f^2 descends to zero then climbs: one crossing per side below the
        // endpoint square
        if (mid < a2) ++crossings;
        if (mid < b2) ++crossings;
      } else {
        if (std::min(a2, b2) < mid && mid < std::max(a2, b2)) ++crossings;
      }
    }
    out.rhs_f2 += width * static_cast<double>(crossings);
  }
  return out;
}

}  // namespace specgraph
