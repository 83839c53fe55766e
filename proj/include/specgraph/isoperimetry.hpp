// isoperimetry.hpp — the metric isoperimetric constant and its discrete and
// combinatorial relatives, estimated by exhaustive enumeration of connected
// subsets at desk scale. Every reported value is the minimum of a ratio over
// an explicitly enumerated family and therefore an upper bound for the true
// infimum. Structured candidates (sphere balls/bands, vertex stars) extend
// the enumerated family past the cap.
//
// Boundary convention: a vertex of a subgraph is boundary when it carries a
// Dirichlet condition or its subgraph degree is below its ambient degree;
// boundary degree is the sum of subgraph degrees over boundary vertices.
// Essential variants remove the vertices with sphere < k and rerun; removed
// neighbors leave incomplete stars behind, so the Dirichlet re-labeling of
// the cut is automatic.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "specgraph/enumeration.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/metrics.hpp"

namespace specgraph {

struct SubgraphWitness {
  std::vector<int> edge_ids;
  std::vector<int> vertex_ids;
  std::vector<int> boundary_vertex_ids;
  int deg_boundary = 0;
  double volume = 0.0;
  double ratio = 0.0;
};

namespace detail {

inline bool subgraph_boundary_vertex(const MetricGraph& g, int v, int deg_sub) {
  const Vertex& vx = g.vertex(v);
  return vx.condition == VertexCondition::dirichlet || deg_sub < vx.ambient_degree;
}

}  // namespace detail

// Witness record for an explicit connected edge set. Throws when the edge
// set is empty or disconnected (listing the components).
inline SubgraphWitness boundary_degree(const MetricGraph& g, std::span<const int> edge_ids) {
  if (edge_ids.empty()) throw validation_error("subgraph edge set is empty");
  SubgraphWitness w;
  w.edge_ids.assign(edge_ids.begin(), edge_ids.end());
  std::sort(w.edge_ids.begin(), w.edge_ids.end());
  for (size_t i = 1; i < w.edge_ids.size(); ++i)
    if (w.edge_ids[i] == w.edge_ids[i - 1])
      throw validation_error("duplicate edge id " + std::to_string(w.edge_ids[i]) +
                             " in subgraph");
  std::map<int, int> deg_sub;
  for (int eid : w.edge_ids) {
    const Edge& e = g.edge(eid);
    ++deg_sub[e.source];
    ++deg_sub[e.target];
    w.volume += e.length;
  }
  // connectivity over the edge set
  std::map<int, std::vector<int>> inc;
  for (int eid : w.edge_ids) {
    const Edge& e = g.edge(eid);
    inc[e.source].push_back(eid);
    inc[e.target].push_back(eid);
  }
  std::map<int, int> comp;
  int n_comp = 0;
  for (const auto& [v0, unused] : inc) {
    if (comp.count(v0)) continue;
    std::vector<int> stack{v0};
    comp[v0] = n_comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int eid : inc[v]) {
        int u = g.other_end(eid, v);
        if (!comp.count(u)) {
          comp[u] = n_comp;
          stack.push_back(u);
        }
      }
    }
    ++n_comp;
  }
  if (n_comp > 1) {
    std::string msg = "subgraph is disconnected (" + std::to_string(n_comp) + " components:";
    std::vector<int> reps(static_cast<size_t>(n_comp), -1);
    for (const auto& [v, c] : comp)
      if (reps[static_cast<size_t>(c)] < 0) reps[static_cast<size_t>(c)] = v;
    for (int r : reps) msg += " " + std::to_string(r);
    throw validation_error(msg + ")");
  }
  for (const auto& [v, d] : deg_sub) {
    w.vertex_ids.push_back(v);
    if (detail::subgraph_boundary_vertex(g, v, d)) {
      w.boundary_vertex_ids.push_back(v);
      w.deg_boundary += d;
    }
  }
  w.ratio = static_cast<double>(w.deg_boundary) / w.volume;
  return w;
}

enum class IsoKind { alpha_metric, alpha_d, alpha_comb, alpha_weighted };

inline const char* to_string(IsoKind k) {
  switch (k) {
    case IsoKind::alpha_metric: return "alpha_metric";
    case IsoKind::alpha_d: return "alpha_d";
    case IsoKind::alpha_comb: return "alpha_comb";
    case IsoKind::alpha_weighted: return "alpha_weighted";
  }
  return "alpha_metric";
}

struct IsoOptions {
  long long budget = 200'000'000;  // visited-subset budget for the enumeration
  int threads = 1;
  bool structured_families = true;  // add sphere-ball/band and star candidates
};

struct IsoReport {
  IsoKind kind = IsoKind::alpha_metric;
  int graph_vertex_count = 0;  // fingerprint of the graph the report belongs to
  int graph_edge_count = 0;
  int removal_radius = 0;  // vertices with sphere < k were removed
  double value_upper = std::numeric_limits<double>::infinity();
  std::string witness_family;             // "enumerated" | "ball" | "star"
  SubgraphWitness witness;                // metric kinds
  std::vector<int> witness_vertex_ids;    // vertex kinds
  double enumerated_min = std::numeric_limits<double>::infinity();
  std::vector<int> enumerated_witness;    // edge ids or vertex ids
  std::vector<std::pair<int, double>> ball_seq;       // (sphere j, best ball/band ratio)
  std::vector<std::pair<int, double>> essential_seq;  // (k, value_upper over remainder)
  int enumeration_cap = 0;
  long long enumerated_count = 0;
  bool exhaustive_within_cap = false;
};

namespace detail {

// Tie rule everywhere: smaller ratio wins; exact ties prefer the
// lexicographically smallest sorted id sequence.
struct BestCandidate {
  double ratio = std::numeric_limits<double>::infinity();
  std::vector<int> ids;  // sorted
  bool offer(double r, std::vector<int> sorted_ids) {
    if (r < ratio || (r == ratio && !sorted_ids.empty() &&
                      (ids.empty() || sorted_ids < ids))) {
      ratio = r;
      ids = std::move(sorted_ids);
      return true;
    }
    return false;
  }
};

// Incremental ratio tracking for the metric constant over edge subsets.
class MetricAlphaVisitor {
 public:
  MetricAlphaVisitor(const MetricGraph& g)
      : g_(g), deg_sub_(static_cast<size_t>(g.vertex_count()), 0) {}

  void push(int eid) {
    const Edge& e = g_.edge(eid);
    stack_.push_back(eid);
    volume_ += e.length;
    touch(e.source, +1);
    touch(e.target, +1);
  }
  void pop(int eid) {
    const Edge& e = g_.edge(eid);
    stack_.pop_back();
    volume_ -= e.length;
    touch(e.source, -1);
    touch(e.target, -1);
    if (stack_.empty()) volume_ = 0.0;  // reseed exactly
  }
  void visit() {
    double r = static_cast<double>(boundary_sum_) / volume_;
    if (r <= best_.ratio) {
      auto ids = stack_;
      std::sort(ids.begin(), ids.end());
      best_.offer(r, std::move(ids));
    }
  }
  const BestCandidate& best() const { return best_; }

 private:
  void touch(int v, int delta) {
    int old_deg = deg_sub_[static_cast<size_t>(v)];
    if (old_deg > 0 && subgraph_boundary_vertex(g_, v, old_deg)) boundary_sum_ -= old_deg;
    int new_deg = old_deg + delta;
    deg_sub_[static_cast<size_t>(v)] = new_deg;
    if (new_deg > 0 && subgraph_boundary_vertex(g_, v, new_deg)) boundary_sum_ += new_deg;
  }

  const MetricGraph& g_;
  std::vector<int> deg_sub_;
  std::vector<int> stack_;
  double volume_ = 0.0;
  long long boundary_sum_ = 0;
  BestCandidate best_;
};

// Incremental ratio tracking for vertex-set constants (#E_b / weight).
class VertexSetVisitor {
 public:
  VertexSetVisitor(const MetricGraph& g, const std::vector<double>& weight)
      : g_(g), weight_(weight), in_set_(static_cast<size_t>(g.vertex_count()), 0) {}

  void push(int v) {
    stack_.push_back(v);
    for (int eid : g_.incident(v))
      eb_ += in_set_[static_cast<size_t>(g_.other_end(eid, v))] ? -1 : +1;
    in_set_[static_cast<size_t>(v)] = 1;
    wsum_ += weight_[static_cast<size_t>(v)];
  }
  void pop(int v) {
    stack_.pop_back();
    in_set_[static_cast<size_t>(v)] = 0;
    for (int eid : g_.incident(v))
      eb_ -= in_set_[static_cast<size_t>(g_.other_end(eid, v))] ? -1 : +1;
    wsum_ -= weight_[static_cast<size_t>(v)];
    if (stack_.empty()) wsum_ = 0.0;
  }
  void visit() {
    double r = static_cast<double>(eb_) / wsum_;
    if (r <= best_.ratio) {
      auto ids = stack_;
      std::sort(ids.begin(), ids.end());
      best_.offer(r, std::move(ids));
    }
  }
  const BestCandidate& best() const { return best_; }

 private:
  const MetricGraph& g_;
  const std::vector<double>& weight_;
  std::vector<char> in_set_;
  std::vector<int> stack_;
  long long eb_ = 0;
  double wsum_ = 0.0;
  BestCandidate best_;
};

// #E_b(X) / weight(X) recomputed from scratch for an explicit vertex set.
inline double vertex_set_ratio(const MetricGraph& g, std::span<const int> xs,
                               const std::vector<double>& weight) {
  std::vector<char> in(static_cast<size_t>(g.vertex_count()), 0);
  double wsum = 0.0;
  for (int v : xs) {
    in[static_cast<size_t>(v)] = 1;
    wsum += weight[static_cast<size_t>(v)];
  }
  long long eb = 0;
  for (const auto& e : g.edges())
    if (in[static_cast<size_t>(e.source)] != in[static_cast<size_t>(e.target)]) ++eb;
  return static_cast<double>(eb) / wsum;
}

inline std::vector<double> ambient_degrees(const MetricGraph& g) {
  std::vector<double> d(static_cast<size_t>(g.vertex_count()));
  for (const auto& v : g.vertices()) d[static_cast<size_t>(v.id)] = v.ambient_degree;
  return d;
}

// Connected components of an explicit edge set; returns lists of edge ids.
inline std::vector<std::vector<int>> edge_components(const MetricGraph& g,
                                                     const std::vector<int>& edge_ids) {
  std::vector<std::vector<int>> comps;
  std::map<int, std::vector<int>> inc;
  for (int eid : edge_ids) {
    const Edge& e = g.edge(eid);
    inc[e.source].push_back(eid);
    inc[e.target].push_back(eid);
  }
  std::map<int, char> seen_vertex;
  std::vector<char> seen_edge(static_cast<size_t>(g.edge_count()), 0);
  for (int eid : edge_ids) {
    if (seen_edge[static_cast<size_t>(eid)]) continue;
    std::vector<int> comp;
    std::vector<int> stack{g.edge(eid).source};
    seen_vertex[g.edge(eid).source] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int f : inc[v]) {
        if (!seen_edge[static_cast<size_t>(f)]) {
          seen_edge[static_cast<size_t>(f)] = 1;
          comp.push_back(f);
        }
        int u = g.other_end(f, v);
        if (!seen_vertex.count(u)) {
          seen_vertex[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Ratio of an explicit edge set without building the full witness.
inline double edge_set_ratio(const MetricGraph& g, const std::vector<int>& edge_ids) {
  std::map<int, int> deg_sub;
  double vol = 0.0;
  for (int eid : edge_ids) {
    const Edge& e = g.edge(eid);
    ++deg_sub[e.source];
    ++deg_sub[e.target];
    vol += e.length;
  }
  long long b = 0;
  for (const auto& [v, d] : deg_sub)
    if (subgraph_boundary_vertex(g, v, d)) b += d;
  return static_cast<double>(b) / vol;
}

}  // namespace detail

namespace detail {

struct StructuredScan {
  BestCandidate best;                       // over all structured candidates
  std::vector<std::pair<int, double>> ball_seq;
};

// Sphere balls/bands for the metric constant: for each j >= k the edge set
// {e : k <= sphere(source), sphere(target) <= j}, split into components.
inline StructuredScan metric_structured_candidates(const MetricGraph& g, int min_sphere) {
  StructuredScan out;
  for (int j = min_sphere; j <= g.max_sphere(); ++j) {
    std::vector<int> band;
    for (const auto& e : g.edges())
      if (g.vertex(e.source).sphere >= min_sphere && g.vertex(e.target).sphere <= j)
        band.push_back(e.id);
    if (band.empty()) continue;
    double best_j = std::numeric_limits<double>::infinity();
    for (auto& comp : edge_components(g, band)) {
      double r = edge_set_ratio(g, comp);
      best_j = std::min(best_j, r);
      out.best.offer(r, std::move(comp));
    }
    out.ball_seq.emplace_back(j, best_j);
  }
  // vertex stars restricted to the remainder
  for (const auto& v : g.vertices()) {
    if (v.sphere < min_sphere) continue;
    std::vector<int> star;
    for (int eid : g.incident(v.id))
      if (g.vertex(g.edge(eid).source).sphere >= min_sphere) star.push_back(eid);
    if (star.empty()) continue;
    std::sort(star.begin(), star.end());
    double star_ratio = edge_set_ratio(g, star);
    out.best.offer(star_ratio, std::move(star));
  }
  return out;
}

// Vertex balls for the discrete constants: components of
// {v : k <= sphere(v) <= j, v eligible}.
inline StructuredScan vertex_structured_candidates(const MetricGraph& g, int min_sphere,
                                                   const std::vector<char>& allowed,
                                                   const std::vector<double>& weight) {
  StructuredScan out;
  for (int j = min_sphere; j <= g.max_sphere(); ++j) {
    std::vector<char> member(static_cast<size_t>(g.vertex_count()), 0);
    bool any = false, grew = false;
    for (const auto& v : g.vertices())
      if (v.sphere >= min_sphere && v.sphere <= j && allowed[static_cast<size_t>(v.id)]) {
        member[static_cast<size_t>(v.id)] = 1;
        any = true;
        if (v.sphere == j) grew = true;
      }
    if (!any) continue;
    if (!grew && j > min_sphere) continue;  // no eligible vertex on this sphere
    // component split
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    double best_j = std::numeric_limits<double>::infinity();
    for (const auto& v : g.vertices()) {
      if (!member[static_cast<size_t>(v.id)] || seen[static_cast<size_t>(v.id)]) continue;
      std::vector<int> comp, stack{v.id};
      seen[static_cast<size_t>(v.id)] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        comp.push_back(x);
        for (int eid : g.incident(x)) {
          int u = g.other_end(eid, x);
          if (member[static_cast<size_t>(u)] && !seen[static_cast<size_t>(u)]) {
            seen[static_cast<size_t>(u)] = 1;
            stack.push_back(u);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      double r = vertex_set_ratio(g, comp, weight);
      best_j = std::min(best_j, r);
      out.best.offer(r, std::move(comp));
    }
    if (best_j < std::numeric_limits<double>::infinity()) out.ball_seq.emplace_back(j, best_j);
  }
  return out;
}

template <class NeighborFn, class VisitorFactory>
std::pair<BestCandidate, long long> parallel_scan(int item_count, const NeighborFn& neighbors,
                                                  const std::vector<char>& allowed, int cap,
                                                  const IsoOptions& opts,
                                                  const VisitorFactory& make_visitor) {
  std::vector<int> seeds;
  for (int i = 0; i < item_count; ++i)
    if (allowed[static_cast<size_t>(i)]) seeds.push_back(i);
  int threads = std::max(1, opts.threads);
  if (threads == 1 || seeds.size() < 64) {
    auto vis = make_visitor();
    long long count = enumerate_connected_subsets(item_count, neighbors, allowed, seeds, cap,
                                                  opts.budget, vis);
    return {vis.best(), count};
  }
  std::vector<std::vector<int>> parts(static_cast<size_t>(threads));
  for (size_t i = 0; i < seeds.size(); ++i)
    parts[i % static_cast<size_t>(threads)].push_back(seeds[i]);
  std::vector<BestCandidate> bests(static_cast<size_t>(threads));
  std::vector<long long> counts(static_cast<size_t>(threads), 0);
  std::vector<std::string> errors(static_cast<size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        auto vis = make_visitor();
        counts[static_cast<size_t>(t)] =
            enumerate_connected_subsets(item_count, neighbors, allowed,
                                        parts[static_cast<size_t>(t)], cap, opts.budget, vis);
        bests[static_cast<size_t>(t)] = vis.best();
      } catch (const std::exception& e) {
        errors[static_cast<size_t>(t)] = e.what();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (!err.empty()) throw resource_error(err);
  BestCandidate best;
  long long total = 0;
  for (int t = 0; t < threads; ++t) {
    total += counts[static_cast<size_t>(t)];
    best.offer(bests[static_cast<size_t>(t)].ratio, bests[static_cast<size_t>(t)].ids);
  }
  return {best, total};
}

inline IsoReport run_metric_alpha(const MetricGraph& g, int cap, int min_sphere,
                                  const IsoOptions& opts) {
  std::vector<char> allowed(static_cast<size_t>(g.edge_count()), 0);
  int n_allowed = 0;
  for (const auto& e : g.edges())
    if (g.vertex(e.source).sphere >= min_sphere) {
      allowed[static_cast<size_t>(e.id)] = 1;
      ++n_allowed;
    }
  if (n_allowed == 0)
    throw validation_error("removal radius " + std::to_string(min_sphere) +
                           " leaves an empty remainder graph");
  EdgeNeighborFn nb{&g};
  auto [best, count] =
      parallel_scan(g.edge_count(), nb, allowed, cap, opts,
                    [&]() { return MetricAlphaVisitor(g); });
  IsoReport rep;
  rep.kind = IsoKind::alpha_metric;
  rep.graph_vertex_count = g.vertex_count();
  rep.graph_edge_count = g.edge_count();
  rep.removal_radius = min_sphere;
  rep.enumeration_cap = cap;
  rep.enumerated_count = count;
  rep.exhaustive_within_cap = (cap >= n_allowed);
  rep.enumerated_min = best.ratio;
  rep.enumerated_witness = best.ids;
  BestCandidate overall = best;
  std::string family = "enumerated";
  if (opts.structured_families) {
    auto scan = metric_structured_candidates(g, min_sphere);
    rep.ball_seq = scan.ball_seq;
    if (scan.best.ratio < overall.ratio) {
      overall = scan.best;
      family = "ball";
    }
  }
  rep.value_upper = overall.ratio;
  rep.witness_family = family;
  rep.witness = boundary_degree(g, overall.ids);
  return rep;
}

inline IsoReport run_vertex_alpha(const MetricGraph& g, IsoKind kind, int cap, int min_sphere,
                                  const IsoOptions& opts) {
  auto weight = (kind == IsoKind::alpha_d) ? vertex_weights(g) : ambient_degrees(g);
  std::vector<char> allowed(static_cast<size_t>(g.vertex_count()), 0);
  int n_allowed = 0;
  for (const auto& v : g.vertices()) {
    // frontier stars are incomplete and Dirichlet vertices are excluded from
    // candidate sets; edges into them still count as boundary edges
    if (v.sphere >= min_sphere && !v.frontier && v.condition != VertexCondition::dirichlet) {
      allowed[static_cast<size_t>(v.id)] = 1;
      ++n_allowed;
    }
  }
  if (n_allowed == 0)
    throw validation_error("removal radius " + std::to_string(min_sphere) +
                           " leaves no eligible vertices");
  VertexNeighborFn nb{&g};
  auto [best, count] =
      parallel_scan(g.vertex_count(), nb, allowed, cap, opts,
                    [&]() { return VertexSetVisitor(g, weight); });
  IsoReport rep;
  rep.kind = kind;
  rep.graph_vertex_count = g.vertex_count();
  rep.graph_edge_count = g.edge_count();
  rep.removal_radius = min_sphere;
  rep.enumeration_cap = cap;
  rep.enumerated_count = count;
  rep.exhaustive_within_cap = (cap >= n_allowed);
  rep.enumerated_min = best.ratio;
  rep.enumerated_witness = best.ids;
  BestCandidate overall = best;
  std::string family = "enumerated";
  if (opts.structured_families) {
    auto scan = vertex_structured_candidates(g, min_sphere, allowed, weight);
    rep.ball_seq = scan.ball_seq;
    if (scan.best.ratio < overall.ratio) {
      overall = scan.best;
      family = "ball";
    }
  }
  rep.value_upper = overall.ratio;
  rep.witness_family = family;
  rep.witness_vertex_ids = overall.ids;
  return rep;
}

}  // namespace detail

inline IsoReport alpha_exhaustive(const MetricGraph& g, int cap, IsoOptions opts = {}) {
  return detail::run_metric_alpha(g, cap, 0, opts);
}

inline IsoReport alpha_d_exhaustive(const MetricGraph& g, int cap, IsoOptions opts = {}) {
  return detail::run_vertex_alpha(g, IsoKind::alpha_d, cap, 0, opts);
}

inline IsoReport alpha_comb_exhaustive(const MetricGraph& g, int cap, IsoOptions opts = {}) {
  return detail::run_vertex_alpha(g, IsoKind::alpha_comb, cap, 0, opts);
}

// Essential-variant estimate: rerun the chosen constant on the remainder
// graphs obtained by removing the vertices with sphere < k, k = 0..k_max.
// The essential sequence is nondecreasing in k because the candidate family
// shrinks with k.
inline IsoReport essential_iso_sequences(const MetricGraph& g, IsoKind kind, int k_max, int cap,
                                         IsoOptions opts = {}) {
  if (k_max < 0 || k_max > g.max_sphere())
    throw validation_error("k_max must lie within the truncation depth");
  auto run = [&](int k) {
    switch (kind) {
      case IsoKind::alpha_metric: return detail::run_metric_alpha(g, cap, k, opts);
      case IsoKind::alpha_d: return detail::run_vertex_alpha(g, kind, cap, k, opts);
      case IsoKind::alpha_comb: return detail::run_vertex_alpha(g, kind, cap, k, opts);
      default: throw validation_error("essential sequences: unsupported kind");
    }
  };
  IsoReport base = run(0);
  base.essential_seq.emplace_back(0, base.value_upper);
  for (int k = 1; k <= k_max; ++k)
    base.essential_seq.emplace_back(k, run(k).value_upper);
  return base;
}

struct OrderingVerdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  std::string detail;
};

// Cross-checks between the computed constants, evaluated on matched
// witnesses so that every inequality is checked in its enumeration-valid
// direction. Failures indicate implementation bugs, not mathematical news.
inline std::vector<OrderingVerdict> check_connection_inequalities(
    const MetricGraph& g, const IsoReport& alpha, const IsoReport& alpha_d,
    const IsoReport& alpha_comb, const LengthExtremes& ext) {
  for (const IsoReport* rep : {&alpha, &alpha_d, &alpha_comb})
    if (rep->graph_vertex_count != g.vertex_count() ||
        rep->graph_edge_count != g.edge_count())
      throw validation_error("isoperimetry reports belong to a different graph");
  std::vector<OrderingVerdict> out;
  const double tol = 1e-9;
  auto add = [&out, tol](std::string name, double lhs, double rhs, std::string detail = "") {
    bool pass = lhs <= rhs + tol * (1.0 + std::abs(rhs));
    out.push_back({std::move(name), lhs, rhs, pass, std::move(detail)});
  };

  add("alpha_le_two_over_ell_lower", alpha.value_upper, 2.0 / ext.ell_star_lower,
      "single-edge candidate ceiling");

  double star_ceiling = std::numeric_limits<double>::infinity();
  auto m = vertex_weights(g);
  for (const auto& v : g.vertices())
    if (!v.frontier)
      star_ceiling = std::min(star_ceiling, v.ambient_degree / m[static_cast<size_t>(v.id)]);
  add("alpha_le_star_ceiling", alpha.value_upper, star_ceiling, "vertex-star ceiling");

  // matched witness: vertex set X -> subgraph of all edges touching X
  if (!alpha_d.witness_vertex_ids.empty()) {
    std::vector<char> in(static_cast<size_t>(g.vertex_count()), 0);
    for (int v : alpha_d.witness_vertex_ids) in[static_cast<size_t>(g.vertex(v).id)] = 1;
    std::vector<int> touching;
    for (const auto& e : g.edges())
      if (in[static_cast<size_t>(e.source)] || in[static_cast<size_t>(e.target)])
        touching.push_back(e.id);
    double min_comp = std::numeric_limits<double>::infinity();
    for (const auto& comp : detail::edge_components(g, touching))
      min_comp = std::min(min_comp, detail::edge_set_ratio(g, comp));
    double rd = detail::vertex_set_ratio(g, alpha_d.witness_vertex_ids, m);
    add("half_alpha_le_alpha_d_on_witness", 0.5 * min_comp, rd,
        "alpha candidate built from the discrete witness");
    auto deg = detail::ambient_degrees(g);
    double rc = detail::vertex_set_ratio(g, alpha_d.witness_vertex_ids, deg);
    add("alpha_d_le_alpha_comb_over_ell_lower", rd, rc / ext.ell_star_lower,
        "pointwise weight bound on the discrete witness");
    add("alpha_comb_over_ell_upper_le_alpha_d", rc / ext.ell_star_upper, rd,
        "pointwise weight bound on the discrete witness");
  }

  // matched witness: subgraph -> interior vertex set
  if (!alpha.witness.edge_ids.empty() && alpha.witness.deg_boundary > 0) {
    std::vector<char> boundary(static_cast<size_t>(g.vertex_count()), 0);
    for (int v : alpha.witness.boundary_vertex_ids) boundary[static_cast<size_t>(v)] = 1;
    std::vector<int> interior;
    for (int v : alpha.witness.vertex_ids)
      if (!boundary[static_cast<size_t>(v)]) interior.push_back(v);
    if (!interior.empty()) {
      double rd = detail::vertex_set_ratio(g, interior, m);
      add("reciprocal_relation_on_witness", 2.0 / alpha.witness.ratio,
          1.0 / rd + ext.ell_star_upper, "two-over-alpha bound via the witness interior");
    }
  }

  // recompute each witness from scratch
  {
    auto w = boundary_degree(g, alpha.witness.edge_ids);
    add("alpha_witness_recompute", std::abs(w.ratio - alpha.value_upper),
        1e-12 * (1.0 + alpha.value_upper), "fresh ratio of the reported witness");
    if (!alpha_d.witness_vertex_ids.empty()) {
      double rd = detail::vertex_set_ratio(g, alpha_d.witness_vertex_ids, m);
      add("alpha_d_witness_recompute", std::abs(rd - alpha_d.value_upper),
          1e-12 * (1.0 + alpha_d.value_upper));
    }
    if (!alpha_comb.witness_vertex_ids.empty()) {
      auto deg = detail::ambient_degrees(g);
      double rc = detail::vertex_set_ratio(g, alpha_comb.witness_vertex_ids, deg);
      add("alpha_comb_witness_recompute", std::abs(rc - alpha_comb.value_upper),
          1e-12 * (1.0 + alpha_comb.value_upper));
    }
  }
  return out;
}

}  // namespace specgraph
