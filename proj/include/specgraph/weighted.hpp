// weighted.hpp — weighted discrete graphs (V, m, b) with an optional edge
// weight d, the intrinsic-weight test, the weighted isoperimetric constant,
// discrete co-area identities, and the Cheeger lower bound alpha^2/2 for the
// weighted Laplacian. Finite graphs emulate the infinite setting through a
// designated Dirichlet vertex set that candidate sets must avoid and whose
// rows are eliminated from the eigenproblem.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "specgraph/dense_eigen.hpp"
#include "specgraph/enumeration.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/isoperimetry.hpp"

namespace specgraph {

struct WVertex {
  int id = 0;
  double m = 1.0;
  bool dirichlet = false;
};

struct WEdge {
  int id = 0;
  int source = 0;
  int target = 0;
  double b = 1.0;
  double d = 1.0;
  bool has_d = true;
};

class WeightedGraph {
 public:
  static WeightedGraph create(std::vector<WVertex> vertices, std::vector<WEdge> edges) {
    WeightedGraph g;
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.validate_and_index();
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<WVertex>& vertices() const { return vertices_; }
  const std::vector<WEdge>& edges() const { return edges_; }
  const WVertex& vertex(int id) const {
    if (id < 0 || id >= vertex_count())
      throw lookup_error("unknown vertex id " + std::to_string(id));
    return vertices_[static_cast<size_t>(id)];
  }
  const WEdge& edge(int id) const {
    if (id < 0 || id >= edge_count())
      throw lookup_error("unknown edge id " + std::to_string(id));
    return edges_[static_cast<size_t>(id)];
  }
  std::span<const int> incident(int v) const {
    auto lo = offsets_[static_cast<size_t>(v)];
    auto hi = offsets_[static_cast<size_t>(v) + 1];
    return {incident_.data() + lo, static_cast<size_t>(hi - lo)};
  }
  int other_end(int eid, int v) const {
    const WEdge& e = edge(eid);
    return e.source == v ? e.target : e.source;
  }
  bool has_d() const { return has_d_; }

 private:
  void validate_and_index() {
    int n = vertex_count();
    if (n == 0) throw validation_error("weighted graph has no vertices");
    for (int i = 0; i < n; ++i) {
      if (vertices_[static_cast<size_t>(i)].id != i)
        throw validation_error("weighted graph vertex ids must be dense 0..n-1");
      if (!(vertices_[static_cast<size_t>(i)].m > 0.0))
        throw validation_error("vertex weight m must be positive (vertex " +
                               std::to_string(i) + ")");
    }
    has_d_ = !edges_.empty();
    std::vector<std::pair<int, int>> seen;
    for (int j = 0; j < edge_count(); ++j) {
      auto& e = edges_[static_cast<size_t>(j)];
      e.id = j;
      if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
        throw validation_error("edge " + std::to_string(j) + " references unknown vertex");
      if (e.source == e.target) throw validation_error("edge " + std::to_string(j) + " is a loop");
      if (!(e.b > 0.0)) throw validation_error("edge weight b must be positive");
      if (e.has_d && !(e.d > 0.0)) throw validation_error("edge weight d must be positive");
      if (!e.has_d) has_d_ = false;
      seen.emplace_back(std::min(e.source, e.target), std::max(e.source, e.target));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw validation_error("weighted graph has multiple edges");
    offsets_.assign(static_cast<size_t>(n) + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[static_cast<size_t>(e.source) + 1];
      ++offsets_[static_cast<size_t>(e.target) + 1];
    }
    for (int i = 0; i < n; ++i) offsets_[static_cast<size_t>(i) + 1] += offsets_[static_cast<size_t>(i)];
    incident_.resize(edges_.size() * 2);
    std::vector<int64_t> cur(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      incident_[static_cast<size_t>(cur[static_cast<size_t>(e.source)]++)] = e.id;
      incident_[static_cast<size_t>(cur[static_cast<size_t>(e.target)]++)] = e.id;
    }
    // connectivity
    std::vector<char> vis(static_cast<size_t>(n), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++count;
      for (int eid : incident(v)) {
        int u = other_end(eid, v);
        if (!vis[static_cast<size_t>(u)]) {
          vis[static_cast<size_t>(u)] = 1;
          stack.push_back(u);
        }
      }
    }
    if (count != n) throw validation_error("weighted graph is not connected");
  }

  std::vector<WVertex> vertices_;
  std::vector<WEdge> edges_;
  std::vector<int64_t> offsets_;
  std::vector<int> incident_;
  bool has_d_ = false;
};

// The weighted triple induced by a metric graph: m(v) = sum of incident
// lengths, b = 1/|e|, d = |e|. This d is intrinsic with zero slack.
inline WeightedGraph weighted_from_metric(const MetricGraph& g) {
  std::vector<WVertex> vs;
  auto m = vertex_weights(g);
  for (const auto& v : g.vertices())
    vs.push_back({v.id, m[static_cast<size_t>(v.id)],
                  v.condition == VertexCondition::dirichlet});
  std::vector<WEdge> es;
  for (const auto& e : g.edges())
    es.push_back({e.id, e.source, e.target, 1.0 / e.length, e.length, true});
  return WeightedGraph::create(std::move(vs), std::move(es));
}

struct IntrinsicCheck {
  std::vector<double> slack;  // m(v) - sum_{e at v} d(e)^2 b(e)
  bool intrinsic = false;
};

inline IntrinsicCheck is_intrinsic(const WeightedGraph& w) {
  if (!w.has_d()) throw validation_error("is_intrinsic: edge weight d is missing");
  IntrinsicCheck out;
  out.slack.assign(static_cast<size_t>(w.vertex_count()), 0.0);
  for (const auto& v : w.vertices()) out.slack[static_cast<size_t>(v.id)] = v.m;
  for (const auto& e : w.edges()) {
    double load = e.d * e.d * e.b;
    out.slack[static_cast<size_t>(e.source)] -= load;
    out.slack[static_cast<size_t>(e.target)] -= load;
  }
  out.intrinsic = true;
  for (const auto& v : w.vertices())
    if (out.slack[static_cast<size_t>(v.id)] < -1e-12 * v.m) out.intrinsic = false;
  return out;
}

namespace detail {

struct WeightedNeighborFn {
  const WeightedGraph* w;
  template <class Emit>
  void operator()(int v, Emit&& emit) const {
    for (int eid : w->incident(v)) emit(w->other_end(eid, v));
  }
};

// (d*b)(E_b(X)) / m(X) for an explicit vertex set.
inline double weighted_set_ratio(const WeightedGraph& w, std::span<const int> xs) {
  std::vector<char> in(static_cast<size_t>(w.vertex_count()), 0);
  double msum = 0.0;
  for (int v : xs) {
    in[static_cast<size_t>(w.vertex(v).id)] = 1;
    msum += w.vertex(v).m;
  }
  double db = 0.0;
  for (const auto& e : w.edges())
    if (in[static_cast<size_t>(e.source)] != in[static_cast<size_t>(e.target)])
      db += e.d * e.b;
  return db / msum;
}

class WeightedSetVisitor {
 public:
  explicit WeightedSetVisitor(const WeightedGraph& w)
      : w_(w), in_set_(static_cast<size_t>(w.vertex_count()), 0) {}
  void push(int v) {
    stack_.push_back(v);
    for (int eid : w_.incident(v)) {
      const WEdge& e = w_.edge(eid);
      double load = e.d * e.b;
      eb_ += in_set_[static_cast<size_t>(w_.other_end(eid, v))] ? -load : load;
    }
    in_set_[static_cast<size_t>(v)] = 1;
    msum_ += w_.vertex(v).m;
  }
  void pop(int v) {
    stack_.pop_back();
    in_set_[static_cast<size_t>(v)] = 0;
    for (int eid : w_.incident(v)) {
      const WEdge& e = w_.edge(eid);
      double load = e.d * e.b;
      eb_ -= in_set_[static_cast<size_t>(w_.other_end(eid, v))] ? -load : load;
    }
    msum_ -= w_.vertex(v).m;
    if (stack_.empty()) {
      msum_ = 0.0;
      eb_ = 0.0;
    }
  }
  void visit() {
    double r = eb_ / msum_;
    if (r <= best_.ratio) {
      auto ids = stack_;
      std::sort(ids.begin(), ids.end());
      best_.offer(r, std::move(ids));
    }
  }
  const BestCandidate& best() const { return best_; }

 private:
  const WeightedGraph& w_;
  std::vector<char> in_set_;
  std::vector<int> stack_;
  double eb_ = 0.0;
  double msum_ = 0.0;
  BestCandidate best_;
};

}  // namespace detail

// Weighted isoperimetric estimate: minimum of (d*b)(E_b(X))/m(X) over
// nonempty X avoiding Dirichlet vertices and the removal set. Exhaustive
// over all 2^n subsets when at most 20 vertices are eligible, otherwise
// connected-set enumeration up to the cap (sufficient for the minimum, since
// a disconnected set never beats its best component).
inline IsoReport alpha_weighted(const WeightedGraph& w, int cap,
                                const std::vector<int>& removal = {},
                                long long budget = 200'000'000) {
  if (!w.has_d()) throw validation_error("alpha_weighted: edge weight d is missing");
  std::vector<char> eligible(static_cast<size_t>(w.vertex_count()), 1);
  for (const auto& v : w.vertices())
    if (v.dirichlet) eligible[static_cast<size_t>(v.id)] = 0;
  for (int v : removal) eligible[static_cast<size_t>(w.vertex(v).id)] = 0;
  std::vector<int> pool;
  for (int v = 0; v < w.vertex_count(); ++v)
    if (eligible[static_cast<size_t>(v)]) pool.push_back(v);
  if (pool.empty()) throw validation_error("alpha_weighted: no eligible vertices");

  IsoReport rep;
  rep.kind = IsoKind::alpha_weighted;
  rep.enumeration_cap = cap;
  detail::BestCandidate best;
  if (pool.size() <= 20) {
    int k = static_cast<int>(pool.size());
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
      if (cap > 0 && __builtin_popcount(mask) > cap) continue;
      std::vector<int> xs;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) xs.push_back(pool[static_cast<size_t>(i)]);
      double ratio = detail::weighted_set_ratio(w, xs);
      best.offer(ratio, std::move(xs));
      ++rep.enumerated_count;
    }
    rep.exhaustive_within_cap = (cap <= 0 || cap >= k);
  } else {
    if (cap < 1) throw validation_error("alpha_weighted: cap must be >= 1");
    detail::WeightedSetVisitor vis(w);
    detail::WeightedNeighborFn nb{&w};
    rep.enumerated_count =
        enumerate_connected_subsets(w.vertex_count(), nb, eligible, pool, cap, budget, vis);
    best = vis.best();
    rep.exhaustive_within_cap = (cap >= static_cast<int>(pool.size()));
  }
  rep.enumerated_min = best.ratio;
  rep.enumerated_witness = best.ids;
  rep.value_upper = best.ratio;
  rep.witness_family = "enumerated";
  rep.witness_vertex_ids = best.ids;
  return rep;
}

struct CoareaDiscrete {
  double lhs1 = 0.0;  // sum f m
  double rhs1 = 0.0;  // integral of m(Omega_t)
  double lhs2 = 0.0;  // sum d |f(e_i) - f(e_o)|
  double rhs2 = 0.0;  // integral of d(E_b(Omega_t))
};

// Discrete co-area identities for a nonnegative finitely supported f,
// evaluated exactly by band summation over the sorted distinct values.
inline CoareaDiscrete coarea_discrete_check(const WeightedGraph& w,
                                            std::span<const double> f) {
  if (static_cast<int>(f.size()) != w.vertex_count())
    throw validation_error("coarea_discrete_check: need one value per vertex");
  for (double x : f)
    if (x < 0.0) throw validation_error("coarea_discrete_check: f must be nonnegative");
  if (!w.has_d()) throw validation_error("coarea_discrete_check: edge weight d is missing");
  CoareaDiscrete out;
  for (const auto& v : w.vertices()) out.lhs1 += f[static_cast<size_t>(v.id)] * v.m;
  for (const auto& e : w.edges())
    out.lhs2 += e.d * std::abs(f[static_cast<size_t>(e.source)] - f[static_cast<size_t>(e.target)]);
  std::vector<double> levels(f.begin(), f.end());
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (size_t i = 0; i + 1 < levels.size(); ++i) {
    double width = levels[i + 1] - levels[i];
    double mid = 0.5 * (levels[i] + levels[i + 1]);
    double msum = 0.0;
    for (const auto& v : w.vertices())
      if (f[static_cast<size_t>(v.id)] > mid) msum += v.m;
    double dsum = 0.0;
    for (const auto& e : w.edges()) {
      bool in_s = f[static_cast<size_t>(e.source)] > mid;
      bool in_t = f[static_cast<size_t>(e.target)] > mid;
      if (in_s != in_t) dsum += e.d;
    }
    out.rhs1 += width * msum;
    out.rhs2 += width * dsum;
  }
  return out;
}

// Smallest eigenvalue of the weighted Laplacian (Dirichlet rows eliminated)
// against the mass diag(m), via the dense oracle path.
inline double weighted_lambda0_dense(const WeightedGraph& w) {
  std::vector<int> index(static_cast<size_t>(w.vertex_count()), -1);
  int n = 0;
  for (const auto& v : w.vertices())
    if (!v.dirichlet) index[static_cast<size_t>(v.id)] = n++;
  if (n == 0) throw validation_error("weighted_lambda0_dense: every vertex is Dirichlet");
  DenseMatrix l(n, n, 0.0), d(n, n, 0.0);
  for (const auto& v : w.vertices())
    if (index[static_cast<size_t>(v.id)] >= 0)
      d(index[static_cast<size_t>(v.id)], index[static_cast<size_t>(v.id)]) = v.m;
  for (const auto& e : w.edges()) {
    int i = index[static_cast<size_t>(e.source)], j = index[static_cast<size_t>(e.target)];
    if (i >= 0) l(i, i) += e.b;
    if (j >= 0) l(j, j) += e.b;
    if (i >= 0 && j >= 0) {
      l(i, j) -= e.b;
      l(j, i) -= e.b;
    }
  }
  return generalized_eigenvalues_dense(l, d).front();
}

// Cheeger lower bound alpha^2/2 for the weighted Laplacian; requires an
// intrinsic d. alpha comes from alpha_weighted (exhaustive on small graphs).
inline double cheeger_lower_discrete(const WeightedGraph& w, int cap = 0,
                                     const std::vector<int>& removal = {}) {
  auto check = is_intrinsic(w);
  if (!check.intrinsic)
    throw validation_error("cheeger_lower_discrete: d is not intrinsic for (m, b)");
  int effective_cap = cap > 0 ? cap : w.vertex_count();
  auto rep = alpha_weighted(w, effective_cap, removal);
  return 0.5 * rep.value_upper * rep.value_upper;
}

inline nlohmann::json to_json(const WeightedGraph& w) {
  nlohmann::json j;
  j["format"] = "wgraph/1";
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const auto& v : w.vertices())
    vs.push_back({{"id", v.id}, {"m", v.m}, {"dirichlet", v.dirichlet}});
  auto& es = j["edges"] = nlohmann::json::array();
  for (const auto& e : w.edges()) {
    nlohmann::json je{{"source", e.source}, {"target", e.target}, {"b", e.b}};
    if (e.has_d) je["d"] = e.d;
    es.push_back(je);
  }
  return j;
}

inline WeightedGraph weighted_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != std::string("wgraph/1"))
    throw validation_error("not a wgraph/1 document");
  std::vector<WVertex> vs;
  for (const auto& jv : j.at("vertices"))
    vs.push_back({jv.at("id").get<int>(), jv.at("m").get<double>(),
                  jv.value("dirichlet", false)});
  std::vector<WEdge> es;
  int id = 0;
  for (const auto& je : j.at("edges")) {
    WEdge e;
    e.id = id++;
    e.source = je.at("source").get<int>();
    e.target = je.at("target").get<int>();
    e.b = je.at("b").get<double>();
    e.has_d = je.contains("d");
    if (e.has_d) e.d = je.at("d").get<double>();
    es.push_back(e);
  }
  return WeightedGraph::create(std::move(vs), std::move(es));
}

inline void save_wgraph(const WeightedGraph& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open '" + path + "' for writing");
  out << to_json(w).dump(2) << "\n";
}

inline WeightedGraph load_wgraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("malformed weighted graph file '" + path + "': " + e.what());
  }
  try {
    return weighted_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("malformed weighted graph file '" + path + "': " + e.what());
  }
}

}  // namespace specgraph
