// metrics.hpp — path metrics, edge-length extremes and the self-adjointness
// diagnostics derived from a finite truncation.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "specgraph/fit.hpp"
#include "specgraph/graph.hpp"

namespace specgraph {

enum class PathMetric { rho0, rhom };

// Single-source shortest-path distances. Edge cost is |e| for rho0 and
// m(u) + m(v) for rhom.
inline std::vector<double> path_distances(const MetricGraph& g, int source,
                                          PathMetric metric = PathMetric::rho0) {
  g.vertex(source);  // id check
  std::vector<double> cost(static_cast<size_t>(g.edge_count()));
  if (metric == PathMetric::rho0) {
    for (const auto& e : g.edges()) cost[static_cast<size_t>(e.id)] = e.length;
  } else {
    auto m = vertex_weights(g);
    for (const auto& e : g.edges())
      cost[static_cast<size_t>(e.id)] =
          m[static_cast<size_t>(e.source)] + m[static_cast<size_t>(e.target)];
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(g.vertex_count()), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(v)]) continue;
    for (int eid : g.incident(v)) {
      int u = g.other_end(eid, v);
      double nd = d + cost[static_cast<size_t>(eid)];
      if (nd < dist[static_cast<size_t>(u)]) {
        dist[static_cast<size_t>(u)] = nd;
        heap.emplace(nd, u);
      }
    }
  }
  return dist;
}

struct LengthExtremes {
  double ell_star_upper = 0.0;  // sup |e|
  double ell_star_lower = 0.0;  // inf |e|
  std::vector<int> radii;
  // Per radius k: extremes over edges whose endpoints both have sphere >= k.
  std::vector<double> ess_upper_seq;
  std::vector<double> ess_lower_seq;
};

inline LengthExtremes length_extremes(const MetricGraph& g,
                                      const std::vector<int>& exclusion_radii) {
  LengthExtremes out;
  out.ell_star_upper = 0.0;
  out.ell_star_lower = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) {
    out.ell_star_upper = std::max(out.ell_star_upper, e.length);
    out.ell_star_lower = std::min(out.ell_star_lower, e.length);
  }
  for (int k : exclusion_radii) {
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    for (const auto& e : g.edges()) {
      if (g.vertex(e.source).sphere >= k) {  // orientation: source sphere <= target sphere
        hi = std::max(hi, e.length);
        lo = std::min(lo, e.length);
      }
    }
    if (!(hi > 0.0))
      throw validation_error("exclusion radius " + std::to_string(k) + " removes all edges");
    out.radii.push_back(k);
    out.ess_upper_seq.push_back(hi);
    out.ess_lower_seq.push_back(lo);
  }
  return out;
}

inline LengthExtremes length_extremes(const MetricGraph& g) {
  std::vector<int> radii;
  for (int k = 0; k < g.max_sphere(); ++k) radii.push_back(k);
  if (radii.empty()) radii.push_back(0);
  return length_extremes(g, radii);
}

// Diagnostics for the sufficient self-adjointness conditions. Everything
// labeled "trend" is extrapolated from the truncation and is heuristic
// evidence only, never a decision about the infinite graph.
struct SelfAdjointnessDiagnostics {
  double inf_m = 0.0;        // over non-frontier vertices
  double ell_star_lower = 0.0;
  std::vector<double> rho0_sphere_radii;  // min rho0 distance from root to sphere n
  std::vector<double> rhom_sphere_radii;
  std::set<std::string> verdicts;
  std::string note = "trend verdicts are heuristic -- truncation evidence only";
};

namespace detail {

// True when the per-sphere minima stay bounded away from zero: the tail
// log-log exponent is ~0 and the last value is positive.
inline bool bounded_away_from_zero(const std::vector<double>& sphere_min) {
  std::vector<double> xs, ys;
  for (size_t n = 0; n < sphere_min.size(); ++n) {
    if (sphere_min[n] > 0.0 && std::isfinite(sphere_min[n])) {
      xs.push_back(static_cast<double>(n + 1));
      ys.push_back(sphere_min[n]);
    }
  }
  if (ys.empty()) return false;
  if (xs.size() < 4) return ys.back() > 0.0;
  auto fit = loglog_tail_exponent(xs, ys);
  if (!fit.ok) return ys.back() > 0.0;
  return fit.b > -0.1;
}

// True when the sphere radii look divergent: increments decay no faster
// than ~1/n (log-log exponent >= -1.05).
inline bool radii_diverging(const std::vector<double>& radii) {
  if (radii.size() < 6) return false;
  std::vector<double> xs, ys;
  for (size_t n = 1; n < radii.size(); ++n) {
    if (!std::isfinite(radii[n]) || !std::isfinite(radii[n - 1])) continue;
    double inc = radii[n] - radii[n - 1];
    if (inc > 0.0) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(inc);
    }
  }
  if (xs.size() < 4) return false;
  auto fit = loglog_tail_exponent(xs, ys);
  if (!fit.ok) return false;
  return fit.b >= -1.05;
}

}  // namespace detail

inline SelfAdjointnessDiagnostics selfadjointness_diagnostics(const MetricGraph& g) {
  SelfAdjointnessDiagnostics d;
  auto m = vertex_weights(g);
  int top = g.max_sphere();
  std::vector<double> sphere_min_m(static_cast<size_t>(top) + 1,
                                   std::numeric_limits<double>::infinity());
  d.inf_m = std::numeric_limits<double>::infinity();
  for (const auto& v : g.vertices()) {
    if (v.frontier) continue;
    d.inf_m = std::min(d.inf_m, m[static_cast<size_t>(v.id)]);
    auto& slot = sphere_min_m[static_cast<size_t>(v.sphere)];
    slot = std::min(slot, m[static_cast<size_t>(v.id)]);
  }
  std::vector<double> sphere_min_len(static_cast<size_t>(top) + 1,
                                     std::numeric_limits<double>::infinity());
  d.ell_star_lower = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) {
    d.ell_star_lower = std::min(d.ell_star_lower, e.length);
    auto& slot = sphere_min_len[static_cast<size_t>(g.vertex(e.source).sphere)];
    slot = std::min(slot, e.length);
  }

  std::vector<double> rho0_trend, rhom_trend;
  auto sphere_radii = [&](PathMetric metric, std::vector<double>& trend) {
    auto dist = path_distances(g, g.root(), metric);
    std::vector<double> radii(static_cast<size_t>(top) + 1,
                              std::numeric_limits<double>::infinity());
    trend.assign(static_cast<size_t>(top) + 1, std::numeric_limits<double>::infinity());
    for (const auto& v : g.vertices()) {
      auto s = static_cast<size_t>(v.sphere);
      radii[s] = std::min(radii[s], dist[static_cast<size_t>(v.id)]);
      // frontier vertices carry truncated weights; keep them out of the
      // divergence trend
      if (!v.frontier) trend[s] = std::min(trend[s], dist[static_cast<size_t>(v.id)]);
    }
    return radii;
  };
  d.rho0_sphere_radii = sphere_radii(PathMetric::rho0, rho0_trend);
  d.rhom_sphere_radii = sphere_radii(PathMetric::rhom, rhom_trend);

  auto finite_minima = [](std::vector<double> xs) {
    std::vector<double> out;
    for (double x : xs)
      if (std::isfinite(x)) out.push_back(x);
    return out;
  };
  if (d.inf_m > 0.0 && detail::bounded_away_from_zero(finite_minima(sphere_min_m)))
    d.verdicts.insert("inf_m_positive");
  if (d.ell_star_lower > 0.0 && detail::bounded_away_from_zero(finite_minima(sphere_min_len)))
    d.verdicts.insert("ell_star_positive");
  if (detail::radii_diverging(rho0_trend)) d.verdicts.insert("rho0_complete_trend");
  if (detail::radii_diverging(rhom_trend)) d.verdicts.insert("rhom_complete_trend");
  return d;
}

}  // namespace specgraph
