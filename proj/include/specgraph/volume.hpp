// volume.hpp — metric balls, volume functions and exponential growth rates.
// Ball volumes are exact on the truncation: every interior point of an edge
// reaches the center through one of the edge's endpoints, so per-edge covered
// length is a closed-form expression in the endpoint distances. Radii beyond
// the distance to the nearest frontier vertex are flagged censored, because
// the ambient graph continues past the truncation there.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "specgraph/fit.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/metrics.hpp"

namespace specgraph {

struct GraphPoint {
  int vertex_id = -1;  // either a vertex ...
  int edge_id = -1;    // ... or an interior point of an edge
  double offset = 0.0; // distance from the edge source
  static GraphPoint at_vertex(int v) { return {v, -1, 0.0}; }
  static GraphPoint on_edge(int e, double off) { return {-1, e, off}; }
  std::string label() const {
    if (vertex_id >= 0) return "vertex:" + std::to_string(vertex_id);
    return "edge:" + std::to_string(edge_id) + ":" + std::to_string(offset);
  }
};

// Distance field from a center point plus exact ball volumes; distances are
// computed once per center and reused across radii.
class BallVolumeEngine {
 public:
  BallVolumeEngine(const MetricGraph& g, GraphPoint center) : g_(&g), center_(center) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    dist_.assign(static_cast<size_t>(g.vertex_count()), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    if (center.vertex_id >= 0) {
      g.vertex(center.vertex_id);
      dist_[static_cast<size_t>(center.vertex_id)] = 0.0;
      heap.emplace(0.0, center.vertex_id);
    } else {
      const Edge& e = g.edge(center.edge_id);
      if (center.offset < 0.0 || center.offset > e.length)
        throw validation_error("edge offset outside [0, length]");
      dist_[static_cast<size_t>(e.source)] = center.offset;
      dist_[static_cast<size_t>(e.target)] = e.length - center.offset;
      heap.emplace(center.offset, e.source);
      heap.emplace(e.length - center.offset, e.target);
    }
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist_[static_cast<size_t>(v)]) continue;
      for (int eid : g.incident(v)) {
        int u = g.other_end(eid, v);
        double nd = d + g.edge(eid).length;
        if (nd < dist_[static_cast<size_t>(u)]) {
          dist_[static_cast<size_t>(u)] = nd;
          heap.emplace(nd, u);
        }
      }
    }
    valid_radius_ = kInf;
    for (const auto& v : g.vertices())
      if (v.frontier)
        valid_radius_ = std::min(valid_radius_, dist_[static_cast<size_t>(v.id)]);
  }

  double valid_radius() const { return valid_radius_; }
  const std::vector<double>& distances() const { return dist_; }

  bool censored(double r) const { return r > valid_radius_; }

  // mes(B_r(center)): covered length summed over edges.
  double volume(double r) const {
    if (r <= 0.0) return 0.0;
    double vol = 0.0;
    for (const auto& e : g_->edges()) {
      double from_source = std::clamp(r - dist_[static_cast<size_t>(e.source)], 0.0, e.length);
      double from_target = std::clamp(r - dist_[static_cast<size_t>(e.target)], 0.0, e.length);
      if (e.id == center_.edge_id) {
        // the center edge is covered by an interval around the center plus
        // whatever re-enters through the endpoints
        double lo = std::max(0.0, center_.offset - r);
        double hi = std::min(e.length, center_.offset + r);
        vol += interval_union_length(
            {{0.0, from_source}, {lo, hi}, {e.length - from_target, e.length}});
      } else {
        vol += std::min(e.length, from_source + from_target);
      }
    }
    return vol;
  }

  // m(B_r(center)) = sum of vertex weights over vertices at distance < r.
  double vertex_weight_ball(double r) const {
    auto m = vertex_weights(*g_);
    double out = 0.0;
    for (const auto& v : g_->vertices())
      if (dist_[static_cast<size_t>(v.id)] < r) out += m[static_cast<size_t>(v.id)];
    return out;
  }

 private:
  static double interval_union_length(std::vector<std::pair<double, double>> iv) {
    std::sort(iv.begin(), iv.end());
    double total = 0.0, cur_lo = 0.0, cur_hi = -1.0;
    bool open = false;
    for (auto [lo, hi] : iv) {
      if (hi <= lo) continue;
      if (!open) {
        cur_lo = lo;
        cur_hi = hi;
        open = true;
      } else if (lo <= cur_hi) {
        cur_hi = std::max(cur_hi, hi);
      } else {
        total += cur_hi - cur_lo;
        cur_lo = lo;
        cur_hi = hi;
      }
    }
    if (open) total += cur_hi - cur_lo;
    return total;
  }

  const MetricGraph* g_;
  GraphPoint center_;
  std::vector<double> dist_;
  double valid_radius_ = 0.0;
};

struct BallVolume {
  double volume = 0.0;
  bool censored = false;
};

inline BallVolume ball_volume(const MetricGraph& g, GraphPoint center, double r) {
  if (r < 0.0) throw validation_error("ball radius must be nonnegative");
  BallVolumeEngine engine(g, center);
  return {engine.volume(r), engine.censored(r)};
}

struct VolumeGrowthEstimate {
  std::vector<double> radii;
  std::vector<double> volumes;
  std::vector<double> log_vol_over_r;
  double valid_radius = 0.0;
  double mu_fit = 0.0;   // intercept of a + b/r over the tail
  double fit_slope = 0.0;
  bool fitted = false;
};

namespace detail {

inline VolumeGrowthEstimate growth_from_table(std::vector<double> radii,
                                              std::vector<double> volumes,
                                              double valid_radius) {
  VolumeGrowthEstimate out;
  out.radii = std::move(radii);
  out.volumes = std::move(volumes);
  out.valid_radius = valid_radius;
  for (size_t i = 0; i < out.radii.size(); ++i)
    out.log_vol_over_r.push_back(std::log(out.volumes[i]) / out.radii[i]);
  auto fit = tail_fit_reciprocal(out.radii, out.log_vol_over_r);
  if (fit.ok) {
    out.mu_fit = fit.a;
    out.fit_slope = fit.b;
    out.fitted = true;
  }
  return out;
}

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> grid;
  if (!(hi > lo) || n < 2) return grid;
  double ratio = std::pow(hi / lo, 1.0 / (n - 1));
  double r = lo;
  for (int i = 0; i < n; ++i) {
    grid.push_back(std::min(r, hi));
    r *= ratio;
  }
  grid.back() = hi;
  return grid;
}

}  // namespace detail

// Exponential volume growth around a center: the sequence log(vol(r))/r over
// a log-spaced radius grid capped at the censoring radius, with the tail fit
// intercept as the growth-rate estimate.
inline VolumeGrowthEstimate mu_estimate(const MetricGraph& g, GraphPoint center,
                                        int n_radii = 40) {
  BallVolumeEngine engine(g, center);
  double hi = engine.valid_radius();
  if (!std::isfinite(hi)) {  // no frontier: finite graph, use the diameter
    hi = 0.0;
    for (double d : engine.distances()) hi = std::max(hi, d);
  }
  // grid between the shortest edge length and the censoring radius
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) lo = std::min(lo, e.length);
  auto grid = detail::log_spaced(lo, hi, n_radii);
  if (static_cast<int>(grid.size()) < 5)
    throw numeric_error(
        "insufficient radius range for a growth estimate (censoring radius " +
        std::to_string(hi) + "; is the center next to the frontier?)");
  std::vector<double> volumes;
  for (double r : grid) volumes.push_back(engine.volume(r));
  return detail::growth_from_table(grid, volumes, engine.valid_radius());
}

// Growth of the discrete weight m(B_r(v)) around a vertex.
inline VolumeGrowthEstimate mu_d_estimate(const MetricGraph& g, int center_vertex,
                                          int n_radii = 40) {
  BallVolumeEngine engine(g, GraphPoint::at_vertex(center_vertex));
  double hi = engine.valid_radius();
  if (!std::isfinite(hi)) {
    hi = 0.0;
    for (double d : engine.distances()) hi = std::max(hi, d);
  }
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) lo = std::min(lo, e.length);
  auto grid = detail::log_spaced(lo, hi, n_radii);
  if (static_cast<int>(grid.size()) < 5)
    throw numeric_error("insufficient radius range for a growth estimate");
  auto m = vertex_weights(g);
  const auto& dist = engine.distances();
  std::vector<double> volumes;
  for (double r : grid) {
    double s = 0.0;
    for (const auto& v : g.vertices())
      if (dist[static_cast<size_t>(v.id)] < r) s += m[static_cast<size_t>(v.id)];
    volumes.push_back(std::max(s, std::numeric_limits<double>::min()));
  }
  return detail::growth_from_table(grid, volumes, engine.valid_radius());
}

struct SampleRule {
  enum class Kind { vertices_and_midpoints, vertices_only, top_degree, explicit_points };
  Kind kind = Kind::vertices_and_midpoints;
  int top_k = 64;
  std::vector<GraphPoint> points;  // explicit_points
  static SampleRule all() { return {Kind::vertices_and_midpoints, 0, {}}; }
  static SampleRule vertices() { return {Kind::vertices_only, 0, {}}; }
  static SampleRule top_degree_rule(int k) { return {Kind::top_degree, k, {}}; }
  static SampleRule explicit_rule(std::vector<GraphPoint> pts) {
    return {Kind::explicit_points, 0, std::move(pts)};
  }
};

struct MuStarSample {
  GraphPoint point;
  double ratio = 0.0;  // vol_x(r) / vol_x(1)
};

struct MuStarEstimate {
  double r_probe = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  GraphPoint argmin;
  std::vector<MuStarSample> samples;
  bool partial_sample = false;  // budget clipped the candidate pool
  int censored_skipped = 0;     // candidates whose balls left the truncation
};

// Sampled estimate of vol_*(r) = inf_x vol_x(r)/vol_x(1); the minimum over
// any sample set is an upper bound for the infimum restricted to the
// truncation. Candidates whose radius-r ball is censored are skipped.
inline MuStarEstimate mu_star_estimate(const MetricGraph& g, const SampleRule& rule,
                                       double r_probe, int budget = 2048,
                                       unsigned seed = 0) {
  if (!(r_probe > 1.0))
    throw validation_error("mu_star probe radius must exceed the normalizing radius 1");
  std::vector<GraphPoint> pool;
  switch (rule.kind) {
    case SampleRule::Kind::vertices_and_midpoints:
      for (const auto& v : g.vertices())
        if (!v.frontier) pool.push_back(GraphPoint::at_vertex(v.id));
      for (const auto& e : g.edges())
        pool.push_back(GraphPoint::on_edge(e.id, 0.5 * e.length));
      break;
    case SampleRule::Kind::vertices_only:
      for (const auto& v : g.vertices())
        if (!v.frontier) pool.push_back(GraphPoint::at_vertex(v.id));
      break;
    case SampleRule::Kind::top_degree: {
      std::vector<int> ids;
      for (const auto& v : g.vertices())
        if (!v.frontier) ids.push_back(v.id);
      std::sort(ids.begin(), ids.end(), [&g](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
      });
      int k = std::min<int>(rule.top_k, static_cast<int>(ids.size()));
      for (int i = 0; i < k; ++i) pool.push_back(GraphPoint::at_vertex(ids[static_cast<size_t>(i)]));
      break;
    }
    case SampleRule::Kind::explicit_points:
      pool = rule.points;
      break;
  }
  MuStarEstimate out;
  out.r_probe = r_probe;
  if (static_cast<int>(pool.size()) > budget) {
    std::mt19937 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<size_t>(budget));
    out.partial_sample = true;
  }
  for (const auto& p : pool) {
    BallVolumeEngine engine(g, p);
    if (engine.censored(r_probe)) {
      ++out.censored_skipped;
      continue;
    }
    double v1 = engine.volume(1.0);
    if (!(v1 > 0.0)) continue;
    double ratio = engine.volume(r_probe) / v1;
    out.samples.push_back({p, ratio});
    if (ratio < out.min_ratio) {
      out.min_ratio = ratio;
      out.argmin = p;
    }
  }
  if (out.samples.empty())
    throw numeric_error("every mu_star sample was censored at radius " +
                        std::to_string(r_probe));
  return out;
}

struct MuStarGrowth {
  std::vector<double> radii;
  std::vector<double> min_ratios;  // sampled vol_*(r)
  double mu_star_fit = 0.0;
  bool fitted = false;
  bool partial_sample = false;
  int samples_used = 0;
};

// Sampled growth of vol_*(r) over a radius grid; each sample center costs a
// single distance field reused across radii. The per-radius minimum is an
// upper bound of the infimum, so the fitted rate over-estimates mu_* and the
// derived ceiling stays valid.
inline MuStarGrowth mu_star_growth(const MetricGraph& g, const SampleRule& rule,
                                   const std::vector<double>& radii, int budget = 256,
                                   unsigned seed = 0) {
  if (radii.size() < 2) throw validation_error("mu_star_growth: need at least two radii");
  std::vector<GraphPoint> pool;
  switch (rule.kind) {
    case SampleRule::Kind::vertices_and_midpoints:
      for (const auto& v : g.vertices())
        if (!v.frontier) pool.push_back(GraphPoint::at_vertex(v.id));
      for (const auto& e : g.edges())
        pool.push_back(GraphPoint::on_edge(e.id, 0.5 * e.length));
      break;
    case SampleRule::Kind::vertices_only:
      for (const auto& v : g.vertices())
        if (!v.frontier) pool.push_back(GraphPoint::at_vertex(v.id));
      break;
    case SampleRule::Kind::top_degree: {
      std::vector<int> ids;
      for (const auto& v : g.vertices())
        if (!v.frontier) ids.push_back(v.id);
      std::sort(ids.begin(), ids.end(), [&g](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
      });
      int k = std::min<int>(rule.top_k, static_cast<int>(ids.size()));
      for (int i = 0; i < k; ++i) pool.push_back(GraphPoint::at_vertex(ids[static_cast<size_t>(i)]));
      break;
    }
    case SampleRule::Kind::explicit_points:
      pool = rule.points;
      break;
  }
  MuStarGrowth out;
  if (static_cast<int>(pool.size()) > budget) {
    std::mt19937 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<size_t>(budget));
    out.partial_sample = true;
  }
  out.radii = radii;
  out.min_ratios.assign(radii.size(), std::numeric_limits<double>::infinity());
  for (const auto& p : pool) {
    BallVolumeEngine engine(g, p);
    double v1 = engine.volume(1.0);
    if (!(v1 > 0.0)) continue;
    bool used = false;
    for (size_t i = 0; i < radii.size(); ++i) {
      if (engine.censored(radii[i])) continue;
      out.min_ratios[i] = std::min(out.min_ratios[i], engine.volume(radii[i]) / v1);
      used = true;
    }
    if (used) ++out.samples_used;
  }
  std::vector<double> xs, ys;
  for (size_t i = 0; i < radii.size(); ++i)
    if (std::isfinite(out.min_ratios[i]) && out.min_ratios[i] > 0.0) {
      xs.push_back(radii[i]);
      ys.push_back(std::log(out.min_ratios[i]) / radii[i]);
    }
  if (xs.size() >= 3) {
    auto fit = tail_fit_reciprocal(xs, ys);
    if (fit.ok) {
      out.mu_star_fit = fit.a;
      out.fitted = true;
    }
  }
  return out;
}

struct BrooksBounds {
  double mu = 0.0;
  double mu_star = 0.0;
  double mu_sq_over_4 = 0.0;
  double mu_star_sq_over_4 = 0.0;
  bool applicable = false;
  std::string gate_note;
};

// Volume-growth upper bounds for the bottom of the (essential) spectrum,
// gated on the completeness trend of the natural path metric.
inline BrooksBounds brooks_upper(double mu, double mu_star,
                                 const SelfAdjointnessDiagnostics& diag) {
  BrooksBounds b;
  b.mu = mu;
  b.mu_star = mu_star;
  b.mu_sq_over_4 = 0.25 * mu * mu;
  b.mu_star_sq_over_4 = 0.25 * mu_star * mu_star;
  b.applicable = diag.verdicts.count("rho0_complete_trend") > 0;
  b.gate_note = b.applicable
                    ? "completeness trend diverging over the truncation (heuristic)"
                    : "inapplicable: no completeness trend on the truncation";
  return b;
}

}  // namespace specgraph
