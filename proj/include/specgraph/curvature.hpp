// curvature.hpp — per-vertex curvature of an oriented metric graph and the
// isoperimetric / spectral lower bounds it implies. Orientation comes from
// the stored edge direction (source on the smaller sphere). A vertex without
// outgoing edges has curvature -inf. Frontier vertices are excluded from all
// infima: their outgoing stars are incomplete.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "specgraph/fit.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/metrics.hpp"

namespace specgraph {

struct CurvatureProfile {
  // K(v) = (#out - #in)/#out * 1/max_out_length; K_comb drops the length
  // factor; K_d divides the out-in imbalance by the vertex weight m(v).
  std::vector<double> K, K_comb, K_d;
  double K_G = std::numeric_limits<double>::infinity();        // inf over non-frontier
  double K_comb_V = std::numeric_limits<double>::infinity();
  double K_d_V = std::numeric_limits<double>::infinity();
  // inf over non-frontier vertices with sphere >= k (sphere-indexed liminf
  // surrogate; exact for layered graphs, heuristic otherwise)
  std::vector<std::pair<int, double>> K_ess_seq, K_comb_ess_seq, K_d_ess_seq;
};

inline CurvatureProfile curvature_profile(const MetricGraph& g) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  int n = g.vertex_count();
  CurvatureProfile p;
  p.K.assign(static_cast<size_t>(n), -kInf);
  p.K_comb.assign(static_cast<size_t>(n), -kInf);
  p.K_d.assign(static_cast<size_t>(n), 0.0);
  auto m = vertex_weights(g);
  for (const auto& v : g.vertices()) {
    int out = 0, in = 0;
    double max_out_len = 0.0;
    for (int eid : g.incident(v.id)) {
      const Edge& e = g.edge(eid);
      if (e.source == v.id) {
        ++out;
        max_out_len = std::max(max_out_len, e.length);
      } else {
        ++in;
      }
    }
    p.K_d[static_cast<size_t>(v.id)] = (out - in) / m[static_cast<size_t>(v.id)];
    if (out > 0) {
      p.K_comb[static_cast<size_t>(v.id)] = 1.0 - static_cast<double>(in) / out;
      p.K[static_cast<size_t>(v.id)] =
          (static_cast<double>(out - in) / out) * (1.0 / max_out_len);
    }
  }
  int top = g.max_sphere();
  std::vector<double> k_min(static_cast<size_t>(top) + 1, kInf);
  std::vector<double> kc_min(static_cast<size_t>(top) + 1, kInf);
  std::vector<double> kd_min(static_cast<size_t>(top) + 1, kInf);
  for (const auto& v : g.vertices()) {
    if (v.frontier) continue;
    auto s = static_cast<size_t>(v.sphere);
    k_min[s] = std::min(k_min[s], p.K[static_cast<size_t>(v.id)]);
    kc_min[s] = std::min(kc_min[s], p.K_comb[static_cast<size_t>(v.id)]);
    kd_min[s] = std::min(kd_min[s], p.K_d[static_cast<size_t>(v.id)]);
  }
  auto suffix_minima = [top](const std::vector<double>& per_sphere) {
    std::vector<std::pair<int, double>> seq(static_cast<size_t>(top) + 1);
    double running = std::numeric_limits<double>::infinity();
    for (int k = top; k >= 0; --k) {
      running = std::min(running, per_sphere[static_cast<size_t>(k)]);
      seq[static_cast<size_t>(k)] = {k, running};
    }
    return seq;
  };
  p.K_ess_seq = suffix_minima(k_min);
  p.K_comb_ess_seq = suffix_minima(kc_min);
  p.K_d_ess_seq = suffix_minima(kd_min);
  // spheres holding only frontier vertices contribute +inf placeholders;
  // trim them off the tail (-inf entries are real values and stay)
  auto trim = [](std::vector<std::pair<int, double>>& seq) {
    while (!seq.empty() && seq.back().second == std::numeric_limits<double>::infinity())
      seq.pop_back();
  };
  trim(p.K_ess_seq);
  trim(p.K_comb_ess_seq);
  trim(p.K_d_ess_seq);
  if (!p.K_ess_seq.empty()) {
    p.K_G = p.K_ess_seq.front().second;
    p.K_comb_V = p.K_comb_ess_seq.front().second;
    p.K_d_V = p.K_d_ess_seq.front().second;
  }
  return p;
}

struct CurvatureBound {
  std::string name;    // which quantity is bounded, e.g. "alpha" or "lambda0"
  std::string source;  // mechanism producing the bound
  double value = 0.0;
  bool applicable = false;
  std::string note;
};

// Lower bounds implied by positive curvature. Bounds whose positivity
// hypothesis fails are emitted as inapplicable.
inline std::vector<CurvatureBound> curvature_alpha_bounds(const CurvatureProfile& p,
                                                          const LengthExtremes& ext) {
  std::vector<CurvatureBound> out;
  auto emit = [&out](std::string name, std::string source, double value, bool ok,
                     std::string note = "") {
    out.push_back({std::move(name), std::move(source), ok ? value : 0.0, ok, std::move(note)});
  };
  bool k_pos = std::isfinite(p.K_G) && p.K_G > 0.0;
  emit("alpha_lower", "curvature_infimum", p.K_G, k_pos,
       k_pos ? "" : "curvature infimum is not positive");
  bool kc_pos = std::isfinite(p.K_comb_V) && p.K_comb_V > 0.0;
  emit("alpha_lower", "combinatorial_curvature_over_ell_upper",
       kc_pos ? p.K_comb_V / ext.ell_star_upper : 0.0, kc_pos,
       kc_pos ? "" : "combinatorial curvature infimum is not positive");
  bool kd_ok = std::isfinite(p.K_d_V) && p.K_d_V > 0.0;
  emit("alpha_lower", "discrete_curvature_reciprocal",
       kd_ok ? 2.0 / (1.0 / p.K_d_V + ext.ell_star_upper) : 0.0, kd_ok,
       kd_ok ? "" : "discrete curvature infimum is not positive");
  if (k_pos)
    emit("lambda0_lower", "cheeger_via_curvature", 0.25 * p.K_G * p.K_G, true);
  if (kc_pos) {
    double a = p.K_comb_V / ext.ell_star_upper;
    emit("lambda0_lower", "cheeger_via_combinatorial_curvature", 0.25 * a * a, true);
  }
  // essential versions from the tail of the sphere-indexed sequences
  if (!p.K_ess_seq.empty()) {
    double k_ess = p.K_ess_seq.back().second;
    bool ok = std::isfinite(k_ess) && k_ess > 0.0;
    emit("alpha_ess_lower", "curvature_tail", k_ess, ok,
         "tail value at k=" + std::to_string(p.K_ess_seq.back().first));
    if (ok)
      emit("lambda0_ess_lower", "cheeger_via_curvature_tail", 0.25 * k_ess * k_ess, true,
           "tail value at k=" + std::to_string(p.K_ess_seq.back().first));
  }
  if (!p.K_comb_ess_seq.empty() && !ext.ess_upper_seq.empty()) {
    double kc_ess = p.K_comb_ess_seq.back().second;
    double ell_ess = ext.ess_upper_seq.back();
    bool ok = std::isfinite(kc_ess) && kc_ess > 0.0;
    emit("alpha_ess_lower", "combinatorial_curvature_tail_over_ell_ess",
         ok ? kc_ess / ell_ess : 0.0, ok);
    if (ok) {
      double a = kc_ess / ell_ess;
      emit("lambda0_ess_lower", "cheeger_via_combinatorial_curvature_tail", 0.25 * a * a, true,
           "purely discrete spectrum iff the essential edge-length ceiling tends to 0");
    }
  }
  return out;
}

struct EssentialCurvatureLimits {
  std::vector<std::pair<int, double>> K_ess_seq, K_comb_ess_seq;
  double K_ess_fit = 0.0;       // a of a + b/k over the tail
  double K_comb_ess_fit = 0.0;
  bool K_diverging = false;
  bool K_comb_diverging = false;
  bool extrapolated = false;
};

// Tail extrapolation of the essential curvature sequences. A sequence that
// has grown by more than 2x over the second half of the range is reported as
// diverging instead of fitted.
inline EssentialCurvatureLimits essential_curvature_limits(const CurvatureProfile& p) {
  EssentialCurvatureLimits out;
  out.K_ess_seq = p.K_ess_seq;
  out.K_comb_ess_seq = p.K_comb_ess_seq;
  auto analyze = [](const std::vector<std::pair<int, double>>& seq, double& fit_out,
                    bool& diverging) {
    std::vector<double> xs, ys;
    for (const auto& [k, v] : seq)
      if (std::isfinite(v) && k > 0) {
        xs.push_back(static_cast<double>(k));
        ys.push_back(v);
      }
    if (ys.size() < 4) {
      fit_out = ys.empty() ? 0.0 : ys.back();
      return false;
    }
    double mid = ys[ys.size() / 2];
    if (mid > 0.0 && ys.back() > 1.5 * mid && ys.back() > ys[ys.size() - 2]) {
      diverging = true;
      fit_out = ys.back();
      return true;
    }
    auto fit = tail_fit_reciprocal(xs, ys);
    fit_out = fit.ok ? fit.a : ys.back();
    return fit.ok;
  };
  bool a = analyze(p.K_ess_seq, out.K_ess_fit, out.K_diverging);
  bool b = analyze(p.K_comb_ess_seq, out.K_comb_ess_fit, out.K_comb_diverging);
  out.extrapolated = a && b;
  return out;
}

}  // namespace specgraph
