// report.hpp — aggregate every bound and every computed eigenvalue into a
// consistency-checked report. Asymmetry by construction: enumerated
// isoperimetric values are upper estimates of the true constants, so
// certified Cheeger floors come from curvature only; the enumeration
// contributes ceilings and witnesses. Bound entries carry a `scope`:
// "truncation" bounds hold for the computed finite truncation, "ambient"
// bounds hold for the infinite graph (whose lambda0 is below the
// truncation's), and only truncation-scoped ceilings are compared against
// computed eigenvalues.
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "specgraph/curvature.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/isoperimetry.hpp"
#include "specgraph/metrics.hpp"
#include "specgraph/spectra.hpp"
#include "specgraph/volume.hpp"

namespace specgraph {

struct BoundEntry {
  std::string name;
  std::string source;   // mechanism, e.g. "cheeger_via_curvature"
  std::string scope;    // "truncation" | "ambient" | "ambient_essential"
  double value = 0.0;
  bool applicable = true;
  std::string note;
};

struct Verdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  std::string detail;
};

struct ReportConfig {
  int cap = 8;
  int k_max = 3;
  double h_target = -1.0;  // <= 0: minimum edge length / 20
  double tol = 1e-8;
  bool with_spectra = true;
  bool with_volume = true;
  bool with_iso = true;
  int mu_radii = 48;
  int mu_star_top_k = 64;
  long long enum_budget = 200'000'000;
  int threads = 1;
  unsigned seed = 0;
  std::string label;
};

struct BoundsReport {
  // metadata
  std::string label;
  int vertex_count = 0;
  int edge_count = 0;
  int max_sphere = 0;
  double mes = 0.0;
  bool equilateral = false;
  double h_target = 0.0;
  double solver_tol = 1e-8;

  SelfAdjointnessDiagnostics diagnostics;
  LengthExtremes extremes;
  double refined_edge_ceiling = 0.0;  // min over edges, quarter-wave on Neumann ends

  bool has_iso = false;
  IsoReport alpha, alpha_d, alpha_comb;
  std::vector<OrderingVerdict> iso_checks;

  CurvatureProfile curvature;
  EssentialCurvatureLimits curvature_limits;
  std::vector<CurvatureBound> curvature_bounds;

  bool has_volume = false;
  VolumeGrowthEstimate mu;
  VolumeGrowthEstimate mu_d;
  MuStarGrowth mu_star;
  BrooksBounds brooks;

  bool has_quantum = false, has_discrete = false;
  SpectralResult quantum, discrete;

  std::vector<BoundEntry> lower_bounds;
  std::vector<BoundEntry> upper_bounds;
  std::vector<Verdict> verdicts;
};

namespace detail {

inline void collect_bounds(BoundsReport& r) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  auto lower = [&r](std::string name, std::string source, std::string scope, double value,
                    bool ok, std::string note = "") {
    r.lower_bounds.push_back(
        {std::move(name), std::move(source), std::move(scope), value, ok, std::move(note)});
  };
  auto upper = [&r](std::string name, std::string source, std::string scope, double value,
                    bool ok, std::string note = "") {
    r.upper_bounds.push_back(
        {std::move(name), std::move(source), std::move(scope), value, ok, std::move(note)});
  };

  // floors for lambda0 of the ambient graph (hence also of the truncation)
  bool k_pos = std::isfinite(r.curvature.K_G) && r.curvature.K_G > 0.0;
  lower("lambda0", "cheeger_via_curvature", "ambient",
        k_pos ? 0.25 * r.curvature.K_G * r.curvature.K_G : 0.0, k_pos,
        k_pos ? "" : "curvature infimum not positive");
  bool kc_pos = std::isfinite(r.curvature.K_comb_V) && r.curvature.K_comb_V > 0.0;
  double a_comb = kc_pos ? r.curvature.K_comb_V / r.extremes.ell_star_upper : 0.0;
  lower("lambda0", "cheeger_via_combinatorial_curvature", "ambient", 0.25 * a_comb * a_comb,
        kc_pos, kc_pos ? "" : "combinatorial curvature infimum not positive");
  bool kd_pos = std::isfinite(r.curvature.K_d_V) && r.curvature.K_d_V > 0.0;
  double a_kd = kd_pos ? 2.0 / (1.0 / r.curvature.K_d_V + r.extremes.ell_star_upper) : 0.0;
  lower("lambda0", "cheeger_via_discrete_curvature", "ambient", 0.25 * a_kd * a_kd, kd_pos,
        kd_pos ? "" : "discrete curvature infimum not positive");
  // the truncation itself is a finite graph of finite volume
  lower("lambda0", "cheeger_via_truncation_volume", "truncation",
        0.25 / (r.mes * r.mes), true, "alpha of the truncation is at least 1/mes");

  // ceilings valid for the truncation (single-edge test functions and the
  // piecewise-linear comparison run on the truncation itself)
  upper("lambda0", "longest_edge", "truncation",
        pi2 / (r.extremes.ell_star_upper * r.extremes.ell_star_upper), true);
  if (r.refined_edge_ceiling > 0.0)
    upper("lambda0", "longest_edge_refined", "truncation", r.refined_edge_ceiling, true,
          "half-wave test functions on Neumann loose-end edges");
  if (r.has_discrete)
    upper("lambda0", "six_times_discrete", "truncation", 6.0 * r.discrete.lambda0, true);

  // ceilings valid for the ambient graph only
  if (r.has_iso) {
    bool pos = r.extremes.ell_star_lower > 0.0;
    upper("lambda0", "buser_via_alpha_estimate", "ambient",
          pos ? pi2 * r.alpha.value_upper / (2.0 * r.extremes.ell_star_lower) : 0.0, pos,
          "uses the enumerated upper estimate of alpha");
  }
  if (r.has_volume && r.brooks.applicable) {
    upper("lambda0", "brooks_volume_growth", "ambient", r.brooks.mu_sq_over_4, true,
          r.brooks.gate_note);
    if (r.mu_star.fitted)
      upper("lambda0_ess", "brooks_volume_growth_uniform", "ambient_essential",
            r.brooks.mu_star_sq_over_4, true, "sampled vol_* rate");
  }

  // essential section
  for (const auto& b : r.curvature_bounds)
    if (b.name == "lambda0_ess_lower")
      lower("lambda0_ess", b.source, "ambient_essential", b.value, b.applicable, b.note);
  if (!r.extremes.ess_upper_seq.empty()) {
    double ell_ess = r.extremes.ess_upper_seq.back();
    upper("lambda0_ess", "longest_edge_tail", "ambient_essential", pi2 / (ell_ess * ell_ess),
          true, "tail of the essential edge-length sequence");
  }
}

}  // namespace detail

// Orderings recomputed purely from the stored values.
inline std::vector<Verdict> verify_orderings(const BoundsReport& r) {
  std::vector<Verdict> out;
  auto check = [&out](std::string name, double lhs, double rhs, double slack,
                      std::string detail = "") {
    out.push_back({std::move(name), lhs, rhs, lhs <= rhs + slack, std::move(detail)});
  };
  double tol = 10.0 * r.solver_tol;

  if (r.has_quantum) {
    for (const auto& b : r.lower_bounds)
      if (b.applicable && b.name == "lambda0")
        check("floor/" + b.source, b.value, r.quantum.lambda0, tol,
              "every lambda0 floor lies below the computed truncation value");
    for (const auto& b : r.upper_bounds)
      if (b.applicable && b.name == "lambda0" && b.scope == "truncation")
        check("ceiling/" + b.source, r.quantum.lambda0, b.value, tol,
              "computed truncation value lies below every truncation ceiling");
  }
  if (r.has_quantum && r.has_discrete)
    check("quantum_le_six_discrete", r.quantum.lambda0, 6.0 * r.discrete.lambda0, tol);

  // floors and ambient ceilings bound the same unknown number, so they must
  // never cross
  double max_floor = 0.0;
  for (const auto& b : r.lower_bounds)
    if (b.applicable && b.name == "lambda0" && b.scope == "ambient")
      max_floor = std::max(max_floor, b.value);
  double min_ceiling = std::numeric_limits<double>::infinity();
  for (const auto& b : r.upper_bounds)
    if (b.applicable && b.name == "lambda0")
      min_ceiling = std::min(min_ceiling, b.value);
  if (std::isfinite(min_ceiling))
    check("ambient_floor_le_ceiling", max_floor, min_ceiling, tol,
          "certified floors stay below every ceiling");

  if (r.equilateral && r.has_quantum && r.has_discrete) {
    double gap = std::abs(r.discrete.lambda0 - equilateral_transfer(r.quantum.lambda0));
    double slack = std::max(1e-3, r.quantum.lambda0 * r.quantum.lambda0 * r.h_target *
                                      r.h_target);
    check("equilateral_transfer_gap", gap, slack, 0.0,
          "discrete vs transferred quantum value on the same truncation");
  }

  for (const auto& v : r.iso_checks)
    out.push_back({"iso/" + v.name, v.lhs, v.rhs, v.pass, v.detail});

  // essential sandwich: informational unless both sequences stabilized
  {
    double floor_ess = 0.0;
    bool have_floor = false;
    for (const auto& b : r.lower_bounds)
      if (b.applicable && b.name == "lambda0_ess") {
        floor_ess = std::max(floor_ess, b.value);
        have_floor = true;
      }
    double ceil_ess = std::numeric_limits<double>::infinity();
    for (const auto& b : r.upper_bounds)
      if (b.applicable && (b.name == "lambda0_ess" || b.name == "lambda0"))
        ceil_ess = std::min(ceil_ess, b.value);
    if (have_floor && std::isfinite(ceil_ess)) {
      bool stable = false;
      if (r.curvature.K_ess_seq.size() >= 4 && r.has_volume &&
          r.mu.log_vol_over_r.size() >= 4) {
        auto& ks = r.curvature.K_ess_seq;
        double k_last = ks.back().second, k_mid = ks[ks.size() / 2].second;
        auto& ms = r.mu.log_vol_over_r;
        double m_last = ms.back(), m_mid = ms[ms.size() / 2];
        stable = std::isfinite(k_last) && std::abs(k_last - k_mid) < 0.1 * std::abs(k_last) &&
                 std::abs(m_last - m_mid) < 0.1 * std::abs(m_last);
      }
      if (stable)
        check("essential_floor_le_ceiling", floor_ess, ceil_ess, 0.3 * ceil_ess,
              "estimate-vs-estimate comparison, 30% slack");
      else
        out.push_back({"essential_floor_le_ceiling", floor_ess, ceil_ess, true,
                       "inconclusive: essential sequences not stabilized at this depth"});
    }
  }
  return out;
}

inline BoundsReport build_report(const MetricGraph& g, const ReportConfig& cfg = {}) {
  BoundsReport r;
  r.label = cfg.label;
  r.vertex_count = g.vertex_count();
  r.edge_count = g.edge_count();
  r.max_sphere = g.max_sphere();
  r.mes = g.total_length();
  r.solver_tol = cfg.tol;
  r.diagnostics = selfadjointness_diagnostics(g);
  r.extremes = length_extremes(g);
  r.refined_edge_ceiling = single_edge_ceiling(g);
  r.equilateral = (r.extremes.ell_star_upper - r.extremes.ell_star_lower) <=
                  1e-12 * r.extremes.ell_star_upper;

  if (cfg.with_iso) {
    IsoOptions opts;
    opts.budget = cfg.enum_budget;
    opts.threads = cfg.threads;
    int k_max = std::min(cfg.k_max, std::max(0, g.max_sphere() - 1));
    r.alpha = essential_iso_sequences(g, IsoKind::alpha_metric, k_max, cfg.cap, opts);
    r.alpha_d = essential_iso_sequences(g, IsoKind::alpha_d, k_max, cfg.cap, opts);
    r.alpha_comb = essential_iso_sequences(g, IsoKind::alpha_comb, k_max, cfg.cap, opts);
    r.iso_checks = check_connection_inequalities(g, r.alpha, r.alpha_d, r.alpha_comb, r.extremes);
    r.has_iso = true;
  }

  r.curvature = curvature_profile(g);
  r.curvature_limits = essential_curvature_limits(r.curvature);
  r.curvature_bounds = curvature_alpha_bounds(r.curvature, r.extremes);

  if (cfg.with_volume) {
    try {
      r.mu = mu_estimate(g, GraphPoint::at_vertex(g.root()), cfg.mu_radii);
      r.mu_d = mu_d_estimate(g, g.root(), cfg.mu_radii);
      BallVolumeEngine root_engine(g, GraphPoint::at_vertex(g.root()));
      double hi = root_engine.valid_radius();
      if (std::isfinite(hi) && hi > 2.0) {
        std::vector<double> radii;
        for (double x = 2.0; x <= hi; x += std::max(1.0, (hi - 2.0) / 6.0)) radii.push_back(x);
        if (radii.size() >= 2)
          r.mu_star = mu_star_growth(g, SampleRule::top_degree_rule(cfg.mu_star_top_k), radii,
                                     256, cfg.seed);
      }
      double mu_star_rate = r.mu_star.fitted ? r.mu_star.mu_star_fit : r.mu.mu_fit;
      r.brooks = brooks_upper(r.mu.mu_fit, mu_star_rate, r.diagnostics);
      r.has_volume = true;
    } catch (const numeric_error&) {
      r.has_volume = false;  // radius range too small on this truncation
    }
  }

  if (cfg.with_spectra) {
    r.discrete = discrete_lambda0(g, cfg.tol);
    r.has_discrete = true;
    double h = cfg.h_target > 0.0 ? cfg.h_target : default_mesh(g);
    r.h_target = h;
    r.quantum = quantum_lambda0(g, h, cfg.tol);
    r.has_quantum = true;
  }

  detail::collect_bounds(r);
  r.verdicts = verify_orderings(r);
  return r;
}

inline bool all_verdicts_pass(const BoundsReport& r) {
  for (const auto& v : r.verdicts)
    if (!v.pass) return false;
  return true;
}

// --- JSON ---------------------------------------------------------------

inline nlohmann::json to_json(const IsoReport& rep) {
  nlohmann::json j;
  j["kind"] = to_string(rep.kind);
  j["value_upper"] = rep.value_upper;
  j["witness_family"] = rep.witness_family;
  j["enumerated_min"] = rep.enumerated_min;
  j["enumerated_witness"] = rep.enumerated_witness;
  j["enumeration_cap"] = rep.enumeration_cap;
  j["enumerated_count"] = rep.enumerated_count;
  j["exhaustive_within_cap"] = rep.exhaustive_within_cap;
  if (!rep.witness.edge_ids.empty()) {
    j["witness"] = {{"edge_ids", rep.witness.edge_ids},
                    {"vertex_ids", rep.witness.vertex_ids},
                    {"boundary_vertex_ids", rep.witness.boundary_vertex_ids},
                    {"deg_boundary", rep.witness.deg_boundary},
                    {"volume", rep.witness.volume},
                    {"ratio", rep.witness.ratio}};
  }
  if (!rep.witness_vertex_ids.empty()) j["witness_vertex_ids"] = rep.witness_vertex_ids;
  auto pairs = [](const std::vector<std::pair<int, double>>& seq) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : seq) arr.push_back({{"k", k}, {"value", v}});
    return arr;
  };
  j["ball_seq"] = pairs(rep.ball_seq);
  j["essential_seq"] = pairs(rep.essential_seq);
  return j;
}

inline nlohmann::json to_json(const SpectralResult& s) {
  nlohmann::json j;
  j["lambda0"] = s.lambda0;
  j["residual"] = s.residual;
  j["dimension"] = s.dimension;
  j["iterations"] = s.iterations;
  j["shift"] = s.shift;
  if (s.h_target > 0.0) j["h_target"] = s.h_target;
  j["truncation_depth"] = s.truncation_depth;
  if (!s.monotone_history.empty()) {
    j["history_depths"] = s.history_depths;
    j["monotone_history"] = s.monotone_history;
  }
  return j;
}

inline nlohmann::json to_json(const BoundsReport& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["note"] = "enumerated isoperimetric values are upper estimates; certified floors come "
              "from curvature";
  j["graph"] = {{"vertices", r.vertex_count}, {"edges", r.edge_count},
                {"max_sphere", r.max_sphere}, {"mes", r.mes}, {"equilateral", r.equilateral}};
  j["diagnostics"] = {{"inf_m", r.diagnostics.inf_m},
                      {"ell_star_lower", r.diagnostics.ell_star_lower},
                      {"rho0_sphere_radii", r.diagnostics.rho0_sphere_radii},
                      {"rhom_sphere_radii", r.diagnostics.rhom_sphere_radii},
                      {"verdicts", std::vector<std::string>(r.diagnostics.verdicts.begin(),
                                                            r.diagnostics.verdicts.end())},
                      {"note", r.diagnostics.note}};
  j["extremes"] = {{"ell_star_upper", r.extremes.ell_star_upper},
                   {"ell_star_lower", r.extremes.ell_star_lower},
                   {"radii", r.extremes.radii},
                   {"ess_upper_seq", r.extremes.ess_upper_seq},
                   {"ess_lower_seq", r.extremes.ess_lower_seq}};
  if (r.has_iso) {
    j["alpha"] = to_json(r.alpha);
    j["alpha_d"] = to_json(r.alpha_d);
    j["alpha_comb"] = to_json(r.alpha_comb);
  }
  auto finite_or_null = [](double x) {
    nlohmann::json v;
    if (std::isfinite(x)) v = x;
    return v;  // null when infinite
  };
  j["curvature"] = {{"K_G", finite_or_null(r.curvature.K_G)},
                    {"K_comb_V", finite_or_null(r.curvature.K_comb_V)},
                    {"K_d_V", finite_or_null(r.curvature.K_d_V)},
                    {"K_ess_fit", r.curvature_limits.K_ess_fit},
                    {"K_comb_ess_fit", r.curvature_limits.K_comb_ess_fit},
                    {"K_diverging", r.curvature_limits.K_diverging},
                    {"K_comb_diverging", r.curvature_limits.K_comb_diverging}};
  if (r.has_volume) {
    j["volume"] = {{"mu_fit", r.mu.mu_fit},
                   {"mu_d_fit", r.mu_d.mu_fit},
                   {"mu_star_fit", r.mu_star.fitted ? r.mu_star.mu_star_fit : r.mu.mu_fit},
                   {"valid_radius", r.mu.valid_radius},
                   {"radii", r.mu.radii},
                   {"log_vol_over_r", r.mu.log_vol_over_r},
                   {"brooks_applicable", r.brooks.applicable},
                   {"brooks_note", r.brooks.gate_note}};
  }
  if (r.has_quantum) j["quantum"] = to_json(r.quantum);
  if (r.has_discrete) j["discrete"] = to_json(r.discrete);
  j["h_target"] = r.h_target;
  j["solver_tol"] = r.solver_tol;
  auto bounds = [](const std::vector<BoundEntry>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : list)
      arr.push_back({{"name", b.name}, {"source", b.source}, {"scope", b.scope},
                     {"value", b.value}, {"applicable", b.applicable}, {"note", b.note}});
    return arr;
  };
  j["lower_bounds"] = bounds(r.lower_bounds);
  j["upper_bounds"] = bounds(r.upper_bounds);
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"pass", v.pass},
                        {"detail", v.detail}});
  j["verdicts"] = verdicts;
  return j;
}

// Rehydrate the fields verify_orderings needs from a stored report, so that
// verdicts are reproducible from the file alone.
inline BoundsReport report_core_from_json(const nlohmann::json& j) {
  BoundsReport r;
  r.label = j.value("label", "");
  r.vertex_count = j.at("graph").at("vertices").get<int>();
  r.edge_count = j.at("graph").at("edges").get<int>();
  r.mes = j.at("graph").at("mes").get<double>();
  r.equilateral = j.at("graph").at("equilateral").get<bool>();
  r.h_target = j.value("h_target", 0.0);
  r.solver_tol = j.value("solver_tol", 1e-8);
  r.extremes.ell_star_upper = j.at("extremes").at("ell_star_upper").get<double>();
  r.extremes.ell_star_lower = j.at("extremes").at("ell_star_lower").get<double>();
  if (j.contains("quantum")) {
    r.has_quantum = true;
    r.quantum.lambda0 = j.at("quantum").at("lambda0").get<double>();
  }
  if (j.contains("discrete")) {
    r.has_discrete = true;
    r.discrete.lambda0 = j.at("discrete").at("lambda0").get<double>();
  }
  auto read_bounds = [](const nlohmann::json& arr, std::vector<BoundEntry>& list) {
    for (const auto& jb : arr)
      list.push_back({jb.at("name").get<std::string>(), jb.at("source").get<std::string>(),
                      jb.at("scope").get<std::string>(), jb.at("value").get<double>(),
                      jb.at("applicable").get<bool>(), jb.value("note", "")});
  };
  read_bounds(j.at("lower_bounds"), r.lower_bounds);
  read_bounds(j.at("upper_bounds"), r.upper_bounds);
  // iso cross-checks are re-reported verbatim (they need the graph itself)
  if (j.contains("verdicts"))
    for (const auto& jv : j.at("verdicts")) {
      std::string name = jv.at("name").get<std::string>();
      if (name.rfind("iso/", 0) == 0)
        r.iso_checks.push_back({name.substr(4), jv.at("lhs").get<double>(),
                                jv.at("rhs").get<double>(), jv.at("pass").get<bool>(),
                                jv.value("detail", "")});
    }
  // curvature/volume sequences are not rehydrated; the essential verdict
  // degrades to informational without them, which is the conservative path
  return r;
}

}  // namespace specgraph
