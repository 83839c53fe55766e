// Report assembly: bound collection, ordering verdicts, JSON determinism and
// verdict reproducibility from the stored file alone.
#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "specgraph/generators.hpp"
#include "specgraph/report.hpp"

using namespace specgraph;

namespace {

const BoundEntry* find_bound(const std::vector<BoundEntry>& list, const std::string& source) {
  for (const auto& b : list)
    if (b.source == source) return &b;
  return nullptr;
}

ReportConfig quick_config() {
  ReportConfig cfg;
  cfg.cap = 6;
  cfg.k_max = 2;
  cfg.tol = 1e-8;
  return cfg;
}

}  // namespace

TEST_CASE("tree report: certified floor under the computed value", "[report]") {
  auto g = bethe(3, 6);
  auto rep = build_report(g, quick_config());
  const auto* floor = find_bound(rep.lower_bounds, "cheeger_via_combinatorial_curvature");
  REQUIRE(floor != nullptr);
  CHECK(floor->applicable);
  CHECK(floor->value == Approx(1.0 / 16.0));  // (1/2)^2 / 4
  REQUIRE(rep.has_quantum);
  CHECK(rep.quantum.lambda0 >= floor->value);
  CHECK(rep.quantum.lambda0 <= std::numbers::pi * std::numbers::pi);
  CHECK(rep.quantum.lambda0 <= 6.0 * rep.discrete.lambda0 + 1e-8);
  CHECK(rep.equilateral);
  SECTION("every verdict passes") {
    for (const auto& v : rep.verdicts) {
      INFO(v.name << " lhs=" << v.lhs << " rhs=" << v.rhs << " " << v.detail);
      CHECK(v.pass);
    }
    CHECK(all_verdicts_pass(rep));
  }
  SECTION("reports are deterministic") {
    auto again = build_report(g, quick_config());
    CHECK(to_json(rep).dump() == to_json(again).dump());
    auto threaded_cfg = quick_config();
    threaded_cfg.threads = 2;
    auto threaded = build_report(g, threaded_cfg);
    CHECK(to_json(rep).dump() == to_json(threaded).dump());
  }
  SECTION("verdicts are reproducible from the stored JSON alone") {
    auto j = to_json(rep);
    auto core = report_core_from_json(j);
    auto replay = verify_orderings(core);
    for (const auto& v : replay) {
      INFO(v.name);
      CHECK(v.pass);
    }
  }
  SECTION("tampering flips a verdict") {
    auto j = to_json(rep);
    j["quantum"]["lambda0"] = 1e-9;  // below the certified floor
    auto core = report_core_from_json(j);
    bool any_fail = false;
    for (const auto& v : verify_orderings(core)) any_fail |= !v.pass;
    CHECK(any_fail);
  }
}

TEST_CASE("antitree report carries the growth ceilings", "[report]") {
  auto g = antitree(1, 1.0, 8);
  // complete bipartite joins make the edge enumeration blow up quickly;
  // the structured families carry the witnesses here
  auto cfg = quick_config();
  cfg.cap = 4;
  auto rep = build_report(g, cfg);
  const auto* floor = find_bound(rep.lower_bounds, "cheeger_via_curvature");
  REQUIRE(floor != nullptr);
  CHECK(floor->applicable);
  CHECK(floor->value == Approx(0.25));  // K_G = 1
  REQUIRE(rep.has_volume);
  const auto* brooks = find_bound(rep.upper_bounds, "brooks_volume_growth");
  REQUIRE(brooks != nullptr);
  CHECK(brooks->applicable);
  CHECK(brooks->scope == "ambient");
  CHECK(rep.quantum.lambda0 >= 0.25 - 1e-9);
  for (const auto& v : rep.verdicts) {
    INFO(v.name << " lhs=" << v.lhs << " rhs=" << v.rhs);
    CHECK(v.pass);
  }
}

TEST_CASE("finite-volume truncation floor", "[report]") {
  auto g = antitree(1, 4.0, 7);
  auto cfg = quick_config();
  cfg.cap = 4;
  // edge lengths span four decades here; the ell_*/20 default mesh would
  // resolve the unit root edges 48000-fold for no accuracy gain
  cfg.h_target = 1e-3;
  auto rep = build_report(g, cfg);
  const auto* floor = find_bound(rep.lower_bounds, "cheeger_via_truncation_volume");
  REQUIRE(floor != nullptr);
  CHECK(floor->value == Approx(0.25 / (g.total_length() * g.total_length())));
  CHECK(rep.quantum.lambda0 >= floor->value);
  for (const auto& v : rep.verdicts) CHECK(v.pass);
}

TEST_CASE("flat lattice report", "[report]") {
  auto g = lattice(1, 12);
  auto cfg = quick_config();
  cfg.k_max = 2;
  auto rep = build_report(g, cfg);
  // no positive ambient floor exists for the line
  for (const auto& b : rep.lower_bounds)
    if (b.applicable && b.scope == "ambient") CHECK(b.value == Approx(0.0).margin(1e-12));
  for (const auto& v : rep.verdicts) {
    INFO(v.name << " lhs=" << v.lhs << " rhs=" << v.rhs);
    CHECK(v.pass);
  }
  // interval value (pi / 2N)^2 at N = 12
  CHECK(rep.quantum.lambda0 ==
        Approx(std::pow(std::numbers::pi / 24.0, 2)).epsilon(0.02));
}

TEST_CASE("Neumann loose ends sharpen the edge ceiling", "[report]") {
  auto g = sparse_tree(6);
  ReportConfig cfg = quick_config();
  cfg.with_iso = false;  // pendant bundles need no enumeration here
  auto rep = build_report(g, cfg);
  const auto* plain = find_bound(rep.upper_bounds, "longest_edge");
  const auto* refined = find_bound(rep.upper_bounds, "longest_edge_refined");
  REQUIRE(plain != nullptr);
  REQUIRE(refined != nullptr);
  CHECK(plain->value == Approx(std::numbers::pi * std::numbers::pi));
  CHECK(refined->value == Approx(std::numbers::pi * std::numbers::pi / 4.0));
  CHECK(rep.quantum.lambda0 <= refined->value);
  for (const auto& v : rep.verdicts) {
    INFO(v.name << " lhs=" << v.lhs << " rhs=" << v.rhs);
    CHECK(v.pass);
  }
}

TEST_CASE("spectra-free reports stay consistent", "[report]") {
  auto g = sparse_tree(8);
  ReportConfig cfg = quick_config();
  cfg.with_spectra = false;
  cfg.with_iso = false;
  auto rep = build_report(g, cfg);
  CHECK_FALSE(rep.has_quantum);
  CHECK(rep.has_volume);
  for (const auto& v : rep.verdicts) CHECK(v.pass);
  auto j = to_json(rep);
  CHECK(j.contains("volume"));
  CHECK_FALSE(j.contains("quantum"));
}
