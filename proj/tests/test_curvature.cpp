// Per-vertex curvature, the infima feeding the isoperimetric bounds, and the
// sphere-indexed essential sequences with tail extrapolation.
#include <catch2/catch.hpp>

#include <cmath>
#include <limits>

#include "specgraph/curvature.hpp"
#include "specgraph/generators.hpp"
#include "specgraph/isoperimetry.hpp"

using namespace specgraph;

TEST_CASE("curvature of rooted trees", "[curvature]") {
  auto g = bethe(3, 5);
  auto p = curvature_profile(g);
  SECTION("root and interior values") {
    CHECK(p.K[0] == Approx(1.0));       // 3 outgoing, none incoming, unit lengths
    CHECK(p.K_comb[0] == Approx(1.0));
    for (const auto& v : g.vertices()) {
      if (v.frontier || v.id == 0) continue;
      CHECK(p.K[static_cast<size_t>(v.id)] == Approx(0.5));  // (2-1)/2
      CHECK(p.K_comb[static_cast<size_t>(v.id)] == Approx(0.5));
    }
    CHECK(p.K_G == Approx(0.5));
    CHECK(p.K_comb_V == Approx(0.5));
  }
  SECTION("equilateral identity 2/K_comb = 1 + 1/K_d") {
    for (const auto& v : g.vertices()) {
      if (v.frontier) continue;
      double kc = p.K_comb[static_cast<size_t>(v.id)];
      double kd = p.K_d[static_cast<size_t>(v.id)];
      if (kc > 0.0)
        CHECK(2.0 / kc == Approx(1.0 + 1.0 / kd).epsilon(1e-12));
    }
  }
  SECTION("essential sequence of a homogeneous tree is constant") {
    auto lim = essential_curvature_limits(p);
    for (const auto& [k, v] : p.K_ess_seq)
      if (k >= 1) CHECK(v == Approx(0.5));
    CHECK(lim.K_ess_fit == Approx(0.5).margin(1e-9));
    CHECK_FALSE(lim.K_diverging);
  }
}

TEST_CASE("curvature of antitrees", "[curvature]") {
  SECTION("combinatorial sphere values K_{n+1} = 1 - s_n / s_{n+2}") {
    auto g = antitree(1, 1.0, 6);
    auto p = curvature_profile(g);
    for (const auto& v : g.vertices()) {
      if (v.frontier) continue;
      double expect;
      if (v.sphere == 0) expect = 1.0;
      else expect = 1.0 - static_cast<double>(v.sphere) / (v.sphere + 2.0);
      CHECK(p.K_comb[static_cast<size_t>(v.id)] == Approx(expect));
    }
    CHECK(p.K_comb[1] == Approx(2.0 / 3.0));  // sphere 1
  }
  SECTION("metric curvature divides by the outgoing length") {
    auto g = antitree(1, 1.0, 6);
    auto p = curvature_profile(g);
    for (const auto& v : g.vertices()) {
      if (v.frontier) continue;
      double kc = p.K_comb[static_cast<size_t>(v.id)];
      CHECK(p.K[static_cast<size_t>(v.id)] == Approx(kc * (v.sphere + 1.0)));
    }
  }
  SECTION("a leaf without outgoing edges has curvature -inf") {
    auto st = sparse_tree(4);
    auto p = curvature_profile(st);
    int tip = 5;  // first pendant vertex
    REQUIRE(st.vertex(tip).ambient_degree == 1);
    CHECK(p.K[static_cast<size_t>(tip)] == -std::numeric_limits<double>::infinity());
    CHECK(p.K_comb[static_cast<size_t>(tip)] ==
          -std::numeric_limits<double>::infinity());
    CHECK(p.K_G == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("curvature scaling", "[curvature][property]") {
  auto g1 = antitree(1, 1.0, 4);
  const double c = 3.0;
  auto g2 = antitree_custom(
      4, [](int n) { return static_cast<int64_t>(n) + 1; },
      [c](int n) { return c / (n + 1); });
  auto p1 = curvature_profile(g1);
  auto p2 = curvature_profile(g2);
  for (int v = 0; v < g1.vertex_count(); ++v) {
    if (g1.vertex(v).frontier) continue;
    CHECK(p2.K[static_cast<size_t>(v)] == Approx(p1.K[static_cast<size_t>(v)] / c));
    CHECK(p2.K_comb[static_cast<size_t>(v)] == Approx(p1.K_comb[static_cast<size_t>(v)]));
  }
}

TEST_CASE("curvature-derived bounds", "[curvature]") {
  SECTION("equilateral tree: alpha floor 1/2 is exact") {
    auto g = bethe(3, 6);
    auto bounds = curvature_alpha_bounds(curvature_profile(g), length_extremes(g));
    bool found = false;
    for (const auto& b : bounds)
      if (b.name == "alpha_lower" && b.source == "combinatorial_curvature_over_ell_upper") {
        CHECK(b.applicable);
        CHECK(b.value == Approx(0.5));
        found = true;
      }
    CHECK(found);
  }
  SECTION("antitree q=1 s=1: increasing K_n/l_n pins the floor at the root") {
    auto g = antitree(1, 1.0, 8);
    auto p = curvature_profile(g);
    CHECK(p.K_G == Approx(1.0));
    auto bounds = curvature_alpha_bounds(p, length_extremes(g));
    for (const auto& b : bounds)
      if (b.name == "alpha_lower" && b.source == "curvature_infimum") {
        CHECK(b.applicable);
        CHECK(b.value == Approx(1.0));
      }
  }
  SECTION("equilateral antitree: essential combinatorial floor degenerates") {
    auto g = antitree(1, 0.0, 12);
    auto p = curvature_profile(g);
    auto lim = essential_curvature_limits(p);
    CHECK(lim.K_comb_ess_fit < 0.25);  // trending to zero
    CHECK_FALSE(lim.K_comb_diverging);
  }
  SECTION("pointwise floor on enumeration witnesses") {
    auto g = antitree(1, 1.0, 5);
    auto p = curvature_profile(g);
    auto rep = alpha_exhaustive(g, 5);
    double k_min = std::numeric_limits<double>::infinity();
    for (int v : rep.witness.vertex_ids)
      k_min = std::min(k_min, p.K[static_cast<size_t>(v)]);
    if (k_min > 0.0) CHECK(rep.witness.ratio >= k_min - 1e-12);
  }
}

TEST_CASE("essential curvature limits", "[curvature]") {
  SECTION("antitree q=1 s=1 tail behaves like 2(k+1)/(k+2)") {
    auto g = antitree(1, 1.0, 101);
    auto p = curvature_profile(g);
    // sequence value at k: inf over spheres >= k of K_n/l_n; increasing, so
    // the inf sits at n = k
    auto at = [&p](int k) {
      for (const auto& [kk, v] : p.K_ess_seq)
        if (kk == k) return v;
      return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK(at(100) == Approx(101.0 * (1.0 - 100.0 / 102.0)));
    CHECK(at(100) == Approx(1.9803921568627452));
    auto lim = essential_curvature_limits(p);
    CHECK_FALSE(lim.K_diverging);
    CHECK(lim.K_ess_fit == Approx(2.0).margin(0.02));
  }
  SECTION("antitree q=1 s=2 diverges") {
    auto g = antitree(1, 2.0, 40);
    auto lim = essential_curvature_limits(curvature_profile(g));
    CHECK(lim.K_diverging);
  }
}
