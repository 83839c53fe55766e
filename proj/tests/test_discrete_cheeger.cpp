// Weighted graphs (V, m, b) with an intrinsic edge weight d: the intrinsic
// test, the weighted isoperimetric constant, discrete co-area identities and
// the Cheeger bound lambda0 >= alpha^2/2 under a designated Dirichlet set.
#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "specgraph/generators.hpp"
#include "specgraph/isoperimetry.hpp"
#include "specgraph/weighted.hpp"
#include "test_support.hpp"

using namespace specgraph;


TEST_CASE("intrinsic weight test", "[discrete_cheeger]") {
  SECTION("metric-induced weights have zero slack everywhere") {
    auto w = weighted_from_metric(bethe(3, 3));
    auto check = is_intrinsic(w);
    CHECK(check.intrinsic);
    for (double s : check.slack) CHECK(s == Approx(0.0).margin(1e-12));
  }
  SECTION("doubling d breaks the inequality at every vertex") {
    auto g = bethe(3, 3);
    std::vector<WVertex> vs;
    auto m = vertex_weights(g);
    for (const auto& v : g.vertices())
      vs.push_back({v.id, m[static_cast<size_t>(v.id)],
                    v.condition == VertexCondition::dirichlet});
    std::vector<WEdge> es;
    for (const auto& e : g.edges())
      es.push_back({e.id, e.source, e.target, 1.0 / e.length, 2.0 * e.length, true});
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    auto check = is_intrinsic(w);
    CHECK_FALSE(check.intrinsic);
    for (const auto& v : w.vertices())
      CHECK(check.slack[static_cast<size_t>(v.id)] < 0.0);
  }
  SECTION("inflating m restores slack") {
    auto g = bethe(3, 2);
    std::vector<WVertex> vs;
    auto m = vertex_weights(g);
    for (const auto& v : g.vertices())
      vs.push_back({v.id, m[static_cast<size_t>(v.id)] + 1.0,
                    v.condition == VertexCondition::dirichlet});
    std::vector<WEdge> es;
    for (const auto& e : g.edges())
      es.push_back({e.id, e.source, e.target, 1.0 / e.length, e.length, true});
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    auto check = is_intrinsic(w);
    CHECK(check.intrinsic);
    for (double s : check.slack) CHECK(s == Approx(1.0));
  }
  SECTION("missing d is an error") {
    std::vector<WVertex> vs{{0, 1.0, false}, {1, 1.0, false}};
    std::vector<WEdge> es{{0, 0, 1, 1.0, 0.0, false}};
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    CHECK_THROWS_AS(is_intrinsic(w), validation_error);
    CHECK_THROWS_AS(alpha_weighted(w, 2), validation_error);
  }
}

TEST_CASE("weighted isoperimetric estimate", "[discrete_cheeger]") {
  SECTION("metric-induced weights reduce to edge counting") {
    auto g = bethe(3, 3);
    auto w = weighted_from_metric(g);
    auto rep = alpha_weighted(w, 1);
    CHECK(rep.value_upper == Approx(1.0));  // every singleton gives deg/m = 1
    auto full = alpha_weighted(w, 10);      // ten eligible interior vertices
    CHECK(full.value_upper == Approx(12.0 / 30.0));  // the whole interior ball
    CHECK(full.exhaustive_within_cap);
  }
  SECTION("two vertices, one edge, unit weights, Dirichlet anchor") {
    std::vector<WVertex> vs{{0, 1.0, true}, {1, 1.0, false}};
    std::vector<WEdge> es{{0, 0, 1, 1.0, 1.0, true}};
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    auto rep = alpha_weighted(w, 2);
    CHECK(rep.value_upper == Approx(1.0));
    CHECK(rep.witness_vertex_ids == std::vector<int>{1});
  }
  SECTION("matches an independent full-subset scan on random graphs") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
      auto w = testsupport::random_intrinsic_graph(rng, 10, true);
      auto rep = alpha_weighted(w, 10);
      // independent oracle: iterate every subset of the free vertices
      std::vector<int> pool;
      for (const auto& v : w.vertices())
        if (!v.dirichlet) pool.push_back(v.id);
      double best = std::numeric_limits<double>::infinity();
      for (uint32_t mask = 1; mask < (1u << pool.size()); ++mask) {
        std::vector<char> in(static_cast<size_t>(w.vertex_count()), 0);
        double msum = 0.0;
        for (size_t i = 0; i < pool.size(); ++i)
          if (mask & (1u << i)) {
            in[static_cast<size_t>(pool[i])] = 1;
            msum += w.vertex(pool[i]).m;
          }
        double db = 0.0;
        for (const auto& e : w.edges())
          if (in[static_cast<size_t>(e.source)] != in[static_cast<size_t>(e.target)])
            db += e.d * e.b;
        best = std::min(best, db / msum);
      }
      CHECK(rep.value_upper == Approx(best).epsilon(1e-12));
    }
  }
  SECTION("agrees with the discrete constant bit for bit on metric graphs") {
    // connected-growth path (more than 20 eligible vertices)
    auto g = bethe(3, 4);
    auto w = weighted_from_metric(g);
    IsoOptions opts;
    opts.structured_families = false;
    auto via_metric = alpha_d_exhaustive(g, 6, opts);
    auto via_weighted = alpha_weighted(w, 6);
    CHECK(via_weighted.enumerated_min == via_metric.enumerated_min);
    CHECK(via_weighted.enumerated_witness == via_metric.enumerated_witness);
    CHECK(via_weighted.enumerated_count == via_metric.enumerated_count);
  }
  SECTION("removal sets emulate the essential variant") {
    auto g = bethe(3, 3);
    auto w = weighted_from_metric(g);
    std::vector<int> removal{0};  // drop the root
    auto rep = alpha_weighted(w, 9, removal);
    for (int v : rep.witness_vertex_ids) CHECK(v != 0);
    auto base = alpha_weighted(w, 10);
    CHECK(rep.value_upper >= base.value_upper - 1e-12);
  }
}

TEST_CASE("discrete co-area identities", "[discrete_cheeger]") {
  SECTION("indicator function") {
    std::vector<WVertex> vs{{0, 0.7, false}, {1, 1.3, false}};
    std::vector<WEdge> es{{0, 0, 1, 2.0, 0.5, true}};
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    std::vector<double> f{0.0, 2.5};
    auto c = coarea_discrete_check(w, f);
    CHECK(c.lhs1 == Approx(2.5 * 1.3));
    CHECK(c.rhs1 == Approx(2.5 * 1.3));
    CHECK(c.lhs2 == Approx(0.5 * 2.5));
    CHECK(c.rhs2 == Approx(0.5 * 2.5));
  }
  SECTION("three-vertex path with values 0, 2, 1 and unit d") {
    std::vector<WVertex> vs{{0, 1.0, false}, {1, 1.0, false}, {2, 1.0, false}};
    std::vector<WEdge> es{{0, 0, 1, 1.0, 1.0, true}, {1, 1, 2, 1.0, 1.0, true}};
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    std::vector<double> f{0.0, 2.0, 1.0};
    auto c = coarea_discrete_check(w, f);
    CHECK(c.lhs2 == Approx(3.0));
    CHECK(c.rhs2 == Approx(3.0));  // band (0,1]: two cuts; band (1,2]: one
    CHECK(c.lhs1 == Approx(3.0));
    CHECK(c.rhs1 == Approx(3.0));
  }
  SECTION("1000 random trials stay exact") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> val(0.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      auto w = testsupport::random_intrinsic_graph(rng, 4 + static_cast<int>(rng() % 9), false);
      std::vector<double> f(static_cast<size_t>(w.vertex_count()), 0.0);
      for (auto& x : f)
        if (rng() % 4 != 0) x = val(rng);  // keep some zeros in the support
      auto c = coarea_discrete_check(w, f);
      if (c.lhs1 > 0.0) worst = std::max(worst, std::abs(c.lhs1 - c.rhs1) / c.lhs1);
      if (c.lhs2 > 0.0) worst = std::max(worst, std::abs(c.lhs2 - c.rhs2) / c.lhs2);
    }
    CHECK(worst < 1e-12);
  }
  SECTION("negative values are rejected") {
    std::vector<WVertex> vs{{0, 1.0, false}, {1, 1.0, false}};
    std::vector<WEdge> es{{0, 0, 1, 1.0, 1.0, true}};
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    std::vector<double> f{-1.0, 0.0};
    CHECK_THROWS_AS(coarea_discrete_check(w, f), validation_error);
  }
}

TEST_CASE("discrete Cheeger lower bound", "[discrete_cheeger]") {
  SECTION("non-intrinsic weights are refused") {
    std::vector<WVertex> vs{{0, 0.5, true}, {1, 0.5, false}};
    std::vector<WEdge> es{{0, 0, 1, 1.0, 1.0, true}};
    auto w = WeightedGraph::create(std::move(vs), std::move(es));
    CHECK_THROWS_WITH(cheeger_lower_discrete(w), Catch::Contains("intrinsic"));
  }
  SECTION("metric-induced tree truncation") {
    auto g = bethe(3, 3);  // frontier leaves become the Dirichlet set
    auto w = weighted_from_metric(g);
    double bound = cheeger_lower_discrete(w);
    double lambda = weighted_lambda0_dense(w);
    CHECK(bound <= lambda + 1e-12);
    // alpha over the full interior is 12/30, so the bound is (2/5)^2 / 2
    CHECK(bound == Approx(0.5 * 0.16));
    // cross-check the eigenvalue against the radial-pencil oracle
    double oracle =
        testsupport::tridiagonal_lambda0(testsupport::bethe_radial_pencil(3, 3));
    CHECK(lambda == Approx(oracle).margin(1e-9));
  }
  SECTION("holds on random intrinsic graphs with a Dirichlet anchor") {
    std::mt19937 rng(20250808);
    for (int trial = 0; trial < 200; ++trial) {
      auto w = testsupport::random_intrinsic_graph(rng, 4 + static_cast<int>(rng() % 9), true);
      double lambda = weighted_lambda0_dense(w);
      double bound = cheeger_lower_discrete(w);
      CHECK(lambda >= bound - 1e-11);
    }
  }
}

TEST_CASE("weighted graph interchange and validation", "[discrete_cheeger]") {
  auto tmp = std::filesystem::temp_directory_path();
  SECTION("round trip") {
    std::mt19937 rng(5);
    auto w = testsupport::random_intrinsic_graph(rng, 8, true);
    auto path = (tmp / "roundtrip_wgraph.json").string();
    save_wgraph(w, path);
    auto h = load_wgraph(path);
    REQUIRE(h.vertex_count() == w.vertex_count());
    for (const auto& v : w.vertices()) {
      CHECK(h.vertex(v.id).m == v.m);
      CHECK(h.vertex(v.id).dirichlet == v.dirichlet);
    }
    for (const auto& e : w.edges()) {
      CHECK(h.edge(e.id).b == e.b);
      CHECK(h.edge(e.id).d == e.d);
    }
    std::filesystem::remove(path);
  }
  SECTION("validation failures") {
    std::vector<WVertex> bad_m{{0, 0.0, false}, {1, 1.0, false}};
    std::vector<WEdge> one{{0, 0, 1, 1.0, 1.0, true}};
    CHECK_THROWS_AS(WeightedGraph::create(bad_m, one), validation_error);
    std::vector<WVertex> two{{0, 1.0, false}, {1, 1.0, false}};
    std::vector<WEdge> dup{{0, 0, 1, 1.0, 1.0, true}, {1, 1, 0, 1.0, 1.0, true}};
    CHECK_THROWS_AS(WeightedGraph::create(two, dup), validation_error);
    std::vector<WVertex> four{{0, 1.0, false}, {1, 1.0, false}, {2, 1.0, false},
                              {3, 1.0, false}};
    std::vector<WEdge> split{{0, 0, 1, 1.0, 1.0, true}, {1, 2, 3, 1.0, 1.0, true}};
    CHECK_THROWS_WITH(WeightedGraph::create(four, split), Catch::Contains("connected"));
  }
}
