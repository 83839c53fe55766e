// Metric balls, growth-rate estimates, sampled uniform volume ratios, and
// the gated volume-growth ceilings.
#include <catch2/catch.hpp>

#include <cmath>

#include "specgraph/generators.hpp"
#include "specgraph/volume.hpp"
#include "test_support.hpp"

#include <random>

using namespace specgraph;

TEST_CASE("exact ball volumes", "[volume]") {
  SECTION("single edge, center at the midpoint") {
    std::vector<Vertex> vs{{0, 0, 1, VertexCondition::neumann, false},
                           {1, 1, 1, VertexCondition::neumann, false}};
    std::vector<Edge> es{{0, 0, 1, 1.0}};
    auto g = MetricGraph::create(std::move(vs), std::move(es));
    auto b = ball_volume(g, GraphPoint::on_edge(0, 0.5), 0.3);
    CHECK(b.volume == Approx(0.6));
    CHECK_FALSE(b.censored);
  }
  SECTION("tree balls at integer radii match the geometric sum") {
    auto g = bethe(3, 6);
    BallVolumeEngine engine(g, GraphPoint::at_vertex(0));
    for (int n = 1; n <= 5; ++n)
      CHECK(engine.volume(n) == Approx(3.0 * (std::pow(2.0, n) - 1.0)));
    CHECK(engine.volume(2.0) == Approx(9.0));
    CHECK(engine.valid_radius() == Approx(6.0));
    CHECK(ball_volume(g, GraphPoint::at_vertex(0), 6.5).censored);
  }
  SECTION("volumes are monotone and bounded by the total length") {
    auto g = antitree(1, 1.0, 6);
    BallVolumeEngine engine(g, GraphPoint::at_vertex(0));
    double prev = 0.0;
    for (double r = 0.1; r < 5.0; r += 0.173) {
      double v = engine.volume(r);
      CHECK(v >= prev - 1e-14);
      CHECK(v <= g.total_length() + 1e-12);
      prev = v;
    }
  }
  SECTION("negative radius is rejected, zero is empty") {
    auto g = bethe(3, 2);
    CHECK_THROWS_AS(ball_volume(g, GraphPoint::at_vertex(0), -1.0), validation_error);
    CHECK(ball_volume(g, GraphPoint::at_vertex(0), 0.0).volume == 0.0);
  }
}

TEST_CASE("balls wrap around cycles", "[volume]") {
  // 4-cycle with one long edge: coverage of the long edge re-enters through
  // both endpoints
  std::vector<Vertex> vs{{0, 0, 2, VertexCondition::kirchhoff, false},
                         {1, 1, 2, VertexCondition::kirchhoff, false},
                         {2, 1, 2, VertexCondition::kirchhoff, false},
                         {3, 2, 2, VertexCondition::kirchhoff, false}};
  std::vector<Edge> es{{0, 0, 1, 1.0}, {1, 0, 2, 1.0}, {2, 1, 3, 1.0}, {3, 2, 3, 10.0}};
  GraphOptions opts;
  opts.allow_degree_two = true;
  auto g = MetricGraph::create(std::move(vs), std::move(es), 0, opts);
  BallVolumeEngine engine(g, GraphPoint::on_edge(3, 5.0));
  CHECK(engine.volume(5.5) == Approx(11.0));  // 10 on the long edge + 0.5 + 0.5
  CHECK(engine.volume(6.0) == Approx(12.0));  // everything within reach
  CHECK(engine.volume(7.0) == Approx(13.0));  // the whole graph
  CHECK(engine.volume(2.0) == Approx(4.0));   // symmetric interval on the edge
}

TEST_CASE("exact volumes agree with a discretized oracle", "[volume][property]") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> radius(0.1, 4.0);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = testsupport::random_graph(rng, 5 + static_cast<int>(rng() % 8), 0.35);
    GraphPoint center;
    if (rng() % 2 == 0) {
      center = GraphPoint::at_vertex(static_cast<int>(rng() % static_cast<unsigned>(
          g.vertex_count())));
    } else {
      int eid = static_cast<int>(rng() % static_cast<unsigned>(g.edge_count()));
      center = GraphPoint::on_edge(eid, 0.5 * g.edge(eid).length);
    }
    BallVolumeEngine engine(g, center);
    double r = radius(rng);
    double exact = engine.volume(r);
    // midpoint-rule oracle over a fine subdivision of every edge
    const int k = 2000;
    double approx = 0.0;
    const auto& dist = engine.distances();
    for (const auto& e : g.edges()) {
      double step = e.length / k;
      for (int i = 0; i < k; ++i) {
        double x = (i + 0.5) * step;
        double d = std::min(dist[static_cast<size_t>(e.source)] + x,
                            dist[static_cast<size_t>(e.target)] + (e.length - x));
        if (e.id == center.edge_id) d = std::min(d, std::abs(x - center.offset));
        if (d < r) approx += step;
      }
    }
    CHECK(exact == Approx(approx).margin(2.0 * g.total_length() / k));
  }
}

TEST_CASE("generator closed forms at integer radii", "[volume]") {
  // tree: beta ((beta-1)^n - 1) / (beta - 2)
  for (int beta : {3, 4}) {
    auto g = bethe(beta, 5);
    BallVolumeEngine engine(g, GraphPoint::at_vertex(0));
    for (int n = 1; n <= 4; ++n) {
      double expect = beta * (std::pow(beta - 1.0, n) - 1.0) / (beta - 2.0);
      CHECK(engine.volume(static_cast<double>(n)) == Approx(expect));
    }
  }
}

TEST_CASE("ball growth is Lipschitz in the radius", "[volume][property]") {
  std::mt19937 rng(64);
  std::uniform_real_distribution<double> radius(0.0, 5.0);
  std::uniform_real_distribution<double> delta(0.0, 0.7);
  auto g = testsupport::random_graph(rng, 10, 0.3);
  BallVolumeEngine engine(g, GraphPoint::at_vertex(0));
  for (int trial = 0; trial < 200; ++trial) {
    double r = radius(rng), d = delta(rng);
    double grow = engine.volume(r + d) - engine.volume(r);
    CHECK(grow >= -1e-12);
    CHECK(grow <= 2.0 * d * g.edge_count() + 1e-12);  // each edge gains <= 2 delta
  }
}

TEST_CASE("weight balls sandwich metric balls", "[volume][property]") {
  auto g = bethe(3, 6);
  BallVolumeEngine engine(g, GraphPoint::at_vertex(0));
  double ell_upper = 1.0;
  for (double r : {1.0, 2.0, 3.5, 4.5}) {
    double mes_r = engine.volume(r);
    double m_r = engine.vertex_weight_ball(r);
    CHECK(m_r >= mes_r - 1e-12);
    CHECK(m_r <= 2.0 * engine.volume(r + ell_upper) + 1e-12);
  }
}

TEST_CASE("growth rate of the exponential antitree", "[volume][slow]") {
  // spheres 2^n, equilateral: mes(B_n(o)) = 2 (4^n - 1) / 3
  auto g = antitree_custom(
      12, [](int n) { return int64_t{1} << n; }, [](int) { return 1.0; });
  BallVolumeEngine engine(g, GraphPoint::at_vertex(0));
  CHECK(engine.volume(2.0) == Approx(10.0));
  for (int n = 2; n <= 11; ++n)
    CHECK(engine.volume(static_cast<double>(n)) ==
          Approx(2.0 * (std::pow(4.0, n) - 1.0) / 3.0));

  auto mu = mu_estimate(g, GraphPoint::at_vertex(0), 48);
  CHECK(mu.valid_radius == Approx(12.0));
  CHECK(mu.mu_fit == Approx(2.0 * std::log(2.0)).epsilon(0.05));

  auto mud = mu_d_estimate(g, 0, 48);
  CHECK(mud.mu_fit == Approx(mu.mu_fit).epsilon(0.10));

  // sampled uniform ratio respects the closed-form lower envelope; sample
  // one vertex per mid sphere so the probe ball stays inside the truncation
  std::vector<GraphPoint> centers;
  for (const auto& v : g.vertices())
    if ((v.sphere == 0 || v.sphere == 3 || v.sphere == 6) &&
        centers.size() < 3 && (centers.empty() || centers.back().vertex_id != v.id) &&
        (centers.empty() ||
         g.vertex(centers.back().vertex_id).sphere != v.sphere))
      centers.push_back(GraphPoint::at_vertex(v.id));
  auto star = mu_star_estimate(g, SampleRule::explicit_rule(centers), 3.0);
  double envelope = (std::pow(2.0, 2 * 3 + 1) - 2.0) / (std::pow(2.0, 4) - 1.0);
  CHECK(star.min_ratio >= envelope - 1e-9);
}

TEST_CASE("growth rate of flat graphs", "[volume]") {
  SECTION("integer lattice: linear volume, vanishing rate") {
    auto g = lattice(1, 40);
    auto mu = mu_estimate(g, GraphPoint::at_vertex(0), 48);
    CHECK(mu.mu_fit < 0.15);
    auto mud = mu_d_estimate(g, 0, 48);
    CHECK(mud.mu_fit < 0.2);
  }
  SECTION("insufficient radius range") {
    auto g = bethe(3, 2);
    CHECK_THROWS_AS(mu_estimate(g, GraphPoint::at_vertex(0), 3), numeric_error);
  }
}

TEST_CASE("sparse tree: uniform volume ratio collapses", "[volume]") {
  auto g = sparse_tree(19);
  SECTION("pendant bundles make vol_*(3) hug 1") {
    auto est = mu_star_estimate(g, SampleRule::top_degree_rule(32), 3.0);
    REQUIRE(est.argmin.vertex_id == 16);  // the 2^16 bundle
    CHECK(est.min_ratio == Approx(65546.0 / 65538.0));
    CHECK(est.min_ratio <= 1.02);
    // v9 carries the 512 bundle
    bool found_v9 = false;
    for (const auto& s : est.samples)
      if (s.point.vertex_id == 9) {
        CHECK(s.ratio == Approx(522.0 / 514.0));
        found_v9 = true;
      }
    CHECK(found_v9);
  }
  SECTION("while the root growth rate stays near log 2") {
    auto b17 = ball_volume(g, GraphPoint::at_vertex(0), 17.0);
    CHECK_FALSE(b17.censored);
    double rate17 = std::log(b17.volume) / 17.0;
    CHECK(rate17 == Approx(std::log(2.0)).epsilon(0.10));
    CHECK(b17.volume == Approx(66095.0));
  }
  SECTION("volume-growth ceilings are gated on the completeness trend") {
    auto diag = selfadjointness_diagnostics(g);
    // the uncensored window around the deep bundle is r <= 3 at this depth
    auto est = mu_star_growth(g, SampleRule::top_degree_rule(16), {2.0, 2.5, 3.0});
    REQUIRE(est.fitted);
    CHECK(est.mu_star_fit < 0.01);
    auto b = brooks_upper(0.66, est.mu_star_fit, diag);
    CHECK(b.applicable);
    CHECK(b.mu_star_sq_over_4 < b.mu_sq_over_4);  // bundles beat the root rate
    auto no_gate = brooks_upper(0.66, est.mu_star_fit, SelfAdjointnessDiagnostics{});
    CHECK_FALSE(no_gate.applicable);
  }
}

TEST_CASE("homogeneous graphs sample a constant ratio", "[volume]") {
  auto g = bethe(3, 8);
  auto est = mu_star_estimate(g, SampleRule::vertices(), 2.0, 4096);
  double lo = est.min_ratio, hi = 0.0;
  for (const auto& s : est.samples) hi = std::max(hi, s.ratio);
  CHECK(hi == Approx(lo).epsilon(1e-12));  // vertex-transitive up to censoring
}

TEST_CASE("mu_star sampling guards", "[volume]") {
  auto g = bethe(3, 2);
  CHECK_THROWS_AS(mu_star_estimate(g, SampleRule::vertices(), 0.5), validation_error);
  // the root ball of radius 2.5 already leaves the depth-2 truncation
  CHECK_THROWS_AS(mu_star_estimate(g, SampleRule::vertices(), 2.5), numeric_error);
  auto g8 = bethe(3, 8);
  auto est = mu_star_estimate(g8, SampleRule::all(), 2.0, 64, 7);
  CHECK(est.partial_sample);  // pool exceeds the budget
  CHECK(est.samples.size() <= 64);
}
