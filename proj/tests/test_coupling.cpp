#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arw/coupling.hpp"

using namespace arw;

namespace {

Config make_config(std::initializer_list<int> vals) {
  Config c(static_cast<int>(vals.size()));
  int i = 0;
  for (int v : vals) c(i++) = v;
  return c;
}

}  // namespace

TEST_CASE("meeting time on K2 is exactly 2") {
  MeetingTimeMetric mt = meeting_time_metric(complete_graph(2));
  CHECK(std::abs(mt.d(0, 1) - 2.0) <= 1e-10);
  CHECK(mt.d(0, 0) == 0.0);
  CHECK(mt.d_max == doctest::Approx(2.0));
}

TEST_CASE("meeting-time metric properties") {
  for (const Graph& g : {path_graph(4), complete_graph(3), grid_graph(2, 3)}) {
    MeetingTimeMetric mt = meeting_time_metric(g);
    for (int x = 0; x < g.k; ++x) {
      CHECK(mt.d(x, x) == 0.0);
      for (int y = 0; y < g.k; ++y) {
        CHECK(mt.d(x, y) == doctest::Approx(mt.d(y, x)).epsilon(1e-12));
        if (x != y) CHECK(mt.d(x, y) > 1.0);
        for (int z = 0; z < g.k; ++z)
          CHECK(mt.d(x, z) <= mt.d(x, y) + mt.d(y, z) + 1e-9);
      }
    }
    // single-walk contraction: W(Q(x,.), Q(y,.)) <= d(x,y) - 1
    for (int x = 0; x < g.k; ++x)
      for (int y = x + 1; y < g.k; ++y) {
        TransportPlan plan = transport_lp(uniform_walk_row(g, x), uniform_walk_row(g, y), mt.d);
        CHECK(plan.value <= mt.d(x, y) - 1.0 + 1e-9);
        CHECK(plan.value <= (1.0 - 1.0 / mt.d_max) * mt.d(x, y) + 1e-9);
        if (g.has_edge(x, y))
          CHECK(plan.value <= (1.0 - 1.0 / mt.d_max_adjacent) * mt.d(x, y) + 1e-9);
      }
  }
}

TEST_CASE("transport LP basics") {
  Eigen::MatrixXd cost(2, 2);
  cost << 0, 1, 1, 0;

  Eigen::VectorXd mu(2), nu(2);
  mu << 0.5, 0.5;
  nu << 0.5, 0.5;
  TransportPlan same = transport_lp(mu, nu, cost);
  CHECK(same.value <= 1e-12);
  CHECK(same.certified());

  // two-point transport equals TV times the cost
  mu << 1.0, 0.0;
  nu << 0.5, 0.5;
  for (double c : {1.0, 2.5}) {
    Eigen::MatrixXd cm(2, 2);
    cm << 0, c, c, 0;
    TransportPlan plan = transport_lp(mu, nu, cm);
    CHECK(plan.value == doctest::Approx(0.5 * c).epsilon(1e-12));
    CHECK(plan.dual_value == doctest::Approx(plan.value).epsilon(1e-9));
  }

  Eigen::VectorXd bad(2);
  bad << 0.5, 0.4;
  CHECK_THROWS(transport_lp(mu, bad, cost));  // marginal totals mismatch
}

TEST_CASE("transport solver survives random instances") {
  // the dual certificate inside transport_lp proves optimality of every
  // solve; this fuzz just exercises degenerate shapes, ties, and zero masses
  Xoshiro256pp rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    int a = 1 + static_cast<int>(rng.next_below(8));
    int b = 1 + static_cast<int>(rng.next_below(8));
    Eigen::VectorXd mu(a), nu(b);
    for (int i = 0; i < a; ++i) mu(i) = rng.next_below(4) == 0 ? 0.0 : rng.next_double();
    for (int j = 0; j < b; ++j) nu(j) = rng.next_below(4) == 0 ? 0.0 : rng.next_double();
    if (mu.sum() == 0) mu(0) = 0.5;
    if (nu.sum() == 0) nu(0) = 0.5;
    mu /= mu.sum();
    nu /= nu.sum();
    Eigen::MatrixXd cost(a, b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j)
        cost(i, j) = rng.next_below(3) == 0 ? 0.0 : 5.0 * rng.next_double();
    TransportPlan plan = transport_lp(mu, nu, cost);
    CHECK(plan.certified());
    CHECK(plan.value >= -1e-12);
  }
}

TEST_CASE("meeting-time contraction on random small graphs") {
  Xoshiro256pp rng(57);
  for (int trial = 0; trial < 15; ++trial) {
    int k = 2 + static_cast<int>(rng.next_below(5));  // up to 6 vertices
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < k; ++v) edges.emplace_back(v, static_cast<int>(rng.next_below(v)));
    for (std::uint64_t e = rng.next_below(4); e > 0; --e) {
      int x = static_cast<int>(rng.next_below(k));
      int y = static_cast<int>(rng.next_below(k));
      if (x != y) edges.emplace_back(x, y);
    }
    Graph g = make_graph(k, edges, /*collapse_duplicates=*/true);
    MeetingTimeMetric mt = meeting_time_metric(g);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) {
        for (int z = 0; z < k; ++z) CHECK(mt.d(x, z) <= mt.d(x, y) + mt.d(y, z) + 1e-9);
        if (x < y) {
          TransportPlan plan =
              transport_lp(uniform_walk_row(g, x), uniform_walk_row(g, y), mt.d);
          CHECK(plan.value <= mt.d(x, y) - 1.0 + 1e-9);
        }
      }
  }
}

TEST_CASE("configuration path metric") {
  Graph p4 = path_graph(4);
  ConfigurationMetric unit_adj(p4, VertexMetric::Unit, EdgePolicy::AdjacentOnly);
  // adjacent-only closure of unit lengths = BFS distance
  CHECK(unit_adj.vertex_cost(0, 3) == doctest::Approx(3.0));
  CHECK(unit_adj.vertex_cost(1, 2) == doctest::Approx(1.0));

  Config x = make_config({1, 2, 1, 1});
  Config y = make_config({1, 1, 2, 1});  // x - e1 + e2
  CHECK(unit_adj(x, y) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit_adj(x, x) == 0.0);
  // multi-unit differences: distance 2 and 3 cases
  CHECK(unit_adj(x, make_config({2, 0, 2, 1})) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(unit_adj(make_config({2, 1, 1, 1}), make_config({1, 1, 1, 2})) ==
        doctest::Approx(3.0).epsilon(1e-12));

  ConfigurationMetric unit_all(p4, VertexMetric::Unit, EdgePolicy::AllPairs);
  CHECK(unit_all(make_config({2, 1, 1, 1}), make_config({1, 1, 1, 2})) ==
        doctest::Approx(1.0).epsilon(1e-12));  // discrete metric: one mismatched unit

  Graph k3 = complete_graph(3);
  MeetingTimeMetric mt = meeting_time_metric(k3);
  ConfigurationMetric meet_all(k3, VertexMetric::MeetingTime, EdgePolicy::AllPairs);
  Config a = make_config({2, 1, 0});
  Config b = make_config({1, 2, 0});
  CHECK(meet_all(a, b) == doctest::Approx(mt.d(0, 1)).epsilon(1e-12));

  CHECK_THROWS(unit_adj(x, make_config({1, 1, 1, 2, 0})));  // size mismatch
  CHECK_THROWS(unit_adj(x, make_config({1, 1, 1, 3})));     // particle count mismatch
}

TEST_CASE("greedy decomposition upper-bounds the exact metric") {
  Graph p4 = path_graph(4);
  ConfigurationMetric rho(p4, VertexMetric::Unit, EdgePolicy::AdjacentOnly);
  StateSpace space(4, 4);
  Xoshiro256pp rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Config& a = space.state(static_cast<std::int64_t>(rng.next_below(space.size())));
    const Config& b = space.state(static_cast<std::int64_t>(rng.next_below(space.size())));
    double exact = rho(a, b);
    double greedy = rho.greedy_upper_bound(a, b);
    CHECK(greedy >= exact - 1e-12);
  }
  // on single-move pairs the two coincide
  Config x = make_config({1, 2, 1, 0});
  Config y = make_config({1, 1, 1, 1});
  CHECK(rho.greedy_upper_bound(x, y) == doctest::Approx(rho(x, y)).epsilon(1e-12));
}

TEST_CASE("no-contraction certificate on the 4-path") {
  for (int n : {5, 8}) {
    NoContractionResult r = no_contraction_check(n);
    CHECK(std::abs(r.lp_value - 1.0) <= 1e-9);
    CHECK(std::abs(r.dual_value - 1.0) <= 1e-9);
    CHECK(r.certified);
  }
  CHECK_THROWS(no_contraction_check(3));
}

TEST_CASE("contraction report across regimes") {
  // beta = 0 with the meeting-time metric contracts on all-pairs edges
  ArwKernel k3(complete_graph(3), 3, 0.0);
  StateSpace s3(3, 3);
  ContractionReport meet =
      contraction_report(k3, s3, VertexMetric::MeetingTime, EdgePolicy::AllPairs);
  CHECK(meet.max_ratio < 1.0);
  CHECK(meet.delta > 0.0);
  CHECK(meet.edges_checked > 0);

  // the 4-path adjacent-only unit metric never contracts
  for (int n : {2, 5}) {
    ArwKernel p4(path_graph(4), n, 0.0);
    StateSpace sp(4, n);
    ContractionReport r =
        contraction_report(p4, sp, VertexMetric::Unit, EdgePolicy::AdjacentOnly);
    CHECK(r.max_ratio >= 1.0 - 1e-9);
  }
}

TEST_CASE("contraction ratio crosses 1 at a finite beta on K3") {
  StateSpace s3(3, 3);
  auto ratio_at = [&](double beta) {
    ArwKernel kernel(complete_graph(3), 3, beta);
    return contraction_report(kernel, s3, VertexMetric::MeetingTime, EdgePolicy::AllPairs)
        .max_ratio;
  };
  // observed monotone growth over the scanned grid
  const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0, 4.0};
  double prev = -1;
  for (double beta : grid) {
    double r = ratio_at(beta);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(ratio_at(4.0) < 1.0);
  CHECK(ratio_at(8.0) >= 1.0);
  double lo = 4.0, hi = 8.0;
  for (int it = 0; it < 30; ++it) {
    double mid = 0.5 * (lo + hi);
    (ratio_at(mid) < 1.0 ? lo : hi) = mid;
  }
  CHECK(lo > 4.0);
  CHECK(hi < 8.0);
  CHECK(ratio_at(hi) >= 1.0);
}

TEST_CASE("TV lemma audit bounds") {
  // beta = 0: both left-hand sides vanish identically
  ArwKernel zero(path_graph(3), 4, 0.0);
  StateSpace sp3(3, 4);
  TvLemmaAudit a0 = tv_lemma_audit(zero, sp3);
  CHECK(a0.close_checked);
  CHECK(a0.close_max_tv == 0.0);
  CHECK(a0.same_vertex_max_tv == 0.0);

  ArwKernel k36(complete_graph(3), 6, 1.0);
  StateSpace s36(3, 6);
  TvLemmaAudit a1 = tv_lemma_audit(k36, s36);
  CHECK(a1.close_max_tv < a1.close_bound);
  CHECK(a1.same_vertex_max_tv < a1.same_vertex_bound);
  CHECK(!a1.complete_negative_checked);

  // complete-graph window bound for beta < 0
  ArwKernel neg(complete_graph(3), 30, -1.0);
  StateSpace s330(3, 30);
  TvLemmaAudit a2 = tv_lemma_audit(neg, s330, 0.1);
  CHECK(a2.complete_negative_checked);
  CHECK(a2.proviso_ok);
  CHECK(a2.pairs_in_window > 0);
  CHECK(a2.complete_negative_max_tv <= a2.complete_negative_bound);

  // proviso violation is reported, not asserted
  ArwKernel harsh(complete_graph(3), 6, -10.0);
  StateSpace s36b(3, 6);
  TvLemmaAudit a3 = tv_lemma_audit(harsh, s36b, 0.4);
  CHECK(a3.complete_negative_checked);
  CHECK(!a3.proviso_ok);
}

TEST_CASE("per-degree convex-hull bound on TV to the uniform walk") {
  // max_x TV(P_x(i,.), Q(i,.)) <= e^beta/(d+e^beta) - 1/(d+1) for degree d
  struct Case {
    Graph g;
    int n;
    double beta;
  };
  for (const Case& c : {Case{complete_graph(3), 5, 1.3}, Case{path_graph(3), 4, 0.7}}) {
    ArwKernel kernel(c.g, c.n, c.beta);
    StateSpace space(c.g.k, c.n);
    std::vector<double> worst(c.g.k, 0.0);
    for (std::int64_t r = 0; r < space.size(); ++r) {
      const Config& x = space.state(r);
      for (int i = 0; i < c.g.k; ++i) {
        if (x(i) == 0) continue;
        MoveDistribution md = particle_move_distribution(kernel, x, i);
        Eigen::VectorXd uniform = Eigen::VectorXd::Constant(
            md.probabilities.size(), 1.0 / static_cast<double>(md.probabilities.size()));
        worst[i] = std::max(worst[i], 0.5 * (md.probabilities - uniform).lpNorm<1>());
      }
    }
    for (int i = 0; i < c.g.k; ++i) {
      double d = c.g.degree(i);
      double bound = std::exp(c.beta) / (d + std::exp(c.beta)) - 1.0 / (d + 1);
      CHECK(worst[i] <= bound + 1e-12);
    }
  }
}

TEST_CASE("synchronous pairing coupling upper-bounds the LP optimum") {
  struct Case {
    Graph g;
    int n;
    double beta;
  };
  for (const Case& c : {Case{complete_graph(3), 3, 0.5}, Case{path_graph(3), 3, 0.3}}) {
    ArwKernel kernel(c.g, c.n, c.beta);
    StateSpace space(c.g.k, c.n);
    ConfigurationMetric rho(c.g, VertexMetric::MeetingTime, EdgePolicy::AllPairs);
    for (std::int64_t r = 0; r < space.size(); ++r) {
      const Config& x = space.state(r);
      for (int i = 0; i < c.g.k; ++i) {
        if (x(i) == 0) continue;
        for (int j = 0; j < c.g.k; ++j) {
          if (i == j) continue;
          Config y = x;
          y(i) -= 1;
          y(j) += 1;
          double sync = synchronous_coupling_expected_distance(kernel, x, i, j, rho);
          double opt = wasserstein_between_steps(kernel, x, y, rho).value;
          CHECK(sync >= opt - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("lambda_beta default and contraction condition") {
  double lb = default_lambda_beta(-2.0);  // log(1/2)/(4 * -2) = log(2)/8
  CHECK(lb == doctest::Approx(std::log(2.0) / 8).epsilon(1e-14));
  CHECK(lb > 0);
  CHECK_THROWS(default_lambda_beta(1.0));
  CHECK(complete_graph_contraction_condition(-0.2, 3, lb));
  CHECK(!complete_graph_contraction_condition(-5.0, 3, 0.01));
}
