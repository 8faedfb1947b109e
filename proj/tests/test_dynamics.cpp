#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "arw/dynamics.hpp"
#include "arw/state_space.hpp"

using namespace arw;

namespace {

Config make_config(std::initializer_list<int> vals) {
  Config c(static_cast<int>(vals.size()));
  int i = 0;
  for (int v : vals) c(i++) = v;
  return c;
}

std::map<std::vector<int>, double> as_map(const std::vector<std::pair<Config, double>>& d) {
  std::map<std::vector<int>, double> m;
  for (const auto& [c, p] : d) m[std::vector<int>(c.data(), c.data() + c.size())] = p;
  return m;
}

}  // namespace

TEST_CASE("beta = 0 gives exactly uniform moves") {
  for (const Graph& g : {path_graph(4), complete_graph(3), grid_graph(2, 3)}) {
    ArwKernel kernel(g, 5, 0.0);
    Config x = uniform_initial_configuration(g, 5);
    for (int i = 0; i < g.k; ++i) {
      if (x(i) == 0) continue;
      MoveDistribution md = particle_move_distribution(kernel, x, i);
      double expected = 1.0 / (g.degree(i) + 1);
      for (Eigen::Index s = 0; s < md.probabilities.size(); ++s)
        CHECK(md.probabilities(s) == expected);  // equal weights, exact
    }
  }
}

TEST_CASE("hand-computed move distribution on K2") {
  // n=2, beta=2, x=(2,0): stay weight e^{(2/2)(2-1)} = e, move weight e^0 = 1
  ArwKernel kernel(complete_graph(2), 2, 2.0);
  MoveDistribution md = particle_move_distribution(kernel, make_config({2, 0}), 0);
  REQUIRE(md.support == std::vector<int>{0, 1});
  const double e = std::exp(1.0);
  CHECK(md.probabilities(0) == doctest::Approx(e / (e + 1)).epsilon(1e-14));
  CHECK(md.probabilities(1) == doctest::Approx(1 / (e + 1)).epsilon(1e-14));
  CHECK_THROWS(particle_move_distribution(kernel, make_config({2, 0}), 1));  // empty vertex
}

TEST_CASE("probability ratio bound within e^|beta|") {
  for (double beta : {-3.0, 2.0}) {
    ArwKernel kernel(complete_graph(3), 4, beta);
    StateSpace space(3, 4);
    for (std::int64_t r = 0; r < space.size(); ++r) {
      const Config& x = space.state(r);
      for (int i = 0; i < 3; ++i) {
        if (x(i) == 0) continue;
        MoveDistribution md = particle_move_distribution(kernel, x, i);
        double ratio = md.probabilities.maxCoeff() / md.probabilities.minCoeff();
        CHECK(ratio <= std::exp(std::abs(beta)) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("step distribution examples") {
  ArwKernel k0(complete_graph(2), 2, 0.0);
  auto d0 = as_map(step_distribution(k0, make_config({1, 1})));
  CHECK(d0[{2, 0}] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d0[{1, 1}] == doctest::Approx(0.50).epsilon(1e-14));
  CHECK(d0[{0, 2}] == doctest::Approx(0.25).epsilon(1e-14));

  ArwKernel k2(complete_graph(2), 2, 2.0);
  auto d2 = as_map(step_distribution(k2, make_config({2, 0})));
  const double e = std::exp(1.0);
  CHECK(d2.size() == 2);
  CHECK(d2[{2, 0}] == doctest::Approx(e / (e + 1)).epsilon(1e-14));
  CHECK(d2[{1, 1}] == doctest::Approx(1 / (e + 1)).epsilon(1e-14));
}

TEST_CASE("single particle makes beta irrelevant") {
  for (double beta : {-7.0, 0.0, 11.0}) {
    ArwKernel kernel(path_graph(3), 1, beta);
    MoveDistribution md = particle_move_distribution(kernel, make_config({0, 1, 0}), 1);
    for (Eigen::Index s = 0; s < md.probabilities.size(); ++s)
      CHECK(md.probabilities(s) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
}

TEST_CASE("row stochasticity, exhaustive over small spaces") {
  struct Case {
    Graph g;
    int n;
    double beta;
  };
  for (const Case& c : {Case{path_graph(4), 8, 1.5}, Case{complete_graph(4), 4, -2.0},
                        Case{complete_graph(3), 6, 0.7}, Case{grid_graph(2, 2), 5, 3.0}}) {
    ArwKernel kernel(c.g, c.n, c.beta);
    StateSpace space(c.g.k, c.n);
    for (std::int64_t r = 0; r < space.size(); ++r) {
      double sum = 0.0;
      for (const auto& [y, p] : step_distribution(kernel, space.state(r))) {
        CHECK(p >= 0.0);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("extreme beta stays numerically stable") {
  for (double beta : {1e4, -1e4}) {
    ArwKernel kernel(grid_graph(2, 3), 18, beta);
    Config x = uniform_initial_configuration(kernel.graph, 18);
    x(0) += 3;
    x(5) -= 3;
    for (int i = 0; i < 6; ++i) {
      if (x(i) == 0) continue;
      MoveDistribution md = particle_move_distribution(kernel, x, i);
      CHECK(std::isfinite(md.probabilities.sum()));
      CHECK(std::abs(md.probabilities.sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("empirical stay frequency at beta = 0 on K2") {
  ArwKernel kernel(complete_graph(2), 2, 0.0);
  Xoshiro256pp rng(12345);
  Config x = make_config({1, 1});
  std::int64_t stays = 0;
  const std::int64_t steps = 1'000'000;
  for (std::int64_t t = 0; t < steps; ++t) {
    Config next = sample_step(kernel, x, rng);
    if (next == x) ++stays;
    x = next;
  }
  double freq = static_cast<double>(stays) / steps;
  CHECK(freq == doctest::Approx(0.5).epsilon(0.004));  // 0.5 +- 0.002 absolute
}

TEST_CASE("identical seeds give identical trajectories") {
  ArwKernel kernel(grid_graph(2, 3), 9, 1.3);
  Config x0 = uniform_initial_configuration(kernel.graph, 9);
  std::vector<Config> first, second;
  Xoshiro256pp r1 = Xoshiro256pp::stream(99, 0);
  Xoshiro256pp r2 = Xoshiro256pp::stream(99, 0);
  simulate_trajectory(kernel, x0, 500, 1, r1,
                      [&](std::int64_t, const Config& x) { first.push_back(x); });
  simulate_trajectory(kernel, x0, 500, 1, r2,
                      [&](std::int64_t, const Config& x) { second.push_back(x); });
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i] == second[i]);

  Xoshiro256pp r3 = Xoshiro256pp::stream(99, 1);  // different stream must diverge
  std::vector<Config> third;
  simulate_trajectory(kernel, x0, 500, 1, r3,
                      [&](std::int64_t, const Config& x) { third.push_back(x); });
  bool all_equal = true;
  for (std::size_t i = 0; i < first.size(); ++i)
    if (first[i] != third[i]) all_equal = false;
  CHECK(!all_equal);
}

TEST_CASE("hard repulsion moves to the unique argmin") {
  ArwKernel kernel(path_graph(3), 3, kMinusInfinity);
  Xoshiro256pp rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Config next = sample_step(kernel, make_config({3, 0, 0}), rng);
    CHECK(next == make_config({2, 1, 0}));  // argmin {x(0)-1=2, x(1)=0} = {1}
  }
}

TEST_CASE("hard repulsion monotone extremes and absorption") {
  Graph g = grid_graph(3, 3);
  const int n = 20;
  ArwKernel kernel(g, n, kMinusInfinity);
  Xoshiro256pp rng(7);
  Config x = Config::Zero(g.k);
  x(4) = n;
  int max_occ = x.maxCoeff(), min_occ = x.minCoeff();
  bool entered = false;
  auto in_c = [&](const Config& c) {
    for (int v = 0; v < g.k; ++v)
      if (c(v) != n / g.k && c(v) != n / g.k + 1) return false;
    return true;
  };
  for (int t = 0; t < 100'000; ++t) {
    x = sample_step(kernel, x, rng);
    CHECK(x.maxCoeff() <= max_occ);
    CHECK(x.minCoeff() >= min_occ);
    max_occ = x.maxCoeff();
    min_occ = x.minCoeff();
    if (entered) CHECK(in_c(x));
    entered = entered || in_c(x);
  }
  CHECK(entered);
}

TEST_CASE("laziness mixes identity into the one-step law") {
  ArwKernel base(path_graph(3), 3, 1.2);
  ArwKernel lazy(path_graph(3), 3, 1.2, /*lazy=*/true);
  Config x = make_config({1, 1, 1});
  auto base_map = as_map(step_distribution(base, x));
  auto lazy_map = as_map(step_distribution(lazy, x));
  for (const auto& [cfg, p] : base_map) {
    double expected = 0.5 * p + (cfg == std::vector<int>{1, 1, 1} ? 0.5 : 0.0);
    CHECK(lazy_map[cfg] == doctest::Approx(expected).epsilon(1e-14));
  }

  // lazy + hard repulsion: from (3,0,0) the base step always moves, so the
  // observed stay frequency is the laziness coin alone
  ArwKernel lazy_inf(path_graph(3), 3, kMinusInfinity, /*lazy=*/true);
  Xoshiro256pp rng(11);
  int stays = 0;
  const int trials = 100'000;
  for (int t = 0; t < trials; ++t)
    if (sample_step(lazy_inf, make_config({3, 0, 0}), rng) == make_config({3, 0, 0})) ++stays;
  CHECK(static_cast<double>(stays) / trials == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("input validation") {
  CHECK_THROWS(ArwKernel(complete_graph(2), 0, 1.0));
  CHECK_THROWS(ArwKernel(complete_graph(2), 2, std::numeric_limits<double>::infinity()));
  ArwKernel kernel(complete_graph(2), 2, 1.0);
  CHECK_THROWS(validate_configuration(kernel.graph, 2, make_config({1, 2})));
  CHECK_THROWS(validate_configuration(kernel.graph, 2, make_config({3, -1})));
  ArwKernel inf_kernel(complete_graph(2), 2, kMinusInfinity);
  CHECK_THROWS(particle_move_distribution(inf_kernel, make_config({1, 1}), 0));
  CHECK_THROWS(step_distribution(inf_kernel, make_config({1, 1})));
}
