#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "arw/graph.hpp"
#include "arw/rng.hpp"
#include "arw/state_space.hpp"

namespace arw {

constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

// One-step transition law of the chain: n particles on g, attraction beta.
// beta == -infinity selects the hard-repulsion dynamics (argmin moves).
struct ArwKernel {
  Graph graph;
  int n = 1;
  double beta = 0.0;
  bool lazy = false;

  ArwKernel(Graph g, int n_, double beta_, bool lazy_ = false)
      : graph(std::move(g)), n(n_), beta(beta_), lazy(lazy_) {
    if (n < 1) throw std::invalid_argument("particle count must be at least 1");
    if (std::isnan(beta) || beta == std::numeric_limits<double>::infinity())
      throw std::invalid_argument("beta must be finite or -inf");
  }

  bool infinite_repulsion() const { return std::isinf(beta); }
};

// Law of the next location of a particle selected at vertex i.
struct MoveDistribution {
  std::vector<int> support;         // destinations in ascending order, i included
  Eigen::VectorXd probabilities;    // aligned with support, sums to 1
};

MoveDistribution particle_move_distribution(const ArwKernel& kernel, const Config& x, int i);

// Aggregated one-step law from x, entries keyed by destination configuration
// in lexicographic order. Honors kernel.lazy.
std::vector<std::pair<Config, double>> step_distribution(const ArwKernel& kernel,
                                                         const Config& x);

Config sample_step(const ArwKernel& kernel, const Config& x, Xoshiro256pp& rng);
Config sample_step_infinite_repulsion(const ArwKernel& kernel, const Config& x,
                                      Xoshiro256pp& rng);

// Runs `steps` transitions from x0, invoking sink(t, x) at t = 0, every
// `stride` steps, and at the final step.
void simulate_trajectory(const ArwKernel& kernel, const Config& x0, std::int64_t steps,
                         std::int64_t stride, Xoshiro256pp& rng,
                         const std::function<void(std::int64_t, const Config&)>& sink);

Config uniform_initial_configuration(const Graph& g, int n);  // round-robin fill
Config validate_configuration(const Graph& g, int n, const Config& x);

}  // namespace arw
