#include "arw/dynamics.hpp"

#include <map>
#include <stdexcept>

namespace arw {

Config validate_configuration(const Graph& g, int n, const Config& x) {
  if (x.size() != g.k) throw std::invalid_argument("configuration/graph size mismatch");
  long sum = 0;
  for (int i = 0; i < g.k; ++i) {
    if (x(i) < 0) throw std::invalid_argument("negative occupancy");
    sum += x(i);
  }
  if (sum != n) throw std::invalid_argument("occupancies do not sum to n");
  return x;
}

Config uniform_initial_configuration(const Graph& g, int n) {
  Config x = Config::Zero(g.k);
  for (int p = 0; p < n; ++p) x(p % g.k) += 1;
  return x;
}

MoveDistribution particle_move_distribution(const ArwKernel& kernel, const Config& x, int i) {
  if (kernel.infinite_repulsion())
    throw std::invalid_argument("move distribution requires finite beta");
  if (i < 0 || i >= kernel.graph.k) throw std::invalid_argument("vertex out of range");
  if (x(i) < 1) throw std::invalid_argument("no particle at vertex " + std::to_string(i));

  MoveDistribution md;
  const auto& nb = kernel.graph.neighbors(i);
  md.support.reserve(nb.size() + 1);
  auto pos = std::lower_bound(nb.begin(), nb.end(), i);
  md.support.insert(md.support.end(), nb.begin(), pos);
  md.support.push_back(i);
  md.support.insert(md.support.end(), pos, nb.end());

  const double scale = kernel.beta / kernel.n;
  Eigen::VectorXd w(md.support.size());
  for (std::size_t s = 0; s < md.support.size(); ++s) {
    int j = md.support[s];
    w(s) = scale * (j == i ? x(i) - 1 : x(j));
  }
  // exponent shift keeps the normalization exact for |beta| far beyond 1e4
  w.array() -= w.maxCoeff();
  md.probabilities = w.array().exp();
  md.probabilities /= md.probabilities.sum();
  return md;
}

std::vector<std::pair<Config, double>> step_distribution(const ArwKernel& kernel,
                                                         const Config& x) {
  if (kernel.infinite_repulsion())
    throw std::invalid_argument("step distribution requires finite beta");
  validate_configuration(kernel.graph, kernel.n, x);

  std::map<Config, double, ConfigLess> acc;
  const double inv_n = 1.0 / kernel.n;
  for (int i = 0; i < kernel.graph.k; ++i) {
    if (x(i) == 0) continue;
    MoveDistribution md = particle_move_distribution(kernel, x, i);
    const double pick = x(i) * inv_n;
    for (std::size_t s = 0; s < md.support.size(); ++s) {
      int j = md.support[s];
      if (j == i) {
        acc[x] += pick * md.probabilities(s);
      } else {
        Config y = x;
        y(i) -= 1;
        y(j) += 1;
        acc[std::move(y)] += pick * md.probabilities(s);
      }
    }
  }
  if (kernel.lazy) {
    for (auto& [y, p] : acc) p *= 0.5;
    acc[x] += 0.5;
  }
  std::vector<std::pair<Config, double>> out;
  out.reserve(acc.size());
  for (auto& [y, p] : acc) out.emplace_back(y, p);
  return out;
}

Config sample_step_infinite_repulsion(const ArwKernel& kernel, const Config& x,
                                      Xoshiro256pp& rng) {
  if (kernel.lazy && rng.next_double() < 0.5) return x;

  auto r = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(kernel.n)));
  int i = 0;
  long cum = 0;
  for (; i < kernel.graph.k; ++i) {
    cum += x(i);
    if (r < cum) break;
  }

  // argmin of {x(i)-1} u {x(j) : j ~ i}; the particle is neutral toward itself
  int best = x(i) - 1;
  for (int j : kernel.graph.neighbors(i))
    if (x(j) < best) best = x(j);
  std::vector<int> argmin;
  if (x(i) - 1 == best) argmin.push_back(i);
  for (int j : kernel.graph.neighbors(i))
    if (x(j) == best) argmin.push_back(j);

  int j = argmin[rng.next_below(argmin.size())];
  if (j == i) return x;
  Config y = x;
  y(i) -= 1;
  y(j) += 1;
  return y;
}

Config sample_step(const ArwKernel& kernel, const Config& x, Xoshiro256pp& rng) {
  if (kernel.infinite_repulsion()) return sample_step_infinite_repulsion(kernel, x, rng);
  if (kernel.lazy && rng.next_double() < 0.5) return x;

  auto r = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(kernel.n)));
  int i = 0;
  long cum = 0;
  for (; i < kernel.graph.k; ++i) {
    cum += x(i);
    if (r < cum) break;
  }

  MoveDistribution md = particle_move_distribution(kernel, x, i);
  double u = rng.next_double();
  double c = 0.0;
  std::size_t s = 0;
  for (; s + 1 < md.support.size(); ++s) {
    c += md.probabilities(s);
    if (u < c) break;
  }
  int j = md.support[s];
  if (j == i) return x;
  Config y = x;
  y(i) -= 1;
  y(j) += 1;
  return y;
}

void simulate_trajectory(const ArwKernel& kernel, const Config& x0, std::int64_t steps,
                         std::int64_t stride, Xoshiro256pp& rng,
                         const std::function<void(std::int64_t, const Config&)>& sink) {
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  Config x = validate_configuration(kernel.graph, kernel.n, x0);
  sink(0, x);
  for (std::int64_t t = 1; t <= steps; ++t) {
    x = sample_step(kernel, x, rng);
    if (t % stride == 0 || t == steps) sink(t, x);
  }
}

}  // namespace arw
