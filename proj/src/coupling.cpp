#include "arw/coupling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace arw {

Eigen::VectorXd uniform_walk_row(const Graph& g, int i) {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(g.k);
  double p = 1.0 / (g.degree(i) + 1);
  row(i) = p;
  for (int j : g.neighbors(i)) row(j) = p;
  return row;
}

MeetingTimeMetric meeting_time_metric(const Graph& g) {
  const int k = g.k;
  std::vector<std::pair<int, int>> pairs;
  Eigen::MatrixXi pair_index = Eigen::MatrixXi::Constant(k, k, -1);
  for (int x = 0; x < k; ++x)
    for (int y = x + 1; y < k; ++y) {
      pair_index(x, y) = pair_index(y, x) = static_cast<int>(pairs.size());
      pairs.emplace_back(x, y);
    }

  std::vector<Eigen::VectorXd> q(k);
  for (int i = 0; i < k; ++i) q[i] = uniform_walk_row(g, i);

  // d(x,y) = 1 + sum_{a,b} Q(x,a) Q(y,b) d(a,b), d(a,a) = 0
  const auto m = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    auto [x, y] = pairs[r];
    for (int a = 0; a < k; ++a) {
      if (q[x](a) == 0.0) continue;
      for (int b = 0; b < k; ++b) {
        if (a == b || q[y](b) == 0.0) continue;
        M(r, pair_index(a, b)) -= q[x](a) * q[y](b);
      }
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m);
  Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
  if ((M * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-10)
    throw std::runtime_error("meeting-time linear system solve failed");

  MeetingTimeMetric out;
  out.d = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index r = 0; r < m; ++r) {
    auto [x, y] = pairs[r];
    out.d(x, y) = out.d(y, x) = sol(r);
  }
  out.d_max = out.d.maxCoeff();
  for (int x = 0; x < k; ++x)
    for (int y : g.neighbors(x)) out.d_max_adjacent = std::max(out.d_max_adjacent, out.d(x, y));
  return out;
}

TransportPlan transport_lp(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                           const Eigen::MatrixXd& cost, double certify_tol) {
  const auto a_count = static_cast<int>(mu.size());
  const auto b_count = static_cast<int>(nu.size());
  if (cost.rows() != a_count || cost.cols() != b_count)
    throw std::invalid_argument("cost matrix shape mismatch");
  if (mu.minCoeff() < 0 || nu.minCoeff() < 0)
    throw std::invalid_argument("negative mass");
  const double total = mu.sum();
  if (std::abs(total - nu.sum()) > 1e-9)
    throw std::invalid_argument("marginal totals mismatch");

  const double mass_eps = std::max(total, 1.0) * 1e-15;
  Eigen::VectorXd supply = mu, demand = nu;
  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(a_count, b_count);
  Eigen::VectorXd phi_a = Eigen::VectorXd::Zero(a_count);
  Eigen::VectorXd phi_b = Eigen::VectorXd::Zero(b_count);

  const int nodes = a_count + b_count;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes);
  std::vector<int> parent(nodes);

  long guard = static_cast<long>(a_count) * b_count * 4 + 100;
  double remaining = supply.sum();
  while (remaining > mass_eps) {
    if (--guard < 0) throw std::runtime_error("transport solver failed to terminate");

    std::fill(dist.begin(), dist.end(), inf);
    std::fill(parent.begin(), parent.end(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (int a = 0; a < a_count; ++a)
      if (supply(a) > mass_eps) {
        dist[a] = 0.0;
        heap.emplace(0.0, a);
      }
    while (!heap.empty()) {
      auto [d0, v] = heap.top();
      heap.pop();
      if (d0 > dist[v]) continue;
      if (v < a_count) {
        int a = v;
        for (int b = 0; b < b_count; ++b) {
          double rc = cost(a, b) + phi_a(a) - phi_b(b);
          if (rc < 0) rc = 0;  // float roundoff clamp
          if (d0 + rc < dist[a_count + b] - 1e-18) {
            dist[a_count + b] = d0 + rc;
            parent[a_count + b] = a;
            heap.emplace(dist[a_count + b], a_count + b);
          }
        }
      } else {
        int b = v - a_count;
        for (int a = 0; a < a_count; ++a) {
          if (flow(a, b) <= mass_eps) continue;
          double rc = -cost(a, b) + phi_b(b) - phi_a(a);
          if (rc < 0) rc = 0;
          if (d0 + rc < dist[a] - 1e-18) {
            dist[a] = d0 + rc;
            parent[a] = a_count + b;
            heap.emplace(dist[a], a);
          }
        }
      }
    }

    int target = -1;
    double best = inf;
    for (int b = 0; b < b_count; ++b)
      if (demand(b) > mass_eps && dist[a_count + b] < best) {
        best = dist[a_count + b];
        target = b;
      }
    if (target < 0) throw std::runtime_error("transport solver: no augmenting path");

    for (int v = 0; v < nodes; ++v)
      (v < a_count ? phi_a(v) : phi_b(v - a_count)) += std::min(dist[v], best);

    // bottleneck along the path back to a source
    double delta = demand(target);
    for (int v = a_count + target; parent[v] >= 0; v = parent[v]) {
      int u = parent[v];
      if (v >= a_count) {
        if (parent[u] < 0) delta = std::min(delta, supply(u));
      } else {
        delta = std::min(delta, flow(v, u - a_count));
      }
    }
    for (int v = a_count + target; parent[v] >= 0; v = parent[v]) {
      int u = parent[v];
      if (v >= a_count)
        flow(u, v - a_count) += delta;
      else
        flow(v, u - a_count) -= delta;
    }
    int source = a_count + target;
    while (parent[source] >= 0) source = parent[source];
    supply(source) -= delta;
    demand(target) -= delta;
    remaining -= delta;
  }

  TransportPlan plan;
  plan.dual_u = -phi_a;
  plan.dual_v = phi_b;
  for (int a = 0; a < a_count; ++a)
    for (int b = 0; b < b_count; ++b)
      if (flow(a, b) > mass_eps) {
        plan.flows.push_back({a, b, flow(a, b)});
        plan.value += flow(a, b) * cost(a, b);
      }
  plan.dual_value = plan.dual_u.dot(mu) + plan.dual_v.dot(nu);

  Eigen::VectorXd row_sums = flow.rowwise().sum();
  Eigen::VectorXd col_sums = flow.colwise().sum();
  plan.marginal_residual = std::max((row_sums - mu).lpNorm<Eigen::Infinity>(),
                                    (col_sums - nu).lpNorm<Eigen::Infinity>());
  for (int a = 0; a < a_count; ++a)
    for (int b = 0; b < b_count; ++b) {
      double slack = cost(a, b) - plan.dual_u(a) - plan.dual_v(b);
      plan.dual_feasibility_violation = std::max(plan.dual_feasibility_violation, -slack);
      if (flow(a, b) > mass_eps)
        plan.slackness_violation = std::max(plan.slackness_violation, std::abs(slack));
    }
  plan.duality_gap = std::abs(plan.value - plan.dual_value);
  if (!plan.certified(certify_tol))
    throw std::runtime_error("transport optimality certificate failed");
  return plan;
}

ConfigurationMetric::ConfigurationMetric(const Graph& g, VertexMetric metric,
                                         EdgePolicy policy) {
  const int k = g.k;
  Eigen::MatrixXd base;
  if (metric == VertexMetric::MeetingTime) {
    base = meeting_time_metric(g).d;
  } else {
    base = Eigen::MatrixXd::Ones(k, k) - Eigen::MatrixXd::Identity(k, k);
  }
  if (policy == EdgePolicy::AllPairs) {
    cost_ = base;
    return;
  }
  // adjacent-only H: path metric is the shortest-path closure of the edge lengths
  const double inf = std::numeric_limits<double>::infinity();
  cost_ = Eigen::MatrixXd::Constant(k, k, inf);
  for (int i = 0; i < k; ++i) cost_(i, i) = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j : g.neighbors(i)) cost_(i, j) = base(i, j);
  for (int via = 0; via < k; ++via)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        cost_(i, j) = std::min(cost_(i, j), cost_(i, via) + cost_(via, j));
}

namespace {

struct MassPoint {
  int vertex;
  double mass;
};

std::pair<std::vector<MassPoint>, std::vector<MassPoint>> occupancy_difference(
    const Config& x, const Config& y) {
  if (x.size() != y.size()) throw std::invalid_argument("configuration size mismatch");
  if (x.sum() != y.sum()) throw std::invalid_argument("particle counts mismatch");
  std::vector<MassPoint> surplus, deficit;
  for (int v = 0; v < x.size(); ++v) {
    int diff = x(v) - y(v);
    if (diff > 0) surplus.push_back({v, static_cast<double>(diff)});
    if (diff < 0) deficit.push_back({v, static_cast<double>(-diff)});
  }
  return {surplus, deficit};
}

}  // namespace

double ConfigurationMetric::operator()(const Config& x, const Config& y) const {
  auto [surplus, deficit] = occupancy_difference(x, y);
  if (surplus.empty()) return 0.0;
  Eigen::VectorXd mu(surplus.size()), nu(deficit.size());
  Eigen::MatrixXd c(surplus.size(), deficit.size());
  for (std::size_t a = 0; a < surplus.size(); ++a) {
    mu(a) = surplus[a].mass;
    for (std::size_t b = 0; b < deficit.size(); ++b)
      c(a, b) = cost_(surplus[a].vertex, deficit[b].vertex);
  }
  for (std::size_t b = 0; b < deficit.size(); ++b) nu(b) = deficit[b].mass;
  return transport_lp(mu, nu, c).value;
}

double ConfigurationMetric::greedy_upper_bound(const Config& x, const Config& y) const {
  auto [surplus, deficit] = occupancy_difference(x, y);
  double total = 0.0;
  for (auto& s : surplus) {
    while (s.mass > 0) {
      int best = -1;
      for (std::size_t b = 0; b < deficit.size(); ++b) {
        if (deficit[b].mass <= 0) continue;
        if (best < 0 || cost_(s.vertex, deficit[b].vertex) < cost_(s.vertex, deficit[best].vertex))
          best = static_cast<int>(b);
      }
      double moved = std::min(s.mass, deficit[best].mass);
      total += moved * cost_(s.vertex, deficit[best].vertex);
      s.mass -= moved;
      deficit[best].mass -= moved;
    }
  }
  return total;
}

TransportPlan wasserstein_between_steps(const ArwKernel& kernel, const Config& x,
                                        const Config& y, const ConfigurationMetric& rho) {
  auto mu_entries = step_distribution(kernel, x);
  auto nu_entries = step_distribution(kernel, y);
  Eigen::VectorXd mu(mu_entries.size()), nu(nu_entries.size());
  Eigen::MatrixXd c(mu_entries.size(), nu_entries.size());
  for (std::size_t a = 0; a < mu_entries.size(); ++a) {
    mu(a) = mu_entries[a].second;
    for (std::size_t b = 0; b < nu_entries.size(); ++b)
      c(a, b) = rho(mu_entries[a].first, nu_entries[b].first);
  }
  for (std::size_t b = 0; b < nu_entries.size(); ++b) nu(b) = nu_entries[b].second;
  return transport_lp(mu, nu, c);
}

ContractionReport contraction_report(const ArwKernel& kernel, const StateSpace& space,
                                     VertexMetric metric, EdgePolicy policy) {
  if (space.k() != kernel.graph.k || space.n() != kernel.n)
    throw std::invalid_argument("state space does not match kernel");
  ConfigurationMetric rho(kernel.graph, metric, policy);
  ContractionReport report;
  report.metric = metric;
  report.policy = policy;

  for (std::int64_t r = 0; r < space.size(); ++r) {
    const Config& x = space.state(r);
    for (int i = 0; i < space.k(); ++i) {
      if (x(i) == 0) continue;
      for (int j = 0; j < space.k(); ++j) {
        if (i == j) continue;
        if (policy == EdgePolicy::AdjacentOnly && !kernel.graph.has_edge(i, j)) continue;
        Config y = x;
        y(i) -= 1;
        y(j) += 1;
        if (space.rank(y) <= r) continue;  // each unordered H-edge once
        double edge_rho = rho.edge_length(i, j);
        TransportPlan plan = wasserstein_between_steps(kernel, x, y, rho);
        double ratio = plan.value / edge_rho;
        ++report.edges_checked;
        if (ratio > report.max_ratio) {
          report.max_ratio = ratio;
          report.worst = EdgeRatio{x, y, i, j, edge_rho, plan.value, ratio};
        }
      }
    }
  }
  report.delta = 1.0 - report.max_ratio;
  return report;
}

NoContractionResult no_contraction_check(int n) {
  if (n < 5) throw std::invalid_argument("need n >= 5 so every vertex stays occupied");
  Graph g = path_graph(4);
  ArwKernel kernel(g, n, 0.0);
  Config x(4);
  x << 1, n - 3, 1, 1;
  Config y = x;
  y(1) -= 1;
  y(2) += 1;
  ConfigurationMetric rho(g, VertexMetric::Unit, EdgePolicy::AdjacentOnly);
  TransportPlan plan = wasserstein_between_steps(kernel, x, y, rho);
  NoContractionResult out;
  out.lp_value = plan.value;
  out.dual_value = plan.dual_value;
  out.certified = plan.certified();
  out.x = x;
  out.y = y;
  return out;
}

double default_lambda_beta(double beta, double delta) {
  if (beta >= 0) throw std::invalid_argument("lambda_beta is defined for beta < 0");
  return std::log(1.0 - delta) / (4.0 * beta);
}

bool complete_graph_contraction_condition(double beta, int k, double lambda) {
  return -10.0 * beta < 2.0 + (k - 2) * std::exp(4.0 * lambda * beta);
}

namespace {

bool is_complete(const Graph& g) {
  for (int v = 0; v < g.k; ++v)
    if (g.degree(v) != g.k - 1) return false;
  return true;
}

double move_distribution_tv(const MoveDistribution& a, const MoveDistribution& b) {
  // supports are both N(v) u {v} in ascending order, hence identical
  return 0.5 * (a.probabilities - b.probabilities).lpNorm<1>();
}

}  // namespace

TvLemmaAudit tv_lemma_audit(const ArwKernel& kernel, const StateSpace& space,
                            std::optional<double> lambda_opt) {
  if (space.k() != kernel.graph.k || space.n() != kernel.n)
    throw std::invalid_argument("state space does not match kernel");
  if (kernel.infinite_repulsion())
    throw std::invalid_argument("TV audit requires finite beta");
  const Graph& g = kernel.graph;
  const double beta = kernel.beta;
  const int n = kernel.n;
  TvLemmaAudit audit;

  if (beta >= 0) {
    audit.close_checked = true;
    audit.close_bound = (std::exp(beta / 2) - 1.0) / (std::exp(beta / 2) + 1.0);
    audit.same_vertex_checked = true;
    audit.same_vertex_bound = (max_degree(g) + 1) * beta / n;

    for (std::int64_t r = 0; r < space.size(); ++r) {
      const Config& x = space.state(r);
      for (int i = 0; i < g.k; ++i) {
        if (x(i) == 0) continue;
        MoveDistribution px = particle_move_distribution(kernel, x, i);
        Eigen::VectorXd uniform =
            Eigen::VectorXd::Constant(px.probabilities.size(),
                                      1.0 / static_cast<double>(px.probabilities.size()));
        audit.close_max_tv = std::max(
            audit.close_max_tv, 0.5 * (px.probabilities - uniform).lpNorm<1>());
      }
      for (int i = 0; i < g.k; ++i) {
        if (x(i) == 0) continue;
        for (int j = 0; j < g.k; ++j) {
          if (j == i) continue;
          Config y = x;
          y(i) -= 1;
          y(j) += 1;
          for (int v = 0; v < g.k; ++v) {
            if (x(v) < 1 || y(v) < 1) continue;
            MoveDistribution px = particle_move_distribution(kernel, x, v);
            MoveDistribution py = particle_move_distribution(kernel, y, v);
            audit.same_vertex_max_tv =
                std::max(audit.same_vertex_max_tv, move_distribution_tv(px, py));
          }
        }
      }
    }
  }

  if (beta < 0 && is_complete(g)) {
    audit.complete_negative_checked = true;
    audit.lambda = lambda_opt.value_or(default_lambda_beta(beta));
    audit.proviso_ok = n >= -3.0 * beta / std::log(5.0 / 4.0);
    const int k = g.k;
    audit.complete_negative_bound =
        (-5.0 * beta / n) / (2.0 + (k - 2) * std::exp(2.0 * audit.lambda * beta));
    const double half_width = audit.lambda * n;
    const double mean = static_cast<double>(n) / k;
    auto in_window = [&](const Config& c) {
      for (int v = 0; v < k; ++v)
        if (std::abs(c(v) - mean) > half_width) return false;
      return true;
    };
    for (std::int64_t r = 0; r < space.size(); ++r) {
      const Config& x = space.state(r);
      if (!in_window(x)) continue;
      for (int i = 0; i < k; ++i) {
        if (x(i) == 0) continue;
        for (int j = 0; j < k; ++j) {
          if (j == i) continue;
          Config y = x;
          y(i) -= 1;
          y(j) += 1;
          if (!in_window(y)) continue;
          ++audit.pairs_in_window;
          for (int v = 0; v < k; ++v) {
            if (x(v) < 1 || y(v) < 1) continue;
            MoveDistribution px = particle_move_distribution(kernel, x, v);
            MoveDistribution py = particle_move_distribution(kernel, y, v);
            audit.complete_negative_max_tv =
                std::max(audit.complete_negative_max_tv, move_distribution_tv(px, py));
          }
        }
      }
    }
  }
  return audit;
}

double synchronous_coupling_expected_distance(const ArwKernel& kernel, const Config& x,
                                              int i, int j,
                                              const ConfigurationMetric& rho) {
  if (i == j || x(i) < 1) throw std::invalid_argument("need an H-edge move i != j with x(i) >= 1");
  Config y = x;
  y(i) -= 1;
  y(j) += 1;
  const int n = kernel.n;
  const Graph& g = kernel.graph;
  double expected = 0.0;

  auto maximal_coupling_distance = [&](const Config& from_x, int vx, const Config& from_y,
                                       int vy) {
    // destination-vertex laws of the paired particles
    MoveDistribution a = particle_move_distribution(kernel, from_x, vx);
    MoveDistribution b = particle_move_distribution(kernel, from_y, vy);
    Eigen::VectorXd pa = Eigen::VectorXd::Zero(g.k);
    Eigen::VectorXd pb = Eigen::VectorXd::Zero(g.k);
    for (std::size_t s = 0; s < a.support.size(); ++s) pa(a.support[s]) = a.probabilities(s);
    for (std::size_t s = 0; s < b.support.size(); ++s) pb(b.support[s]) = b.probabilities(s);

    auto next_pair_distance = [&](int wx, int wy) {
      Config xp = from_x;
      xp(vx) -= 1;
      xp(wx) += 1;
      Config yp = from_y;
      yp(vy) -= 1;
      yp(wy) += 1;
      return rho(xp, yp);
    };

    double e = 0.0;
    Eigen::VectorXd res_a = pa, res_b = pb;
    for (int w = 0; w < g.k; ++w) {
      double common = std::min(pa(w), pb(w));
      if (common > 0) {
        e += common * next_pair_distance(w, w);
        res_a(w) -= common;
        res_b(w) -= common;
      }
    }
    double residual = res_a.sum();
    if (residual > 1e-15) {
      for (int wx = 0; wx < g.k; ++wx) {
        if (res_a(wx) <= 0) continue;
        for (int wy = 0; wy < g.k; ++wy) {
          if (res_b(wy) <= 0) continue;
          e += res_a(wx) * res_b(wy) / residual * next_pair_distance(wx, wy);
        }
      }
    }
    return e;
  };

  // common particles, paired by vertex
  for (int v = 0; v < g.k; ++v) {
    int common_count = x(v) - (v == i ? 1 : 0);
    if (common_count < 1) continue;
    expected += (static_cast<double>(common_count) / n) * maximal_coupling_distance(x, v, y, v);
  }
  // the extra particle: at i in x, at j in y
  expected += (1.0 / n) * maximal_coupling_distance(x, i, y, j);
  return expected;
}

}  // namespace arw
