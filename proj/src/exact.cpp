#include "arw/exact.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace arw {

TransitionMatrix build_matrix(const ArwKernel& kernel,
                              std::shared_ptr<const StateSpace> space) {
  if (!space) throw std::invalid_argument("null state space");
  if (space->k() != kernel.graph.k || space->n() != kernel.n)
    throw std::invalid_argument("state space does not match kernel (k, n)");
  if (kernel.infinite_repulsion())
    throw std::invalid_argument("transition matrix requires finite beta");

  const std::int64_t m = space->size();
  std::vector<Eigen::Triplet<double>> trip;
  for (std::int64_t r = 0; r < m; ++r) {
    auto row = step_distribution(kernel, space->state(r));
    double sum = 0.0;
    for (const auto& [y, p] : row) {
      trip.emplace_back(static_cast<int>(r), static_cast<int>(space->rank(y)), p);
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::logic_error("transition row does not sum to 1");
  }
  TransitionMatrix out;
  out.space = std::move(space);
  out.P.resize(m, m);
  out.P.setFromTriplets(trip.begin(), trip.end());
  return out;
}

TransitionMatrix lazy_matrix(const TransitionMatrix& m) {
  TransitionMatrix out;
  out.space = m.space;
  SparseRowMatrix id(m.P.rows(), m.P.cols());
  id.setIdentity();
  out.P = 0.5 * (m.P + id);
  return out;
}

namespace {

Eigen::VectorXd stationary_direct(const SparseRowMatrix& P) {
  const Eigen::Index m = P.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd(P.transpose()) - Eigen::MatrixXd::Identity(m, m);
  A.row(m - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  b(m - 1) = 1.0;
  Eigen::VectorXd pi = A.partialPivLu().solve(b);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (pi(i) < -1e-12) throw std::runtime_error("direct stationary solve produced negative mass");
    if (pi(i) < 0) pi(i) = 0;
  }
  pi /= pi.sum();
  return pi;
}

Eigen::VectorXd stationary_power(const SparseRowMatrix& P, double tol,
                                 std::int64_t max_iters) {
  const Eigen::Index m = P.rows();
  // iterate on the lazy matrix: same stationary vector, no periodicity issues
  SparseRowMatrix id(m, m);
  id.setIdentity();
  SparseRowMatrix lazy = 0.5 * (P + id);
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  for (std::int64_t it = 0; it < max_iters; ++it) {
    Eigen::VectorXd next = lazy.transpose() * mu;
    double change = (next - mu).lpNorm<1>();
    mu = next;
    if (change <= tol) {
      mu /= mu.sum();
      return mu;
    }
  }
  throw std::runtime_error("power iteration did not converge within the iteration cap");
}

}  // namespace

Eigen::VectorXd stationary(const SparseRowMatrix& P, const StationaryOptions& opts) {
  if (P.rows() != P.cols()) throw std::invalid_argument("matrix is not square");
  StationaryMethod method = opts.method;
  if (method == StationaryMethod::Auto)
    method = static_cast<std::size_t>(P.rows()) <= opts.direct_cap
                 ? StationaryMethod::Direct
                 : StationaryMethod::PowerIteration;
  Eigen::VectorXd pi = method == StationaryMethod::Direct
                           ? stationary_direct(P)
                           : stationary_power(P, opts.power_tol, opts.power_max_iters);
  double residual = (P.transpose() * pi - pi).lpNorm<1>();
  if (residual > opts.residual_tol)
    throw std::runtime_error("stationary residual " + std::to_string(residual) +
                             " exceeds tolerance");
  return pi;
}

Eigen::VectorXd stationary(const TransitionMatrix& m, const StationaryOptions& opts) {
  return stationary(m.P, opts);
}

Eigen::VectorXd complete_graph_stationary(int k, int n, double beta) {
  if (k < 2) throw std::invalid_argument("complete-graph stationary law needs k >= 2");
  StateSpace space(k, n);
  Eigen::VectorXd logw(space.size());
  for (std::int64_t r = 0; r < space.size(); ++r) {
    const Config& x = space.state(r);
    double log_multinomial = std::lgamma(n + 1.0);
    double sumsq = 0.0;
    for (int i = 0; i < k; ++i) {
      log_multinomial -= std::lgamma(x(i) + 1.0);
      sumsq += static_cast<double>(x(i)) * x(i);
    }
    logw(r) = log_multinomial + beta / (2.0 * n) * sumsq;
  }
  logw.array() -= logw.maxCoeff();
  Eigen::VectorXd pi = logw.array().exp();
  pi /= pi.sum();
  return pi;
}

namespace {

// P^t for a dense matrix via square-and-multiply.
Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& P, std::int64_t t) {
  const Eigen::Index m = P.rows();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd base = P;
  std::int64_t e = t;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

double max_row_tv(const Eigen::MatrixXd& Pt, const Eigen::VectorXd& pi) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < Pt.rows(); ++r) {
    double tv = 0.5 * (Pt.row(r).transpose() - pi).lpNorm<1>();
    if (tv > worst) worst = tv;
  }
  return worst;
}

}  // namespace

double worst_case_tv(const TransitionMatrix& m, const Eigen::VectorXd& pi, std::int64_t t,
                     const TvOptions& opts) {
  const auto size = static_cast<std::size_t>(m.P.rows());
  if (size > opts.dense_cap)
    throw std::invalid_argument("state space exceeds the dense cap for exact TV");
  if (t < 0) throw std::invalid_argument("negative time");
  if (size <= opts.square_cap) {
    Eigen::MatrixXd Pt = matrix_power(Eigen::MatrixXd(m.P), t);
    return max_row_tv(Pt, pi);
  }
  Eigen::MatrixXd rows = Eigen::MatrixXd::Identity(m.P.rows(), m.P.cols());
  for (std::int64_t s = 0; s < t; ++s) rows = rows * m.P;
  return max_row_tv(rows, pi);
}

std::int64_t mixing_time(const TransitionMatrix& m, const Eigen::VectorXd& pi, double eps,
                         const TvOptions& opts) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  if (worst_case_tv(m, pi, 0, opts) <= eps) return 0;
  // d(t) is non-increasing (TV contracts under every Markov kernel), so
  // bracket by doubling and then bisect.
  std::int64_t hi = 1;
  while (worst_case_tv(m, pi, hi, opts) > eps) {
    hi *= 2;
    if (hi > opts.t_cap) throw std::runtime_error("mixing time exceeds the iteration cap");
  }
  std::int64_t lo = hi / 2;  // d(lo) > eps
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (worst_case_tv(m, pi, mid, opts) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

CheegerResult cheeger_constant(const SparseRowMatrix& P, const Eigen::VectorXd& pi, int cap) {
  const int m = static_cast<int>(P.rows());
  if (m > cap)
    throw std::invalid_argument("Cheeger enumeration requires |Omega| <= " + std::to_string(cap));
  if (m < 2) throw std::invalid_argument("need at least two states");

  Eigen::MatrixXd Q = pi.asDiagonal() * Eigen::MatrixXd(P);  // edge measure

  // Walk subsets of {1..m-1} in Gray-code order with state 0 pinned inside S;
  // stationarity makes the cut symmetric, so each {S, S^c} pair is seen once.
  const std::uint32_t count = 1u << (m - 1);
  std::vector<char> in_s(m, 0);
  in_s[0] = 1;
  double cut = 0.0;
  for (int y = 1; y < m; ++y) cut += Q(0, y);
  double pi_s = pi(0);

  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 1;  // bit v set <=> state v in S
  std::uint32_t mask = 1;

  auto consider = [&](double cut_value, double pi_side, std::uint32_t side_mask) {
    if (pi_side <= 0.5 && pi_side > 0.0) {
      double phi = cut_value / pi_side;
      if (phi < best) {
        best = phi;
        best_mask = side_mask;
      }
    }
  };
  consider(cut, pi_s, mask);
  consider(cut, 1.0 - pi_s, ~mask & ((m < 32 ? (1u << m) : 0u) - 1u));

  std::uint32_t gray_prev = 0;
  for (std::uint32_t g = 1; g < count; ++g) {
    std::uint32_t gray = g ^ (g >> 1);
    std::uint32_t changed = gray ^ gray_prev;
    gray_prev = gray;
    int z = 1;
    while (!((changed >> (z - 1)) & 1u)) ++z;  // toggled state index z in 1..m-1

    if (!in_s[z]) {
      // z joins S: arcs x->z leave the cut, arcs z->y (y outside) join it
      for (int w = 0; w < m; ++w) {
        if (w == z) continue;
        if (in_s[w])
          cut -= Q(w, z);
        else
          cut += Q(z, w);
      }
      in_s[z] = 1;
      pi_s += pi(z);
      mask |= (1u << z);
    } else {
      for (int w = 0; w < m; ++w) {
        if (w == z) continue;
        if (in_s[w])
          cut += Q(w, z);
        else
          cut -= Q(z, w);
      }
      in_s[z] = 0;
      pi_s -= pi(z);
      mask &= ~(1u << z);
    }
    std::uint32_t full = (m < 32 ? (1u << m) : 0u) - 1u;
    consider(cut, pi_s, mask);
    consider(cut, 1.0 - pi_s, ~mask & full);
  }

  CheegerResult out;
  out.phi_star = best;
  for (int v = 0; v < m; ++v)
    if ((best_mask >> v) & 1u) out.argmin_states.push_back(v);
  return out;
}

CheegerResult cheeger_constant(const TransitionMatrix& m, const Eigen::VectorXd& pi, int cap) {
  return cheeger_constant(m.P, pi, cap);
}

double cheeger_upper_bound(double phi_star, double pi_min, double eps) {
  return 2.0 * std::log(1.0 / (2.0 * eps * std::sqrt(pi_min))) /
         std::log(2.0 / (2.0 - phi_star * phi_star));
}

CheegerSandwich cheeger_sandwich(const TransitionMatrix& m, const Eigen::VectorXd& pi,
                                 double eps, int cheeger_cap) {
  Eigen::MatrixXd dense(m.P);
  for (Eigen::Index i = 0; i < dense.rows(); ++i)
    if (dense(i, i) < 0.5 - 1e-12)
      throw std::invalid_argument("upper bound needs P(x,x) >= 1/2; pass the lazy chain");
  CheegerResult ch = cheeger_constant(m.P, pi, cheeger_cap);
  CheegerSandwich out;
  out.phi_star = ch.phi_star;
  out.lower = 1.0 / (4.0 * ch.phi_star);
  out.upper = cheeger_upper_bound(ch.phi_star, pi.minCoeff(), eps);
  return out;
}

double check_detailed_balance(const SparseRowMatrix& P, const Eigen::VectorXd& pi) {
  double worst = 0.0;
  for (int r = 0; r < P.outerSize(); ++r) {
    for (SparseRowMatrix::InnerIterator it(P, r); it; ++it) {
      double residual = std::abs(pi(r) * it.value() - pi(it.col()) * P.coeff(it.col(), r));
      if (residual > worst) worst = residual;
    }
  }
  return worst;
}

double check_detailed_balance(const TransitionMatrix& m, const Eigen::VectorXd& pi) {
  return check_detailed_balance(m.P, pi);
}

double CycleProducts::forward() const { return std::exp(log_forward); }
double CycleProducts::reverse() const { return std::exp(log_reverse); }
double CycleProducts::log_gap() const { return std::abs(log_forward - log_reverse); }

namespace {

// log P(a, b) for one-step neighbor configurations, exact aggregation for a == b.
double log_transition_probability(const ArwKernel& kernel, const Config& a, const Config& b) {
  const int k = kernel.graph.k;
  int from = -1, to = -1;
  for (int v = 0; v < k; ++v) {
    int diff = b(v) - a(v);
    if (diff == 0) continue;
    if (diff == -1 && from < 0)
      from = v;
    else if (diff == 1 && to < 0)
      to = v;
    else
      throw std::invalid_argument("cycle states are not one-step neighbors");
  }
  if ((from < 0) != (to < 0))
    throw std::invalid_argument("cycle states are not one-step neighbors");

  if (from < 0) {  // a == b: aggregated stay probability
    double p = 0.0;
    for (int i = 0; i < k; ++i) {
      if (a(i) == 0) continue;
      MoveDistribution md = particle_move_distribution(kernel, a, i);
      for (std::size_t s = 0; s < md.support.size(); ++s)
        if (md.support[s] == i) p += (static_cast<double>(a(i)) / kernel.n) * md.probabilities(s);
    }
    if (kernel.lazy) p = 0.5 + 0.5 * p;
    if (p <= 0.0) throw std::invalid_argument("zero-probability step in cycle");
    return std::log(p);
  }

  if (!kernel.graph.has_edge(from, to))
    throw std::invalid_argument("zero-probability step in cycle (vertices not adjacent)");
  if (a(from) < 1) throw std::invalid_argument("zero-probability step in cycle");

  // log of (x(from)/n) * exp(w_to) / sum exp(w), stabilized by the max shift
  const double scale = kernel.beta / kernel.n;
  const auto& nb = kernel.graph.neighbors(from);
  double wmax = scale * (a(from) - 1);
  for (int j : nb) wmax = std::max(wmax, scale * a(j));
  double z = std::exp(scale * (a(from) - 1) - wmax);
  for (int j : nb) z += std::exp(scale * a(j) - wmax);
  double logp = std::log(static_cast<double>(a(from)) / kernel.n) +
                (scale * a(to) - wmax) - std::log(z);
  if (kernel.lazy) logp += std::log(0.5);
  return logp;
}

}  // namespace

CycleProducts kolmogorov_cycle_products(const ArwKernel& kernel,
                                        const std::vector<Config>& cycle) {
  if (cycle.size() < 2) throw std::invalid_argument("cycle needs at least two states");
  CycleProducts out{0.0, 0.0};
  const std::size_t L = cycle.size();
  for (std::size_t t = 0; t < L; ++t) {
    const Config& a = cycle[t];
    const Config& b = cycle[(t + 1) % L];
    out.log_forward += log_transition_probability(kernel, a, b);
    out.log_reverse += log_transition_probability(kernel, b, a);
  }
  return out;
}

double pi_min_analytic_log_bound(const ArwKernel& kernel) {
  const double beta = kernel.beta;
  const int delta_max = max_degree(kernel.graph);
  // log(Delta + e^beta) without overflow for large beta
  double log_denom_term = beta > 0 ? beta + std::log1p(delta_max * std::exp(-beta))
                                   : std::log(delta_max + std::exp(beta));
  double log_step = -(std::log(static_cast<double>(kernel.n)) + log_denom_term);
  return static_cast<double>(kernel.n) * diameter(kernel.graph) * log_step;
}

Eigen::VectorXd max_occupancy_vertex_mass(const StateSpace& space, const Eigen::VectorXd& pi) {
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(space.k());
  for (std::int64_t r = 0; r < space.size(); ++r) {
    const Config& x = space.state(r);
    int m = x.maxCoeff();
    for (int v = 0; v < space.k(); ++v)
      if (x(v) == m) mass(v) += pi(r);
  }
  return mass;
}

}  // namespace arw
