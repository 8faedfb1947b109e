#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <memory>
#include <vector>

#include "arw/dynamics.hpp"
#include "arw/state_space.hpp"

namespace arw {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Row-stochastic transition matrix over an enumerated state space.
struct TransitionMatrix {
  std::shared_ptr<const StateSpace> space;
  SparseRowMatrix P;
};

TransitionMatrix build_matrix(const ArwKernel& kernel,
                              std::shared_ptr<const StateSpace> space);
TransitionMatrix lazy_matrix(const TransitionMatrix& m);  // (P + I)/2

enum class StationaryMethod { Auto, Direct, PowerIteration };

struct StationaryOptions {
  StationaryMethod method = StationaryMethod::Auto;
  std::size_t direct_cap = 2000;
  double power_tol = 1e-13;
  std::int64_t power_max_iters = 10'000'000;
  double residual_tol = 1e-12;  // required |pi P - pi|_1 on return
};

Eigen::VectorXd stationary(const SparseRowMatrix& P, const StationaryOptions& opts = {});
Eigen::VectorXd stationary(const TransitionMatrix& m, const StationaryOptions& opts = {});

// pi(x) ~ multinomial(n; x) * exp(beta/(2n) sum x(i)^2), evaluated in log space
// over the lexicographic StateSpace(k, n) order.
Eigen::VectorXd complete_graph_stationary(int k, int n, double beta);

// Half L1 distance between two distribution vectors of equal length.
template <typename D1, typename D2>
double tv_distance(const Eigen::MatrixBase<D1>& mu, const Eigen::MatrixBase<D2>& nu) {
  return 0.5 * (mu.derived() - nu.derived()).template lpNorm<1>();
}

struct TvOptions {
  std::size_t dense_cap = 5000;        // refuse larger state spaces
  std::size_t square_cap = 1500;       // binary-exponentiation path
  std::int64_t t_cap = std::int64_t{1} << 50;
};

// Worst-case-start distance d(t) = max_x TV(P^t(x,.), pi), exact.
double worst_case_tv(const TransitionMatrix& m, const Eigen::VectorXd& pi, std::int64_t t,
                     const TvOptions& opts = {});

// Least t with d(t) <= eps; doubling then bisection on the monotone d(t).
std::int64_t mixing_time(const TransitionMatrix& m, const Eigen::VectorXd& pi, double eps,
                         const TvOptions& opts = {});

struct CheegerResult {
  double phi_star;
  std::vector<std::int64_t> argmin_states;  // an argmin S with pi(S) <= 1/2
};

// Exhaustive minimization over subsets; requires |Omega| <= cap (<= 24).
CheegerResult cheeger_constant(const SparseRowMatrix& P, const Eigen::VectorXd& pi,
                               int cap = 24);
CheegerResult cheeger_constant(const TransitionMatrix& m, const Eigen::VectorXd& pi,
                               int cap = 24);

struct CheegerSandwich {
  double phi_star;
  double lower;  // 1/(4 phi*), lower bound on t_mix(1/4)
  double upper;  // 2 log(1/(2 eps sqrt(pi_min))) / log(2/(2 - phi*^2)), lazy chains
};

// `m` must satisfy P(x,x) >= 1/2 for every state (use the lazy kernel).
CheegerSandwich cheeger_sandwich(const TransitionMatrix& m, const Eigen::VectorXd& pi,
                                 double eps, int cheeger_cap = 24);
double cheeger_upper_bound(double phi_star, double pi_min, double eps);

// max over state pairs of |pi(x)P(x,y) - pi(y)P(y,x)|
double check_detailed_balance(const SparseRowMatrix& P, const Eigen::VectorXd& pi);
double check_detailed_balance(const TransitionMatrix& m, const Eigen::VectorXd& pi);

struct CycleProducts {
  double log_forward;
  double log_reverse;
  double forward() const;
  double reverse() const;
  double log_gap() const;
};

// Forward and reverse probability products around a configuration cycle;
// consecutive entries must be one-step neighbors with nonzero probability.
CycleProducts kolmogorov_cycle_products(const ArwKernel& kernel,
                                        const std::vector<Config>& cycle);

// log of (1/(n(Delta+e^beta)))^(n diam): the analytic pi_min lower bound,
// exposed for comparison against exactly computed stationary vectors.
double pi_min_analytic_log_bound(const ArwKernel& kernel);

// Per-vertex stationary mass of S_v = {x : x(v) = max_w x(w)}.
Eigen::VectorXd max_occupancy_vertex_mass(const StateSpace& space, const Eigen::VectorXd& pi);

}  // namespace arw
