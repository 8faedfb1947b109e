#include "arw/zchain.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace arw {

std::pair<double, double> compute_pq(double beta, double delta, int Delta, std::int64_t n) {
  if (beta < 0) throw std::invalid_argument("compute_pq needs beta >= 0");
  if (!(delta > 0 && delta < 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2)");
  if (Delta < 1) throw std::invalid_argument("Delta must be at least 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");

  double p = 1.0 / (std::exp(beta * delta) + Delta);
  // q = A/(A + e^{beta delta} + Delta - 1) with A = e^{beta(1-delta) - beta/n},
  // computed as 1/(1 + (e^{beta delta} + Delta - 1)/A) so large beta cannot overflow
  double neg_log_a = -(beta * (1.0 - delta) - beta / static_cast<double>(n));
  double q = 1.0 / (1.0 + std::exp(beta * delta + neg_log_a) +
                    (Delta - 1) * std::exp(neg_log_a));
  if (p >= q)
    throw std::domain_error("comparison chain invalid in this regime: p >= q (p=" +
                            std::to_string(p) + ", q=" + std::to_string(q) + ")");
  return {p, q};
}

ZChainParams z_params_from_model(int D, double beta, double delta, int Delta, std::int64_t n) {
  if (D < 1) throw std::invalid_argument("D must be at least 1");
  auto [p, q] = compute_pq(beta, delta, Delta, n);
  ZChainParams z;
  z.D = D;
  z.p = p;
  z.q = q;
  z.beta = beta;
  z.delta = delta;
  z.Delta = Delta;
  z.n = n;
  return z;
}

ZChainParams z_params_direct(int D, double p, double q, std::int64_t n) {
  if (D < 1) throw std::invalid_argument("D must be at least 1");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0, 1)");
  if (!(q > p && q <= 1)) throw std::invalid_argument("need p < q <= 1");
  ZChainParams z;
  z.D = D;
  z.p = p;
  z.q = q;
  z.n = n;
  return z;
}

Eigen::MatrixXd z_single_particle_matrix(const ZChainParams& params) {
  const int D = params.D;
  const double p = params.p, q = params.q;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(D + 1, D + 1);
  if (D == 1) {
    P << q, 1 - q, q, 1 - q;
    return P;
  }
  P(0, 0) = q;
  P(0, 1) = 1 - q;
  P(1, 0) = q;
  P(1, 2) = 1 - q;
  for (int d = 2; d <= D - 1; ++d) {
    P(d, d - 1) = p;
    P(d, d + 1) = 1 - p;
  }
  P(D, D - 1) = p;
  P(D, D) = 1 - p;
  return P;
}

Eigen::VectorXd z_stationary(const ZChainParams& params) {
  const int D = params.D;
  const double p = params.p, q = params.q;
  Eigen::VectorXd lambda(D + 1);
  if (D == 1) {
    lambda << q, 1 - q;
    return lambda;
  }
  if (q == 1.0) {  // absorbing origin, the degenerate limit
    lambda.setZero();
    lambda(0) = 1.0;
    return lambda;
  }
  // unnormalized weights from the balance recursion, anchored at lambda(D) = 1
  const double r = p / (1 - p);
  for (int i = 0; i <= D - 2; ++i) lambda(D - i) = std::pow(r, i);
  lambda(1) = (p / (1 - q)) * std::pow(r, D - 2);
  lambda(0) = (p * q / ((1 - q) * (1 - q))) * std::pow(r, D - 2);
  lambda /= lambda.sum();
  return lambda;
}

double z_lambda0_closed_form(const ZChainParams& params) {
  const int D = params.D;
  const double p = params.p, q = params.q;
  if (D == 1) return q;
  const double r = p / (1 - p);
  double geometric = r == 1.0 ? static_cast<double>(D - 1)
                              : (1.0 - std::pow(r, D - 1)) / (1.0 - r);
  double bracket = 1.0 + ((1.0 - q) * (1.0 - q) / p) * std::pow(r, 2 - D) * geometric;
  return q / bracket;
}

double expected_occupancy_zero(const ZChainParams& params) {
  if (params.n < 1)
    throw std::invalid_argument("expected occupancy needs the particle count n in params");
  return z_lambda0_closed_form(params) * static_cast<double>(params.n);
}

HittingResult simulate_z_hitting(const ZChainParams& params, std::int64_t n,
                                 double threshold_delta, Xoshiro256pp& rng,
                                 std::int64_t max_steps) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(threshold_delta > 0 && threshold_delta < 1))
    throw std::invalid_argument("threshold delta must lie in (0, 1)");
  const int D = params.D;
  const double p = params.p, q = params.q;
  const double threshold = (1.0 - threshold_delta) * static_cast<double>(n);

  std::vector<std::int64_t> count(D + 1, 0);
  count[0] = n;
  HittingResult out;
  out.max_steps = max_steps;
  if (static_cast<double>(count[0]) <= threshold) {
    out.hit = true;
    return out;
  }
  for (std::int64_t t = 1; t <= max_steps; ++t) {
    auto r = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    int pos = 0;
    std::int64_t cum = 0;
    for (; pos <= D; ++pos) {
      cum += count[pos];
      if (r < cum) break;
    }
    double u = rng.next_double();
    int next = pos;
    if (D == 1) {
      next = (u < q) ? 0 : 1;  // same law from both endpoints
    } else if (pos == 0) {
      next = (u < q) ? 0 : 1;
    } else if (pos == 1) {
      next = (u < q) ? 0 : 2;
    } else if (pos < D) {
      next = (u < p) ? pos - 1 : pos + 1;
    } else {
      next = (u < p) ? D - 1 : D;
    }
    if (next != pos) {
      --count[pos];
      ++count[next];
    }
    if (static_cast<double>(count[0]) <= threshold) {
      out.hit = true;
      out.steps = t;
      return out;
    }
  }
  out.hit = false;
  out.steps = max_steps;
  return out;
}

double concentration_beta_threshold(int D, int Delta, std::int64_t n, double delta,
                                    double eps_bar, double beta_cap) {
  if (!(eps_bar > 0 && eps_bar < delta / 2))
    throw std::invalid_argument("need 0 < eps_bar < delta/2");
  const double target = 1.0 - delta + eps_bar;
  auto satisfied = [&](double beta) {
    try {
      ZChainParams z = z_params_from_model(D, beta, delta, Delta, n);
      return z_lambda0_closed_form(z) >= target;
    } catch (const std::domain_error&) {
      return false;
    }
  };
  double hi = 1.0;
  while (!satisfied(hi)) {
    hi *= 2.0;
    if (hi > beta_cap)
      throw std::runtime_error("no beta below the cap reaches the concentration target");
  }
  double lo = hi / 2.0;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (satisfied(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace arw
