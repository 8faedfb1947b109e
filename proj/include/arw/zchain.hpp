#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "arw/rng.hpp"

namespace arw {

// Single-particle line chain on {0..D}: inward probability p away from the
// origin, q at positions 0 and 1. Lower-bounds the heavy-vertex occupancy of
// the interacting chain for beta large.
struct ZChainParams {
  int D = 1;
  double p = 0.0;
  double q = 0.0;
  // generating model inputs, echoed in outputs (0/NaN when constructed directly)
  double beta = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  int Delta = 0;
  std::int64_t n = 0;
};

// p = 1/(e^{beta delta} + Delta),
// q = e^{beta(1-delta) - beta/n} / (e^{beta(1-delta) - beta/n} + e^{beta delta} + Delta - 1).
// Throws if the comparison construction is invalid (p >= q).
std::pair<double, double> compute_pq(double beta, double delta, int Delta, std::int64_t n);

ZChainParams z_params_from_model(int D, double beta, double delta, int Delta, std::int64_t n);
ZChainParams z_params_direct(int D, double p, double q, std::int64_t n = 0);

// (D+1) x (D+1) single-particle transition matrix (figures' line chain).
Eigen::MatrixXd z_single_particle_matrix(const ZChainParams& params);

// Full stationary vector from the balance recursion, normalized.
Eigen::VectorXd z_stationary(const ZChainParams& params);

// lambda(0) evaluated from the closed form exactly as printed
// (q for D = 1; the bracketed geometric-sum expression for D >= 2).
double z_lambda0_closed_form(const ZChainParams& params);

// E[Z(0)] at stationarity = lambda(0) * n; requires params.n > 0.
double expected_occupancy_zero(const ZChainParams& params);

struct HittingResult {
  bool hit = false;
  std::int64_t steps = 0;  // particle-selection steps until occupancy(0) <= (1-delta) n
  std::int64_t max_steps = 0;
};

// All n particles start at 0; one uniformly chosen particle moves per step.
HittingResult simulate_z_hitting(const ZChainParams& params, std::int64_t n,
                                 double threshold_delta, Xoshiro256pp& rng,
                                 std::int64_t max_steps);

// Least beta (doubling bracket + bisection) with valid (p, q) and
// lambda(0) >= 1 - delta + eps_bar. Throws if none exists below beta_cap.
double concentration_beta_threshold(int D, int Delta, std::int64_t n, double delta,
                                    double eps_bar, double beta_cap = 1e7);

}  // namespace arw
