#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "arw/dynamics.hpp"
#include "arw/exact.hpp"
#include "arw/graph.hpp"
#include "arw/state_space.hpp"

namespace arw {

// Expected meeting time of two independent stay-or-move walks, one value per
// vertex pair. A contracting metric for the single-walk kernel Q.
struct MeetingTimeMetric {
  Eigen::MatrixXd d;
  double d_max = 0.0;           // max over all pairs
  double d_max_adjacent = 0.0;  // max over graph edges
};

MeetingTimeMetric meeting_time_metric(const Graph& g);

// Uniform stay-or-move kernel Q(i, .) on the vertex set.
Eigen::VectorXd uniform_walk_row(const Graph& g, int i);

enum class VertexMetric { MeetingTime, Unit };
enum class EdgePolicy { AllPairs, AdjacentOnly };

// Optimal transport plan between two discrete distributions with an explicit
// dual certificate (feasibility + complementary slackness + zero gap).
struct TransportPlan {
  struct Entry {
    int from, to;
    double mass;
  };
  std::vector<Entry> flows;
  double value = 0.0;
  Eigen::VectorXd dual_u, dual_v;
  double dual_value = 0.0;
  double marginal_residual = 0.0;
  double dual_feasibility_violation = 0.0;
  double slackness_violation = 0.0;
  double duality_gap = 0.0;

  bool certified(double tol = 1e-9) const {
    return marginal_residual <= tol && dual_feasibility_violation <= tol &&
           slackness_violation <= tol && duality_gap <= tol;
  }
};

// Kantorovich problem min sum z(a,b) cost(a,b) subject to the marginals,
// solved by successive shortest paths with potentials. Throws when the
// certificate fails (solver bug) or the marginals mismatch.
TransportPlan transport_lp(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                           const Eigen::MatrixXd& cost, double certify_tol = 1e-9);

// Path metric rho on configurations induced by the configuration graph H of
// the chosen edge policy with edge lengths from the chosen vertex metric.
// Exact for arbitrary pairs (vertex-level optimal transport of the occupancy
// difference); greedy_upper_bound is the cheap diagnostic decomposition.
class ConfigurationMetric {
 public:
  ConfigurationMetric(const Graph& g, VertexMetric metric, EdgePolicy policy);

  double vertex_cost(int i, int j) const { return cost_(i, j); }
  double edge_length(int i, int j) const { return cost_(i, j); }
  double operator()(const Config& x, const Config& y) const;
  double greedy_upper_bound(const Config& x, const Config& y) const;
  const Eigen::MatrixXd& vertex_costs() const { return cost_; }

 private:
  Eigen::MatrixXd cost_;
};

// W_rho^P between the one-step laws from x and y, with rho evaluated exactly
// on the union of the two supports.
TransportPlan wasserstein_between_steps(const ArwKernel& kernel, const Config& x,
                                        const Config& y, const ConfigurationMetric& rho);

struct EdgeRatio {
  Config x, y;
  int i = -1, j = -1;  // y = x - e_i + e_j
  double rho = 0.0;
  double wasserstein = 0.0;
  double ratio = 0.0;
};

struct ContractionReport {
  VertexMetric metric;
  EdgePolicy policy;
  double max_ratio = 0.0;
  double delta = 1.0;  // 1 - max_ratio
  EdgeRatio worst;
  std::size_t edges_checked = 0;
};

ContractionReport contraction_report(const ArwKernel& kernel, const StateSpace& space,
                                     VertexMetric metric, EdgePolicy policy);

struct NoContractionResult {
  double lp_value = 0.0;
  double dual_value = 0.0;
  bool certified = false;
  Config x, y;
};

// The 4-path instance: beta = 0, y = x - e_1 + e_2 (0-indexed middle vertices),
// unit metric, adjacent-only policy. The certified optimum equals 1.
NoContractionResult no_contraction_check(int n = 5);

struct TvLemmaAudit {
  // TV(P_x(i,.), Q(i,.)) vs (e^{beta/2} - 1)/(e^{beta/2} + 1), beta >= 0
  bool close_checked = false;
  double close_max_tv = 0.0;
  double close_bound = 0.0;
  // TV(P_x(v,.), P_y(v,.)) over neighboring configurations vs (Delta+1) beta / n
  bool same_vertex_checked = false;
  double same_vertex_max_tv = 0.0;
  double same_vertex_bound = 0.0;
  // complete graph, beta < 0, pairs inside C(lambda) vs (-5 beta/n)/(2+(k-2)e^{2 lambda beta})
  bool complete_negative_checked = false;
  bool proviso_ok = false;  // n >= -3 beta / log(5/4)
  double lambda = 0.0;
  double complete_negative_max_tv = 0.0;
  double complete_negative_bound = 0.0;
  std::size_t pairs_in_window = 0;
};

TvLemmaAudit tv_lemma_audit(const ArwKernel& kernel, const StateSpace& space,
                            std::optional<double> lambda = std::nullopt);

// lambda_beta = log(1 - delta)/(4 beta) for beta < 0 (positive value).
double default_lambda_beta(double beta, double delta = 0.5);

// Sufficient contraction condition on the complete graph: -10 beta < 2 + (k-2) e^{4 lambda beta}.
bool complete_graph_contraction_condition(double beta, int k, double lambda);

// Expected rho-distance of the synchronous pairing coupling on the H-edge
// (x, y = x - e_i + e_j): an upper bound on the Wasserstein optimum.
double synchronous_coupling_expected_distance(const ArwKernel& kernel, const Config& x,
                                              int i, int j, const ConfigurationMetric& rho);

}  // namespace arw
