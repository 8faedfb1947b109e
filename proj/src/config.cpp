#include "arw/config.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "arw/coupling.hpp"
#include "arw/dynamics.hpp"
#include "arw/exact.hpp"
#include "arw/graph.hpp"
#include "arw/parallel.hpp"
#include "arw/suite.hpp"
#include "arw/zchain.hpp"

namespace arw {

using nlohmann::json;

json beta_to_json(double beta) {
  if (std::isinf(beta) && beta < 0) return "-inf";
  return beta;
}

double beta_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "-inf") return kMinusInfinity;
    throw std::invalid_argument("beta string must be \"-inf\"");
  }
  return j.get<double>();
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["graph"] = c.graph;
  j["n"] = c.n;
  j["beta"] = beta_to_json(c.beta);
  j["lazy"] = c.lazy;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["threads"] = c.threads;
  j["steps"] = c.steps;
  j["stride"] = c.stride;
  j["analysis"] = c.analysis;
  j["eps"] = c.eps;
  j["D"] = c.D;
  j["delta"] = c.delta;
  j["Delta"] = c.Delta;
  j["zn"] = c.zn;
  j["zmode"] = c.zmode;
  j["replicas"] = c.replicas;
  j["max_steps"] = c.max_steps;
  if (c.threshold_delta) j["threshold_delta"] = *c.threshold_delta;
  j["coupling_mode"] = c.coupling_mode;
  j["metric"] = c.metric;
  j["policy"] = c.policy;
  if (c.lambda) j["lambda"] = *c.lambda;
  j["suite_name"] = c.suite_name;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("command", c.command);
  get("graph", c.graph);
  get("n", c.n);
  if (j.contains("beta")) c.beta = beta_from_json(j.at("beta"));
  get("lazy", c.lazy);
  get("seed", c.seed);
  get("out", c.out);
  get("threads", c.threads);
  get("steps", c.steps);
  get("stride", c.stride);
  get("analysis", c.analysis);
  get("eps", c.eps);
  get("D", c.D);
  get("delta", c.delta);
  get("Delta", c.Delta);
  get("zn", c.zn);
  get("zmode", c.zmode);
  get("replicas", c.replicas);
  get("max_steps", c.max_steps);
  if (j.contains("threshold_delta")) c.threshold_delta = j.at("threshold_delta").get<double>();
  get("coupling_mode", c.coupling_mode);
  get("metric", c.metric);
  get("policy", c.policy);
  if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
  get("suite_name", c.suite_name);
  return c;
}

namespace {

std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("--out is required for this command");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  return f;
}

void write_config_header(std::ostream& os, const ExperimentConfig& c) {
  os << "# seed: " << c.seed << "\n";
  os << "# graph: " << c.graph << "\n";
  os << "# beta: " << beta_to_json(c.beta).dump() << "\n";
  os << "# n: " << c.n << "\n";
}

json base_report(const ExperimentConfig& c) {
  json j;
  j["config"] = config_to_json(c);
  j["seed"] = c.seed;
  return j;
}

int run_simulate(const ExperimentConfig& c, std::ostream& log) {
  Graph g = parse_graph_spec(c.graph);
  ArwKernel kernel(g, c.n, c.beta, c.lazy);
  Xoshiro256pp rng = Xoshiro256pp::stream(c.seed, 0);
  auto out = open_output(c.out);
  write_config_header(out, c);
  out << "# lazy: " << (c.lazy ? 1 : 0) << "\n";
  out << "# steps: " << c.steps << "\n";
  out << "# stride: " << c.stride << "\n";
  out << "t";
  for (int v = 0; v < g.k; ++v) out << ",x" << v;
  out << "\n";
  Config x0 = uniform_initial_configuration(g, c.n);
  simulate_trajectory(kernel, x0, c.steps, c.stride, rng,
                      [&](std::int64_t t, const Config& x) {
                        out << t;
                        for (int v = 0; v < g.k; ++v) out << ',' << x(v);
                        out << "\n";
                      });
  log << "wrote trajectory to " << c.out << "\n";
  return 0;
}

int run_analyze(const ExperimentConfig& c, std::ostream& log) {
  Graph g = parse_graph_spec(c.graph);
  ArwKernel kernel(g, c.n, c.beta, c.lazy);
  auto space = enumerate_configurations(g.k, c.n);
  TransitionMatrix matrix = build_matrix(kernel, space);
  json report = base_report(c);
  report["tolerances"] = {{"row_stochasticity", 1e-12},
                          {"stationary_residual", 1e-12},
                          {"reversibility_threshold", 1e-6}};

  Eigen::VectorXd pi = stationary(matrix);
  if (c.analysis == "stationary") {
    report["pi"] = std::vector<double>(pi.data(), pi.data() + pi.size());
    report["residual"] = (matrix.P.transpose() * pi - pi).lpNorm<1>();
  } else if (c.analysis == "mixing-time") {
    report["eps"] = c.eps;
    report["t_mix"] = mixing_time(matrix, pi, c.eps);
  } else if (c.analysis == "cheeger") {
    CheegerResult ch = cheeger_constant(matrix, pi);
    report["phi_star"] = ch.phi_star;
    report["argmin_set"] = ch.argmin_states;
    report["pi_min"] = pi.minCoeff();
    report["pi_min_analytic_log_bound"] = pi_min_analytic_log_bound(kernel);
  } else if (c.analysis == "reversibility") {
    double residual = check_detailed_balance(matrix, pi);
    report["db_residual"] = residual;
    report["reversible"] = residual <= 1e-10;
  } else {
    throw std::invalid_argument("unknown analysis: " + c.analysis);
  }
  auto out = open_output(c.out);
  out << report.dump(2) << "\n";
  log << "wrote analysis to " << c.out << "\n";
  return 0;
}

int run_zchain(const ExperimentConfig& c, std::ostream& log) {
  ZChainParams params = z_params_from_model(c.D, c.beta, c.delta, c.Delta, c.zn);
  if (c.zmode == "stationary") {
    json report = base_report(c);
    report["D"] = params.D;
    report["p"] = params.p;
    report["q"] = params.q;
    Eigen::VectorXd lambda = z_stationary(params);
    report["lambda"] = std::vector<double>(lambda.data(), lambda.data() + lambda.size());
    report["lambda0_closed_form"] = z_lambda0_closed_form(params);
    report["expected_occupancy_zero"] = expected_occupancy_zero(params);
    auto out = open_output(c.out);
    out << report.dump(2) << "\n";
  } else if (c.zmode == "hitting") {
    double threshold = c.threshold_delta.value_or(c.delta);
    auto out = open_output(c.out);
    write_config_header(out, c);
    out << "# D: " << c.D << "\n# delta: " << c.delta << "\n# Delta: " << c.Delta
        << "\n# p: " << params.p << "\n# q: " << params.q
        << "\n# threshold_delta: " << threshold << "\n# max_steps: " << c.max_steps
        << "\n# replicas: " << c.replicas << "\n";
    out << "replica,hit,steps\n";
    std::vector<HittingResult> results(c.replicas);
    parallel_for(c.replicas, c.threads, [&](int r) {
      Xoshiro256pp rng = Xoshiro256pp::stream(c.seed, static_cast<std::uint64_t>(r));
      results[r] = simulate_z_hitting(params, c.zn, threshold, rng, c.max_steps);
    });
    for (int r = 0; r < c.replicas; ++r)
      out << r << ',' << (results[r].hit ? 1 : 0) << ',' << results[r].steps << "\n";
  } else {
    throw std::invalid_argument("zchain mode must be stationary or hitting");
  }
  log << "wrote zchain output to " << c.out << "\n";
  return 0;
}

VertexMetric parse_metric(const std::string& s) {
  if (s == "meeting-time") return VertexMetric::MeetingTime;
  if (s == "unit") return VertexMetric::Unit;
  throw std::invalid_argument("metric must be meeting-time or unit");
}

EdgePolicy parse_policy(const std::string& s) {
  if (s == "all-pairs") return EdgePolicy::AllPairs;
  if (s == "adjacent-only") return EdgePolicy::AdjacentOnly;
  throw std::invalid_argument("policy must be all-pairs or adjacent-only");
}

int run_coupling(const ExperimentConfig& c, std::ostream& log) {
  json report = base_report(c);
  if (c.coupling_mode == "no-contraction-check") {
    NoContractionResult r = no_contraction_check(c.n >= 5 ? c.n : 5);
    report["lp_value"] = r.lp_value;
    report["dual_value"] = r.dual_value;
    report["certified"] = r.certified;
    report["x"] = std::vector<int>(r.x.data(), r.x.data() + r.x.size());
    report["y"] = std::vector<int>(r.y.data(), r.y.data() + r.y.size());
  } else if (c.coupling_mode == "contraction") {
    Graph g = parse_graph_spec(c.graph);
    ArwKernel kernel(g, c.n, c.beta, false);
    StateSpace space(g.k, c.n);
    ContractionReport r =
        contraction_report(kernel, space, parse_metric(c.metric), parse_policy(c.policy));
    report["max_ratio"] = r.max_ratio;
    report["delta"] = r.delta;
    report["edges_checked"] = r.edges_checked;
    report["worst_edge"] = {
        {"x", std::vector<int>(r.worst.x.data(), r.worst.x.data() + r.worst.x.size())},
        {"y", std::vector<int>(r.worst.y.data(), r.worst.y.data() + r.worst.y.size())},
        {"i", r.worst.i},
        {"j", r.worst.j},
        {"rho", r.worst.rho},
        {"wasserstein", r.worst.wasserstein}};
  } else if (c.coupling_mode == "tv-audit") {
    Graph g = parse_graph_spec(c.graph);
    ArwKernel kernel(g, c.n, c.beta, false);
    StateSpace space(g.k, c.n);
    TvLemmaAudit audit = tv_lemma_audit(kernel, space, c.lambda);
    report["close"] = {{"checked", audit.close_checked},
                       {"max_tv", audit.close_max_tv},
                       {"bound", audit.close_bound}};
    report["same_vertex"] = {{"checked", audit.same_vertex_checked},
                             {"max_tv", audit.same_vertex_max_tv},
                             {"bound", audit.same_vertex_bound}};
    report["complete_negative"] = {{"checked", audit.complete_negative_checked},
                                   {"proviso_ok", audit.proviso_ok},
                                   {"lambda", audit.lambda},
                                   {"max_tv", audit.complete_negative_max_tv},
                                   {"bound", audit.complete_negative_bound},
                                   {"pairs_in_window", audit.pairs_in_window}};
  } else {
    throw std::invalid_argument("unknown coupling mode: " + c.coupling_mode);
  }
  auto out = open_output(c.out);
  out << report.dump(2) << "\n";
  log << "wrote coupling report to " << c.out << "\n";
  return 0;
}

int run_suite_command(const ExperimentConfig& c, std::ostream& log) {
  SuiteOptions opts;
  opts.out_dir = c.out.empty() ? "." : c.out;
  opts.threads = c.threads;
  auto results = run_suite(c.suite_name, opts);
  for (const auto& r : results) {
    const char* tag = r.status == CheckResult::Status::Pass   ? "PASS"
                      : r.status == CheckResult::Status::Warn ? "WARN"
                                                              : "FAIL";
    log << "[" << tag << "] " << r.id << " " << r.name << " — " << r.detail << "\n";
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& log) {
  if (c.command == "simulate") return run_simulate(c, log);
  if (c.command == "analyze") return run_analyze(c, log);
  if (c.command == "zchain") return run_zchain(c, log);
  if (c.command == "coupling") return run_coupling(c, log);
  if (c.command == "suite") return run_suite_command(c, log);
  throw std::invalid_argument("unknown command: " + c.command);
}

}  // namespace arw
