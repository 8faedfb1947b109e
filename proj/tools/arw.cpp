// Command-line front end: simulate, analyze, zchain, coupling, suite.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "arw/config.hpp"
#include "arw/dynamics.hpp"

namespace {

double parse_beta(const std::string& s) {
  if (s == "-inf") return arw::kMinusInfinity;
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw CLI::ValidationError("--beta", "expected a number or \"-inf\"");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attracting/Repelling Random Walks: simulation and exact analysis"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "run an experiment described by a JSON config file");

  arw::ExperimentConfig c;
  std::string beta_text = "0";

  auto add_common = [&](CLI::App* cmd, bool with_graph) {
    if (with_graph)
      cmd->add_option("--graph", c.graph, "complete:K | path:K | grid:RxC | file:PATH");
    cmd->add_option("--beta", beta_text, "attraction parameter (number or -inf)");
    cmd->add_option("--seed", c.seed, "RNG seed (echoed in outputs)");
    cmd->add_option("--out", c.out, "output path");
    cmd->add_option("--threads", c.threads, "worker threads for independent sub-runs");
  };

  auto* simulate = app.add_subcommand("simulate", "sample a trajectory, write CSV");
  add_common(simulate, true);
  simulate->add_option("--n", c.n, "particle count")->required();
  simulate->add_option("--steps", c.steps, "number of transitions")->required();
  simulate->add_option("--stride", c.stride, "CSV row stride");
  simulate->add_flag("--lazy", c.lazy, "use the lazy chain (P+I)/2");

  auto* analyze = app.add_subcommand("analyze", "exact finite-state analysis, write JSON");
  add_common(analyze, true);
  analyze->add_option("--n", c.n, "particle count")->required();
  analyze->add_flag("--lazy", c.lazy, "analyze the lazy chain");
  double mixing_eps = 0.25;
  auto* stat_flag = analyze->add_flag("--stationary", "stationary distribution");
  auto* mix_opt = analyze->add_option("--mixing-time", mixing_eps, "mixing time to the given eps");
  auto* cheeger_flag = analyze->add_flag("--cheeger", "Cheeger constant and argmin set");
  auto* rev_flag = analyze->add_flag("--reversibility", "detailed-balance residual");

  auto* zchain = app.add_subcommand("zchain", "comparison line chain: closed forms and hitting");
  add_common(zchain, false);
  zchain->add_option("--D", c.D, "line length (graph diameter)")->required();
  zchain->add_option("--delta", c.delta, "occupancy threshold delta")->required();
  zchain->add_option("--Delta", c.Delta, "maximum degree")->required();
  zchain->add_option("--n", c.zn, "particle count")->required();
  auto* z_stat = zchain->add_flag("--stationary", "closed-form stationary law");
  auto* z_hit = zchain->add_flag("--hitting", "hitting-time simulation");
  zchain->add_option("--replicas", c.replicas, "independent replicas");
  zchain->add_option("--max-steps", c.max_steps, "censoring horizon (particle steps)");
  double threshold_delta = -1;
  zchain->add_option("--threshold-delta", threshold_delta,
                     "hitting threshold (defaults to --delta)");

  auto* coupling = app.add_subcommand("coupling", "transport LP checks, write JSON");
  add_common(coupling, true);
  coupling->add_option("--n", c.n, "particle count");
  auto* nc_flag = coupling->add_flag("--no-contraction-check", "the 4-path certificate");
  auto* contr_flag = coupling->add_flag("--contraction", "per-edge Wasserstein/rho sweep");
  auto* tv_flag = coupling->add_flag("--tv-audit", "TV lemma audit");
  coupling->add_option("--metric", c.metric, "meeting-time | unit");
  coupling->add_option("--policy", c.policy, "all-pairs | adjacent-only");
  double lambda = std::numeric_limits<double>::quiet_NaN();
  coupling->add_option("--lambda", lambda, "occupancy window half-width for the audit");

  auto* suite = app.add_subcommand("suite", "scripted verification batteries");
  std::string suite_name;
  suite->add_option("name", suite_name, "lemmas | theorems | figures")->required();
  suite->add_option("--out", c.out, "directory for emitted CSVs");
  suite->add_option("--threads", c.threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot open config file: " + config_path);
      nlohmann::json j = nlohmann::json::parse(f);
      return arw::run(arw::config_from_json(j), std::cout);
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help() << std::endl;
      return 1;
    }

    c.beta = parse_beta(beta_text);
    if (simulate->parsed()) {
      c.command = "simulate";
    } else if (analyze->parsed()) {
      c.command = "analyze";
      int picked = (stat_flag->count() > 0) + (mix_opt->count() > 0) +
                   (cheeger_flag->count() > 0) + (rev_flag->count() > 0);
      if (picked != 1)
        throw std::runtime_error(
            "pick exactly one of --stationary, --mixing-time, --cheeger, --reversibility");
      if (stat_flag->count() > 0) c.analysis = "stationary";
      if (mix_opt->count() > 0) {
        c.analysis = "mixing-time";
        c.eps = mixing_eps;
      }
      if (cheeger_flag->count() > 0) c.analysis = "cheeger";
      if (rev_flag->count() > 0) c.analysis = "reversibility";
    } else if (zchain->parsed()) {
      c.command = "zchain";
      if ((z_stat->count() > 0) == (z_hit->count() > 0))
        throw std::runtime_error("pick exactly one of --stationary, --hitting");
      c.zmode = z_stat->count() > 0 ? "stationary" : "hitting";
      if (threshold_delta >= 0) c.threshold_delta = threshold_delta;
    } else if (coupling->parsed()) {
      c.command = "coupling";
      int picked = (nc_flag->count() > 0) + (contr_flag->count() > 0) + (tv_flag->count() > 0);
      if (picked != 1)
        throw std::runtime_error(
            "pick exactly one of --no-contraction-check, --contraction, --tv-audit");
      if (nc_flag->count() > 0) c.coupling_mode = "no-contraction-check";
      if (contr_flag->count() > 0) c.coupling_mode = "contraction";
      if (tv_flag->count() > 0) c.coupling_mode = "tv-audit";
      if (!std::isnan(lambda)) c.lambda = lambda;
    } else if (suite->parsed()) {
      c.command = "suite";
      c.suite_name = suite_name;
    }
    return arw::run(c, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
}
