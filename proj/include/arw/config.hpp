#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace arw {

// One CLI invocation, serializable so experiments can be replayed from a
// JSON file. The seed is echoed into every output artifact.
struct ExperimentConfig {
  std::string command;  // simulate | analyze | zchain | coupling | suite

  std::string graph;
  int n = 0;
  double beta = 0.0;  // -inf selects the hard-repulsion dynamics
  bool lazy = false;
  std::uint64_t seed = 1;
  std::string out;
  int threads = 1;

  // simulate
  std::int64_t steps = 0;
  std::int64_t stride = 1;

  // analyze
  std::string analysis;  // stationary | mixing-time | cheeger | reversibility
  double eps = 0.25;

  // zchain
  int D = 1;
  double delta = 0.0;
  int Delta = 1;
  std::int64_t zn = 0;
  std::string zmode;  // stationary | hitting
  int replicas = 1;
  std::int64_t max_steps = 100'000'000;
  std::optional<double> threshold_delta;

  // coupling
  std::string coupling_mode;  // no-contraction-check | contraction | tv-audit
  std::string metric = "meeting-time";
  std::string policy = "all-pairs";
  std::optional<double> lambda;

  // suite
  std::string suite_name;
};

nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

// "-inf" token <-> the IEEE value; finite betas stay numeric
nlohmann::json beta_to_json(double beta);
double beta_from_json(const nlohmann::json& j);

// Executes the experiment, writing artifacts to c.out. Returns the process
// exit status (nonzero only for failed suite checks).
int run(const ExperimentConfig& c, std::ostream& log);

}  // namespace arw
