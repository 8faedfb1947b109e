#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "arw/config.hpp"
#include "arw/dynamics.hpp"

using namespace arw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/arw_test_") + name;
}

}  // namespace

TEST_CASE("config round-trips through JSON losslessly") {
  ExperimentConfig c;
  c.command = "simulate";
  c.graph = "grid:8x8";
  c.n = 320;
  c.beta = 512.0625;
  c.lazy = true;
  c.seed = 987654321;
  c.out = "/tmp/x.csv";
  c.steps = 100000;
  c.stride = 64;
  c.threads = 3;
  c.analysis = "mixing-time";
  c.eps = 0.125;
  c.D = 4;
  c.delta = 1.0 / 12;
  c.Delta = 5;
  c.zn = 77;
  c.zmode = "hitting";
  c.replicas = 9;
  c.max_steps = 1234567;
  c.threshold_delta = 0.25;
  c.coupling_mode = "tv-audit";
  c.metric = "unit";
  c.policy = "adjacent-only";
  c.lambda = 0.375;
  c.suite_name = "lemmas";

  ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.beta == c.beta);
  CHECK(back.lambda == c.lambda);
  CHECK(back.threshold_delta == c.threshold_delta);

  // the -inf beta token survives the round trip
  c.beta = kMinusInfinity;
  nlohmann::json j = config_to_json(c);
  CHECK(j["beta"] == "-inf");
  ExperimentConfig back2 = config_from_json(j);
  CHECK(std::isinf(back2.beta));
  CHECK(back2.beta < 0);

  CHECK_THROWS(beta_from_json(nlohmann::json("+inf")));
}

TEST_CASE("same config and seed give byte-identical outputs") {
  ExperimentConfig c;
  c.command = "simulate";
  c.graph = "grid:2x3";
  c.n = 9;
  c.beta = 1.5;
  c.steps = 2000;
  c.stride = 50;
  c.seed = 424242;

  std::ostringstream log;
  c.out = temp_path("traj_a.csv");
  REQUIRE(run(c, log) == 0);
  c.out = temp_path("traj_b.csv");
  REQUIRE(run(c, log) == 0);
  std::string a = slurp(temp_path("traj_a.csv"));
  CHECK(a == slurp(temp_path("traj_b.csv")));
  CHECK(a.find("# seed: 424242") != std::string::npos);
  CHECK(a.find("# graph: grid:2x3") != std::string::npos);
  CHECK(a.find("# beta: 1.5") != std::string::npos);

  // a different seed changes the trajectory
  c.seed = 5;
  c.out = temp_path("traj_c.csv");
  REQUIRE(run(c, log) == 0);
  CHECK(a != slurp(temp_path("traj_c.csv")));
}

TEST_CASE("analyze reports echo the config and the requested quantity") {
  ExperimentConfig c;
  c.command = "analyze";
  c.graph = "complete:2";
  c.n = 2;
  c.beta = 0.0;
  c.analysis = "stationary";
  c.out = temp_path("analysis.json");
  std::ostringstream log;
  REQUIRE(run(c, log) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(c.out));
  CHECK(j["config"]["graph"] == "complete:2");
  CHECK(j["seed"] == 1);
  REQUIRE(j["pi"].size() == 3);
  CHECK(std::abs(j["pi"][1].get<double>() - 0.5) <= 1e-12);

  c.analysis = "reversibility";
  c.out = temp_path("rev.json");
  REQUIRE(run(c, log) == 0);
  nlohmann::json jr = nlohmann::json::parse(slurp(c.out));
  CHECK(jr["reversible"] == true);
  CHECK(jr["db_residual"].get<double>() <= 1e-12);

  c.analysis = "cheeger";
  c.out = temp_path("cheeger.json");
  REQUIRE(run(c, log) == 0);
  nlohmann::json jc = nlohmann::json::parse(slurp(c.out));
  CHECK(jc["phi_star"].get<double>() > 0);
  CHECK(jc["argmin_set"].size() >= 1);

  c.analysis = "mixing-time";
  c.eps = 0.25;
  c.out = temp_path("mix.json");
  REQUIRE(run(c, log) == 0);
  nlohmann::json jm = nlohmann::json::parse(slurp(c.out));
  CHECK(jm["t_mix"].get<std::int64_t>() >= 1);
}

TEST_CASE("zchain commands produce parameter-echoing artifacts") {
  ExperimentConfig c;
  c.command = "zchain";
  c.D = 2;
  c.beta = 8.0;
  c.delta = 1.0 / 6;
  c.Delta = 3;
  c.zn = 30;
  c.zmode = "stationary";
  c.out = temp_path("z.json");
  std::ostringstream log;
  REQUIRE(run(c, log) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(c.out));
  CHECK(j["p"].get<double>() < j["q"].get<double>());
  CHECK(j["lambda"].size() == 3);
  CHECK(std::abs(j["lambda"][0].get<double>() - j["lambda0_closed_form"].get<double>()) <= 1e-12);

  c.zmode = "hitting";
  c.replicas = 3;
  c.max_steps = 10000;
  c.out = temp_path("zhit.csv");
  REQUIRE(run(c, log) == 0);
  std::string csv = slurp(c.out);
  CHECK(csv.find("replica,hit,steps") != std::string::npos);
  CHECK(csv.find("# q: ") != std::string::npos);
}

TEST_CASE("errors surface as exceptions") {
  ExperimentConfig c;
  c.command = "frobnicate";
  std::ostringstream log;
  CHECK_THROWS(run(c, log));

  c.command = "analyze";
  c.graph = "complete:2";
  c.n = 2;
  c.analysis = "nonsense";
  c.out = temp_path("bad.json");
  CHECK_THROWS(run(c, log));

  c.command = "simulate";
  c.out = "";
  CHECK_THROWS(run(c, log));  // --out required

  c.command = "suite";
  c.suite_name = "everything";
  CHECK_THROWS(run(c, log));
}
