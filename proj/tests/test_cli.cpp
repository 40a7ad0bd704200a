#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "kindsim/graph.hpp"
#include "kindsim/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& work_root() {
  static const fs::path root = [] {
    fs::path p = fs::temp_directory_path() / "kindsim_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = work_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct CliResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path log = work_root() / ("log_" + std::to_string(counter++));
  std::string cmd = env.empty() ? std::string{} : env + " ";
  cmd += std::string(KINDSIM_BIN) + " " + args + " > " + log.string() +
         " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, kindsim::read_text_file(log.string())};
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("simulate --no-such-flag").exit_code == 2);
  CHECK(run_cli("graph-gen --graph funky:3 --out " +
                fresh_dir("bad_graph").string())
            .exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("bad config files exit with 2") {
  const fs::path dir = fresh_dir("bad_config");
  const fs::path cfg = dir / "cfg.json";
  kindsim::write_text_file(cfg.string(), "{ not json");
  CHECK(run_cli("simulate --config " + cfg.string()).exit_code == 2);

  kindsim::write_text_file(cfg.string(), R"({"nope": 1})");
  CHECK(run_cli("simulate --config " + cfg.string()).exit_code == 2);
}

TEST_CASE("graph-gen writes a parseable deterministic edge list") {
  const fs::path d1 = fresh_dir("gg1");
  const CliResult r =
      run_cli("graph-gen --graph complete:4 --out " + d1.string());
  CHECK(r.exit_code == 0);
  const std::string text =
      kindsim::read_text_file((d1 / "graph.txt").string());
  CHECK(count_lines(text) == 6);
  const kindsim::Graph round = kindsim::parse_edge_list(text);
  const kindsim::Graph direct =
      kindsim::generate(kindsim::GraphSpec::complete(4), 1);
  CHECK(round.edges() == direct.edges());

  const fs::path d2 = fresh_dir("gg2");
  const fs::path d3 = fresh_dir("gg3");
  CHECK(run_cli("graph-gen --graph er:20:0.2 --seed 5 --out " + d2.string())
            .exit_code == 0);
  CHECK(run_cli("graph-gen --graph er:20:0.2 --seed 5 --out " + d3.string())
            .exit_code == 0);
  CHECK(kindsim::read_text_file((d2 / "graph.txt").string()) ==
        kindsim::read_text_file((d3 / "graph.txt").string()));
}

TEST_CASE("simulate with a zero budget dumps only the initial state") {
  const fs::path dir = fresh_dir("sim_zero");
  const CliResult r = run_cli(
      "simulate --graph complete:10 --mu-plus 0.5 --mu-minus 0.2 --budget 0 "
      "--out " +
      dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv =
      kindsim::read_text_file((dir / "trajectory.csv").string());
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind("event,t,X\n0,0,", 0) == 0);
}

TEST_CASE("simulate from plus consensus keeps X at N") {
  const fs::path dir = fresh_dir("sim_const");
  const fs::path cfg = dir / "cfg.json";
  kindsim::write_text_file(cfg.string(), R"({
    "graph": {"kind": "complete", "n": 8},
    "mu_plus": 0.5,
    "mu_minus": 0.2,
    "init": {"kind": "constant", "value": 1.0},
    "event_budget": 1000
  })");
  const CliResult r = run_cli("simulate --config " + cfg.string() + " --out " +
                              dir.string());
  CHECK(r.exit_code == 0);
  CHECK(kindsim::read_text_file((dir / "trajectory.csv").string()) ==
        "event,t,X\n0,0,8\n");
  const auto summary = nlohmann::json::parse(
      kindsim::read_text_file((dir / "summary.json").string()));
  CHECK(summary["final_X"] == 8.0);
}

TEST_CASE("simulate on K20 typically exits upward") {
  const fs::path dir = fresh_dir("sim_k20");
  const CliResult r = run_cli(
      "simulate --graph complete:20 --mu-plus 0.5 --mu-minus 0.2 "
      "--budget 1000000 --seed 1 --out " +
      dir.string());
  CHECK(r.exit_code == 0);
  const auto summary = nlohmann::json::parse(
      kindsim::read_text_file((dir / "summary.json").string()));
  const std::string cause = summary["stop_cause"];
  CHECK((cause == "HitPlus" || cause == "PlusAbsorbed"));
  CHECK(summary["events"].get<std::uint64_t>() <= 1000000);
}

TEST_CASE("sweep smoke run writes one data row") {
  const fs::path dir = fresh_dir("sweep_smoke");
  const fs::path cfg = dir / "cfg.json";
  kindsim::write_text_file(cfg.string(), R"({
    "graph": {"kind": "complete", "n": 10},
    "mu_plus": 0.5,
    "mu_minus": 0.2,
    "sweep_ns": [10],
    "replicates": 300,
    "event_budget": 100000,
    "certify": {"trajectories": 10, "random_states": 500,
                "trajectory_budget": 50000}
  })");
  const CliResult r =
      run_cli("sweep --config " + cfg.string() + " --out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = kindsim::read_text_file((dir / "sweep.csv").string());
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind("N,eps,mu_plus,mu_minus,replicates,hits_minus,hits_plus,"
                  "censored,p_hat,ci_low,ci_high,c_eps,bound\n",
                  0) == 0);
}

TEST_CASE("sweep without mu fields exits 2 naming the field") {
  const fs::path dir = fresh_dir("sweep_missing");
  const fs::path cfg = dir / "cfg.json";
  kindsim::write_text_file(cfg.string(),
                           R"({"graph": {"kind": "complete", "n": 10}})");
  const CliResult r =
      run_cli("sweep --config " + cfg.string() + " --out " + dir.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("mu_plus") != std::string::npos);
}

TEST_CASE("certify rejects equal mu with exit 1") {
  const fs::path dir = fresh_dir("cert_degenerate");
  const CliResult r = run_cli(
      "certify --graph complete:5 --mu-plus 0.5 --mu-minus 0.5 --out " +
      dir.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("degenerate drift") != std::string::npos);
}

TEST_CASE("certify is deterministic and certifies c > 1") {
  const fs::path d1 = fresh_dir("cert1");
  const fs::path d2 = fresh_dir("cert2");
  const std::string common =
      "certify --graph complete:6 --mu-plus 0.5 --mu-minus 0.2 --seed 11 ";
  CHECK(run_cli(common + "--out " + d1.string()).exit_code == 0);
  CHECK(run_cli(common + "--out " + d2.string()).exit_code == 0);
  const std::string j1 =
      kindsim::read_text_file((d1 / "certificate.json").string());
  CHECK(j1 == kindsim::read_text_file((d2 / "certificate.json").string()));
  const auto cert = nlohmann::json::parse(j1);
  CHECK(cert["c"].get<double>() > 1.0);
  CHECK(cert["max_phi"].get<double>() <= 0.0);
}

TEST_CASE("bad KINDSIM_THREADS value exits 2") {
  const CliResult r = run_cli("graph-gen --graph complete:4 --out " +
                                  fresh_dir("env_bad").string(),
                              "KINDSIM_THREADS=abc");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("KINDSIM_THREADS") != std::string::npos);
}

TEST_CASE("KINDSIM_THREADS is accepted as a fallback") {
  const CliResult r = run_cli("graph-gen --graph complete:4 --out " +
                                  fresh_dir("env_ok").string(),
                              "KINDSIM_THREADS=3");
  CHECK(r.exit_code == 0);
}

TEST_CASE("verify battery passes on a healthy build") {
  const CliResult r = run_cli("verify --seed 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pair-drift-identity") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("injected drift sign flip is caught by the battery") {
  const CliResult r = run_cli("verify --seed 2 --inject-drift-sign-flip");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL pair-drift-identity") != std::string::npos);
}
