#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kindsim/dynamics.hpp"
#include "kindsim/experiments.hpp"
#include "kindsim/functionals.hpp"
#include "kindsim/graph.hpp"

namespace kindsim {

// One JSON document drives every subcommand; command-line flags override
// fields one-to-one. Fields a command needs but the config leaves unset
// fail with MissingField naming the field. Unknown keys are rejected so
// typos cannot silently fall back to defaults.
struct RunConfig {
  std::optional<GraphSpec> graph;
  std::optional<double> mu_plus;
  std::optional<double> mu_minus;
  double epsilon = 0.3;
  std::uint64_t replicates = 1000;
  std::uint64_t event_budget = 10000000;
  std::uint64_t seed = 1;
  double delta = 1e-6;
  std::uint64_t stride = 1;
  unsigned threads = 0;  // 0: use hardware concurrency
  std::string out_dir = ".";
  InitialCondition init{};
  std::vector<std::size_t> sweep_ns{10, 20, 40};
  CertifyOptions certify{};

  Params require_params() const;
  GraphSpec require_graph() const;

  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static RunConfig load_file(const std::string& path);

  bool operator==(const RunConfig&) const = default;
};

GraphSpec graph_spec_from_json(const nlohmann::json& j);
nlohmann::json graph_spec_to_json(const GraphSpec& spec);

}  // namespace kindsim
