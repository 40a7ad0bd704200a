#include "kindsim/config.hpp"

#include <set>

#include "kindsim/errors.hpp"
#include "kindsim/io.hpp"

namespace kindsim {

namespace {

using nlohmann::json;

void require_object(const json& j, const char* what) {
  if (!j.is_object()) {
    throw Error(Errc::parse_error, std::string(what) + " must be an object");
  }
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) {
      throw Error(Errc::parse_error,
                  std::string("unknown ") + where + " field: " + key);
    }
  }
}

template <typename T>
T get_as(const json& j, const std::string& name) {
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::parse_error, "bad value for field: " + name);
  }
}

template <typename T>
void read_if_present(const json& j, const std::string& name, T& out) {
  if (j.contains(name)) out = get_as<T>(j, name);
}

}  // namespace

GraphSpec graph_spec_from_json(const json& j) {
  require_object(j, "graph");
  const auto kind = get_as<std::string>(j, "kind");
  GraphSpec spec;
  if (kind == "complete") {
    reject_unknown_keys(j, {"kind", "n"}, "graph");
    spec = GraphSpec::complete(get_as<std::size_t>(j, "n"));
  } else if (kind == "cycle") {
    reject_unknown_keys(j, {"kind", "n"}, "graph");
    spec = GraphSpec::cycle(get_as<std::size_t>(j, "n"));
  } else if (kind == "grid") {
    reject_unknown_keys(j, {"kind", "width", "height"}, "graph");
    spec = GraphSpec::grid(get_as<std::size_t>(j, "width"),
                           get_as<std::size_t>(j, "height"));
  } else if (kind == "erdos_renyi") {
    reject_unknown_keys(j, {"kind", "n", "p"}, "graph");
    spec = GraphSpec::erdos_renyi(get_as<std::size_t>(j, "n"),
                                  get_as<double>(j, "p"));
  } else if (kind == "from_file") {
    reject_unknown_keys(j, {"kind", "path"}, "graph");
    spec = GraphSpec::from_file(get_as<std::string>(j, "path"));
  } else {
    throw Error(Errc::parse_error, "unknown graph kind: " + kind);
  }
  return spec;
}

json graph_spec_to_json(const GraphSpec& spec) {
  json j;
  switch (spec.kind) {
    case GraphSpec::Kind::complete:
      j["kind"] = "complete";
      j["n"] = spec.n;
      break;
    case GraphSpec::Kind::cycle:
      j["kind"] = "cycle";
      j["n"] = spec.n;
      break;
    case GraphSpec::Kind::grid:
      j["kind"] = "grid";
      j["width"] = spec.width;
      j["height"] = spec.height;
      break;
    case GraphSpec::Kind::erdos_renyi:
      j["kind"] = "erdos_renyi";
      j["n"] = spec.n;
      j["p"] = spec.p;
      break;
    case GraphSpec::Kind::from_file:
      j["kind"] = "from_file";
      j["path"] = spec.path;
      break;
  }
  return j;
}

namespace {

InitialCondition init_from_json(const json& j) {
  require_object(j, "init");
  reject_unknown_keys(j, {"kind", "value", "plus_count"}, "init");
  InitialCondition init;
  const auto kind = get_as<std::string>(j, "kind");
  if (kind == "uniform") {
    init.kind = InitialCondition::Kind::uniform;
  } else if (kind == "constant") {
    init.kind = InitialCondition::Kind::constant;
  } else if (kind == "plus_minus") {
    init.kind = InitialCondition::Kind::plus_minus;
  } else {
    throw Error(Errc::parse_error, "unknown init kind: " + kind);
  }
  read_if_present(j, "value", init.value);
  read_if_present(j, "plus_count", init.plus_count);
  return init;
}

json init_to_json(const InitialCondition& init) {
  const char* kind = "uniform";
  if (init.kind == InitialCondition::Kind::constant) kind = "constant";
  if (init.kind == InitialCondition::Kind::plus_minus) kind = "plus_minus";
  return json{{"kind", kind},
              {"value", init.value},
              {"plus_count", init.plus_count}};
}

CertifyOptions certify_from_json(const json& j) {
  require_object(j, "certify");
  reject_unknown_keys(j,
                      {"c_max", "grid_factor", "grid_points", "trajectories",
                       "random_states", "trajectory_budget"},
                      "certify");
  CertifyOptions opt;
  read_if_present(j, "c_max", opt.c_max);
  read_if_present(j, "grid_factor", opt.grid_factor);
  read_if_present(j, "grid_points", opt.grid_points);
  read_if_present(j, "trajectories", opt.trajectories);
  read_if_present(j, "random_states", opt.random_states);
  read_if_present(j, "trajectory_budget", opt.trajectory_budget);
  return opt;
}

json certify_to_json(const CertifyOptions& opt) {
  return json{{"c_max", opt.c_max},
              {"grid_factor", opt.grid_factor},
              {"grid_points", opt.grid_points},
              {"trajectories", opt.trajectories},
              {"random_states", opt.random_states},
              {"trajectory_budget", opt.trajectory_budget}};
}

}  // namespace

Params RunConfig::require_params() const {
  if (!mu_plus) {
    throw Error(Errc::missing_field, "missing config field: mu_plus");
  }
  if (!mu_minus) {
    throw Error(Errc::missing_field, "missing config field: mu_minus");
  }
  return Params{*mu_plus, *mu_minus};
}

GraphSpec RunConfig::require_graph() const {
  if (!graph) {
    throw Error(Errc::missing_field, "missing config field: graph");
  }
  return *graph;
}

RunConfig RunConfig::from_json(const json& j) {
  require_object(j, "config");
  reject_unknown_keys(j,
                      {"graph", "mu_plus", "mu_minus", "epsilon", "replicates",
                       "event_budget", "seed", "delta", "stride", "threads",
                       "out_dir", "init", "sweep_ns", "certify"},
                      "config");
  RunConfig cfg;
  if (j.contains("graph")) cfg.graph = graph_spec_from_json(j.at("graph"));
  if (j.contains("mu_plus")) cfg.mu_plus = get_as<double>(j, "mu_plus");
  if (j.contains("mu_minus")) cfg.mu_minus = get_as<double>(j, "mu_minus");
  read_if_present(j, "epsilon", cfg.epsilon);
  read_if_present(j, "replicates", cfg.replicates);
  read_if_present(j, "event_budget", cfg.event_budget);
  read_if_present(j, "seed", cfg.seed);
  read_if_present(j, "delta", cfg.delta);
  read_if_present(j, "stride", cfg.stride);
  read_if_present(j, "threads", cfg.threads);
  read_if_present(j, "out_dir", cfg.out_dir);
  if (j.contains("init")) cfg.init = init_from_json(j.at("init"));
  read_if_present(j, "sweep_ns", cfg.sweep_ns);
  if (j.contains("certify")) cfg.certify = certify_from_json(j.at("certify"));
  return cfg;
}

json RunConfig::to_json() const {
  json j;
  if (graph) j["graph"] = graph_spec_to_json(*graph);
  if (mu_plus) j["mu_plus"] = *mu_plus;
  if (mu_minus) j["mu_minus"] = *mu_minus;
  j["epsilon"] = epsilon;
  j["replicates"] = replicates;
  j["event_budget"] = event_budget;
  j["seed"] = seed;
  j["delta"] = delta;
  j["stride"] = stride;
  j["threads"] = threads;
  j["out_dir"] = out_dir;
  j["init"] = init_to_json(init);
  j["sweep_ns"] = sweep_ns;
  j["certify"] = certify_to_json(certify);
  return j;
}

RunConfig RunConfig::load_file(const std::string& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error,
                "config is not valid JSON (" + path + "): " + e.what());
  }
  return from_json(j);
}

}  // namespace kindsim
