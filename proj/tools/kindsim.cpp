#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kindsim/commands.hpp"
#include "kindsim/config.hpp"
#include "kindsim/errors.hpp"

namespace {

using kindsim::Errc;
using kindsim::Error;

std::uint64_t parse_u64_strict(const std::string& text,
                               const std::string& what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(Errc::parse_error, "bad " + what + ": " + text);
  }
  return value;
}

double parse_double_strict(const std::string& text, const std::string& what) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad " + what + ": " + text);
  }
}

// Compact graph flag: complete:N | cycle:N | grid:WxH | er:N:P | file:PATH
kindsim::GraphSpec parse_graph_flag(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind =
      text.substr(0, colon == std::string::npos ? text.size() : colon);
  const std::string rest =
      colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  if (kind == "complete") {
    return kindsim::GraphSpec::complete(parse_u64_strict(rest, "graph size"));
  }
  if (kind == "cycle") {
    return kindsim::GraphSpec::cycle(parse_u64_strict(rest, "graph size"));
  }
  if (kind == "grid") {
    const auto x = rest.find('x');
    if (x == std::string::npos) {
      throw Error(Errc::parse_error, "grid flag needs WxH: " + text);
    }
    return kindsim::GraphSpec::grid(
        parse_u64_strict(rest.substr(0, x), "grid width"),
        parse_u64_strict(rest.substr(x + 1), "grid height"));
  }
  if (kind == "er") {
    const auto sep = rest.find(':');
    if (sep == std::string::npos) {
      throw Error(Errc::parse_error, "er flag needs N:P: " + text);
    }
    return kindsim::GraphSpec::erdos_renyi(
        parse_u64_strict(rest.substr(0, sep), "graph size"),
        parse_double_strict(rest.substr(sep + 1), "edge probability"));
  }
  if (kind == "file") {
    if (rest.empty()) {
      throw Error(Errc::parse_error, "file flag needs a path: " + text);
    }
    return kindsim::GraphSpec::from_file(rest);
  }
  throw Error(Errc::parse_error, "unknown graph kind: " + text);
}

struct CliOverrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
  std::optional<std::string> graph;
  std::optional<double> epsilon;
  std::optional<double> mu_plus;
  std::optional<double> mu_minus;
  std::optional<std::uint64_t> replicates;
  std::optional<std::uint64_t> event_budget;
  std::optional<double> delta;
  std::optional<std::uint64_t> stride;
};

kindsim::RunConfig build_config(const CliOverrides& o) {
  kindsim::RunConfig cfg;
  if (o.config_path) cfg = kindsim::RunConfig::load_file(*o.config_path);
  if (const char* env = std::getenv("KINDSIM_THREADS")) {
    const std::string text(env);
    if (!text.empty()) {
      cfg.threads = static_cast<unsigned>(
          parse_u64_strict(text, "KINDSIM_THREADS value"));
    }
  }
  if (o.threads) cfg.threads = *o.threads;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.graph) cfg.graph = parse_graph_flag(*o.graph);
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (o.mu_plus) cfg.mu_plus = *o.mu_plus;
  if (o.mu_minus) cfg.mu_minus = *o.mu_minus;
  if (o.replicates) cfg.replicates = *o.replicates;
  if (o.event_budget) cfg.event_budget = *o.event_budget;
  if (o.delta) cfg.delta = *o.delta;
  if (o.stride) cfg.stride = *o.stride;
  return cfg;
}

void add_common_options(CLI::App* sub, CliOverrides& o) {
  sub->add_option("--config", o.config_path, "JSON config file");
  sub->add_option("--seed", o.seed, "master seed (all randomness derives from it)");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--threads", o.threads,
                  "worker threads, 0 = all cores; affects speed only");
  sub->add_option("--graph", o.graph,
                  "complete:N | cycle:N | grid:WxH | er:N:P | file:PATH");
  sub->add_option("--epsilon", o.epsilon, "exit threshold fraction in (0, 1/2)");
  sub->add_option("--mu-plus", o.mu_plus, "kind move fraction in [0, 1]");
  sub->add_option("--mu-minus", o.mu_minus, "unkind move fraction in [0, 1]");
  sub->add_option("--replicates", o.replicates, "Monte Carlo replicates");
  sub->add_option("--budget", o.event_budget, "event budget per replicate");
  sub->add_option("--delta", o.delta, "absorption tolerance in [0, 1)");
  sub->add_option("--stride", o.stride,
                  "trajectory rows every k events, 0 = endpoints only");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event-driven kindness dynamics on finite graphs"};
  app.require_subcommand(1);

  CliOverrides o;
  bool inject_drift_sign_flip = false;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run one trajectory and dump its time series");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "estimate exit probabilities across graph sizes and compare "
               "against the certified decay bound");
  CLI::App* certify = app.add_subcommand(
      "certify", "search for a certified decay base c > 1");
  CLI::App* verify =
      app.add_subcommand("verify", "run the cross-module invariant battery");
  CLI::App* graph_gen =
      app.add_subcommand("graph-gen", "generate a graph edge-list file");

  for (CLI::App* sub : {simulate, sweep, certify, verify, graph_gen}) {
    add_common_options(sub, o);
  }
  verify->add_flag("--inject-drift-sign-flip", inject_drift_sign_flip)
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }

  kindsim::RunConfig cfg;
  try {
    cfg = build_config(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  if (simulate->parsed()) return kindsim::cmd_simulate(cfg);
  if (sweep->parsed()) return kindsim::cmd_sweep(cfg);
  if (certify->parsed()) return kindsim::cmd_certify(cfg);
  if (verify->parsed()) return kindsim::cmd_verify(cfg, inject_drift_sign_flip);
  if (graph_gen->parsed()) return kindsim::cmd_graph_gen(cfg);
  return 2;
}
