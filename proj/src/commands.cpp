#include "kindsim/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>

#include "kindsim/dynamics.hpp"
#include "kindsim/errors.hpp"
#include "kindsim/experiments.hpp"
#include "kindsim/functionals.hpp"
#include "kindsim/graph.hpp"
#include "kindsim/io.hpp"
#include "kindsim/rng.hpp"
#include "kindsim/verify.hpp"

namespace kindsim {

namespace {

int config_failure(const Error& e) {
  std::fprintf(stderr, "config error: %s\n", e.what());
  return 2;
}

int runtime_failure(const Error& e) {
  std::fprintf(stderr, "error: %s: %s\n", errc_name(e.code()), e.what());
  return 1;
}

int runtime_failure(const std::exception& e) {
  std::fprintf(stderr, "error: %s\n", e.what());
  return 1;
}

void require_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(Errc::out_of_range, "epsilon must lie in (0, 1/2)");
  }
}

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(Errc::out_of_range, "delta must lie in [0, 1)");
  }
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(Errc::io_error,
                "cannot create output directory: " + cfg.out_dir);
  }
  return dir;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
  GraphSpec gs;
  Params p{0.0, 0.0};
  try {
    gs = cfg.require_graph();
    gs.validate();
    p = cfg.require_params();
    p.validate();
    require_epsilon(cfg.epsilon);
    require_delta(cfg.delta);
  } catch (const Error& e) {
    return config_failure(e);
  }

  try {
    const Graph g = generate(gs, cfg.seed);
    Rng rng(derive_seed(derive_seed(cfg.seed, StreamTag::simulate), 0));
    State init = cfg.init.make(g, rng);

    StopRule rule;
    rule.max_events = cfg.event_budget;
    rule.epsilon = cfg.epsilon;
    rule.absorb_delta = cfg.delta;
    const RunOutcome out = run(std::move(init), g, p, rule, rng, cfg.stride);

    const StoppingSpec spec =
        StoppingSpec::thresholds(cfg.epsilon, g.n_vertices());
    const double final_x = out.state.fresh_total();

    const auto dir = prepare_out_dir(cfg);
    write_text_file((dir / "trajectory.csv").string(),
                    trajectory_csv(out.series));

    nlohmann::json summary;
    summary["classification"] = classification_name(classify(out.state, spec));
    summary["absorption"] =
        absorption_name(detect_absorption(out.state, cfg.delta));
    summary["stop_cause"] = stop_cause_name(out.cause);
    summary["events"] = out.events;
    summary["t"] = out.state.clock;
    summary["final_X"] = final_x;
    summary["n_vertices"] = g.n_vertices();
    summary["graph"] = gs.describe();
    summary["seed"] = cfg.seed;
    write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");

    std::printf("simulate: %llu events, stop %s, final X = %s\n",
                static_cast<unsigned long long>(out.events),
                stop_cause_name(out.cause), fmt_g12(final_x).c_str());
    std::printf("wrote %s and %s\n", (dir / "trajectory.csv").string().c_str(),
                (dir / "summary.json").string().c_str());
    return 0;
  } catch (const Error& e) {
    return runtime_failure(e);
  } catch (const std::exception& e) {
    return runtime_failure(e);
  }
}

int cmd_sweep(const RunConfig& cfg) {
  SweepPlan plan;
  try {
    plan.family = cfg.require_graph();
    plan.family.validate();
    using K = GraphSpec::Kind;
    if (plan.family.kind != K::complete && plan.family.kind != K::cycle &&
        plan.family.kind != K::erdos_renyi) {
      throw Error(Errc::invalid_spec,
                  "sweep family must be complete, cycle, or erdos_renyi");
    }
    plan.params = cfg.require_params();
    plan.params.validate();
    require_epsilon(cfg.epsilon);
    plan.epsilon = cfg.epsilon;
    if (cfg.sweep_ns.empty()) {
      throw Error(Errc::invalid_spec, "sweep_ns must be nonempty");
    }
    for (std::size_t i = 1; i < cfg.sweep_ns.size(); ++i) {
      if (cfg.sweep_ns[i] <= cfg.sweep_ns[i - 1]) {
        throw Error(Errc::invalid_spec, "sweep_ns must be strictly ascending");
      }
    }
    plan.ns = cfg.sweep_ns;
    if (cfg.replicates < 1) {
      throw Error(Errc::out_of_range, "replicates must be at least 1");
    }
    plan.replicates = cfg.replicates;
    if (cfg.event_budget < 1) {
      throw Error(Errc::out_of_range, "event_budget must be at least 1");
    }
    plan.event_budget = cfg.event_budget;
    cfg.certify.validate();
    plan.certify = cfg.certify;
  } catch (const Error& e) {
    return config_failure(e);
  }

  try {
    const SweepResult result = decay_sweep(plan, cfg.seed, cfg.threads);

    const auto dir = prepare_out_dir(cfg);
    write_text_file((dir / "sweep.csv").string(), sweep_csv(result));

    std::size_t violations = 0;
    for (const SweepRow& row : result.rows) {
      if (row.violates_bound) ++violations;
      std::printf("N=%zu  p_hat=%s  upper=%s%s  bound=%s  c_eps=%s  %s\n",
                  row.n, fmt_g12(row.estimate.p_hat).c_str(),
                  fmt_g12(row.comparison).c_str(),
                  row.zero_hits ? " (rule of three)" : "",
                  fmt_g12(row.bound).c_str(), fmt_g12(row.c_eps).c_str(),
                  row.violates_bound ? "VIOLATION" : "OK");
    }
    std::printf("log-slope vs N: %s\n", fmt_g12(result.slope).c_str());

    nlohmann::json summary;
    summary["levels"] = result.rows.size();
    summary["violations"] = violations;
    summary["slope"] = result.slope;
    summary["seed"] = cfg.seed;
    write_text_file((dir / "sweep_summary.json").string(),
                    summary.dump(2) + "\n");
    std::printf("wrote %s and %s\n", (dir / "sweep.csv").string().c_str(),
                (dir / "sweep_summary.json").string().c_str());

    if (violations > 0) {
      std::fprintf(stderr, "error: decay bound violated on %zu level(s)\n",
                   violations);
      return 1;
    }
    return 0;
  } catch (const Error& e) {
    return runtime_failure(e);
  } catch (const std::exception& e) {
    return runtime_failure(e);
  }
}

int cmd_certify(const RunConfig& cfg) {
  GraphSpec gs;
  Params p{0.0, 0.0};
  try {
    gs = cfg.require_graph();
    gs.validate();
    p = cfg.require_params();
    p.validate();
    require_epsilon(cfg.epsilon);
    cfg.certify.validate();
  } catch (const Error& e) {
    return config_failure(e);
  }

  try {
    const Graph g = generate(gs, cfg.seed);
    DecayCertificate cert =
        certify_decay_base(g, p, cfg.epsilon, cfg.certify, cfg.seed);
    cert.graph = gs.describe();

    const auto dir = prepare_out_dir(cfg);
    write_text_file((dir / "certificate.json").string(),
                    certificate_json(cert).dump(2) + "\n");

    std::printf(
        "certified c = %s (grid index %d, max drift %s, window margin %s)\n",
        fmt_g12(cert.c).c_str(), cert.grid_index,
        fmt_g12(cert.max_mgf_drift).c_str(),
        fmt_g12(cert.window_margin).c_str());
    std::printf("wrote %s\n", (dir / "certificate.json").string().c_str());
    return 0;
  } catch (const Error& e) {
    return runtime_failure(e);
  } catch (const std::exception& e) {
    return runtime_failure(e);
  }
}

int cmd_verify(const RunConfig& cfg, bool inject_drift_sign_flip) {
  VerifyOptions opt;
  try {
    require_epsilon(cfg.epsilon);
    opt.epsilon = cfg.epsilon;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    opt.flip_drift_sign = inject_drift_sign_flip;
  } catch (const Error& e) {
    return config_failure(e);
  }

  try {
    const std::vector<CheckResult> results = run_battery(opt);
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
      if (r.pass) ++passed;
      std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.c_str());
    }
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    return all_passed(results) ? 0 : 1;
  } catch (const Error& e) {
    return runtime_failure(e);
  } catch (const std::exception& e) {
    return runtime_failure(e);
  }
}

int cmd_graph_gen(const RunConfig& cfg) {
  GraphSpec gs;
  try {
    gs = cfg.require_graph();
    gs.validate();
  } catch (const Error& e) {
    return config_failure(e);
  }

  try {
    const Graph g = generate(gs, cfg.seed);
    const auto dir = prepare_out_dir(cfg);
    write_text_file((dir / "graph.txt").string(), g.to_edge_list());
    std::printf("wrote %s (%zu vertices, %zu edges)\n",
                (dir / "graph.txt").string().c_str(), g.n_vertices(),
                g.n_edges());
    return 0;
  } catch (const Error& e) {
    return runtime_failure(e);
  } catch (const std::exception& e) {
    return runtime_failure(e);
  }
}

}  // namespace kindsim
