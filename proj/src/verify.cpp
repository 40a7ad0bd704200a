#include "kindsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "kindsim/config.hpp"
#include "kindsim/dynamics.hpp"
#include "kindsim/errors.hpp"
#include "kindsim/experiments.hpp"
#include "kindsim/functionals.hpp"
#include "kindsim/graph.hpp"
#include "kindsim/io.hpp"
#include "kindsim/parallel.hpp"
#include "kindsim/rng.hpp"

namespace kindsim {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void add(std::vector<CheckResult>& out, std::string name, bool pass,
         std::string detail) {
  out.push_back({std::move(name), pass, std::move(detail)});
}

std::vector<Graph> small_graphs(std::uint64_t seed) {
  std::vector<Graph> graphs;
  graphs.push_back(generate(GraphSpec::complete(5), seed));
  graphs.push_back(generate(GraphSpec::cycle(6), seed));
  graphs.push_back(generate(GraphSpec::grid(3, 3), seed));
  graphs.push_back(generate(GraphSpec::erdos_renyi(8, 0.6), seed));
  return graphs;
}

Params random_params(Rng& rng) {
  return Params{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
}

void check_pair_drift_identity(const VerifyOptions& opt,
                               std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 101));
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    const Params p = random_params(rng);
    double lhs = oriented_drift(x, y, p) + oriented_drift(y, x, p);
    if (opt.flip_drift_sign) lhs = -lhs;
    worst = std::max(worst, std::abs(lhs - pair_drift(x, y, p)));
  }
  add(out, "pair-drift-identity", worst <= 1e-12,
      "max |oriented sum - closed form| = " + num(worst) +
          " over 100000 triples");
}

void check_pair_drift_nonnegative(const VerifyOptions& opt,
                                  std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 102));
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    Params p = random_params(rng);
    if (p.mu_plus < p.mu_minus) std::swap(p.mu_plus, p.mu_minus);
    worst = std::min(worst, pair_drift(x, y, p));
  }
  add(out, "pair-drift-nonnegative", worst >= 0.0,
      "min pair drift = " + num(worst) + " with mu_plus >= mu_minus");
}

void check_drift_totals_agree(const VerifyOptions& opt,
                              std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 103));
  double worst = 0.0;
  for (const Graph& g : small_graphs(derive_seed(opt.seed, 103))) {
    for (int i = 0; i < 25; ++i) {
      const State s = init_uniform(g, rng);
      const Params p = random_params(rng);
      double oriented_sum = 0.0;
      for (std::size_t k = 0; k < g.n_oriented_edges(); ++k) {
        const auto [x, y] = g.oriented_edge(k);
        oriented_sum += oriented_drift(s.beliefs[x], s.beliefs[y], p);
      }
      worst = std::max(worst, std::abs(total_drift(s, g, p) - oriented_sum));
    }
  }
  add(out, "drift-totals-agree", worst <= 1e-10,
      "max |pairwise total - oriented total| = " + num(worst));
}

void check_submartingale_sign(const VerifyOptions& opt,
                              std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 104));
  double worst = std::numeric_limits<double>::infinity();
  for (const Graph& g : small_graphs(derive_seed(opt.seed, 104))) {
    for (int i = 0; i < 50; ++i) {
      const State s = init_uniform(g, rng);
      Params p = random_params(rng);
      if (p.mu_plus < p.mu_minus) std::swap(p.mu_plus, p.mu_minus);
      worst = std::min(worst, total_drift(s, g, p));
    }
  }
  add(out, "submartingale-sign", worst >= -1e-12,
      "min total drift = " + num(worst) + " with mu_plus >= mu_minus");
}

void check_mgf_drift_zero_at_one(const VerifyOptions& opt,
                                 std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 105));
  double worst = 0.0;
  for (const Graph& g : small_graphs(derive_seed(opt.seed, 105))) {
    for (int i = 0; i < 20; ++i) {
      const State s = init_uniform(g, rng);
      const Params p = random_params(rng);
      worst = std::max(worst, std::abs(total_mgf_drift(s, g, 1.0, p)));
    }
  }
  add(out, "mgf-drift-zero-at-one", worst == 0.0,
      "max |mgf drift at c=1| = " + num(worst) + " (must be exactly 0)");
}

void check_mgf_drift_derivative(const VerifyOptions& opt,
                                std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 106));
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    const Params p = random_params(rng);
    auto pair_sum = [&](double c) {
      return oriented_mgf_drift(x, y, c, p) + oriented_mgf_drift(y, x, c, p);
    };
    const double fd = (pair_sum(1.0 + h) - pair_sum(1.0 - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd + pair_drift(x, y, p)));
  }
  add(out, "mgf-drift-derivative-at-one", worst <= 1e-6,
      "max |d/dc pair mgf drift + pair drift| = " + num(worst));
}

void check_mgf_uniform_sinh(const VerifyOptions&,
                            std::vector<CheckResult>& out) {
  double worst = 0.0;
  auto probe = [&](double c) {
    const double x = std::log(c);
    worst = std::max(worst, std::abs(mgf_uniform(c) - std::sinh(x) / x));
  };
  for (int i = 0; i <= 300; ++i) {
    const double c = 0.01 * std::pow(1000.0, i / 300.0);  // 0.01 .. 10
    if (c != 1.0) probe(c);
  }
  for (double c : {1 - 1e-3, 1 - 1e-5, 1 - 2e-4, 1 + 1e-5, 1 + 2e-4, 1 + 1e-3,
                   1 + 1e-4, 1 - 1e-4}) {
    probe(c);
  }
  add(out, "mgf-uniform-sinh-equivalence", worst <= 1e-12,
      "max |direct - sinh form| = " + num(worst) + " on c in (0, 10]");
}

void check_mgf_uniform_limit(const VerifyOptions&,
                             std::vector<CheckResult>& out) {
  double worst = std::abs(mgf_uniform(1.0) - 1.0);
  for (double c : {1 + 1e-5, 1 - 1e-5, 1 + 1e-6, 1 - 1e-6}) {
    worst = std::max(worst, std::abs(mgf_uniform(c) - 1.0));
  }
  const double h = 1e-6;
  const double slope =
      (mgf_uniform(1.001 + h) - mgf_uniform(1.001 - h)) / (2.0 * h);
  const bool pass = worst <= 1e-9 && std::abs(slope) < 1e-2;
  add(out, "mgf-uniform-limit-at-one", pass,
      "max |g - 1| near 1 = " + num(worst) + ", g'(1.001) = " + num(slope));
}

void check_mgf_uniform_lower_bound(const VerifyOptions&,
                                   std::vector<CheckResult>& out) {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 500; ++i) {
    const double c = 1.0 + i * (1.0 / 500.0);  // (1, 2]
    worst = std::min(worst, mgf_uniform(c));
  }
  add(out, "mgf-uniform-above-half", worst > 0.5,
      "min g(c) on (1, 2] = " + num(worst));
}

void check_mgf_window_prefix(const VerifyOptions& opt,
                             std::vector<CheckResult>& out) {
  std::vector<double> epsilons{0.1, 0.3, 0.45};
  if (std::find(epsilons.begin(), epsilons.end(), opt.epsilon) ==
      epsilons.end()) {
    epsilons.push_back(opt.epsilon);
  }
  bool pass = true;
  std::string detail;
  for (double eps : epsilons) {
    // Descending grid toward 1; the window must hold on a full prefix
    // (1, c*], i.e. from some grid point all the way down.
    double c_star = 0.0;
    for (int j = 199; j >= 0; --j) {
      const double c = 1.0 + 0.5 * std::pow(0.9, j);
      if (!mgf_window(c, eps).ok()) break;
      c_star = c;
    }
    if (c_star == 0.0) pass = false;
    if (!detail.empty()) detail += ", ";
    detail += "eps " + num(eps) + ": c* = " +
              (c_star == 0.0 ? std::string("none") : num(c_star));
  }
  add(out, "mgf-window-prefix", pass, detail);
}

void check_witness_pair(const VerifyOptions& opt,
                        std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 107));
  bool pass = true;
  std::string why;
  int replays = 0;
  auto replay = [&](const State& s, const Graph& g, double eps) {
    const auto [x, y] = witness_pair(s, g, eps);
    const auto& nb = g.neighbors(x);
    if (std::find(nb.begin(), nb.end(), y) == nb.end()) {
      pass = false;
      why = "returned non-neighbors";
      return;
    }
    if (!(s.beliefs[x] * s.beliefs[y] <= 1.0 - eps)) {
      pass = false;
      why = "product above 1 - eps";
      return;
    }
    ++replays;
  };
  for (const Graph& g : small_graphs(derive_seed(opt.seed, 107))) {
    for (double eps : {0.3, 0.45}) {
      const StoppingSpec spec = StoppingSpec::thresholds(eps, g.n_vertices());
      for (int i = 0; pass && i < 50; ++i) {
        const State s = init_uniform(g, rng);
        if (classify(s, spec) != Classification::keep_going) continue;
        replay(s, g, eps);
      }
      // Two-camp states: no vertex in the middle band.
      for (int i = 0; pass && i < 50; ++i) {
        State s;
        s.beliefs.resize(g.n_vertices());
        bool has_low = false, has_high = false;
        for (double& b : s.beliefs) {
          const bool low = rng.bernoulli(0.5);
          b = low ? rng.uniform(-1.0, -eps - 0.01)
                  : rng.uniform(1.0 - eps + 0.01, 1.0);
          has_low = has_low || low;
          has_high = has_high || !low;
        }
        if (!has_low || !has_high) continue;
        s.refresh_total();
        replay(s, g, eps);
      }
    }
    if (!pass) break;
    // Pointwise past-threshold states must be rejected.
    for (double v : {-0.9, 0.95}) {
      State s;
      s.beliefs.assign(g.n_vertices(), v);
      s.refresh_total();
      try {
        witness_pair(s, g, 0.3);
        pass = false;
        why = "missing precondition rejection";
      } catch (const Error& e) {
        if (e.code() != Errc::precondition_violated) {
          pass = false;
          why = "wrong error on precondition violation";
        }
      }
    }
    if (!pass) break;
  }
  add(out, "witness-pair-replay", pass,
      pass ? std::to_string(replays) + " witnesses replayed" : why);
}

void check_oracle_equivalence(const VerifyOptions& opt,
                              std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 108));
  std::vector<Graph> graphs;
  graphs.push_back(generate(GraphSpec::complete(2), opt.seed));
  graphs.push_back(generate(GraphSpec::complete(5), opt.seed));
  graphs.push_back(generate(GraphSpec::cycle(6), opt.seed));
  graphs.push_back(generate(GraphSpec::grid(3, 3), opt.seed));
  std::vector<Params> params;
  for (int i = 0; i < 5; ++i) params.push_back(random_params(rng));

  double worst_x = 0.0, worst_cx = 0.0;
  for (const Graph& g : graphs) {
    for (int i = 0; i < 100; ++i) {
      const State s = init_uniform(g, rng);
      const Params& p = params[i % params.size()];
      const double x_total = total_kindness(s);
      for (double c : {1.05, 1.2, 2.0}) {
        const OneStepDrift oracle = one_step_oracle(s, g, p, c);
        worst_x =
            std::max(worst_x, std::abs(oracle.drift_x - total_drift(s, g, p)));
        const double closed =
            std::pow(c, -x_total) * total_mgf_drift(s, g, c, p);
        worst_cx = std::max(worst_cx, std::abs(oracle.drift_cx - closed));
      }
    }
  }
  add(out, "oracle-drift-x", worst_x <= 1e-10,
      "max |enumerated - closed| = " + num(worst_x));
  add(out, "oracle-drift-cx", worst_cx <= 1e-10,
      "max |enumerated - closed| = " + num(worst_cx));
}

void check_supermartingale_replay(const VerifyOptions& opt,
                                  std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::complete(10), opt.seed);
  const Params p{0.5, 0.2};
  CertifyOptions copt;
  copt.trajectories = 30;
  copt.random_states = 2000;
  copt.trajectory_budget = 200000;
  DecayCertificate cert;
  try {
    cert = certify_decay_base(g, p, 0.3, copt, opt.seed);
  } catch (const Error& e) {
    add(out, "supermartingale-replay", false,
        std::string("certification failed: ") + e.what());
    return;
  }

  const StoppingSpec spec = StoppingSpec::thresholds(0.3, g.n_vertices());
  const std::uint64_t tag = derive_seed(opt.seed, StreamTag::verify_replay);
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t states = 0;
  for (int t = 0; t < 10; ++t) {
    Rng rng(derive_seed(tag, static_cast<std::uint64_t>(t)));
    State s = init_uniform(g, rng);
    for (std::uint64_t ev = 0; ev < copt.trajectory_budget; ++ev) {
      if (classify(s, spec) != Classification::keep_going) break;
      const double product = std::pow(cert.c, -s.total) *
                             total_mgf_drift(s, g, cert.c, p);
      worst = std::max(worst, product);
      ++states;
      step(s, g, p, rng);
    }
  }
  add(out, "supermartingale-replay", worst <= 1e-12,
      "c = " + num(cert.c) + ", max drift product = " + num(worst) + " over " +
          std::to_string(states) + " fresh states");
}

void check_strict_thresholds(const VerifyOptions&,
                             std::vector<CheckResult>& out) {
  const StoppingSpec spec = StoppingSpec::thresholds(0.3, 10);
  bool pass = true;
  std::string why;

  State s;
  s.beliefs = {-0.5, -0.5, -0.5, -0.5, -0.5, -0.5, 0, 0, 0, 0};
  s.refresh_total();  // exactly -3.0 = lower threshold
  if (s.total != spec.lower || classify(s, spec) != Classification::keep_going) {
    pass = false;
    why = "fired at X exactly on the lower threshold";
  }
  s.beliefs[6] = -0.5;
  s.refresh_total();  // -3.5
  if (pass && classify(s, spec) != Classification::hit_minus) {
    pass = false;
    why = "missed X below the lower threshold";
  }

  State u;
  u.beliefs.assign(10, 0.7);
  u.total = spec.upper;  // exactly on the upper threshold
  if (pass && classify(u, spec) != Classification::keep_going) {
    pass = false;
    why = "fired at X exactly on the upper threshold";
  }
  u.total = std::nextafter(spec.upper, 11.0);
  if (pass && classify(u, spec) != Classification::hit_plus) {
    pass = false;
    why = "missed X just above the upper threshold";
  }

  const StoppingSpec sym = StoppingSpec::symmetric_about_zero(0.3, 10);
  State v;
  v.beliefs = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0, 0, 0, 0};
  v.refresh_total();  // exactly +3.0 = symmetric upper
  if (pass && classify(v, sym) != Classification::keep_going) {
    pass = false;
    why = "fired at X exactly on the symmetric threshold";
  }
  add(out, "strict-thresholds", pass, pass ? "boundaries never fire" : why);
}

void check_censoring_accounting(const VerifyOptions& opt,
                                std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::complete(6), opt.seed);
  const Params p{0.5, 0.2};
  const StoppingSpec spec = StoppingSpec::thresholds(0.3, 6);
  try {
    const Estimate est = estimate_exit_prob(g, p, spec, 400, 80,
                                            derive_seed(opt.seed, 109),
                                            opt.threads);
    const bool pass =
        est.hits_minus + est.hits_plus + est.censored == est.trials;
    add(out, "censoring-accounting", pass,
        "minus " + std::to_string(est.hits_minus) + " + plus " +
            std::to_string(est.hits_plus) + " + censored " +
            std::to_string(est.censored) + " = " +
            std::to_string(est.trials) + " trials");
  } catch (const Error& e) {
    add(out, "censoring-accounting", false, e.what());
  }
}

void check_seed_stability(const VerifyOptions& opt,
                          std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::complete(6), opt.seed);
  const Params p{0.5, 0.2};
  const StoppingSpec spec = StoppingSpec::thresholds(0.3, 6);
  const std::uint64_t seed = derive_seed(opt.seed, 110);
  const Estimate a = estimate_exit_prob(g, p, spec, 300, 5000, seed, 1);
  const Estimate b = estimate_exit_prob(g, p, spec, 300, 5000, seed, 4);
  bool pass = a.hits_minus == b.hits_minus && a.hits_plus == b.hits_plus &&
              a.censored == b.censored;

  auto one_run = [&] {
    Rng rng(derive_seed(seed, 7));
    State s = init_uniform(g, rng);
    return run(std::move(s), g, p, StopRule::events(20000), rng, 100);
  };
  const RunOutcome r1 = one_run();
  const RunOutcome r2 = one_run();
  pass = pass && trajectory_csv(r1.series) == trajectory_csv(r2.series) &&
         r1.state.beliefs == r2.state.beliefs;
  add(out, "seed-stability", pass,
      pass ? "identical counts across thread counts, identical replay"
           : "same seed produced different results");
}

void check_dynamics_range(const VerifyOptions& opt,
                          std::vector<CheckResult>& out) {
  Rng rng(derive_seed(opt.seed, 111));
  bool pass = true;
  for (int i = 0; pass && i < 20000; ++i) {
    const double xi = rng.uniform(-1.0, 1.0);
    const Params p = random_params(rng);
    const bool kind = rng.bernoulli(0.5);
    const double next = apply_interaction(xi, kind, p);
    if (!(next >= -1.0 && next <= 1.0)) pass = false;
    if (kind && next < xi) pass = false;
    if (!kind && next > xi) pass = false;
  }
  add(out, "update-range-and-monotonicity", pass,
      pass ? "updates stay in [-1, 1] and move toward the acted side"
           : "range or monotonicity violated");
}

void check_fixed_points(const VerifyOptions& opt,
                        std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::complete(6), opt.seed);
  bool pass = true;
  std::string why;
  for (double v : {1.0, -1.0}) {
    Rng rng(derive_seed(opt.seed, 112));
    State s = init_constant(g, v);
    const std::vector<double> before = s.beliefs;
    const Params p{0.6, 0.3};
    for (int i = 0; pass && i < 2000; ++i) {
      const Event ev = step(s, g, p, rng);
      if (ev.kind != (v > 0)) {
        pass = false;
        why = "wrong interaction kind at a consensus state";
      }
      if (ev.new_belief != ev.old_belief) {
        pass = false;
        why = "consensus state moved";
      }
    }
    if (s.beliefs != before) {
      pass = false;
      why = "beliefs changed bitwise";
    }
  }
  add(out, "consensus-states-fixed", pass,
      pass ? "+1 and -1 consensus unchanged over 2000 events each" : why);
}

void check_cache_coherence(const VerifyOptions& opt,
                           std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::complete(8), opt.seed);
  Rng rng(derive_seed(opt.seed, 113));
  State s = init_uniform(g, rng);
  const Params p{0.37, 0.21};
  for (int i = 0; i < 2500000; ++i) step(s, g, p, rng);
  const double drift = std::abs(s.total - s.fresh_total());
  const double tol = 1e-9 * static_cast<double>(g.n_vertices());
  add(out, "total-cache-coherence", drift <= tol,
      "cache drift " + num(drift) + " after 2.5e6 events (tolerance " +
          num(tol) + ")");
}

void check_increment_bound(const VerifyOptions& opt,
                           std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::grid(4, 4), opt.seed);
  Rng rng(derive_seed(opt.seed, 114));
  State s = init_uniform(g, rng);
  const Params p{1.0, 1.0};  // largest possible jumps
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Event ev = step(s, g, p, rng);
    worst = std::max(worst, std::abs(ev.new_belief - ev.old_belief));
  }
  add(out, "event-increment-bound", worst <= 2.0,
      "max |X jump| = " + num(worst) + " (bound 2)");
}

void check_absorption_detection(const VerifyOptions& opt,
                                std::vector<CheckResult>& out) {
  const Graph g = generate(GraphSpec::cycle(5), opt.seed);
  bool pass = true;
  pass = pass && detect_absorption(init_constant(g, 1.0), 1e-9) ==
                     Absorption::plus;
  pass = pass && detect_absorption(init_constant(g, -1.0), 0.0) ==
                     Absorption::minus;
  pass = pass && detect_absorption(init_constant(g, 1.0 - 5e-7), 1e-6) ==
                     Absorption::plus;
  State mixed;
  mixed.beliefs = {1.0, 1.0, 1.0, -1.0, 1.0};
  mixed.refresh_total();
  pass = pass && detect_absorption(mixed, 0.5) == Absorption::none;
  add(out, "absorption-detection", pass,
      pass ? "consensus bands detected, mixed states rejected"
           : "absorption misclassified");
}

void check_graph_invariants(const VerifyOptions& opt,
                            std::vector<CheckResult>& out) {
  bool pass = true;
  std::string why;
  try {
    const Graph k4 = generate(GraphSpec::complete(4), opt.seed);
    if (k4.n_edges() != 6 || k4.n_oriented_edges() != 12) {
      pass = false;
      why = "complete(4) has wrong edge counts";
    }
    const Graph c5 = generate(GraphSpec::cycle(5), opt.seed);
    for (Vertex v = 0; pass && v < 5; ++v) {
      if (c5.degree(v) != 2) {
        pass = false;
        why = "cycle(5) has a vertex of degree != 2";
      }
    }
    const Graph g33 = generate(GraphSpec::grid(3, 3), opt.seed);
    if (pass && g33.n_edges() != 12) {
      pass = false;
      why = "grid(3,3) has wrong edge count";
    }
    const Graph full = generate(GraphSpec::erdos_renyi(10, 1.0), opt.seed);
    if (pass && !(full.edges() == generate(GraphSpec::complete(10),
                                           opt.seed).edges())) {
      pass = false;
      why = "erdos_renyi(10, 1) differs from complete(10)";
    }
    const GraphSpec er = GraphSpec::erdos_renyi(16, 0.3);
    const Graph a = generate(er, 42);
    const Graph b = generate(er, 42);
    if (pass && !(a.edges() == b.edges())) {
      pass = false;
      why = "erdos_renyi not deterministic in the seed";
    }
    for (const Graph* g : {&k4, &c5, &g33, &a}) {
      if (!is_connected(g->n_vertices(), g->edges())) {
        pass = false;
        why = "generated graph not connected";
      }
      const Graph round = parse_edge_list(g->to_edge_list());
      if (!(round.edges() == g->edges()) ||
          round.n_vertices() != g->n_vertices()) {
        pass = false;
        why = "edge-list round trip changed the graph";
      }
    }
  } catch (const Error& e) {
    pass = false;
    why = e.what();
  }
  add(out, "graph-invariants", pass,
      pass ? "structure, determinism, and round trip hold" : why);
}

void check_config_round_trip(const VerifyOptions&,
                             std::vector<CheckResult>& out) {
  RunConfig cfg;
  cfg.graph = GraphSpec::erdos_renyi(12, 0.4);
  cfg.mu_plus = 0.5;
  cfg.mu_minus = 0.2;
  cfg.epsilon = 0.25;
  cfg.replicates = 123;
  cfg.event_budget = 4567;
  cfg.seed = 99;
  cfg.delta = 1e-7;
  cfg.stride = 10;
  cfg.threads = 3;
  cfg.out_dir = "results";
  cfg.init.kind = InitialCondition::Kind::plus_minus;
  cfg.init.plus_count = 4;
  cfg.sweep_ns = {6, 8, 12};
  cfg.certify.grid_points = 20;

  bool pass = RunConfig::from_json(cfg.to_json()) == cfg;
  const RunConfig defaults;
  pass = pass && RunConfig::from_json(defaults.to_json()) == defaults;
  add(out, "config-round-trip", pass,
      pass ? "parse(serialize(config)) == config"
           : "round trip changed the config");
}

}  // namespace

std::vector<CheckResult> run_battery(const VerifyOptions& opt) {
  std::vector<CheckResult> results;
  check_pair_drift_identity(opt, results);
  check_pair_drift_nonnegative(opt, results);
  check_drift_totals_agree(opt, results);
  check_submartingale_sign(opt, results);
  check_mgf_drift_zero_at_one(opt, results);
  check_mgf_drift_derivative(opt, results);
  check_mgf_uniform_sinh(opt, results);
  check_mgf_uniform_limit(opt, results);
  check_mgf_uniform_lower_bound(opt, results);
  check_mgf_window_prefix(opt, results);
  check_witness_pair(opt, results);
  check_oracle_equivalence(opt, results);
  check_supermartingale_replay(opt, results);
  check_strict_thresholds(opt, results);
  check_censoring_accounting(opt, results);
  check_seed_stability(opt, results);
  check_dynamics_range(opt, results);
  check_fixed_points(opt, results);
  check_cache_coherence(opt, results);
  check_increment_bound(opt, results);
  check_absorption_detection(opt, results);
  check_graph_invariants(opt, results);
  check_config_round_trip(opt, results);
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace kindsim
