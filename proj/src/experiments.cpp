#include "kindsim/experiments.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "kindsim/errors.hpp"
#include "kindsim/parallel.hpp"
#include "kindsim/rng.hpp"
#include "kindsim/stats.hpp"

namespace kindsim {

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(Errc::out_of_range, "epsilon outside (0, 1/2)");
  }
}

}  // namespace

StoppingSpec StoppingSpec::thresholds(double epsilon, std::size_t n) {
  require_epsilon(epsilon);
  if (n < 1) {
    throw Error(Errc::out_of_range, "thresholds need at least one vertex");
  }
  StoppingSpec s;
  s.epsilon = epsilon;
  s.n = n;
  s.lower = -epsilon * static_cast<double>(n);
  s.upper = (1.0 - epsilon) * static_cast<double>(n);
  return s;
}

StoppingSpec StoppingSpec::symmetric_about_zero(double epsilon,
                                                std::size_t n) {
  StoppingSpec s = thresholds(epsilon, n);
  s.upper = -s.lower;
  s.symmetric = true;
  return s;
}

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::keep_going: return "Continue";
    case Classification::hit_minus: return "HitMinus";
    case Classification::hit_plus: return "HitPlus";
  }
  return "?";
}

Classification classify(const State& s, const StoppingSpec& spec) {
  if (s.beliefs.size() != spec.n) {
    throw Error(Errc::mismatched_n, "state size does not match stopping spec");
  }
  if (s.total < spec.lower) return Classification::hit_minus;
  if (s.total > spec.upper) return Classification::hit_plus;
  return Classification::keep_going;
}

const char* absorption_name(Absorption a) {
  switch (a) {
    case Absorption::none: return "none";
    case Absorption::plus: return "plus";
    case Absorption::minus: return "minus";
  }
  return "?";
}

Absorption detect_absorption(const State& s, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(Errc::out_of_range, "absorption delta outside [0, 1)");
  }
  if (s.beliefs.empty()) {
    throw Error(Errc::invalid_argument, "empty state");
  }
  bool all_hi = true, all_lo = true;
  for (double b : s.beliefs) {
    all_hi = all_hi && b >= 1.0 - delta;
    all_lo = all_lo && b <= -1.0 + delta;
  }
  if (all_hi) return Absorption::plus;
  if (all_lo) return Absorption::minus;
  return Absorption::none;
}

OneStepDrift one_step_oracle(const State& s, const Graph& g, const Params& p,
                             double c, std::size_t max_oriented_edges) {
  p.validate();
  if (!(c > 0.0)) {
    throw Error(Errc::non_positive_c, "decay base must be positive");
  }
  if (s.beliefs.size() != g.n_vertices()) {
    throw Error(Errc::mismatched_n, "state size does not match graph");
  }
  if (g.n_oriented_edges() > max_oriented_edges) {
    throw Error(Errc::too_large, "oriented edge count exceeds oracle limit");
  }

  // Enumerates both outcomes of every oriented edge with their exact
  // probabilities. Deliberately spelled out from first principles (no calls
  // into the closed-form drift functions) and accumulated in long double:
  // this is the yardstick those functions are measured against.
  long double x0 = 0.0L;
  for (double b : s.beliefs) x0 += static_cast<long double>(b);
  const long double cl = static_cast<long double>(c);
  const long double base = std::pow(cl, -x0);

  long double dx = 0.0L, dcx = 0.0L;
  const std::size_t m = g.n_oriented_edges();
  for (std::size_t k = 0; k < m; ++k) {
    const auto [xv, yv] = g.oriented_edge(k);
    const long double xi_x = s.beliefs[xv];
    const long double xi_y = s.beliefs[yv];
    const long double p_kind = 0.5L + 0.5L * xi_x;
    const long double kind_next =
        xi_y + static_cast<long double>(p.mu_plus) * (1.0L - xi_y);
    const long double unkind_next =
        xi_y - static_cast<long double>(p.mu_minus) * (1.0L + xi_y);
    dx += p_kind * (kind_next - xi_y) + (1.0L - p_kind) * (unkind_next - xi_y);
    dcx += p_kind * (std::pow(cl, -(x0 - xi_y + kind_next)) - base) +
           (1.0L - p_kind) * (std::pow(cl, -(x0 - xi_y + unkind_next)) - base);
  }
  return {static_cast<double>(dx), static_cast<double>(dcx)};
}

Estimate estimate_exit_prob(const Graph& g, const Params& p,
                            const StoppingSpec& spec, std::uint64_t replicates,
                            std::uint64_t event_budget, std::uint64_t seed,
                            unsigned threads) {
  p.validate();
  if (replicates < 1) {
    throw Error(Errc::invalid_argument, "replicates must be positive");
  }
  if (spec.n != g.n_vertices()) {
    throw Error(Errc::mismatched_n, "stopping spec is for a different N");
  }

  enum : std::uint8_t { censored = 0, minus = 1, plus = 2 };
  std::vector<std::uint8_t> outcomes(replicates, censored);
  const std::uint64_t tag = derive_seed(seed, StreamTag::replicate);
  parallel_for(replicates, threads, [&](std::size_t i) {
    Rng rng(derive_seed(tag, static_cast<std::uint64_t>(i)));
    State s = init_uniform(g, rng);
    for (std::uint64_t ev = 0;; ++ev) {
      const Classification cl = classify(s, spec);
      if (cl == Classification::hit_minus) {
        outcomes[i] = minus;
        break;
      }
      if (cl == Classification::hit_plus) {
        outcomes[i] = plus;
        break;
      }
      if (ev >= event_budget) break;
      step(s, g, p, rng);
    }
  });

  Estimate est;
  est.trials = replicates;
  est.seed = seed;
  for (std::uint8_t o : outcomes) {
    if (o == minus) ++est.hits_minus;
    else if (o == plus) ++est.hits_plus;
    else ++est.censored;
  }
  if (est.hits_minus + est.hits_plus == 0) {
    throw Error(Errc::all_censored,
                "no replicate reached a threshold within the event budget");
  }
  est.p_hat = static_cast<double>(est.hits_minus) /
              static_cast<double>(est.trials);
  const WilsonInterval ci = wilson95(est.hits_minus, est.trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

namespace {

GraphSpec family_instance(const GraphSpec& family, std::size_t n) {
  switch (family.kind) {
    case GraphSpec::Kind::complete: return GraphSpec::complete(n);
    case GraphSpec::Kind::cycle: return GraphSpec::cycle(n);
    case GraphSpec::Kind::erdos_renyi:
      return GraphSpec::erdos_renyi(n, family.p);
    default:
      throw Error(Errc::invalid_argument,
                  "sweep family must be parameterized by N "
                  "(complete, cycle, or erdos_renyi)");
  }
}

}  // namespace

SweepResult decay_sweep(const SweepPlan& plan, std::uint64_t seed,
                        unsigned threads) {
  plan.params.validate();
  plan.certify.validate();
  require_epsilon(plan.epsilon);
  if (!(plan.params.mu_minus < plan.params.mu_plus)) {
    throw Error(Errc::degenerate_drift, "sweep needs mu_minus < mu_plus");
  }
  if (plan.ns.empty()) {
    throw Error(Errc::invalid_argument, "sweep needs at least one level");
  }
  for (std::size_t i = 1; i < plan.ns.size(); ++i) {
    if (plan.ns[i] <= plan.ns[i - 1]) {
      throw Error(Errc::invalid_argument, "sweep levels must be ascending");
    }
  }

  SweepResult result;
  const std::uint64_t level_tag = derive_seed(seed, StreamTag::sweep_level);
  for (std::size_t i = 0; i < plan.ns.size(); ++i) {
    const std::size_t n = plan.ns[i];
    const std::uint64_t level_seed =
        derive_seed(level_tag, static_cast<std::uint64_t>(i));
    const Graph g = generate(family_instance(plan.family, n), level_seed);
    const DecayCertificate cert =
        certify_decay_base(g, plan.params, plan.epsilon, plan.certify,
                           level_seed);
    const StoppingSpec spec = StoppingSpec::thresholds(plan.epsilon, n);
    const Estimate est =
        estimate_exit_prob(g, plan.params, spec, plan.replicates,
                           plan.event_budget, level_seed, threads);

    SweepRow row;
    row.n = n;
    row.epsilon = plan.epsilon;
    row.params = plan.params;
    row.estimate = est;
    row.c_eps = cert.c;
    row.bound = std::pow(cert.c, -0.5 * plan.epsilon * static_cast<double>(n));
    row.zero_hits = est.hits_minus == 0;
    row.comparison = row.zero_hits
                         ? 3.0 / static_cast<double>(est.trials)
                         : est.ci_high;
    row.violates_bound = row.comparison > row.bound;
    result.rows.push_back(row);
  }

  if (result.rows.size() >= 2) {
    const double floor_p =
        1.0 / (static_cast<double>(plan.replicates) + 1.0);
    double sx = 0, sy = 0;
    for (const SweepRow& r : result.rows) {
      sx += static_cast<double>(r.n);
      sy += std::log(std::max(r.estimate.p_hat, floor_p));
    }
    const double nrows = static_cast<double>(result.rows.size());
    const double mx = sx / nrows, my = sy / nrows;
    double num = 0, den = 0;
    for (const SweepRow& r : result.rows) {
      const double dx = static_cast<double>(r.n) - mx;
      num += dx * (std::log(std::max(r.estimate.p_hat, floor_p)) - my);
      den += dx * dx;
    }
    result.slope = num / den;
  }
  return result;
}

State InitialCondition::make(const Graph& g, Rng& rng) const {
  switch (kind) {
    case Kind::uniform:
      return init_uniform(g, rng);
    case Kind::constant:
      return init_constant(g, value);
    case Kind::plus_minus: {
      if (plus_count > g.n_vertices()) {
        throw Error(Errc::invalid_argument,
                    "plus_count exceeds the vertex count");
      }
      State s;
      s.beliefs.assign(g.n_vertices(), -1.0);
      for (std::size_t i = 0; i < plus_count; ++i) s.beliefs[i] = 1.0;
      s.refresh_total();
      return s;
    }
  }
  throw Error(Errc::invalid_argument, "unknown initial condition");
}

FixationReport fixation_experiment(const Graph& g, const Params& p,
                                   const InitialCondition& init,
                                   std::uint64_t replicates, double delta,
                                   std::uint64_t event_budget,
                                   std::uint64_t seed, unsigned threads) {
  p.validate();
  if (replicates < 1) {
    throw Error(Errc::invalid_argument, "replicates must be positive");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw Error(Errc::out_of_range, "absorption delta outside [0, 1)");
  }

  FixationReport report;
  report.rows.resize(replicates);
  report.trials = replicates;
  report.delta = delta;
  report.seed = seed;

  const std::uint64_t tag = derive_seed(seed, StreamTag::fixation);
  parallel_for(replicates, threads, [&](std::size_t i) {
    Rng rng(derive_seed(tag, static_cast<std::uint64_t>(i)));
    State s = init.make(g, rng);
    StopRule rule;
    rule.max_events = event_budget;
    rule.absorb_delta = delta;
    RunOutcome out = run(std::move(s), g, p, rule, rng);
    Absorption a = Absorption::none;
    if (out.cause == StopCause::plus_absorbed) a = Absorption::plus;
    if (out.cause == StopCause::minus_absorbed) a = Absorption::minus;
    report.rows[i] = {static_cast<std::uint64_t>(i), a, out.events,
                      out.state.fresh_total()};
  });

  std::uint64_t absorbed_events = 0;
  for (const FixationReplicate& r : report.rows) {
    switch (r.outcome) {
      case Absorption::plus: ++report.plus; break;
      case Absorption::minus: ++report.minus; break;
      case Absorption::none: ++report.censored; break;
    }
    if (r.outcome != Absorption::none) absorbed_events += r.events;
  }
  const double trials = static_cast<double>(report.trials);
  report.plus_fraction = static_cast<double>(report.plus) / trials;
  report.minus_fraction = static_cast<double>(report.minus) / trials;
  const std::uint64_t absorbed = report.plus + report.minus;
  report.mean_events_to_absorption =
      absorbed > 0 ? static_cast<double>(absorbed_events) /
                         static_cast<double>(absorbed)
                   : 0.0;
  return report;
}

}  // namespace kindsim
