#include "kindsim/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "kindsim/experiments.hpp"

namespace kindsim {

namespace {

constexpr std::uint64_t kTotalRefreshMask = (1ull << 20) - 1;

void require_belief(double xi) {
  if (!(xi >= -1.0 && xi <= 1.0)) {
    throw Error(Errc::out_of_range, "belief outside [-1, +1]");
  }
}

}  // namespace

void Params::validate() const {
  if (!(mu_plus >= 0.0 && mu_plus <= 1.0)) {
    throw Error(Errc::out_of_range, "mu_plus outside [0, 1]");
  }
  if (!(mu_minus >= 0.0 && mu_minus <= 1.0)) {
    throw Error(Errc::out_of_range, "mu_minus outside [0, 1]");
  }
}

double State::fresh_total() const {
  double sum = 0.0;
  for (double b : beliefs) sum += b;
  return sum;
}

State State::negated() const {
  State s = *this;
  for (double& b : s.beliefs) b = -b;
  s.total = -s.total;
  return s;
}

State init_uniform(const Graph& g, Rng& rng) {
  State s;
  s.beliefs.resize(g.n_vertices());
  for (double& b : s.beliefs) b = rng.uniform(-1.0, 1.0);
  s.refresh_total();
  return s;
}

State init_constant(const Graph& g, double value) {
  require_belief(value);
  State s;
  s.beliefs.assign(g.n_vertices(), value);
  s.refresh_total();
  return s;
}

double kind_probability(double xi_x) {
  require_belief(xi_x);
  return std::clamp(0.5 + 0.5 * xi_x, 0.0, 1.0);
}

double apply_interaction(double xi_y, bool kind, const Params& p) {
  require_belief(xi_y);
  const double next = kind ? xi_y + p.mu_plus * (1.0 - xi_y)
                           : xi_y - p.mu_minus * (1.0 + xi_y);
  return std::clamp(next, -1.0, 1.0);
}

Event step(State& state, const Graph& g, const Params& p, Rng& rng) {
  const std::size_t m = g.n_oriented_edges();
  if (m == 0) {
    throw Error(Errc::empty_graph, "cannot step a graph with no edges");
  }
  Event ev;
  ev.dt = rng.exponential(static_cast<double>(m));
  const auto [src, dst] = g.oriented_edge(rng.uniform_below(m));
  ev.source = src;
  ev.target = dst;
  ev.kind = rng.bernoulli(kind_probability(state.beliefs[src]));
  ev.old_belief = state.beliefs[dst];
  ev.new_belief = apply_interaction(ev.old_belief, ev.kind, p);

  state.beliefs[dst] = ev.new_belief;
  state.total += ev.new_belief - ev.old_belief;
  state.clock += ev.dt;
  ++state.event_count;
  if ((state.event_count & kTotalRefreshMask) == 0) state.refresh_total();
  return ev;
}

const char* stop_cause_name(StopCause c) {
  switch (c) {
    case StopCause::max_events: return "MaxEvents";
    case StopCause::hit_minus: return "HitMinus";
    case StopCause::hit_plus: return "HitPlus";
    case StopCause::plus_absorbed: return "PlusAbsorbed";
    case StopCause::minus_absorbed: return "MinusAbsorbed";
  }
  return "?";
}

RunOutcome run(State state, const Graph& g, const Params& p,
               const StopRule& rule, Rng& rng, std::uint64_t stride) {
  p.validate();
  if (state.beliefs.size() != g.n_vertices()) {
    throw Error(Errc::mismatched_n, "state size does not match graph");
  }
  if ((rule.epsilon || rule.absorb_delta) && !rule.max_events) {
    throw Error(Errc::invalid_argument,
                "stop rules with thresholds or absorption need max_events");
  }

  std::optional<StoppingSpec> spec;
  if (rule.epsilon) {
    spec = rule.symmetric_thresholds
               ? StoppingSpec::symmetric_about_zero(*rule.epsilon, g.n_vertices())
               : StoppingSpec::thresholds(*rule.epsilon, g.n_vertices());
  }

  // Absorption is tracked with counters of beliefs inside the delta bands;
  // one event moves one belief, so the update is O(1) per event and agrees
  // exactly with detect_absorption's full scan.
  const std::size_t n = g.n_vertices();
  double hi_band = 2.0, lo_band = -2.0;
  std::size_t n_hi = 0, n_lo = 0;
  if (rule.absorb_delta) {
    const double delta = *rule.absorb_delta;
    if (!(delta >= 0.0 && delta < 1.0)) {
      throw Error(Errc::out_of_range, "absorption delta outside [0, 1)");
    }
    hi_band = 1.0 - delta;
    lo_band = -1.0 + delta;
    for (double b : state.beliefs) {
      if (b >= hi_band) ++n_hi;
      if (b <= lo_band) ++n_lo;
    }
  }

  auto fired = [&]() -> std::optional<StopCause> {
    if (spec) {
      switch (classify(state, *spec)) {
        case Classification::hit_minus: return StopCause::hit_minus;
        case Classification::hit_plus: return StopCause::hit_plus;
        case Classification::keep_going: break;
      }
    }
    if (rule.absorb_delta) {
      if (n_hi == n) return StopCause::plus_absorbed;
      if (n_lo == n) return StopCause::minus_absorbed;
    }
    return std::nullopt;
  };

  RunOutcome out;
  if (stride > 0) {
    out.series.push_back({state.event_count, state.clock, state.total});
  }

  if (auto cause = fired()) {
    out.cause = *cause;
    out.state = std::move(state);
    return out;
  }

  std::uint64_t done = 0;
  out.cause = StopCause::max_events;
  while (!rule.max_events || done < *rule.max_events) {
    const Event ev = step(state, g, p, rng);
    ++done;
    if (rule.absorb_delta) {
      if (ev.old_belief >= hi_band) --n_hi;
      if (ev.new_belief >= hi_band) ++n_hi;
      if (ev.old_belief <= lo_band) --n_lo;
      if (ev.new_belief <= lo_band) ++n_lo;
    }
    if (stride > 0 && done % stride == 0) {
      out.series.push_back({state.event_count, state.clock, state.total});
    }
    if (auto cause = fired()) {
      out.cause = *cause;
      break;
    }
  }

  if (stride > 0 && out.series.back().event != state.event_count) {
    out.series.push_back({state.event_count, state.clock, state.total});
  }
  out.events = done;
  out.state = std::move(state);
  return out;
}

}  // namespace kindsim
