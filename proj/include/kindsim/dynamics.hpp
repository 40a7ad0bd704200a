#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kindsim/graph.hpp"
#include "kindsim/rng.hpp"

namespace kindsim {

// Sensitivity of individuals to kind / unkind interactions.
struct Params {
  double mu_plus = 0.0;
  double mu_minus = 0.0;

  void validate() const;

  // true iff mu_minus < mu_plus (paired interactions push total kindness up)
  bool optimist() const { return mu_minus < mu_plus; }

  // Mirror-image parameters: swapping roles of kind and unkind. Together
  // with negate() on a State this maps the mu_minus > mu_plus regime onto
  // the analyzed one.
  Params mirrored() const { return Params{mu_minus, mu_plus}; }

  bool operator==(const Params&) const = default;
};

// Configuration of beliefs plus simulation clock. `total` caches the sum
// of beliefs and is updated incrementally; it is refreshed from scratch
// every 2^20 events, keeping |total - exact sum| <= 1e-9 * N.
struct State {
  std::vector<double> beliefs;
  double clock = 0.0;
  double total = 0.0;
  std::uint64_t event_count = 0;

  std::size_t n_vertices() const { return beliefs.size(); }
  double fresh_total() const;
  void refresh_total() { total = fresh_total(); }

  // Flips the sign of every belief (mirror image configuration).
  State negated() const;
};

// One oriented-edge activation.
struct Event {
  double dt = 0.0;
  Vertex source = 0;
  Vertex target = 0;
  bool kind = false;
  double old_belief = 0.0;
  double new_belief = 0.0;
};

// Beliefs i.i.d. uniform on [-1, +1]. Draw order: vertex 0, 1, ..., N-1.
State init_uniform(const Graph& g, Rng& rng);

// All beliefs equal to `value` in [-1, +1].
State init_constant(const Graph& g, double value);

// 1/2 + xi/2, clamped to [0, 1] against rounding.
double kind_probability(double xi_x);

// Belief of the recipient after one interaction:
//   kind:   xi + mu_plus  * (1 - xi)
//   unkind: xi - mu_minus * (1 + xi)
// Stays in [-1, +1] for mu in [0, 1]; clamped against rounding.
double apply_interaction(double xi_y, bool kind, const Params& p);

// Advances the state by one activation: dt ~ Exp(2|E|), oriented edge
// uniform among the 2|E| (exact, since all clocks have rate one), kind
// flag ~ Bernoulli(kind_probability(source belief)). Draw order per event:
// dt, edge, coin.
Event step(State& state, const Graph& g, const Params& p, Rng& rng);

// A run stops when ANY enabled criterion fires, checked in the order:
// threshold classification, absorption, event budget. Thresholds and
// absorption are also checked on the initial state. Rules that enable
// thresholds or absorption must also set max_events (termination guard).
struct StopRule {
  std::optional<std::uint64_t> max_events;
  std::optional<double> epsilon;        // X < -eN / X > (1-e)N thresholds
  bool symmetric_thresholds = false;    // auxiliary mode: +-eN instead
  std::optional<double> absorb_delta;   // all beliefs within delta of +-1

  static StopRule events(std::uint64_t k) { return {k, {}, false, {}}; }
};

enum class StopCause {
  max_events,
  hit_minus,
  hit_plus,
  plus_absorbed,
  minus_absorbed,
};

const char* stop_cause_name(StopCause c);

struct TrajectoryRow {
  std::uint64_t event;
  double t;
  double x;
};

struct RunOutcome {
  State state;
  StopCause cause = StopCause::max_events;
  std::uint64_t events = 0;                // events executed by this run
  std::vector<TrajectoryRow> series;       // only if stride > 0
};

// stride == 0 disables the series; otherwise rows are recorded at event 0,
// every `stride` events, and at the final event.
RunOutcome run(State state, const Graph& g, const Params& p,
               const StopRule& rule, Rng& rng, std::uint64_t stride = 0);

}  // namespace kindsim
