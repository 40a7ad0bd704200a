#pragma once

#include <cstdint>
#include <vector>

#include "kindsim/dynamics.hpp"
#include "kindsim/functionals.hpp"
#include "kindsim/graph.hpp"

namespace kindsim {

// Exit thresholds on the total kindness X. Classification is strict on both
// sides: X sitting exactly on a threshold has not exited.
struct StoppingSpec {
  double epsilon = 0.0;
  std::size_t n = 0;
  double lower = 0.0;  // exit below when X < lower
  double upper = 0.0;  // exit above when X > upper
  bool symmetric = false;

  // lower = -eps*N, upper = (1-eps)*N. Requires eps in (0, 1/2), N >= 1.
  static StoppingSpec thresholds(double epsilon, std::size_t n);
  // Auxiliary symmetric mode: +-eps*N, for two-sided sanity checks.
  static StoppingSpec symmetric_about_zero(double epsilon, std::size_t n);
};

enum class Classification { keep_going, hit_minus, hit_plus };

const char* classification_name(Classification c);

Classification classify(const State& s, const StoppingSpec& spec);

enum class Absorption { none, plus, minus };

const char* absorption_name(Absorption a);

// Every belief within delta of +1 (or of -1). delta = 0 demands the exact
// consensus configurations, reachable only when an update can land on +-1.
Absorption detect_absorption(const State& s, double delta);

struct OneStepDrift {
  double drift_x;   // expected rate of change of X
  double drift_cx;  // expected rate of change of c^(-X)
};

// Brute-force enumeration of every oriented edge's kind and unkind outcome
// with exact probabilities. Independent of the closed-form drift functions;
// used as the oracle they are checked against. Guarded by an oriented-edge
// limit because the enumeration is quadratic in practice.
OneStepDrift one_step_oracle(const State& s, const Graph& g, const Params& p,
                             double c, std::size_t max_oriented_edges = 10000);

struct Estimate {
  std::uint64_t hits_minus = 0;  // successes: exited below first
  std::uint64_t hits_plus = 0;
  std::uint64_t censored = 0;    // budget exhausted before either exit
  std::uint64_t trials = 0;
  double p_hat = 0.0;            // hits_minus / trials
  double ci_low = 0.0;           // 95% Wilson interval on p_hat
  double ci_high = 0.0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of the probability that X exits below before above,
// from uniform initial beliefs. Replicates are independent streams derived
// from the master seed by index, so results do not depend on thread count.
// Throws AllCensored when no replicate reached either threshold.
Estimate estimate_exit_prob(const Graph& g, const Params& p,
                            const StoppingSpec& spec, std::uint64_t replicates,
                            std::uint64_t event_budget, std::uint64_t seed,
                            unsigned threads = 1);

struct SweepRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  Params params{0.0, 0.0};
  Estimate estimate;
  double c_eps = 0.0;       // certified decay base for this N
  double bound = 0.0;       // c_eps^(-eps*N/2)
  double comparison = 0.0;  // ci_high, or 3/trials when hits_minus = 0
  bool zero_hits = false;
  bool violates_bound = false;  // comparison > bound
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Least-squares slope of ln(max(p_hat, 1/(replicates+1))) against N;
  // zero when fewer than two levels.
  double slope = 0.0;
};

struct SweepPlan {
  GraphSpec family;  // n is substituted per level; other fields kept
  std::vector<std::size_t> ns;
  Params params{0.0, 0.0};
  double epsilon = 0.3;
  std::uint64_t replicates = 10000;
  std::uint64_t event_budget = 10000000;
  CertifyOptions certify{};
};

// For each N: build the graph, certify the decay base, estimate the exit
// probability, and compare the conservative upper estimate against the
// exponential bound. Requires mu_minus < mu_plus and ascending ns.
SweepResult decay_sweep(const SweepPlan& plan, std::uint64_t seed,
                        unsigned threads = 1);

struct InitialCondition {
  enum class Kind { uniform, constant, plus_minus };
  Kind kind = Kind::uniform;
  double value = 1.0;          // constant mode
  std::size_t plus_count = 0;  // plus_minus mode: vertices 0..k-1 at +1, rest -1

  State make(const Graph& g, Rng& rng) const;
  bool operator==(const InitialCondition&) const = default;
};

struct FixationReplicate {
  std::uint64_t replicate;
  Absorption outcome;  // none means censored
  std::uint64_t events;
  double final_x;
};

struct FixationReport {
  std::vector<FixationReplicate> rows;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t censored = 0;
  std::uint64_t trials = 0;
  double plus_fraction = 0.0;   // plus / trials
  double minus_fraction = 0.0;  // minus / trials
  double mean_events_to_absorption = 0.0;  // over absorbed runs only
  double delta = 0.0;
  std::uint64_t seed = 0;
};

// Runs replicates until delta-absorption or budget and reports where they
// settled. Same per-replicate stream discipline as estimate_exit_prob.
FixationReport fixation_experiment(const Graph& g, const Params& p,
                                   const InitialCondition& init,
                                   std::uint64_t replicates, double delta,
                                   std::uint64_t event_budget,
                                   std::uint64_t seed, unsigned threads = 1);

}  // namespace kindsim
