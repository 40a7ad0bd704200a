#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "kindsim/dynamics.hpp"
#include "kindsim/graph.hpp"

namespace kindsim {

// Closed-form drift and generating-function quantities for the belief
// dynamics, plus the empirical certification of a decay base c > 1 that
// makes c^(-X) a supermartingale before the exit thresholds.

double total_kindness(const State& s);

// Expected instantaneous rate of change of xi(y) due to activations of the
// oriented edge x -> y.
double oriented_drift(double xi_x, double xi_y, const Params& p);

// Closed form (mu_plus - mu_minus) * (1 - xi_x * xi_y). Equals
// oriented_drift(x,y) + oriented_drift(y,x); the verify battery checks the
// two agree to 1e-12.
double pair_drift(double xi_x, double xi_y, const Params& p);

// Expected rate of change of the total kindness X, summed over unordered
// edges via pair_drift.
double total_drift(const State& s, const Graph& g, const Params& p);

// Expected multiplicative drift of c^(-X) contributed by one oriented edge:
// zero at c = 1 for every input, and its derivative in c at 1 recovers the
// negated pair drift.
double oriented_mgf_drift(double xi_x, double xi_y, double c, const Params& p);

// Sum of oriented_mgf_drift over all 2|E| oriented edges. Nonpositive at a
// certified decay base on every pre-threshold state.
double total_mgf_drift(const State& s, const Graph& g, double c,
                       const Params& p);

// E[c^(-B)] for a single belief B uniform on [-1, +1]:
// (c^2 - 1) / (2 c ln c), switching to the equivalent sinh(ln c)/ln c form
// for |c - 1| <= 1e-4 where the direct quotient cancels badly.
double mgf_uniform(double c);

// The two strict inequalities 1/2 < mgf_uniform(c) < c^(eps/2) that a decay
// base must satisfy so the initial-state MGF argument closes.
struct MgfWindow {
  double c = 1.0;
  double epsilon = 0.0;
  double value = 1.0;  // mgf_uniform(c)
  double lower = 0.5;
  double upper = 1.0;  // c^(eps/2)

  bool ok() const { return value > lower && value < upper; }
  double margin() const {
    return std::min(value - lower, upper - value);
  }
};

// Requires c > 1 and eps in (0, 1/2).
MgfWindow mgf_window(double c, double epsilon);

// Constructive neighbor pair (x, y) with xi(x) * xi(y) <= 1 - eps on any
// state that is not past a threshold in the pointwise sense (not all
// beliefs < -eps and not all > 1-eps). Case 1: a vertex with belief in
// [-eps, 1-eps] and its lowest-index neighbor. Case 2: walk the shortest
// path from the lowest-index low vertex to the lowest-index high vertex and
// return the first low/high adjacent pair. Tie-breaks are by vertex index
// so repeated calls are reproducible.
std::pair<Vertex, Vertex> witness_pair(const State& s, const Graph& g,
                                       double epsilon);

struct CertifyOptions {
  double c_max = 1.5;        // grid starts here and descends toward 1
  double grid_factor = 0.85; // c_k = 1 + (c_max - 1) * factor^k
  int grid_points = 50;
  int trajectories = 100;            // simulated ensemble size
  int random_states = 10000;         // rejection-sampled pre-threshold states
  std::uint64_t trajectory_budget = 1000000;  // events per trajectory

  void validate() const;
  bool operator==(const CertifyOptions&) const = default;
};

// Evidence attached to a certified decay base. window_margin serializes as
// "lemma5_margin" and max_mgf_drift as "max_phi" in the JSON wire format.
struct DecayCertificate {
  double c = 1.0;
  double epsilon = 0.0;
  Params params{0.0, 0.0};
  std::string graph;          // printable descriptor of the graph used
  std::size_t n_vertices = 0;
  CertifyOptions options{};
  std::uint64_t seed = 0;
  int grid_index = 0;             // position of c on the descending grid
  std::size_t trajectory_states = 0;
  std::size_t random_states = 0;
  std::size_t extreme_states = 0;
  double max_mgf_drift = 0.0;     // max over the ensemble, at the final c
  double window_margin = 0.0;     // min slack of the two MgfWindow bounds
};

// Descends the geometric grid from c_max and returns the first (largest) c
// where the MGF window holds and total_mgf_drift <= 0 on the whole
// validation ensemble: every pre-threshold state visited by the simulated
// trajectories, the rejection-sampled random states, and deterministic
// extreme states placing each edge's endpoints at {-eps, 1-eps} with all
// other beliefs at a common +-1.
//
// Requires mu_minus < mu_plus (drift must point up) and eps in (0, 1/2).
// Throws NoCertifiableC when the grid is exhausted. Deterministic in seed.
DecayCertificate certify_decay_base(const Graph& g, const Params& p,
                                    double epsilon, const CertifyOptions& opt,
                                    std::uint64_t seed);

}  // namespace kindsim
