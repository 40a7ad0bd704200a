#include "kindsim/functionals.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "kindsim/errors.hpp"
#include "kindsim/experiments.hpp"
#include "kindsim/rng.hpp"

namespace kindsim {

namespace {

void require_belief(double xi) {
  if (!(xi >= -1.0 && xi <= 1.0)) {
    throw Error(Errc::out_of_range, "belief outside [-1, +1]");
  }
}

void require_positive_c(double c) {
  if (!(c > 0.0)) {
    throw Error(Errc::non_positive_c, "decay base must be positive");
  }
}

void require_state_matches(const State& s, const Graph& g) {
  if (s.beliefs.size() != g.n_vertices()) {
    throw Error(Errc::mismatched_n, "state size does not match graph");
  }
}

}  // namespace

double total_kindness(const State& s) { return s.fresh_total(); }

double oriented_drift(double xi_x, double xi_y, const Params& p) {
  require_belief(xi_x);
  require_belief(xi_y);
  const double kind = 0.5 + 0.5 * xi_x;
  return kind * p.mu_plus * (1.0 - xi_y) -
         (1.0 - kind) * p.mu_minus * (1.0 + xi_y);
}

double pair_drift(double xi_x, double xi_y, const Params& p) {
  require_belief(xi_x);
  require_belief(xi_y);
  return (p.mu_plus - p.mu_minus) * (1.0 - xi_x * xi_y);
}

double total_drift(const State& s, const Graph& g, const Params& p) {
  p.validate();
  require_state_matches(s, g);
  double sum = 0.0;
  for (const Edge& e : g.edges()) {
    sum += pair_drift(s.beliefs[e.u], s.beliefs[e.v], p);
  }
  return sum;
}

double oriented_mgf_drift(double xi_x, double xi_y, double c, const Params& p) {
  require_belief(xi_x);
  require_belief(xi_y);
  require_positive_c(c);
  const double kind = 0.5 + 0.5 * xi_x;
  return kind * std::pow(c, -p.mu_plus * (1.0 - xi_y)) +
         (1.0 - kind) * std::pow(c, p.mu_minus * (1.0 + xi_y)) - 1.0;
}

double total_mgf_drift(const State& s, const Graph& g, double c,
                       const Params& p) {
  p.validate();
  require_positive_c(c);
  require_state_matches(s, g);
  // Each oriented term factors through its endpoints, so the 2|E| pow calls
  // collapse to 2N cached per-vertex factors. Term arithmetic is kept
  // identical to oriented_mgf_drift so the sums agree bit for bit.
  const std::size_t n = g.n_vertices();
  std::vector<double> kind(n), kind_factor(n), unkind_factor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = s.beliefs[i];
    require_belief(b);
    kind[i] = 0.5 + 0.5 * b;
    kind_factor[i] = std::pow(c, -p.mu_plus * (1.0 - b));
    unkind_factor[i] = std::pow(c, p.mu_minus * (1.0 + b));
  }
  double sum = 0.0;
  const std::size_t m = g.n_oriented_edges();
  for (std::size_t k = 0; k < m; ++k) {
    const auto [x, y] = g.oriented_edge(k);
    sum += kind[x] * kind_factor[y] + (1.0 - kind[x]) * unkind_factor[y] - 1.0;
  }
  return sum;
}

double mgf_uniform(double c) {
  require_positive_c(c);
  const double x = std::log(c);
  if (std::abs(c - 1.0) <= 1e-4) {
    // The direct quotient loses digits to cancellation here; the sinh form
    // is exact in the limit.
    if (x == 0.0) return 1.0;
    return std::sinh(x) / x;
  }
  return (c * c - 1.0) / (2.0 * c * x);
}

MgfWindow mgf_window(double c, double epsilon) {
  if (!(c > 1.0)) {
    throw Error(Errc::out_of_range, "mgf window needs c > 1");
  }
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(Errc::out_of_range, "epsilon outside (0, 1/2)");
  }
  MgfWindow w;
  w.c = c;
  w.epsilon = epsilon;
  w.value = mgf_uniform(c);
  w.lower = 0.5;
  w.upper = std::pow(c, 0.5 * epsilon);
  return w;
}

std::pair<Vertex, Vertex> witness_pair(const State& s, const Graph& g,
                                       double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(Errc::out_of_range, "epsilon outside (0, 1/2)");
  }
  require_state_matches(s, g);
  const double lo = -epsilon;
  const double hi = 1.0 - epsilon;

  bool all_low = true, all_high = true;
  for (double b : s.beliefs) {
    require_belief(b);
    all_low = all_low && b < lo;
    all_high = all_high && b > hi;
  }
  if (all_low || all_high) {
    throw Error(Errc::precondition_violated,
                "state is already past a pointwise exit threshold");
  }

  const auto n = static_cast<Vertex>(g.n_vertices());
  for (Vertex v = 0; v < n; ++v) {
    if (s.beliefs[v] >= lo && s.beliefs[v] <= hi) {
      return {v, g.neighbors(v).front()};
    }
  }

  // No vertex in the middle band: both extreme camps are nonempty, so the
  // shortest path from the first low vertex to the first high vertex must
  // switch camps at some hop.
  Vertex low_v = 0, high_v = 0;
  bool found_low = false, found_high = false;
  for (Vertex v = 0; v < n; ++v) {
    if (!found_low && s.beliefs[v] < lo) {
      low_v = v;
      found_low = true;
    }
    if (!found_high && s.beliefs[v] > hi) {
      high_v = v;
      found_high = true;
    }
  }
  const std::vector<Vertex> path = g.shortest_path(low_v, high_v);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (s.beliefs[path[i]] < lo && s.beliefs[path[i + 1]] > hi) {
      return {path[i], path[i + 1]};
    }
  }
  throw Error(Errc::precondition_violated, "no straddling pair on path");
}

void CertifyOptions::validate() const {
  if (!(c_max > 1.0)) {
    throw Error(Errc::out_of_range, "certification grid must start above 1");
  }
  if (!(grid_factor > 0.0 && grid_factor < 1.0)) {
    throw Error(Errc::out_of_range, "grid factor outside (0, 1)");
  }
  if (grid_points < 1) {
    throw Error(Errc::out_of_range, "need at least one grid point");
  }
  if (trajectories < 0 || random_states < 0) {
    throw Error(Errc::out_of_range, "ensemble sizes must be nonnegative");
  }
  if (trajectory_budget < 1) {
    throw Error(Errc::out_of_range, "trajectory budget must be positive");
  }
}

namespace {

// Random pre-threshold states followed by the deterministic extremes:
// each edge's endpoints at every combination of {-eps, 1-eps} with the
// remaining beliefs filled by a fixed background pattern. The uniform +-1
// backgrounds push X past a threshold on all but tiny graphs, so two
// parity-alternating backgrounds keep this part of the ensemble populated.
struct StoredStates {
  std::vector<State> states;
  std::size_t n_random = 0;
  std::size_t n_extreme = 0;
};

StoredStates build_stored_states(const Graph& g, double epsilon,
                                 const CertifyOptions& opt,
                                 const StoppingSpec& spec,
                                 std::uint64_t seed) {
  StoredStates out;
  out.states.reserve(static_cast<std::size_t>(opt.random_states));

  Rng rng(derive_seed(derive_seed(seed, StreamTag::cert_random_state), 0));
  std::uint64_t rejections = 0;
  const std::uint64_t max_rejections =
      1000 + 1000ull * static_cast<std::uint64_t>(opt.random_states);
  while (out.n_random < static_cast<std::size_t>(opt.random_states)) {
    State s = init_uniform(g, rng);
    if (classify(s, spec) != Classification::keep_going) {
      if (++rejections > max_rejections) {
        throw Error(Errc::precondition_violated,
                    "rejection sampling found no pre-threshold states");
      }
      continue;
    }
    out.states.push_back(std::move(s));
    ++out.n_random;
  }

  const std::size_t n = g.n_vertices();
  const double endpoint[2] = {-epsilon, 1.0 - epsilon};
  auto background = [&](int pattern, std::size_t v) -> double {
    switch (pattern) {
      case 0: return 1.0;
      case 1: return -1.0;
      case 2: return (v % 2 == 0) ? 1.0 : -1.0;
      default: return (v % 2 == 0) ? -1.0 : 1.0;
    }
  };
  for (const Edge& e : g.edges()) {
    for (double a : endpoint) {
      for (double b : endpoint) {
        for (int pattern = 0; pattern < 4; ++pattern) {
          State s;
          s.beliefs.resize(n);
          for (std::size_t v = 0; v < n; ++v) {
            s.beliefs[v] = background(pattern, v);
          }
          s.beliefs[e.u] = a;
          s.beliefs[e.v] = b;
          s.refresh_total();
          if (classify(s, spec) != Classification::keep_going) continue;
          out.states.push_back(std::move(s));
          ++out.n_extreme;
        }
      }
    }
  }
  return out;
}

}  // namespace

DecayCertificate certify_decay_base(const Graph& g, const Params& p,
                                    double epsilon, const CertifyOptions& opt,
                                    std::uint64_t seed) {
  p.validate();
  opt.validate();
  if (!(p.mu_minus < p.mu_plus)) {
    throw Error(Errc::degenerate_drift,
                "degenerate drift: certification needs mu_minus < mu_plus");
  }
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(Errc::out_of_range, "epsilon outside (0, 1/2)");
  }

  const StoppingSpec spec = StoppingSpec::thresholds(epsilon, g.n_vertices());
  const StoredStates stored = build_stored_states(g, epsilon, opt, spec, seed);
  const std::uint64_t trajectory_tag =
      derive_seed(seed, StreamTag::cert_trajectory);

  for (int k = 0; k < opt.grid_points; ++k) {
    const double c = 1.0 + (opt.c_max - 1.0) * std::pow(opt.grid_factor, k);
    if (!(c > 1.0)) break;
    const MgfWindow window = mgf_window(c, epsilon);
    if (!window.ok()) continue;

    double max_drift = -std::numeric_limits<double>::infinity();
    bool rejected = false;
    for (const State& s : stored.states) {
      const double v = total_mgf_drift(s, g, c, p);
      max_drift = std::max(max_drift, v);
      if (v > 0.0) {
        rejected = true;
        break;
      }
    }

    // The trajectory ensemble is replayed from the same per-trajectory
    // seeds for every candidate, so the set of states it contributes does
    // not depend on where the grid search stops.
    std::size_t trajectory_states = 0;
    for (int t = 0; !rejected && t < opt.trajectories; ++t) {
      Rng traj_rng(derive_seed(trajectory_tag, static_cast<std::uint64_t>(t)));
      State s = init_uniform(g, traj_rng);
      for (std::uint64_t ev = 0;; ++ev) {
        if (classify(s, spec) != Classification::keep_going) break;
        const double v = total_mgf_drift(s, g, c, p);
        ++trajectory_states;
        max_drift = std::max(max_drift, v);
        if (v > 0.0) {
          rejected = true;
          break;
        }
        if (ev >= opt.trajectory_budget) break;
        step(s, g, p, traj_rng);
      }
    }
    if (rejected) continue;

    DecayCertificate cert;
    cert.c = c;
    cert.epsilon = epsilon;
    cert.params = p;
    cert.graph = "n=" + std::to_string(g.n_vertices()) +
                 ",m=" + std::to_string(g.n_edges());
    cert.n_vertices = g.n_vertices();
    cert.options = opt;
    cert.seed = seed;
    cert.grid_index = k;
    cert.trajectory_states = trajectory_states;
    cert.random_states = stored.n_random;
    cert.extreme_states = stored.n_extreme;
    cert.max_mgf_drift = max_drift;
    cert.window_margin = window.margin();
    return cert;
  }
  throw Error(Errc::no_certifiable_c,
              "grid exhausted without a certifiable decay base");
}

}  // namespace kindsim
