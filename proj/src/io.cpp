#include "kindsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kindsim/errors.hpp"

namespace kindsim {

std::string fmt_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "event,t,X\n";
  for (const TrajectoryRow& r : rows) {
    out += std::to_string(r.event);
    out += ',';
    out += fmt_g12(r.t);
    out += ',';
    out += fmt_g12(r.x);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out =
      "N,eps,mu_plus,mu_minus,replicates,hits_minus,hits_plus,censored,"
      "p_hat,ci_low,ci_high,c_eps,bound\n";
  for (const SweepRow& r : sweep.rows) {
    out += std::to_string(r.n);
    out += ',';
    out += fmt_g12(r.epsilon);
    out += ',';
    out += fmt_g12(r.params.mu_plus);
    out += ',';
    out += fmt_g12(r.params.mu_minus);
    out += ',';
    out += std::to_string(r.estimate.trials);
    out += ',';
    out += std::to_string(r.estimate.hits_minus);
    out += ',';
    out += std::to_string(r.estimate.hits_plus);
    out += ',';
    out += std::to_string(r.estimate.censored);
    out += ',';
    out += fmt_g12(r.estimate.p_hat);
    out += ',';
    out += fmt_g12(r.estimate.ci_low);
    out += ',';
    out += fmt_g12(r.estimate.ci_high);
    out += ',';
    out += fmt_g12(r.c_eps);
    out += ',';
    out += fmt_g12(r.bound);
    out += '\n';
  }
  return out;
}

std::string fixation_csv(const FixationReport& report) {
  std::string out = "replicate,outcome,events,final_X\n";
  for (const FixationReplicate& r : report.rows) {
    out += std::to_string(r.replicate);
    out += ',';
    out += r.outcome == Absorption::none ? "censored"
                                         : absorption_name(r.outcome);
    out += ',';
    out += std::to_string(r.events);
    out += ',';
    out += fmt_g12(r.final_x);
    out += '\n';
  }
  return out;
}

nlohmann::json certificate_json(const DecayCertificate& cert) {
  nlohmann::json j;
  j["c"] = cert.c;
  j["epsilon"] = cert.epsilon;
  j["mu_plus"] = cert.params.mu_plus;
  j["mu_minus"] = cert.params.mu_minus;
  j["graph"] = cert.graph;
  j["n_vertices"] = cert.n_vertices;
  j["grid"] = {
      {"c_max", cert.options.c_max},
      {"factor", cert.options.grid_factor},
      {"points", cert.options.grid_points},
      {"accepted_index", cert.grid_index},
  };
  j["ensemble"] = {
      {"trajectories", cert.options.trajectories},
      {"trajectory_budget", cert.options.trajectory_budget},
      {"trajectory_states", cert.trajectory_states},
      {"random_states", cert.random_states},
      {"extreme_states", cert.extreme_states},
  };
  j["max_phi"] = cert.max_mgf_drift;
  j["lemma5_margin"] = cert.window_margin;
  j["seed"] = cert.seed;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open for reading: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(Errc::io_error, "read failed: " + path);
  }
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_error, "cannot open for writing: " + path);
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw Error(Errc::io_error, "write failed: " + path);
  }
}

}  // namespace kindsim
