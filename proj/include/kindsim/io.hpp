#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kindsim/dynamics.hpp"
#include "kindsim/experiments.hpp"
#include "kindsim/functionals.hpp"

namespace kindsim {

// Floats in the CSV wire formats carry 12 significant digits.
std::string fmt_g12(double v);

// "event,t,X"
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);

// "N,eps,mu_plus,mu_minus,replicates,hits_minus,hits_plus,censored,
//  p_hat,ci_low,ci_high,c_eps,bound"
std::string sweep_csv(const SweepResult& sweep);

// "replicate,outcome,events,final_X"; outcome is plus, minus, or censored.
std::string fixation_csv(const FixationReport& report);

nlohmann::json certificate_json(const DecayCertificate& cert);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace kindsim
