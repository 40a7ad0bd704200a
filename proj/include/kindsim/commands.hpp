#pragma once

#include "kindsim/config.hpp"

namespace kindsim {

// Each command returns a process exit code: 0 success, 1 runtime or
// analysis failure, 2 config error. Outputs land in cfg.out_dir.
int cmd_simulate(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_certify(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, bool inject_drift_sign_flip);
int cmd_graph_gen(const RunConfig& cfg);

}  // namespace kindsim
