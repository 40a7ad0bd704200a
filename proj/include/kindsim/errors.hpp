#pragma once

#include <stdexcept>
#include <string>

namespace kindsim {

// Error codes carried by every kindsim exception. Tests and the CLI
// dispatch on the code, not on message text.
enum class Errc {
  invalid_spec,
  connectivity_retry_exhausted,
  self_loop,
  duplicate_edge,
  disconnected,
  parse_error,
  empty_graph,
  no_path,
  out_of_range,
  non_positive_c,
  degenerate_drift,
  no_certifiable_c,
  precondition_violated,
  mismatched_n,
  too_large,
  all_censored,
  invalid_argument,
  io_error,
  missing_field,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace kindsim
