#pragma once

#include <functional>
#include <optional>

#include "kindsim/errors.hpp"

namespace testsupport {

// Runs f and reports the kindsim error code it threw, if any.
inline std::optional<kindsim::Errc> error_code_of(
    const std::function<void()>& f) {
  try {
    f();
  } catch (const kindsim::Error& e) {
    return e.code();
  } catch (...) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace testsupport
