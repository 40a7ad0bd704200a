#pragma once

#include <cstdint>

namespace kindsim {

struct WilsonInterval {
  double low;
  double high;
};

// 95% Wilson score interval. Preferred over Wald because the estimates of
// interest sit near zero, where Wald collapses to a point.
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

struct MeanVar {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations (Welford)

  void add(double x);
  double variance() const;  // sample variance, count >= 2
  double std_error() const; // of the mean
};

}  // namespace kindsim
