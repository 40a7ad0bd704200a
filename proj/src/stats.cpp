#include "kindsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "kindsim/errors.hpp"

namespace kindsim {

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0 || successes > trials) {
    throw Error(Errc::invalid_argument, "wilson95 needs 0 <= successes <= trials, trials > 0");
  }
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // center - half is analytically 0 at successes == 0 (and symmetrically 1 at
  // successes == trials); snap so callers can rely on exact endpoints.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

void MeanVar::add(double x) {
  ++count;
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
}

double MeanVar::variance() const {
  if (count < 2) {
    throw Error(Errc::invalid_argument, "variance needs at least 2 samples");
  }
  return m2 / static_cast<double>(count - 1);
}

double MeanVar::std_error() const {
  return std::sqrt(variance() / static_cast<double>(count));
}

}  // namespace kindsim
