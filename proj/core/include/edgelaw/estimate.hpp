#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace edgelaw {

// Monte Carlo expectation or empirical law. For laws, samples holds the
// sorted draws and value/std_error are unused.
struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;

  // Half-width of the 95% DKW band for the empirical CDF.
  double dkw_band() const { return n_samples ? std::sqrt(std::log(2.0 / 0.05) / (2.0 * n_samples)) : 1.0; }
  // Empirical CDF at x (fraction of samples <= x).
  double ecdf(double x) const;
};

}  // namespace edgelaw
