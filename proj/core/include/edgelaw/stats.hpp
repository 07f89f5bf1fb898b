#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace edgelaw {

// DKW half-width sqrt(ln(2/alpha) / 2n).
double dkw_band(std::size_t n, double alpha = 0.05);

// CDF tabulated on a uniform grid and read back by monotone cubic (PCHIP)
// interpolation; 0 below the grid and 1 above it are NOT assumed, the end
// values are held instead.
struct TabulatedCdf {
  std::vector<double> x, F;
  std::vector<double> slope;
  double operator()(double v) const;
};
// Evaluates F at `points` uniform points of [lo, hi], in parallel.
TabulatedCdf tabulate_cdf(const std::function<double(double)>& F, double lo, double hi, int points);

// sup |F - F_n| for sorted samples; exact for continuous F.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& F);
// Largest gap between two empirical CDFs of sorted samples.
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);


}  // namespace edgelaw
