#include "edgelaw/stats.hpp"

#include <algorithm>
#include <cmath>

#include "edgelaw/errors.hpp"
#include "edgelaw/estimate.hpp"
#include "edgelaw/parallel.hpp"

namespace edgelaw {

double MCEstimate::ecdf(double x) const {
  if (samples.empty()) return 0.0;
  auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

double dkw_band(std::size_t n, double alpha) {
  if (n == 0) return 1.0;
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}


TabulatedCdf tabulate_cdf(const std::function<double(double)>& F, double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw ParameterError("tabulate_cdf: need at least two points on a proper interval");
  TabulatedCdf t;
  const auto n = static_cast<std::size_t>(points);
  t.x.resize(n);
  t.F.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  parallel_for(n, [&](std::size_t i) { t.F[i] = F(t.x[i]); });

  // Fritsch-Carlson slopes
  const double h = t.x[1] - t.x[0];
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (t.F[i + 1] - t.F[i]) / h;
  t.slope.assign(n, 0.0);
  t.slope[0] = d[0];
  t.slope[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    t.slope[i] = d[i - 1] * d[i] <= 0.0 ? 0.0 : 2.0 / (1.0 / d[i - 1] + 1.0 / d[i]);
  return t;
}

double TabulatedCdf::operator()(double v) const {
  if (v <= x.front()) return F.front();
  if (v >= x.back()) return F.back();
  const double h = x[1] - x[0];
  const auto i = std::min(static_cast<std::size_t>((v - x.front()) / h), x.size() - 2);
  const double s = (v - x[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * F[i] + (s3 - 2 * s2 + s) * h * slope[i] + (-2 * s3 + 3 * s2) * F[i + 1] +
         (s3 - s2) * h * slope[i + 1];
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& F) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // ties: only the last copy sees the full jump
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    const double f = F(sorted[i]);
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), sorted[i]) - sorted.begin();
    d = std::max({d, std::abs(f - static_cast<double>(i + 1) / n), std::abs(f - static_cast<double>(lo) / n)});
  }
  return d;
}

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace edgelaw
