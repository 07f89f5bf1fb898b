#include <cmath>
#include <numbers>

#include "edgelaw/errors.hpp"
#include "edgelaw/numerics.hpp"

namespace edgelaw {

namespace {

struct AiryPair {
  double ai;
  double aip;
};

// Ai(x) = (1/2 pi i) int e^{z^3/3 - x z} dz over Re z = c, upwards. By
// conjugate symmetry only s >= 0 is needed. The line sits at the saddle
// sqrt(x) for x >= 1 and near the imaginary axis for negative x.
AiryPair airy_pair(double x) {
  if (!(x >= -30.0 && x <= 30.0)) throw RangeError("airy_function: argument outside [-30, 30]");
  const double c = x >= 1.0 ? std::sqrt(x) : (x >= 0.0 ? 1.0 : 1.0 / std::sqrt(1.0 - x));
  const double re0 = c * c * c / 3.0 - x * c;
  const double smax = std::sqrt((40.0 + std::max(re0, 0.0)) / c);
  const double base = std::abs(c * c - x);
  const double hcap = std::min(1.0, 1.0 / std::sqrt(c));
  const GaussRule& g = gauss_legendre(16);

  double ai = 0.0, aip = 0.0;
  double s = 0.0;
  while (s < smax) {
    double h = std::min(hcap, 6.0 / (base + s * s + 1.0));
    h = std::min(h, 6.0 / (base + (s + h) * (s + h) + 1.0));
    h = std::min(h, smax - s);
    for (int i = 0; i < 16; ++i) {
      const double si = s + 0.5 * h * (g.x[i] + 1.0);
      const cplx z(c, si);
      const cplx e = std::exp(z * z * z / 3.0 - x * z);
      const double w = 0.5 * h * g.w[i];
      ai += w * e.real();
      aip += w * (-z * e).real();
    }
    s += h;
  }
  return {ai / std::numbers::pi, aip / std::numbers::pi};
}

}  // namespace

double airy_ai(double x) { return airy_pair(x).ai; }
double airy_ai_prime(double x) { return airy_pair(x).aip; }

}  // namespace edgelaw
