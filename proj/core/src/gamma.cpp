#include <cmath>
#include <numbers>

#include "edgelaw/errors.hpp"
#include "edgelaw/numerics.hpp"

namespace edgelaw {

namespace {

using std::numbers::pi;

// Lanczos, g = 7, nine terms.
constexpr double kG = 7.0;
constexpr double kP[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                          771.32342877765313,   -176.61502916214059,   12.507343278686905,
                          -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log(cplx z) {
  z -= 1.0;
  cplx x = kP[0];
  for (int i = 1; i < 9; ++i) x += kP[i] / (z + static_cast<double>(i));
  const cplx t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(w) without overflow for large |Im w|.
cplx log_sin(cplx w) {
  if (std::abs(w.imag()) < 30.0) return std::log(std::sin(w));
  const bool flip = w.imag() < 0.0;
  if (flip) w = std::conj(w);
  const cplx i(0.0, 1.0);
  const cplx r = -i * w + std::log(0.5 * i) + std::log(1.0 - std::exp(2.0 * i * w));
  return flip ? std::conj(r) : r;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - cplx(k, 0.0)) < 1e-8)
      throw PoleError("complex_gamma: argument at a pole", k);
    return std::log(pi) - log_sin(pi * z) - lanczos_log(1.0 - z);
  }
  return lanczos_log(z);
}

cplx complex_gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx inv_gamma_weierstrass(cplx z, long n) {
  constexpr double euler_gamma = 0.57721566490153286061;
  cplx acc = std::log(z) + euler_gamma * z;
  for (long i = 1; i <= n; ++i) {
    const cplx e = z / static_cast<double>(i);
    if (std::abs(e) < 1e-2) {
      // log(1+e) - e by its series
      const cplx e2 = e * e;
      acc += e2 * (-0.5 + e * (1.0 / 3.0 + e * (-0.25 + e * (0.2 + e * (-1.0 / 6.0 + e / 7.0)))));
    } else {
      acc += std::log(1.0 + e) - e;
    }
  }
  return std::exp(acc);
}

}  // namespace edgelaw
