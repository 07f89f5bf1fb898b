#include <algorithm>
#include <cmath>

#include "contour_plan.hpp"
#include "edgelaw/errors.hpp"
#include "edgelaw/kernels.hpp"

namespace edgelaw {

namespace {

const cplx kInv2PiI = 1.0 / cplx(0.0, 2.0 * M_PI);

}  // namespace

DeltaKernel::DeltaKernel(double delta, DeltaOptions opt) : delta_(delta), opt_(opt) {
  if (!(delta > 0.0)) throw DomainError("k_delta: delta must be positive");
  if (opt_.rect_left > 0.0) throw ParameterError("k_delta: rectangle left end must be negative");
}

Eigen::MatrixXcd DeltaKernel::block_complex(const std::vector<double>& x, const std::vector<double>& y) const {
  const double d2 = delta_ * delta_;
  const long nf = opt_.weierstrass_factors;
  auto log_gamma_of = [&](cplx z) { return nf > 0 ? -std::log(inv_gamma_weierstrass(z, nf)) : log_gamma(z); };
  const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
  const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());

  // zeta side: e^{-D^2 zeta^2/2 + x zeta} Gamma(zeta); Gamma is cheap enough to use in the scan
  auto lf = [&](cplx w) {
    const double g = log_gamma(w).real();
    return std::max((-0.5 * d2 * w * w + *xlo * w).real(), (-0.5 * d2 * w * w + *xhi * w).real()) + g;
  };
  double left = opt_.rect_left;
  if (left == 0.0) {
    const double ext = detail::line_half_height([&](double s) { return lf(cplx(0.5 - s, 0.5)); }, 1.0);
    // keep the left side halfway between poles of Gamma
    left = -(std::ceil(std::max(ext - 0.5, 1.0)) + 0.5);
  }
  const Contour cw = rectangle_contour(left, 0.5, 0.5, 0.25, 16);

  // z side on Re z = 1
  auto lz = [&](cplx z) {
    const double g = -log_gamma(z).real();
    return std::max((0.5 * d2 * z * z - *ylo * z).real(), (0.5 * d2 * z * z - *yhi * z).real()) + g;
  };
  const double half = detail::line_half_height([&](double s) { return lz(cplx(1.0, s)); }, 1.0 / delta_);
  const double strip = 0.45;
  const Contour cz = vertical_contour(1.0, half, detail::line_nodes(half, strip, detail::strip_growth(lz, 1.0, half, strip)));

  const auto nx = static_cast<Eigen::Index>(x.size()), ny = static_cast<Eigen::Index>(y.size());
  const auto mw = static_cast<Eigen::Index>(cw.size()), mz = static_cast<Eigen::Index>(cz.size());
  Eigen::MatrixXcd logF(nx, mw), logG(mz, ny), C(mw, mz);
  for (Eigen::Index k = 0; k < mw; ++k) {
    const cplx w = cw.nodes[static_cast<std::size_t>(k)];
    const cplx base = -0.5 * d2 * w * w + log_gamma_of(w);
    for (Eigen::Index a = 0; a < nx; ++a) logF(a, k) = base + x[static_cast<std::size_t>(a)] * w;
  }
  for (Eigen::Index l = 0; l < mz; ++l) {
    const cplx z = cz.nodes[static_cast<std::size_t>(l)];
    const cplx base = 0.5 * d2 * z * z - log_gamma_of(z);
    for (Eigen::Index b = 0; b < ny; ++b) logG(l, b) = base - y[static_cast<std::size_t>(b)] * z;
  }
  for (Eigen::Index l = 0; l < mz; ++l)
    for (Eigen::Index k = 0; k < mw; ++k)
      C(k, l) = 1.0 / (cz.nodes[static_cast<std::size_t>(l)] - cw.nodes[static_cast<std::size_t>(k)]);
  return detail::separable(logF, detail::to_vector(cw.weights), C, logG, detail::to_vector(cz.weights),
                           kInv2PiI * kInv2PiI);
}

Eigen::MatrixXd DeltaKernel::block(const std::vector<double>& x, const std::vector<double>& y) const {
  Eigen::MatrixXcd k = block_complex(x, y);
  return opt_.return_imag ? Eigen::MatrixXd(k.imag()) : Eigen::MatrixXd(k.real());
}

double DeltaKernel::operator()(double x, double y) const { return block({x}, {y})(0, 0); }

double k_delta(double delta, double x, double y) { return DeltaKernel(delta)(x, y); }

}  // namespace edgelaw
