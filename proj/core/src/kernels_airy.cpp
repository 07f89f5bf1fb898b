#include <algorithm>
#include <cmath>

#include "contour_plan.hpp"
#include "edgelaw/errors.hpp"
#include "edgelaw/kernels.hpp"

namespace edgelaw {

namespace {

const cplx kInv2PiI = 1.0 / cplx(0.0, 2.0 * M_PI);

// w enters as e^{-(w^3/3 + t w^2 - x w)}, z as e^{z^3/3 + t z^2 - y z}.
cplx phase_w(cplx w, double t, double x) { return -(w * w * w / 3.0 + t * w * w - x * w); }
cplx phase_z(cplx z, double t, double y) { return z * z * z / 3.0 + t * z * z - y * z; }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

// Gauss-Legendre wedge with truncation and panel size read off the integrand.
Contour plan_wedge(double apex, double angle, const std::function<double(cplx)>& logabs, double oscillation) {
  const cplx dir = std::polar(1.0, angle);
  double len = detail::line_half_height([&](double s) { return logabs(apex + dir * s); }, 1.0);
  len = std::max(len, 1.0);
  const double freq = 1.0 + oscillation + len * len;
  const double panel = std::min(0.5, 8.0 / freq);
  const int panels = std::max(2, static_cast<int>(std::ceil(len / panel)));
  return wedge_contour(apex, angle, len, panels, 16);
}

}  // namespace

double airy_product_integral(double t1, double x, double t2, double y, double zmin, double zmax) {
  if (!(zmax > zmin)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil((zmax - zmin) / 0.25)));
  const double d = t2 - t1;
  return integrate([&](double z) { return std::exp(z * d) * airy_ai(x + z) * airy_ai(y + z); }, zmin, zmax, panels);
}

double airy_kernel_ext(double t1, double x, double t2, double y) {
  const double d = t2 - t1;
  // upper limit: Ai(u) ~ e^{-2/3 u^{3/2}} beats e^{d z} well before u = 30
  const double lo = std::min(x, y);
  double zmax = 0.0;
  for (double z = 0.0;; z += 0.25) {
    const double u = lo + z;
    zmax = z;
    if (u >= 30.0) break;
    if (u > 1.0 && d * z - (4.0 / 3.0) * std::pow(u, 1.5) < -38.0) break;
  }
  const double upper = airy_product_integral(t1, x, t2, y, 0.0, zmax);
  if (d <= 0.0) return upper;
  // -int_{-inf}^0 = int_0^inf - int_R, and the full line integral is Gaussian
  const double full = std::exp(d * d * d / 12.0 - 0.5 * (x + y) * d - (x - y) * (x - y) / (4.0 * d)) /
                      std::sqrt(4.0 * M_PI * d);
  return upper - full;
}

AiryProductKernel::AiryProductKernel(std::vector<double> times, double lo)
    : times_(std::move(times)), lo_(std::min(lo, 24.0) - 1.0), h_(0.01) {
  const auto n = static_cast<std::size_t>(std::ceil((25.0 - lo_) / h_)) + 1;
  f_.resize(n);
  d_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = lo_ + static_cast<double>(k) * h_;
    f_[k] = airy_ai(u);
    d_[k] = airy_ai_prime(u);
  }
}

double AiryProductKernel::ai(double u) const {
  if (u < lo_) return airy_ai(u);
  const double pos = (u - lo_) / h_;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= f_.size()) return 0.0;  // Ai(25) ~ 1e-37
  const double s = pos - static_cast<double>(k);
  const double u0 = lo_ + static_cast<double>(k) * h_, u1 = u0 + h_;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  // quintic Hermite with Ai'' = u Ai at both ends
  return f_[k] * (1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5) + h_ * d_[k] * (s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5) +
         h_ * h_ * u0 * f_[k] * 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5) +
         h_ * h_ * u1 * f_[k + 1] * 0.5 * (s3 - 2.0 * s4 + s5) + h_ * d_[k + 1] * (-4.0 * s3 + 7.0 * s4 - 3.0 * s5) +
         f_[k + 1] * (10.0 * s3 - 15.0 * s4 + 6.0 * s5);
}

Eigen::MatrixXd AiryProductKernel::block(int i, const std::vector<double>& x, int j,
                                         const std::vector<double>& y) const {
  const double d = times_.at(static_cast<std::size_t>(j)) - times_.at(static_cast<std::size_t>(i));
  const double lo = std::min(*std::min_element(x.begin(), x.end()), *std::min_element(y.begin(), y.end()));
  // same cutoff as airy_kernel_ext
  double zmax = 0.0;
  for (double z = 0.0;; z += 0.25) {
    const double u = lo + z;
    zmax = z;
    if (u >= 25.0) break;
    if (u > 1.0 && d * z - (4.0 / 3.0) * std::pow(u, 1.5) < -38.0) break;
  }
  const auto nx = static_cast<Eigen::Index>(x.size()), ny = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nx, ny);
  if (zmax > 0.0) {
    const GaussRule& g = gauss_legendre(16);
    const int panels = std::max(1, static_cast<int>(std::ceil(zmax / 0.5)));
    const double hp = zmax / panels;
    const Eigen::Index nz = static_cast<Eigen::Index>(panels) * 16;
    Eigen::MatrixXd A(nx, nz), B(nz, ny);
    for (int p = 0; p < panels; ++p)
      for (int q = 0; q < 16; ++q) {
        const Eigen::Index c = static_cast<Eigen::Index>(p) * 16 + q;
        const double z = (p + 0.5 * (g.x[static_cast<std::size_t>(q)] + 1.0)) * hp;
        const double w = 0.5 * hp * g.w[static_cast<std::size_t>(q)] * std::exp(d * z);
        for (Eigen::Index a = 0; a < nx; ++a) A(a, c) = w * ai(x[static_cast<std::size_t>(a)] + z);
        for (Eigen::Index b = 0; b < ny; ++b) B(c, b) = ai(y[static_cast<std::size_t>(b)] + z);
      }
    out.noalias() = A * B;
  }
  if (d > 0.0)
    for (Eigen::Index a = 0; a < nx; ++a)
      for (Eigen::Index b = 0; b < ny; ++b) {
        const double X = x[static_cast<std::size_t>(a)], Y = y[static_cast<std::size_t>(b)];
        out(a, b) -= std::exp(d * d * d / 12.0 - 0.5 * (X + Y) * d - (X - Y) * (X - Y) / (4.0 * d)) /
                     std::sqrt(4.0 * M_PI * d);
      }
  return out;
}

AiryJKernel::AiryJKernel(std::vector<double> times, AiryOptions opt) : times_(std::move(times)), opt_(opt) {
  double tmax = 0.0;
  for (double t : times_) tmax = std::max(tmax, std::abs(t));
  if (std::isnan(opt_.delta2)) opt_.delta2 = tmax + 0.5;
  if (std::isnan(opt_.delta1)) opt_.delta1 = opt_.vertical ? opt_.delta2 : opt_.delta2 + 0.5;
  if (opt_.vertical) {
    if (!(opt_.delta2 > tmax) || !(opt_.delta1 > tmax))
      throw ParameterError("j_airy: vertical contours need delta > max|t|");
  } else if (!(opt_.delta2 < opt_.delta1)) {
    throw ParameterError("j_airy: wedge apexes must satisfy delta2 < delta1");
  }
}

Eigen::MatrixXd AiryJKernel::block(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const {
  const double ti = times_.at(static_cast<std::size_t>(i));
  const double tj = times_.at(static_cast<std::size_t>(j));
  const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
  const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
  auto lw = [&](cplx w) { return std::max(phase_w(w, ti, *xlo).real(), phase_w(w, ti, *xhi).real()); };
  auto lz = [&](cplx z) { return std::max(phase_z(z, tj, *ylo).real(), phase_z(z, tj, *yhi).real()); };

  Contour cw, cz;
  if (opt_.vertical) {
    const double gap = opt_.delta1 + opt_.delta2;
    const double strip = 0.45 * gap;
    const double hw = detail::line_half_height([&](double s) { return lw(cplx(-opt_.delta2, s)); }, 1.0);
    const double hz = detail::line_half_height([&](double s) { return lz(cplx(opt_.delta1, s)); }, 1.0);
    cw = vertical_contour(-opt_.delta2, hw,
                          detail::line_nodes(hw, strip, detail::strip_growth(lw, -opt_.delta2, hw, strip)));
    cz = vertical_contour(opt_.delta1, hz,
                          detail::line_nodes(hz, strip, detail::strip_growth(lz, opt_.delta1, hz, strip)));
  } else {
    // e^{-w^3/3} decays along arg w = +-2pi/3 and e^{z^3/3} along arg z = +-pi/3
    cw = plan_wedge(opt_.delta2, 2.0 * M_PI / 3.0, lw, max_abs(x) + 2.0 * std::abs(ti));
    cz = plan_wedge(opt_.delta1, M_PI / 3.0, lz, max_abs(y) + 2.0 * std::abs(tj));
  }

  const auto nx = static_cast<Eigen::Index>(x.size()), ny = static_cast<Eigen::Index>(y.size());
  const auto mw = static_cast<Eigen::Index>(cw.size()), mz = static_cast<Eigen::Index>(cz.size());
  Eigen::MatrixXcd logF(nx, mw), logG(mz, ny), C(mw, mz);
  for (Eigen::Index k = 0; k < mw; ++k)
    for (Eigen::Index a = 0; a < nx; ++a)
      logF(a, k) = phase_w(cw.nodes[static_cast<std::size_t>(k)], ti, x[static_cast<std::size_t>(a)]);
  for (Eigen::Index l = 0; l < mz; ++l)
    for (Eigen::Index b = 0; b < ny; ++b)
      logG(l, b) = phase_z(cz.nodes[static_cast<std::size_t>(l)], tj, y[static_cast<std::size_t>(b)]);
  for (Eigen::Index l = 0; l < mz; ++l)
    for (Eigen::Index k = 0; k < mw; ++k)
      C(k, l) = 1.0 / (cz.nodes[static_cast<std::size_t>(l)] - cw.nodes[static_cast<std::size_t>(k)]);
  return detail::separable(logF, detail::to_vector(cw.weights), C, logG, detail::to_vector(cz.weights),
                           kInv2PiI * kInv2PiI)
      .real();
}

double AiryJKernel::operator()(int i, double x, int j, double y) const { return block(i, {x}, j, {y})(0, 0); }

double j_airy(double t1, double x, double t2, double y, const AiryOptions& opt) {
  return AiryJKernel({t1, t2}, opt)(0, x, 1, y);
}

double airy_block_kernel(const std::vector<double>& times, const std::vector<double>& xi, int i, double x, int j,
                         double y) {
  if (times.size() != xi.size()) throw ParameterError("airy_block_kernel: times and thresholds differ in length");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ParameterError("airy_block_kernel: times must increase strictly");
  const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
  const double X = x + xi.at(si), Y = y + xi.at(sj);
  // e^{t d^2} is the heat kernel at time 2t
  const double heat = times[sj] > times[si] ? heat_kernel(2.0 * (times[sj] - times[si]), X, Y) : 0.0;
  return AiryJKernel(times)(i, X, j, Y) - heat;
}

}  // namespace edgelaw
