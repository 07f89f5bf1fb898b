#include "edgelaw/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "contour_plan.hpp"
#include "edgelaw/errors.hpp"

namespace edgelaw {

using detail::inf;

namespace {

const cplx kInv2PiI = 1.0 / cplx(0.0, 2.0 * M_PI);

cplx log_prod(const DriftVector& mu, cplx w) {
  cplx s = 0.0;
  for (double m : mu) s += std::log(w - m);
  return s;
}

cplx log_prod_plus(const DriftVector& mu, cplx w) {
  cplx s = 0.0;
  for (double m : mu) s += std::log(m + w);
  return s;
}

struct Span {
  double lo, hi;
};

Span span_of(const std::vector<double>& v) {
  auto [a, b] = std::minmax_element(v.begin(), v.end());
  return {*a, *b};
}

void require_drifts(const DriftVector& mu, const char* who) {
  if (mu.empty()) throw ParameterError(std::string(who) + ": empty drift vector");
  for (double m : mu)
    if (!std::isfinite(m)) throw ParameterError(std::string(who) + ": non-finite drift");
}

}  // namespace

BoundaryFunction BoundaryFunction::narrow_wedge() {
  BoundaryFunction b;
  b.kind = Kind::narrow_wedge;
  return b;
}

BoundaryFunction BoundaryFunction::flat() { return BoundaryFunction{}; }

BoundaryFunction BoundaryFunction::linear(double slope) {
  BoundaryFunction b;
  b.kind = Kind::linear;
  b.slope = slope;
  return b;
}

BoundaryFunction BoundaryFunction::sampled(std::vector<double> t, std::vector<double> v) {
  if (t.size() != v.size() || t.size() < 2) throw ParameterError("sampled boundary: need >= 2 matching points");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw ParameterError("sampled boundary: times must increase strictly");
  BoundaryFunction b;
  b.kind = Kind::sampled;
  b.grid_t = std::move(t);
  b.grid_b = std::move(v);
  return b;
}

double BoundaryFunction::operator()(double t) const {
  switch (kind) {
    case Kind::narrow_wedge:
      return t > 0.0 ? -inf() : 0.0;
    case Kind::flat:
      return 0.0;
    case Kind::linear:
      return -slope * t;
    case Kind::sampled: {
      if (t <= grid_t.front()) return grid_b.front();
      if (t >= grid_t.back()) return grid_b.back();
      auto it = std::upper_bound(grid_t.begin(), grid_t.end(), t);
      std::size_t k = static_cast<std::size_t>(it - grid_t.begin());
      double f = (t - grid_t[k - 1]) / (grid_t[k] - grid_t[k - 1]);
      return grid_b[k - 1] + f * (grid_b[k] - grid_b[k - 1]);
    }
  }
  return 0.0;
}

double s_minus(const DriftVector& mu, double t, double x, double y) {
  require_drifts(mu, "s_minus");
  if (!(t > 0.0)) throw DomainError("s_minus: t must be positive");
  auto [lo, hi] = span_of(mu);
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo) + 1.0;
  const double u = x - y;
  auto f = [&](cplx w) { return -0.5 * t * w * w + u * w - log_prod(mu, w); };
  int n = detail::circle_nodes([&](cplx w) { return f(w).real(); }, c, r, 1.0, inf());
  Contour g = circle_contour(c, r, n);
  cplx s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weights[k] * std::exp(f(g.nodes[k]));
  return (s * kInv2PiI).real();
}

double s_bar(const DriftVector& mu, double t, double x, double y) {
  if (!(t > 0.0)) throw DomainError("s_bar: t must be positive");
  const double d = (y - x) / t;
  const double scale = 1.0 / std::sqrt(t);
  auto f = [&](cplx z) { return 0.5 * t * z * z + (x - y) * z + log_prod(mu, z); };
  auto la = [&](cplx z) { return f(z).real(); };
  double half = detail::line_half_height([&](double s) { return la(cplx(d, s)); }, scale);
  double grow = detail::strip_growth(la, d, half, scale);
  int n = detail::line_nodes(half, scale, grow);
  Contour g = vertical_contour(d, half, n);
  cplx s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g.weights[k] * std::exp(f(g.nodes[k]));
  return (s * kInv2PiI).real();
}

double s_bar_hermite(const DriftVector& mu, double t, double x, double y) {
  if (!(t > 0.0)) throw DomainError("s_bar_hermite: t must be positive");
  // coefficients of prod (D - mu_i) in powers of D
  std::vector<double> c{1.0};
  for (double m : mu) {
    std::vector<double> n(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= m * c[k];
    }
    c = std::move(n);
  }
  // D^k heat(u) = (-1)^k t^{-k/2} He_k(u/sqrt t) heat(u), u = x - y
  const double st = std::sqrt(t);
  const double xi = (x - y) / st;
  double he_prev = 0.0, he = 1.0, scale = 1.0, sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    sum += c[k] * scale * he;
    double next = xi * he - static_cast<double>(k) * he_prev;
    he_prev = he;
    he = next;
    scale *= -1.0 / st;
  }
  return sum * heat_kernel(t, x, y);
}

double s_hypo_flat(const DriftVector& mu, double t, double x, double y) {
  if (x <= 0.0 || y <= 0.0) return s_bar(mu, t, x, y);
  return s_bar(mu, t, -x, y);
}

MCEstimate s_hypo_mc(const BoundaryFunction& b, const DriftVector& mu, double t, double x, double y,
                     RngStream& stream, const HypoMCOptions& opt) {
  if (!(t > 0.0)) throw DomainError("s_hypo_mc: t must be positive");
  MCEstimate est;
  est.seed = stream.seed();
  if (x <= b(0.0)) {
    // immediate hit
    est.value = s_bar_hermite(mu, t, x, y);
    est.n_samples = static_cast<std::size_t>(opt.paths);
    return est;
  }
  const double h = opt.step > 0.0 ? opt.step : t / 2000.0;
  const int steps = std::max(1, static_cast<int>(std::lround(t / h)));
  const double dt = t / steps;
  const double sd = std::sqrt(dt);
  const int pairs = opt.antithetic ? (opt.paths + 1) / 2 : opt.paths;
  const int reps = opt.antithetic ? 2 : 1;
  std::vector<double> z(static_cast<std::size_t>(steps));
  double sum = 0.0, sum2 = 0.0;
  for (int p = 0; p < pairs; ++p) {
    for (auto& v : z) v = stream.gaussian();
    double pair = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double sign = r == 0 ? 1.0 : -1.0;
      double w = x;
      for (int k = 1; k <= steps; ++k) {
        w += sign * sd * z[static_cast<std::size_t>(k - 1)];
        const double tk = k * dt;
        const double bk = b(tk);
        if (w <= bk) {
          if (k < steps) pair += s_bar_hermite(mu, t - tk, bk, y);
          break;
        }
      }
    }
    pair /= reps;
    sum += pair;
    sum2 += pair * pair;
  }
  est.value = sum / pairs;
  const double var = std::max(0.0, sum2 / pairs - est.value * est.value);
  est.std_error = std::sqrt(var / std::max(1, pairs - 1));
  est.n_samples = static_cast<std::size_t>(pairs * reps);
  return est;
}

ProductKernel::ProductKernel(DriftVector mu, std::vector<double> times, Boundary boundary,
                             std::optional<ContourGeometry> geometry)
    : mu_(std::move(mu)), times_(std::move(times)), boundary_(boundary), fixed_(geometry) {
  require_drifts(mu_, "product kernel");
  for (double t : times_)
    if (!(t > 0.0)) throw DomainError("product kernel: times must be positive");
}

ContourGeometry ProductKernel::geometry_for(int i, const std::vector<double>& x, int j,
                                            const std::vector<double>& y) const {
  const double ti = times_.at(static_cast<std::size_t>(i));
  const double tj = times_.at(static_cast<std::size_t>(j));
  const Span xs = span_of(x), ys = span_of(y);
  const bool flat = boundary_ == Boundary::flat;
  auto [lo, hi] = span_of(mu_);

  ContourGeometry g;
  if (fixed_) {
    g = *fixed_;
  } else {
    const double c = 0.5 * (lo + hi);
    const double spread = 0.5 * (hi - lo);
    g.w_center = c;
    if (flat && hi < -0.1) {
      g.split = true;
      g.w_radius = spread + std::min(1.0, -hi / 2.0);
      g.z_line = 0.0;
    } else {
      g.w_radius = spread + 1.0;
      double right = c + g.w_radius;
      if (flat) right = std::max(right, g.w_radius - c);
      g.z_line = right + 1.0;
    }
  }
  if (!(g.w_radius > 0.0)) throw ParameterError("product kernel: nonpositive circle radius");

  double far = 0.0;
  for (double m : mu_) far = std::max(far, std::abs(m - g.w_center));
  const double inner_gap = g.w_radius - far;
  if (!(inner_gap > 0.0)) throw ParameterError("product kernel: circle does not enclose all drifts");
  const double cr = g.w_center.real();
  double gap = g.z_line - (cr + g.w_radius);
  if (flat) gap = std::min(gap, g.z_line + cr - g.w_radius);
  if (g.split) gap = -(cr + g.w_radius);
  if (!(gap > 0.0)) throw ParameterError("product kernel: vertical contour must lie right of the circle");

  if (g.w_nodes == 0) {
    auto la = [&](cplx w) {
      cplx p = log_prod(mu_, w);
      double a = (-0.5 * ti * w * w + xs.lo * w - p).real();
      double b = (-0.5 * ti * w * w + xs.hi * w - p).real();
      return std::max(a, b);
    };
    g.w_nodes = detail::circle_nodes(la, g.w_center, g.w_radius, inner_gap, gap);
    if (g.split) {
      auto lr = [&](cplx w) {
        // |mu - w| = |w - mu|, so log_prod gives the modulus of the denominator
        cplx q = 0.5 * (tj - ti) * w * w + log_prod_plus(mu_, w) - log_prod(mu_, w);
        double a = (q + (xs.lo + ys.lo) * w).real();
        double b = (q + (xs.hi + ys.hi) * w).real();
        return std::max(a, b);
      };
      double outer = -hi - (cr + g.w_radius);
      g.w_nodes = std::max(g.w_nodes, detail::circle_nodes(lr, g.w_center, g.w_radius, inner_gap, outer));
    }
  }
  auto lz = [&](cplx z) {
    cplx p = 0.5 * tj * z * z + log_prod(mu_, z);
    return std::max((p - ys.lo * z).real(), (p - ys.hi * z).real());
  };
  if (g.z_half == 0.0)
    g.z_half = detail::line_half_height([&](double s) { return lz(cplx(g.z_line, s)); }, 1.0 / std::sqrt(tj));
  if (g.z_nodes == 0) {
    const double strip = 0.9 * gap;
    g.z_nodes = detail::line_nodes(g.z_half, strip, detail::strip_growth(lz, g.z_line, g.z_half, strip));
  }
  return g;
}

Eigen::MatrixXd ProductKernel::block(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const {
  const ContourGeometry g = geometry_for(i, x, j, y);
  const double ti = times_[static_cast<std::size_t>(i)];
  const double tj = times_[static_cast<std::size_t>(j)];
  const bool flat = boundary_ == Boundary::flat;
  const Contour cw = circle_contour(g.w_center, g.w_radius, g.w_nodes);
  const Contour cz = vertical_contour(g.z_line, g.z_half, g.z_nodes);
  const auto nx = static_cast<Eigen::Index>(x.size()), ny = static_cast<Eigen::Index>(y.size());
  const auto mw = static_cast<Eigen::Index>(cw.size()), mz = static_cast<Eigen::Index>(cz.size());

  Eigen::MatrixXcd logF(nx, mw), logG(mz, ny), C(mw, mz);
  for (Eigen::Index k = 0; k < mw; ++k) {
    const cplx w = cw.nodes[static_cast<std::size_t>(k)];
    const cplx base = -0.5 * ti * w * w - log_prod(mu_, w);
    for (Eigen::Index a = 0; a < nx; ++a) logF(a, k) = base + x[static_cast<std::size_t>(a)] * w;
  }
  for (Eigen::Index l = 0; l < mz; ++l) {
    const cplx z = cz.nodes[static_cast<std::size_t>(l)];
    const cplx base = 0.5 * tj * z * z + log_prod(mu_, z);
    for (Eigen::Index b = 0; b < ny; ++b) logG(l, b) = base - y[static_cast<std::size_t>(b)] * z;
  }
  for (Eigen::Index l = 0; l < mz; ++l)
    for (Eigen::Index k = 0; k < mw; ++k) {
      const cplx w = cw.nodes[static_cast<std::size_t>(k)], z = cz.nodes[static_cast<std::size_t>(l)];
      C(k, l) = flat ? 1.0 / (z - w) + 1.0 / (z + w) : 1.0 / (z - w);
    }
  Eigen::MatrixXcd K = detail::separable(logF, detail::to_vector(cw.weights), C, logG,
                                         detail::to_vector(cz.weights), kInv2PiI * kInv2PiI);
  if (g.split) {
    // residue of 1/(z+w) crossed when the line moves to Re z = 0
    Eigen::MatrixXcd logP(nx, mw), logQ(mw, ny);
    for (Eigen::Index k = 0; k < mw; ++k) {
      const cplx w = cw.nodes[static_cast<std::size_t>(k)];
      cplx ratio = 0.0;
      for (double m : mu_) ratio += std::log(m + w) - std::log(m - w);
      const cplx base = -0.5 * ti * w * w + ratio;
      for (Eigen::Index a = 0; a < nx; ++a) logP(a, k) = base + x[static_cast<std::size_t>(a)] * w;
      for (Eigen::Index b = 0; b < ny; ++b) logQ(k, b) = 0.5 * tj * w * w + y[static_cast<std::size_t>(b)] * w;
    }
    K += detail::separable(logP, detail::to_vector(cw.weights), logQ, kInv2PiI);
  }
  Eigen::MatrixXd out = K.real();
  if (flat)
    for (Eigen::Index b = 0; b < ny; ++b)
      if (!(y[static_cast<std::size_t>(b)] > 0.0)) out.col(b).setZero();
  return out;
}

double ProductKernel::operator()(int i, double x, int j, double y) const { return block(i, {x}, j, {y})(0, 0); }

double k_nw(const DriftVector& mu, double t1, double x, double t2, double y) {
  return ProductKernel(mu, {t1, t2}, ProductKernel::Boundary::narrow_wedge)(0, x, 1, y);
}

double k_flat(const DriftVector& mu, double t1, double x, double t2, double y) {
  if (!(y > 0.0)) return 0.0;
  return ProductKernel(mu, {t1, t2}, ProductKernel::Boundary::flat)(0, x, 1, y);
}

RateKernel::RateKernel(std::vector<double> beta, double shift, int nodes)
    : beta_(std::move(beta)), shift_(shift), nodes_(nodes) {
  if (beta_.empty()) throw ParameterError("rate kernel: empty rate vector");
  for (double b : beta_)
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("rate kernel: rates must be positive");
}

Contour RateKernel::contour_for(double smin, double smax) const {
  auto [lo, hi] = span_of(beta_);
  const double c = 0.5 * (lo + hi);
  const double rho = 0.5 * std::min(1.0, lo);
  const double r = 0.5 * (hi - lo) + rho;
  int n = nodes_;
  if (n == 0) {
    auto la = [&](cplx w) {
      cplx q = 0.0;
      for (double b : beta_) q += std::log(b + w) - std::log(b - w);
      return std::max((q - smin * w).real(), (q - smax * w).real());
    };
    // the nearest outside singularity is -beta_min
    n = detail::circle_nodes(la, c, r, rho, (c - r) + lo);
  }
  return circle_contour(c, r, n);
}

Eigen::MatrixXd RateKernel::block(const std::vector<double>& x, const std::vector<double>& y) const {
  const Span xs = span_of(x), ys = span_of(y);
  const Contour g = contour_for(xs.lo + ys.lo + 2.0 * shift_, xs.hi + ys.hi + 2.0 * shift_);
  const auto nx = static_cast<Eigen::Index>(x.size()), ny = static_cast<Eigen::Index>(y.size());
  const auto m = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXcd logF(nx, m), logG(m, ny);
  for (Eigen::Index k = 0; k < m; ++k) {
    const cplx w = g.nodes[static_cast<std::size_t>(k)];
    cplx q = 0.0;
    for (double b : beta_) q += std::log(b + w) - std::log(b - w);
    for (Eigen::Index a = 0; a < nx; ++a) logF(a, k) = q - (x[static_cast<std::size_t>(a)] + shift_) * w;
    for (Eigen::Index b = 0; b < ny; ++b) logG(k, b) = -(y[static_cast<std::size_t>(b)] + shift_) * w;
  }
  return detail::separable(logF, detail::to_vector(g.weights), logG, -kInv2PiI).real();
}

double RateKernel::operator()(double x, double y) const { return block({x}, {y})(0, 0); }

double k_piflat(const std::vector<double>& beta, double x, double y) { return RateKernel(beta)(x, y); }

double k_loe(int n, double x, double y) {
  if (n < 1) throw ParameterError("k_loe: n must be >= 1");
  return RateKernel(std::vector<double>(static_cast<std::size_t>(n), 1.0))(x, y);
}

double k_bridge(const std::vector<double>& nu, double r, double x, double y) {
  std::vector<double> beta;
  for (double v : nu) {
    if (!(r > v)) throw DomainError("k_bridge: r must exceed every nu_i");
    beta.push_back(1.0 - v / r);
  }
  if (!(r > 0.0)) throw DomainError("k_bridge: r must be positive");
  return RateKernel(beta, r * r)(x, y);
}

namespace {

// S_{m,-t1} S^{hypo(b)}_{m,t2}(x,y) by quadrature over the intermediate
// variable, with the Monte Carlo estimator where the path starts above b.
double compose_numeric(const BoundaryFunction& b, const DriftVector& mu, double t1, double x, double t2, double y) {
  const double b0 = b(0.0);
  const double lo = std::min(x, y) - 12.0 * std::sqrt(t2) - 4.0;
  const double hi = b0 + 10.0 * std::sqrt(t2);
  double below = integrate([&](double u) { return s_minus(mu, t1, x, u) * s_bar_hermite(mu, t2, u, y); }, lo, b0, 4);
  const GaussRule& g = gauss_legendre(24);
  double above = 0.0;
  for (int k = 0; k < 24; ++k) {
    const double u = b0 + 0.5 * (hi - b0) * (g.x[static_cast<std::size_t>(k)] + 1.0);
    RngStream stream(default_seed(), 0x6b00 + static_cast<std::uint64_t>(k));
    HypoMCOptions opt;
    opt.paths = 4000;
    above += 0.5 * (hi - b0) * g.w[static_cast<std::size_t>(k)] * s_minus(mu, t1, x, u) *
             s_hypo_mc(b, mu, t2, u, y, stream, opt).value;
  }
  return below + above;
}

}  // namespace

double brownian_block_kernel(const BoundaryFunction& b, const DriftVector& mu, const std::vector<double>& times,
                             int i, double x, int j, double y) {
  const double ti = times.at(static_cast<std::size_t>(i));
  const double tj = times.at(static_cast<std::size_t>(j));
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ParameterError("brownian_block_kernel: times must increase strictly");
  const double heat = ti < tj ? heat_kernel(tj - ti, x, y) : 0.0;
  switch (b.kind) {
    case BoundaryFunction::Kind::narrow_wedge:
      return ProductKernel(mu, times, ProductKernel::Boundary::narrow_wedge)(i, x, j, y) - heat;
    case BoundaryFunction::Kind::flat:
      if (!(y > 0.0)) return -heat;
      return ProductKernel(mu, times, ProductKernel::Boundary::flat)(i, x, j, y) - heat;
    default:
      return compose_numeric(b, mu, ti, x, tj, y) - heat;
  }
}

double hermitian_block_kernel(const std::vector<double>& nu, const std::vector<double>& times,
                              const std::vector<double>& a, int i, double x, int j, double y) {
  if (times.size() != a.size()) throw ParameterError("hermitian_block_kernel: times and thresholds differ in length");
  std::vector<double> inv;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0)) throw DomainError("hermitian_block_kernel: times must be positive");
    if (k > 0 && !(times[k] > times[k - 1]))
      throw ParameterError("hermitian_block_kernel: times must increase strictly");
    inv.push_back(1.0 / times[k]);
  }
  const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
  const double X = x + a.at(si) * inv[si];
  const double Y = y + a.at(sj) * inv[sj];
  const double heat = times[sj] < times[si] ? heat_kernel(inv[sj] - inv[si], X, Y) : 0.0;
  return ProductKernel(nu, inv, ProductKernel::Boundary::narrow_wedge)(i, X, j, Y) - heat;
}

}  // namespace edgelaw
