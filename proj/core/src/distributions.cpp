#include "edgelaw/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "edgelaw/errors.hpp"

namespace edgelaw {

namespace {

double mean_inv_pow(const std::vector<double>& nu, double b, int p) {
  double s = 0.0;
  for (double v : nu) s += std::pow(b - v, -p);
  return s / static_cast<double>(nu.size());
}

DetOptions det_or(const CdfOptions& opt, DetOptions fallback) { return opt.det ? *opt.det : fallback; }

void require_increasing(const std::vector<double>& t, const char* who) {
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw ParameterError(std::string(who) + ": times must increase strictly");
}

Eigen::MatrixXd pointwise_block(const BlockKernel::BlockFn& f, int i, double x, int j, double y) {
  return f(i, {x}, j, {y});
}

void attach_eval(BlockKernel& K) {
  auto f = K.block;
  K.eval = [f](int i, double x, int j, double y) { return pointwise_block(f, i, x, j, y)(0, 0); };
}

}  // namespace

EdgeScaling edge_scaling(const std::vector<double>& nu) {
  if (nu.empty()) throw ParameterError("edge_scaling: empty point cloud");
  for (double v : nu)
    if (!std::isfinite(v)) throw ParameterError("edge_scaling: non-finite point");
  const double n = static_cast<double>(nu.size());
  const double top = *std::max_element(nu.begin(), nu.end());
  auto f = [&](double b) { return mean_inv_pow(nu, b, 2) - 1.0; };
  double lo = top + 0.9 / std::sqrt(n), hi = top + std::sqrt(n) + 1.0;
  for (int k = 0; k < 60 && hi - lo > 1e-6 * (1.0 + std::abs(top)); ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  double b = 0.5 * (lo + hi);
  for (int k = 0; k < 50; ++k) {
    const double step = f(b) / (-2.0 * mean_inv_pow(nu, b, 3));
    double next = b - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    (f(next) > 0.0 ? lo : hi) = next;
    const bool done = std::abs(next - b) <= 1e-15 * std::max(1.0, std::abs(b));
    b = next;
    if (done) break;
  }
  EdgeScaling e;
  e.nu = nu;
  e.b = b;
  e.a = b + mean_inv_pow(nu, b, 1);
  e.d = std::cbrt(mean_inv_pow(nu, b, 3));
  e.residual = std::abs(f(b));
  return e;
}

FClassBounds f_class_bounds(const std::vector<double>& nu) {
  if (nu.empty()) throw ParameterError("f_class_bounds: empty point cloud");
  std::vector<double> gaps;
  const double top = *std::max_element(nu.begin(), nu.end());
  const double bottom = *std::min_element(nu.begin(), nu.end());
  for (double v : nu) gaps.push_back(top - v);
  std::sort(gaps.begin(), gaps.end());
  const double diam = top - bottom;
  // rho is a step function, so besides a uniform grid the jump points matter
  std::vector<double> eta = gaps;
  for (int k = 0; k < 512; ++k) eta.push_back(diam * k / 511.0);
  const double n = static_cast<double>(nu.size());
  double best = -std::numeric_limits<double>::infinity();
  for (double e : eta) {
    const auto count = std::upper_bound(gaps.begin(), gaps.end(), e) - gaps.begin();
    best = std::max(best, std::sqrt(static_cast<double>(count) / n) - e);
  }
  return {best / 2.0, diam + 2.0};
}

bool in_f_class(const std::vector<double>& nu, double alpha, double beta) {
  const double b = edge_scaling(nu).b;
  return std::all_of(nu.begin(), nu.end(), [&](double v) { return b - v >= alpha && b - v <= beta; });
}

DetResult cdf_arithmetic_limit(double delta, double a, const CdfOptions& opt) {
  auto kern = std::make_shared<DeltaKernel>(delta);
  const double L = opt.length > 0.0 ? opt.length : std::max(4.0, 6.0 * delta + 6.0 - a);
  BlockKernel K = single_slot(a, L, [kern](int, const std::vector<double>& x, int, const std::vector<double>& y) {
    return kern->block(x, y);
  });
  attach_eval(K);
  DetOptions d;
  d.tol = 1e-9;
  d.max_nodes = 192;
  return det_adaptive(K, det_or(opt, d));
}

double arithmetic_gamma_threshold(int n, double a) {
  if (n < 2) throw DomainError("arithmetic_gamma_threshold: n must be >= 2");
  return (n - 1) + 0.5 * (a + std::log(n - 1.0));
}

BlockKernel blpp_block_kernel(const BoundaryFunction& b, const DriftVector& mu, const std::vector<double>& times,
                              const std::vector<double>& thresholds, double length) {
  if (times.empty() || times.size() != thresholds.size())
    throw ParameterError("cdf_blpp: times and thresholds must be nonempty and of equal length");
  require_increasing(times, "cdf_blpp");
  ProductKernel::Boundary kind;
  if (b.kind == BoundaryFunction::Kind::narrow_wedge)
    kind = ProductKernel::Boundary::narrow_wedge;
  else if (b.kind == BoundaryFunction::Kind::flat)
    kind = ProductKernel::Boundary::flat;
  else
    throw ParameterError("cdf_blpp: determinants are available for narrow-wedge and flat boundaries only");
  auto pk = std::make_shared<ProductKernel>(mu, times, kind);
  const double tmax = times.back();
  const double m = static_cast<double>(mu.size());
  const double top = *std::max_element(mu.begin(), mu.end());
  // typical values are below 2 sqrt(m t) + max(mu) t; the kernel decays like a Gaussian beyond
  const double upper = 2.0 * std::sqrt(m * tmax) + std::max(0.0, top) * tmax + 10.0 * std::sqrt(tmax) + 2.0;

  BlockKernel K;
  K.k = static_cast<int>(times.size());
  K.times = times;
  K.thresholds = thresholds;
  for (double a : thresholds) {
    K.lengths.push_back(length > 0.0 ? length : std::max(4.0, upper - a));
    K.breakpoints.push_back(kind == ProductKernel::Boundary::flat && a < 0.0 ? 0.0 : std::nan(""));
  }
  K.block = [pk, times](int i, const std::vector<double>& x, int j, const std::vector<double>& y) {
    Eigen::MatrixXd M = pk->block(i, x, j, y);
    const double ti = times[static_cast<std::size_t>(i)], tj = times[static_cast<std::size_t>(j)];
    if (ti < tj)
      for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t c = 0; c < y.size(); ++c)
          M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) -= heat_kernel(tj - ti, x[a], y[c]);
    return M;
  };
  attach_eval(K);
  return K;
}

DetResult cdf_blpp(const BoundaryFunction& b, const DriftVector& mu, const std::vector<double>& times,
                   const std::vector<double>& thresholds, const CdfOptions& opt) {
  BlockKernel K = blpp_block_kernel(b, mu, times, thresholds, opt.length);
  if (K.k > 1) K = apply_conjugation(K, exponential_conjugator(K.k + 1.0));
  DetOptions d;
  d.max_nodes = 192;
  d.tol = 1e-10;
  return det_adaptive(K, det_or(opt, d));
}

namespace {

DetResult rate_det(const std::vector<double>& beta, double shift, double a, const CdfOptions& opt) {
  auto rk = std::make_shared<RateKernel>(beta, shift);
  const double bmin = *std::min_element(beta.begin(), beta.end());
  const double L = opt.length > 0.0 ? opt.length : 24.0 / bmin + 4.0;
  BlockKernel K = single_slot(a, L, [rk](int, const std::vector<double>& x, int, const std::vector<double>& y) {
    return rk->block(x, y);
  });
  attach_eval(K);
  return det_adaptive(K, det_or(opt, DetOptions{}));
}

}  // namespace

DetResult cdf_piflat(const std::vector<double>& beta, double a, const CdfOptions& opt) {
  if (beta.empty()) throw ParameterError("cdf_piflat: empty rate vector");
  for (double b : beta)
    if (!(b > 0.0)) throw DomainError("cdf_piflat: rates must be positive");
  return rate_det(beta, 0.0, std::max(a, 0.0), opt);
}

DetResult cdf_loe_max(int n, double a, const CdfOptions& opt) {
  if (n < 1) throw ParameterError("cdf_loe_max: n must be >= 1");
  return cdf_piflat(std::vector<double>(static_cast<std::size_t>(n), 1.0), a, opt);
}

DetResult cdf_bridge_allmax(const std::vector<double>& nu, double r, const CdfOptions& opt) {
  if (nu.empty()) throw ParameterError("cdf_bridge_allmax: empty nu");
  std::vector<double> beta;
  for (double v : nu) {
    if (!(r > v) || !(r > 0.0)) throw DomainError("cdf_bridge_allmax: r must exceed max(nu, 0)");
    beta.push_back(1.0 - v / r);
  }
  return rate_det(beta, r * r, 0.0, opt);
}

DetResult cdf_bridge_runningmax(int n, double s, double a, const CdfOptions& opt) {
  if (n < 1) throw ParameterError("cdf_bridge_runningmax: n must be >= 1");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("cdf_bridge_runningmax: s must lie in [0,1]");
  if (!(a > 0.0)) throw DomainError("cdf_bridge_runningmax: a must be positive");
  if (s == 0.0) {
    DetResult r;
    r.value = 1.0;
    return r;
  }
  if (s == 1.0) return cdf_loe_max(n, a * a, opt);
  const double T = a * a * s / (1.0 - s);
  // The circle integrand spans e^{+-T}; past T ~ 1400 it overflows. The s = 1 law already agrees
  // to ~1e-14 at T = 200 (checked for n <= 24), so switch well before that.
  if (T > 400.0) return cdf_loe_max(n, a * a, opt);
  const double shift = a * a;
  auto pk = std::make_shared<ProductKernel>(DriftVector(static_cast<std::size_t>(n), -1.0), std::vector<double>{T},
                                            ProductKernel::Boundary::flat);
  const double L = opt.length > 0.0 ? opt.length : 30.0 + 10.0 * std::sqrt(T);
  BlockKernel K = single_slot(0.0, L, [pk, shift](int, const std::vector<double>& x, int, const std::vector<double>& y) {
    std::vector<double> xs(x), ys(y);
    for (auto& v : xs) v += shift;
    for (auto& v : ys) v += shift;
    return pk->block(0, xs, 0, ys);
  });
  attach_eval(K);
  DetOptions d;
  d.max_nodes = 192;
  return det_adaptive(K, det_or(opt, d));
}

BlockKernel airy_fdd_kernel(const std::vector<double>& times, const std::vector<double>& xi, double length) {
  if (times.empty() || times.size() != xi.size())
    throw ParameterError("airy_fdd: times and thresholds must be nonempty and of equal length");
  require_increasing(times, "airy_fdd");
  // slot variables sit at x + xi_i + t_i^2 in the Ai product form
  std::vector<double> shift(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) shift[i] = xi[i] + times[i] * times[i];
  auto ak = std::make_shared<AiryProductKernel>(times, *std::min_element(shift.begin(), shift.end()));
  BlockKernel K;
  K.k = static_cast<int>(times.size());
  K.times = times;
  K.thresholds.assign(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i)
    K.lengths.push_back(length > 0.0 ? length : std::max(4.0, 10.0 - shift[i]));
  K.block = [ak, shift](int i, const std::vector<double>& x, int j, const std::vector<double>& y) {
    std::vector<double> X(x), Y(y);
    for (auto& v : X) v += shift[static_cast<std::size_t>(i)];
    for (auto& v : Y) v += shift[static_cast<std::size_t>(j)];
    return ak->block(i, X, j, Y);
  };
  attach_eval(K);
  return K;
}

DetResult airy_fdd(const std::vector<double>& times, const std::vector<double>& xi, const CdfOptions& opt) {
  BlockKernel K = airy_fdd_kernel(times, xi, opt.length);
  DetOptions d;
  // close times put a narrow Gaussian in the off-diagonal blocks
  d.max_nodes = 768;
  return det_adaptive(K, det_or(opt, d));
}

DetResult cdf_dyson_edge(const std::vector<double>& nu, const std::vector<double>& tau, const std::vector<double>& xi,
                         const CdfOptions& opt) {
  if (tau.empty() || tau.size() != xi.size())
    throw ParameterError("cdf_dyson_edge: times and thresholds must be nonempty and of equal length");
  const EdgeScaling es = edge_scaling(nu);
  const double n = static_cast<double>(nu.size());
  const double n13 = std::cbrt(n);
  const double d = es.d;
  double tmax = 0.0;
  for (double t : tau) {
    if (!(t < n13 / (2.0 * d * d))) throw DomainError("cdf_dyson_edge: tau must be below n^{1/3} / (2 d^2)");
    tmax = std::max(tmax, std::abs(t));
  }
  // Prop-style kernel wants increasing matrix times, which reverses tau
  std::vector<std::size_t> order(tau.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return tau[p] > tau[q]; });
  std::vector<double> t, a, T;
  for (std::size_t k : order) {
    t.push_back((1.0 - 2.0 * d * d * tau[k] / n13) / n);
    a.push_back(es.a + 2.0 * tau[k] * d * d * (es.b - es.a) / n13 + d * xi[k] / (n13 * n13));
    T.push_back(1.0 / t.back());
  }
  require_increasing(t, "cdf_dyson_edge");

  // contours through the edge saddle b: circle just right of it, line further right
  const double eps = 1.0 / (n13 * d);
  const double d2 = tmax + 0.5, d1 = d2 + 0.5;
  const double numin = *std::min_element(nu.begin(), nu.end());
  const double numax = *std::max_element(nu.begin(), nu.end());
  const double right = es.b + d2 * eps;
  const double left = numin - (es.b - numax);
  ContourGeometry g;
  g.w_radius = 0.5 * (right - left);
  g.w_center = right - g.w_radius;
  g.z_line = es.b + d1 * eps;
  auto pk = std::make_shared<ProductKernel>(nu, T, ProductKernel::Boundary::narrow_wedge, g);

  double minxi = 0.0;
  for (double v : xi) minxi = std::min(minxi, v);
  const double Lscaled = opt.length > 0.0 ? opt.length : 10.0 - minxi;
  BlockKernel K;
  K.k = static_cast<int>(tau.size());
  K.times = t;
  K.thresholds.assign(tau.size(), 0.0);
  K.lengths.assign(tau.size(), Lscaled * d * n13);
  K.block = [pk, T, a](int i, const std::vector<double>& x, int j, const std::vector<double>& y) {
    const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
    std::vector<double> X(x), Y(y);
    for (auto& v : X) v += a[si] * T[si];
    for (auto& v : Y) v += a[sj] * T[sj];
    Eigen::MatrixXd M = pk->block(i, X, j, Y);
    if (T[sj] > T[si])
      for (std::size_t p = 0; p < X.size(); ++p)
        for (std::size_t q = 0; q < Y.size(); ++q)
          M(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) -= heat_kernel(T[sj] - T[si], X[p], Y[q]);
    return M;
  };
  attach_eval(K);
  // value of the w-integrand at the saddle, divided out so entries stay O(1)
  const double b = es.b;
  const double base = a[0] * T[0] * b - 0.5 * T[0] * b * b;
  K.conjugator = [T, a, b, base](int i, double x) {
    const auto si = static_cast<std::size_t>(i);
    return std::exp(0.5 * T[si] * b * b - (x + a[si] * T[si]) * b + base);
  };
  DetOptions dopt;
  dopt.initial_nodes = 32;
  dopt.max_nodes = 128;
  dopt.tol = 1e-7;
  return det_adaptive(K, det_or(opt, dopt));
}

}  // namespace edgelaw
