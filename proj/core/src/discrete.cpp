#include "edgelaw/discrete.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>

#include "contour_plan.hpp"
#include "edgelaw/errors.hpp"

namespace edgelaw {

namespace {

using LogFn = std::function<cplx(cplx)>;

void check_params(const GeomParams& p, bool allow_zero = false) {
  for (double a : p.a)
    if (!((allow_zero ? a >= 0.0 : a > 0.0) && a < 1.0))
      throw ParameterError("geometric LPP: column parameters must lie in (0,1)");
  if (!(p.theta > 0.0 && p.theta < 1.0)) throw ParameterError("geometric LPP: theta must lie in (0,1)");
}

double max_a(const GeomParams& p) {
  double m = 0.0;
  for (double a : p.a) m = std::max(m, a);
  return m;
}

// log phi_m(w) = sum log((1 - a) / (1 - a/w))
cplx log_phi(const GeomParams& p, cplx w) {
  cplx s = 0.0;
  for (double a : p.a) s += std::log(1.0 - a) - std::log(1.0 - a / w);
  return s;
}

// (1/2 pi i) * integral of e^{f} over |w - c| = r with n trapezoid nodes. The
// integrands are single valued, so principal logarithms may be summed.
double circle_integral(const LogFn& f, cplx c, double r, int n) {
  std::vector<cplx> v(static_cast<std::size_t>(n));
  double top = -detail::inf();
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    const cplx e = std::polar(1.0, th);
    v[static_cast<std::size_t>(k)] = f(c + r * e) + std::log(r * e);
    top = std::max(top, v[static_cast<std::size_t>(k)].real());
  }
  if (!std::isfinite(top)) return 0.0;
  cplx s = 0.0;
  for (const cplx& x : v) s += std::exp(x - top);
  return (std::exp(top) * s / static_cast<double>(n)).real();
}

double max_abs_on(const LogFn& f, cplx c, double r) {
  double m = -detail::inf();
  for (int k = 0; k < 96; ++k) m = std::max(m, f(c + std::polar(r, 2.0 * M_PI * (k + 0.5) / 96)).real());
  return m;
}

// Radius in (lo, hi) with the smallest peak of |f|, which keeps cancellation low.
double best_radius(const LogFn& f, cplx c, double lo, double hi) {
  double best = 0.5 * (lo + hi), val = detail::inf();
  const int n = 48;
  for (int k = 1; k < n; ++k) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(k) / n);
    const double v = max_abs_on(f, c, r);
    if (v < val) {
      val = v;
      best = r;
    }
  }
  return best;
}

double adaptive_circle(const LogFn& f, cplx c, double r, double inner_gap, double outer_gap) {
  const int n = detail::circle_nodes([&](cplx w) { return f(w).real(); }, c, r, inner_gap, outer_gap, 64, 1 << 17);
  return circle_integral(f, c, r, n);
}

void check_weyl(const WeylPoint& x, const char* who) {
  if (!is_weyl(x)) throw ParameterError(std::string(who) + ": points must be nondecreasing");
}

}  // namespace

GeomParams GeomParams::first(int m) const {
  if (m < 0 || m > static_cast<int>(a.size())) throw ParameterError("geometric LPP: not enough column parameters");
  GeomParams q = *this;
  q.a.assign(a.begin(), a.begin() + m);
  return q;
}

WeylPoint to_tilde(const WeylPoint& x) {
  WeylPoint t(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) t[j] = -x[j] - static_cast<long long>(j + 1);
  return t;
}

WeylPoint from_tilde(const WeylPoint& xt) {
  WeylPoint x(xt.size());
  for (std::size_t j = 0; j < xt.size(); ++j) x[j] = -xt[j] - static_cast<long long>(j + 1);
  return x;
}

bool is_weyl(const WeylPoint& x) { return std::is_sorted(x.begin(), x.end()); }

bool is_tilde_weyl(const WeylPoint& xt) {
  for (std::size_t j = 1; j < xt.size(); ++j)
    if (!(xt[j - 1] > xt[j])) return false;
  return true;
}

namespace {

// Per-node logarithms on |z| = r, shared by every W and W~ evaluation with
// the same parameters.
struct CoeffNodes {
  std::vector<double> a;
  int n = 0;
  std::vector<cplx> log_z, log_zm1, log_1mz, log_phi, log_dz;
};

const CoeffNodes& coeff_nodes(const GeomParams& p, int n) {
  thread_local std::vector<CoeffNodes> cache;
  for (const auto& c : cache)
    if (c.n == n && c.a == p.a) return c;
  if (cache.size() > 16) cache.erase(cache.begin());
  // poles at the a_i and, for negative powers of (z - 1), at 1; all inside |z| = r
  const double r = std::max(1.05, max_a(p) + 0.05);
  CoeffNodes c;
  c.a = p.a;
  c.n = n;
  for (int k = 0; k < n; ++k) {
    const cplx e = std::polar(1.0, 2.0 * M_PI * k / n);
    const cplx z = r * e;
    c.log_z.push_back(std::log(z));
    c.log_zm1.push_back(std::log(z - 1.0));
    c.log_1mz.push_back(std::log(1.0 - z));
    c.log_phi.push_back(log_phi(p, z));
    c.log_dz.push_back(std::log(z));
  }
  cache.push_back(std::move(c));
  return cache.back();
}

template <class F>
double sum_nodes(const CoeffNodes& c, F f) {
  std::vector<cplx> v(static_cast<std::size_t>(c.n));
  double top = -detail::inf();
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = f(k) + c.log_dz[k];
    top = std::max(top, v[k].real());
  }
  cplx s = 0.0;
  for (const cplx& x : v) s += std::exp(x - top);
  return (std::exp(top) * s / static_cast<double>(c.n)).real();
}

}  // namespace

double w_coeff(int k, long long x, const GeomParams& p, int nodes) {
  check_params(p);
  if (nodes < 8) throw ParameterError("w_coeff: need at least 8 nodes");
  const CoeffNodes& c = coeff_nodes(p, nodes);
  const double ex = static_cast<double>(x - 1), ek = k;
  return sum_nodes(c, [&](std::size_t i) { return ex * c.log_z[i] + ek * c.log_zm1[i] + c.log_phi[i]; });
}

double w_tilde(int k, long long x, const GeomParams& p, int nodes) {
  check_params(p);
  if (nodes < 8) throw ParameterError("w_tilde: need at least 8 nodes");
  const CoeffNodes& c = coeff_nodes(p, nodes);
  const double ex = static_cast<double>(k - x - 1), ek = k;
  const double v = sum_nodes(c, [&](std::size_t i) { return ex * c.log_z[i] - ek * c.log_1mz[i] + c.log_phi[i]; });
  return (k % 2 == 0) ? v : -v;
}

namespace {

double clamp_noise(double d) { return (d < 0.0 && d > -1e-12) ? 0.0 : d; }

}  // namespace

double transition_prob(const WeylPoint& x, const WeylPoint& y, int m, const GeomParams& p) {
  check_weyl(x, "transition_prob");
  check_weyl(y, "transition_prob");
  if (x.size() != y.size() || x.empty()) throw ParameterError("transition_prob: x and y must have equal length");
  const GeomParams q = p.first(m);
  const auto N = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd M(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      M(i, j) = w_coeff(static_cast<int>(j - i), y[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)], q);
  return clamp_noise(M.determinant());
}

double transition_prob_reflected(const WeylPoint& x, const WeylPoint& y, int m, const GeomParams& p) {
  check_weyl(x, "transition_prob");
  check_weyl(y, "transition_prob");
  if (x.size() != y.size() || x.empty()) throw ParameterError("transition_prob: x and y must have equal length");
  const GeomParams q = p.first(m);
  const WeylPoint xt = to_tilde(x), yt = to_tilde(y);
  const auto N = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd M(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      M(i, j) = w_tilde(static_cast<int>(i - j),
                        yt[static_cast<std::size_t>(N - 1 - i)] - xt[static_cast<std::size_t>(N - 1 - j)], q);
  return clamp_noise(M.determinant());
}

std::vector<std::vector<long long>> sample_geom_lpp(const GeomParams& p, const WeylPoint& x_init, int m,
                                                    RngStream& stream) {
  check_params(p, true);
  check_weyl(x_init, "sample_geom_lpp");
  if (!x_init.empty() && x_init.front() < 0) throw ParameterError("sample_geom_lpp: initial data must be nonnegative");
  if (m < 0 || m > static_cast<int>(p.a.size())) throw ParameterError("sample_geom_lpp: not enough columns");
  const std::size_t N = x_init.size();
  std::vector<std::vector<long long>> G(static_cast<std::size_t>(m) + 1, std::vector<long long>(N + 1, 0));
  for (std::size_t n = 1; n <= N; ++n) G[0][n] = x_init[n - 1];
  for (std::size_t i = 1; i <= static_cast<std::size_t>(m); ++i)
    for (std::size_t n = 1; n <= N; ++n)
      G[i][n] = std::max(G[i - 1][n], G[i][n - 1]) + stream.geometric(p.a[i - 1]);
  return G;
}

double q_geom(long n, long long z1, long long z2, const GeomParams& p) {
  check_params(p);
  if (n < 0) throw ParameterError("q_geom: n must be nonnegative");
  const long long d = z1 - z2;
  // coefficient of w^{d-n} in (1 - w)^{-n}: zero below the support
  if (d < n) return 0.0;
  if (n == 0) return d == 0 ? 1.0 : 0.0;
  const double e = static_cast<double>(d - n + 1);
  const double lt = std::log(p.theta), la = std::log(p.alpha());
  const auto f = [&](cplx w) {
    return static_cast<double>(d) * lt + static_cast<double>(n) * la - e * std::log(w) -
           static_cast<double>(n) * std::log(1.0 - w);
  };
  const double r = std::clamp(e / static_cast<double>(d + 1), 0.02, 0.98);
  return adaptive_circle(f, 0.0, r, r, 1.0 - r);
}

double s_geom(int m, long n, long long z1, long long z2, const GeomParams& pp) {
  const GeomParams p = pp.first(m);
  check_params(p);
  if (n < 0) throw ParameterError("s_geom: n must be nonnegative");
  const long long d = z1 - z2;
  const double lt = std::log(p.theta), la = std::log(p.alpha());
  const auto f = [&](cplx w) {
    return static_cast<double>(d) * lt - static_cast<double>(n) * la - static_cast<double>(d + n + 1) * std::log(w) +
           static_cast<double>(n) * std::log(1.0 - w) + log_phi(p, w);
  };
  const double amax = max_a(p);
  if (d + n + 1 - m > 0) {
    // pole at the origin as well: circle about 0 around every a_i
    const double lo = std::max(amax, 1e-3) * 1.02;
    const double r = best_radius(f, 0.0, lo, 4.0);
    return adaptive_circle(f, 0.0, r, r - amax, detail::inf());
  }
  if (m == 0) return 0.0;
  double amin = 1.0;
  for (double a : p.a) amin = std::min(amin, a);
  const double c = 0.5 * (amin + amax), half = 0.5 * (amax - amin);
  const double lo = half + 1e-4, hi = std::max(2.0 * lo, c + 2.0);
  const double r = best_radius(f, c, lo, hi);
  return adaptive_circle(f, c, r, r - half, detail::inf());
}

double sbar_geom(int m, long n, long long z1, long long z2, const GeomParams& pp) {
  const GeomParams p = pp.first(m);
  check_params(p);
  if (n < 0) throw ParameterError("sbar_geom: n must be nonnegative");
  const long long d = z1 - z2;
  const double e1 = static_cast<double>(-d + n - 1);
  const double lt = std::log(p.theta), la = std::log(p.alpha());
  const auto f = [&](cplx w) {
    cplx s = static_cast<double>(d) * lt + static_cast<double>(n) * la + e1 * std::log(1.0 - w) -
             static_cast<double>(n) * std::log(w);
    for (double a : p.a) s += std::log(1.0 - w - a) - std::log(1.0 - w) - std::log(1.0 - a);
    return s;
  };
  // singular at 0 (order n) and at 1 when the net power of (1 - w) is negative
  if (n == 0 && -d - 1 - m >= 0) return 0.0;
  const bool pole_at_one = e1 - m < 0.0;
  const double r = best_radius(f, 0.0, 0.02, 0.98);
  return adaptive_circle(f, 0.0, r, n > 0 ? r : 0.0, pole_at_one ? 1.0 - r : detail::inf());
}

MCEstimate s_epi_mc(int m, long n, long long z1, long long z2, const WeylPoint& xt, const GeomParams& p, int paths,
                    RngStream& stream) {
  check_params(p);
  if (paths < 1) throw ParameterError("s_epi_mc: need at least one path");
  if (static_cast<long>(xt.size()) < n) throw ParameterError("s_epi_mc: boundary data shorter than the horizon");
  MCEstimate est;
  est.seed = stream.seed();
  if (n > 0 && z1 > xt[0]) {
    est.value = sbar_geom(m, n, z1, z2, p);
    est.n_samples = static_cast<std::size_t>(paths);
    return est;
  }
  std::map<std::pair<long, long long>, double> cache;
  double sum = 0.0, sum2 = 0.0;
  for (int path = 0; path < paths; ++path) {
    long long B = z1;
    double v = 0.0;
    for (long k = 0; k < n; ++k) {
      if (xt[static_cast<std::size_t>(k)] != LLONG_MAX && B > xt[static_cast<std::size_t>(k)]) {
        auto key = std::make_pair(n - k, B);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, sbar_geom(m, n - k, B, z2, p)).first;
        v = it->second;
        break;
      }
      B -= 1 + stream.geometric(p.theta);
    }
    sum += v;
    sum2 += v * v;
  }
  const double np = static_cast<double>(paths);
  est.value = sum / np;
  est.std_error = paths > 1 ? std::sqrt(std::max(0.0, sum2 / np - est.value * est.value) / (np - 1.0)) : 0.0;
  est.n_samples = static_cast<std::size_t>(paths);
  return est;
}

LatticePoint scaling_bridge(long N, double t, double x) {
  if (N < 10) throw ParameterError("scaling_bridge: N must be at least 10");
  const double s = std::sqrt(2.0 * static_cast<double>(N));
  return {static_cast<long>(std::floor(N * t)), static_cast<long long>(std::floor(-2.0 * N * t - x * s))};
}

GeomParams scaling_params(const DriftVector& mu, long N) {
  if (N < 10) throw ParameterError("scaling_params: N must be at least 10");
  GeomParams p;
  p.N = N;
  p.theta = 0.5;
  const double c3 = 1.0 / (2.0 * std::sqrt(2.0));
  for (double m : mu) p.a.push_back(0.5 + c3 * m / std::sqrt(static_cast<double>(N)));
  check_params(p);
  return p;
}

WeylPoint boundary_data(const BoundaryFunction& b, long N, long count) {
  if (b.kind == BoundaryFunction::Kind::narrow_wedge)
    throw ParameterError("boundary_data: the narrow wedge has no finite initial data");
  WeylPoint x;
  const double s = std::sqrt(2.0 * static_cast<double>(N));
  for (long n = 1; n <= count; ++n)
    x.push_back(n + static_cast<long long>(std::floor(s * b(static_cast<double>(n) / N))));
  return x;
}

}  // namespace edgelaw
