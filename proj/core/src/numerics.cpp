#include "edgelaw/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "edgelaw/errors.hpp"

namespace edgelaw {

using std::numbers::pi;

cplx Contour::weight_sum() const {
  cplx s = 0.0;
  for (const auto& w : weights) s += w;
  return s;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw ParameterError("gauss_legendre: n must be positive");
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = g.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n == 1) {
    g.x[0] = 0.0;
    g.w[0] = 2.0;
  }
  return cache.emplace(n, std::move(g)).first->second;
}

Contour circle_contour(cplx center, double radius, int n) {
  if (!(radius > 0.0)) throw ParameterError("circle contour: radius must be positive");
  if (n < 4) throw ParameterError("circle contour: need at least 4 nodes");
  Contour c;
  c.kind = ContourKind::circle;
  c.nodes.resize(n);
  c.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * pi * k / n;
    const cplx e(std::cos(th), std::sin(th));
    c.nodes[k] = center + radius * e;
    c.weights[k] = cplx(0.0, 2.0 * pi / n) * radius * e;
  }
  return c;
}

Contour vertical_contour(double d, double half_height, int n) {
  if (!(half_height > 0.0)) throw ParameterError("vertical contour: half-height must be positive");
  if (n < 2) throw ParameterError("vertical contour: need at least 2 nodes");
  Contour c;
  c.kind = ContourKind::vertical;
  c.truncation = half_height;
  c.nodes.resize(n);
  c.weights.resize(n);
  const double h = 2.0 * half_height / (n - 1);
  for (int k = 0; k < n; ++k) {
    c.nodes[k] = cplx(d, -half_height + k * h);
    c.weights[k] = cplx(0.0, h);
  }
  return c;
}

namespace {
void add_segment(Contour& c, cplx from, cplx to, double panel_len, int per_panel) {
  const double len = std::abs(to - from);
  const int panels = std::max(1, static_cast<int>(std::ceil(len / panel_len)));
  const GaussRule& g = gauss_legendre(per_panel);
  const cplx step = (to - from) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    const cplx lo = from + static_cast<double>(p) * step;
    for (int i = 0; i < per_panel; ++i) {
      c.nodes.push_back(lo + 0.5 * (g.x[i] + 1.0) * step);
      c.weights.push_back(0.5 * g.w[i] * step);
    }
  }
}
}  // namespace

Contour rectangle_contour(double left, double right, double half_height, double panel_len,
                          int per_panel) {
  if (!(right > left) || !(half_height > 0.0) || !(panel_len > 0.0))
    throw ParameterError("rectangle contour: need left < right and positive half-height");
  Contour c;
  c.kind = ContourKind::rectangle;
  c.truncation = right - left;
  const cplx a(right, -half_height), b(right, half_height), d(left, half_height), e(left, -half_height);
  add_segment(c, a, b, panel_len, per_panel);
  add_segment(c, b, d, panel_len, per_panel);
  add_segment(c, d, e, panel_len, per_panel);
  add_segment(c, e, a, panel_len, per_panel);
  return c;
}

Contour wedge_contour(double apex, double angle, double length, int panels, int per_panel) {
  if (!(length > 0.0)) throw ParameterError("wedge contour: length must be positive");
  if (panels < 1) throw ParameterError("wedge contour: need at least one panel");
  Contour c;
  c.kind = ContourKind::wedge;
  c.truncation = length;
  const cplx up = std::polar(1.0, angle), down = std::polar(1.0, -angle);
  const cplx a(apex, 0.0);
  add_segment(c, a + length * down, a, length / panels, per_panel);
  add_segment(c, a, a + length * up, length / panels, per_panel);
  return c;
}

Contour make_contour(const ContourSpec& s) {
  if (s.nodes < 8) throw ParameterError("make_contour: node count must be at least 8");
  switch (s.kind) {
    case ContourKind::circle:
      return circle_contour(s.center, s.radius, s.nodes);
    case ContourKind::vertical:
      return vertical_contour(s.d, s.half_height, s.nodes);
    case ContourKind::rectangle: {
      if (!(s.right > s.left) || !(s.half_height > 0.0))
        throw ParameterError("make_contour: bad rectangle");
      const double perim = 2.0 * (s.right - s.left) + 4.0 * s.half_height;
      const int panels = std::max(4, s.nodes / 16);
      return rectangle_contour(s.left, s.right, s.half_height, perim / panels * 1.0000001, 16);
    }
    case ContourKind::wedge:
      return wedge_contour(s.apex, s.angle, s.length, std::max(1, s.nodes / 32), 16);
  }
  throw ParameterError("make_contour: unknown kind");
}

SemiInfiniteRule semi_infinite_rule(double a, double length, int n, double breakpoint) {
  if (!(length > 0.0)) throw ParameterError("semi_infinite_rule: length must be positive");
  if (n < 2) throw ParameterError("semi_infinite_rule: need at least 2 nodes");
  SemiInfiniteRule r;
  r.threshold = a;
  r.length = length;
  auto add = [&](double lo, double hi, int m) {
    const GaussRule& g = gauss_legendre(m);
    for (int i = 0; i < m; ++i) {
      r.nodes.push_back(lo + 0.5 * (hi - lo) * (g.x[i] + 1.0));
      r.weights.push_back(0.5 * (hi - lo) * g.w[i]);
    }
  };
  const double b = a + length;
  if (std::isfinite(breakpoint) && breakpoint > a && breakpoint < b) {
    int n1 = static_cast<int>(std::lround(n * (breakpoint - a) / length));
    n1 = std::clamp(n1, std::min(8, n / 2), n - std::min(8, n / 2));
    add(a, breakpoint, n1);
    add(breakpoint, b, n - n1);
  } else {
    add(a, b, n);
  }
  return r;
}

double heat_kernel(double t, double x, double y) {
  if (!(t > 0.0)) throw DomainError("heat_kernel: t must be positive");
  const double d = x - y;
  return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * pi * t);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double hermitian_eigen_max(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ValidationError("hermitian_eigen_max: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12 * scale)
        throw ValidationError("hermitian_eigen_max: matrix is not Hermitian");
  return eigen_max_unchecked(m);
}

double eigen_max_unchecked(const Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  if (n == 1) return m(0, 0).real();
  if (n == 2) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double h = 0.5 * (a - d);
    return 0.5 * (a + d) + std::sqrt(h * h + std::norm(m(0, 1)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double symmetric_eigen_max(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ValidationError("symmetric_eigen_max: matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError("symmetric_eigen_max: matrix is not symmetric");
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace edgelaw
