#include "contour_plan.hpp"

#include <algorithm>
#include <cmath>

namespace edgelaw::detail {

namespace {

double max_on_circle(const std::function<double(cplx)>& logabs, cplx c, double r) {
  double m = -inf();
  const int n = 96;
  for (int k = 0; k < n; ++k) {
    double v = logabs(c + std::polar(r, 2.0 * M_PI * (k + 0.5) / n));
    if (std::isfinite(v)) m = std::max(m, v);
  }
  return m;
}

int round_up8(double n) { return 8 * static_cast<int>(std::ceil(n / 8.0)); }

}  // namespace

int circle_nodes(const std::function<double(cplx)>& logabs, cplx c, double r, double inner_gap, double outer_gap,
                 int lo, int hi) {
  const double on = max_on_circle(logabs, c, r);
  double n_out = inf();
  if (std::isinf(outer_gap)) {
    for (double f : {1.25, 1.5, 2.0, 3.0, 5.0}) {
      double grow = std::max(0.0, max_on_circle(logabs, c, f * r) - on);
      n_out = std::min(n_out, (kDigits + grow) / std::log(f));
    }
  } else {
    for (double f : {0.2, 0.4, 0.6, 0.8, 0.9}) {
      double R = r + f * outer_gap;
      double grow = std::max(0.0, max_on_circle(logabs, c, R) - on);
      n_out = std::min(n_out, (kDigits + grow) / std::log(R / r));
    }
  }
  double n_in = 0.0;
  if (inner_gap > 0.0) {
    n_in = inf();
    for (double f : {0.2, 0.4, 0.6, 0.8, 0.9}) {
      double R = r - f * inner_gap;
      if (R <= 0.0) continue;
      double grow = std::max(0.0, max_on_circle(logabs, c, R) - on);
      n_in = std::min(n_in, (kDigits + grow) / std::log(r / R));
    }
  }
  double n = std::max(n_out, n_in);
  if (!std::isfinite(n)) return hi;
  return std::clamp(round_up8(n), lo, hi);
}

double line_half_height(const std::function<double(double)>& logabs_s, double scale) {
  double best = logabs_s(0.0);
  double s = 0.0;
  double ds = 0.02 * scale;
  double last_above = 0.0;
  while (s < 1e6 * scale) {
    s += ds;
    double v = logabs_s(s);
    if (std::isfinite(v)) {
      if (v > best) best = v;
      if (v > best - 40.0) last_above = s;
    }
    // stop once the tail has stayed below the cut for a while
    if (s > 2.0 * last_above + 4.0 * scale && s > 8.0 * ds) break;
    ds = std::max(0.02 * scale, 0.02 * s);
  }
  return std::max(last_above * 1.05, 2.0 * ds);
}

int line_nodes(double half, double strip, double growth, int lo, int hi) {
  double h = 2.0 * M_PI * strip / (kDigits + std::max(0.0, growth));
  double n = 2.0 * half / h + 1.0;
  int k = static_cast<int>(std::ceil(n));
  if (k % 2 == 0) ++k;
  return std::clamp(k, lo, hi);
}

Eigen::VectorXcd to_vector(const std::vector<cplx>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

namespace {

double max_real(const Eigen::MatrixXcd& m) {
  double s = -inf();
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    double v = m.data()[k].real();
    if (std::isfinite(v)) s = std::max(s, v);
  }
  return std::isfinite(s) ? s : 0.0;
}

Eigen::MatrixXcd exp_shift(const Eigen::MatrixXcd& m, double shift) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.size(); ++k) out.data()[k] = std::exp(m.data()[k] + shift);
  return out;
}

}  // namespace

Eigen::MatrixXcd separable(const Eigen::MatrixXcd& logF, const Eigen::VectorXcd& wf, const Eigen::MatrixXcd& C,
                           const Eigen::MatrixXcd& logG, const Eigen::VectorXcd& wg, cplx pref) {
  const double shift = 0.5 * (max_real(logF) - max_real(logG));
  Eigen::MatrixXcd F = exp_shift(logF, -shift) * wf.asDiagonal();
  Eigen::MatrixXcd G = wg.asDiagonal() * exp_shift(logG, shift);
  Eigen::MatrixXcd CG = C * G;
  return pref * (F * CG);
}

Eigen::MatrixXcd separable(const Eigen::MatrixXcd& logF, const Eigen::VectorXcd& wf, const Eigen::MatrixXcd& logG,
                           cplx pref) {
  const double shift = 0.5 * (max_real(logF) - max_real(logG));
  Eigen::MatrixXcd F = exp_shift(logF, -shift) * wf.asDiagonal();
  return pref * (F * exp_shift(logG, shift));
}

}  // namespace edgelaw::detail

namespace edgelaw::detail {

double strip_growth(const std::function<double(cplx)>& logabs, double d, double half, double delta) {
  const int n = 200;
  double on = -inf(), off = -inf();
  for (int k = 0; k <= n; ++k) {
    double s = half * k / n;
    on = std::max(on, logabs(cplx(d, s)));
    off = std::max({off, logabs(cplx(d - delta, s)), logabs(cplx(d + delta, s))});
  }
  return std::max(0.0, off - on);
}

}  // namespace edgelaw::detail
