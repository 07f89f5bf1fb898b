#include "edgelaw/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgelaw/errors.hpp"
#include "edgelaw/numerics.hpp"
#include "edgelaw/parallel.hpp"

namespace edgelaw {

namespace {

std::size_t chunks_for(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// Maximum of a Brownian bridge from u to v over a step of length h with
// variance rate s2.
double bridge_max(double u, double v, double h, double s2, RngStream& stream) {
  if (!std::isfinite(u) || !std::isfinite(v)) return std::max(u, v);
  const double d = u - v;
  return 0.5 * (u + v + std::sqrt(d * d - 2.0 * s2 * h * std::log(stream.uniform_pos())));
}

double top_eigenvalue(const Eigen::MatrixXcd& m) { return eigen_max_unchecked(m); }

void add_gue_increment(Eigen::MatrixXcd& H, double scale, RngStream& stream) {
  const auto n = H.rows();
  const double off = scale * std::sqrt(0.5);
  for (Eigen::Index i = 0; i < n; ++i) {
    H(i, i) += scale * stream.gaussian();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const cplx g(off * stream.gaussian(), off * stream.gaussian());
      H(i, j) += g;
      H(j, i) += std::conj(g);
    }
  }
}

}  // namespace

MCEstimate monte_carlo(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
                       const std::function<double(RngStream&)>& draw) {
  if (n == 0) throw ParameterError("monte_carlo: need at least one sample");
  std::vector<double> out(n);
  parallel_for(chunks_for(n), [&](std::size_t c) {
    RngStream stream(seed, stream_base + c);
    const std::size_t hi = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < hi; ++i) out[i] = draw(stream);
  });
  MCEstimate est;
  est.seed = seed;
  est.n_samples = n;
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : out) ss += (v - mean) * (v - mean);
  est.value = mean;
  est.std_error = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  std::sort(out.begin(), out.end());
  est.samples = std::move(out);
  return est;
}

std::vector<std::vector<double>> monte_carlo_rows(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
                                                  const std::function<std::vector<double>(RngStream&)>& draw) {
  if (n == 0) throw ParameterError("monte_carlo: need at least one sample");
  std::vector<std::vector<double>> out(n);
  parallel_for(chunks_for(n), [&](std::size_t c) {
    RngStream stream(seed, stream_base + c);
    const std::size_t hi = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < hi; ++i) out[i] = draw(stream);
  });
  return out;
}

Eigen::MatrixXcd sample_gue(int n, RngStream& stream) {
  if (n < 1) throw ParameterError("sample_gue: n must be positive");
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  add_gue_increment(H, 1.0, stream);
  return H;
}

ArithSample sample_arith_max(int n, double delta, double lambda1, RngStream& stream) {
  if (n < 1) throw ParameterError("sample_arith_max: n must be positive");
  if (!(delta > 0.0)) throw DomainError("sample_arith_max: delta must be positive");
  Eigen::MatrixXcd H = sample_gue(n, stream);
  for (int i = 0; i < n; ++i) H(i, i) += lambda1 - delta * i;
  const double top = top_eigenvalue(H);
  return {top, delta * (top - lambda1) - std::log(n - 1.0)};
}

double sample_blpp(const BoundaryFunction& b, const DriftVector& mu, double t, RngStream& stream,
                   const PathOptions& opt) {
  if (mu.empty()) throw ParameterError("sample_blpp: need at least one drift");
  if (!(t > 0.0)) throw DomainError("sample_blpp: t must be positive");
  const double h0 = opt.step > 0.0 ? opt.step : t / 4096.0;
  const auto steps = static_cast<long>(std::ceil(t / h0 - 1e-9));
  const double h = t / static_cast<double>(steps);
  const double sh = std::sqrt(h);
  const std::size_t m = mu.size();
  const bool wedge = b.kind == BoundaryFunction::Kind::narrow_wedge;

  // L(k, t) = B_k(t) + sup_{s <= t} (L(k-1, s) - B_k(s)); keep B_k, the
  // running sup R_k and the previous Y_k = L(k-1) - B_k per row.
  std::vector<double> B(m, 0.0), R(m), Yprev(m), L(m + 1);
  L[0] = b(0.0);
  for (std::size_t k = 1; k <= m; ++k) {
    Yprev[k - 1] = L[k - 1];
    R[k - 1] = Yprev[k - 1];
    L[k] = R[k - 1];
  }
  for (long j = 1; j <= steps; ++j) {
    const double tj = h * static_cast<double>(j);
    L[0] = wedge ? -std::numeric_limits<double>::infinity() : b(tj);
    for (std::size_t k = 1; k <= m; ++k) {
      B[k - 1] += mu[k - 1] * h + sh * stream.gaussian();
      const double Y = L[k - 1] - B[k - 1];
      double peak = std::max(Y, Yprev[k - 1]);
      if (opt.bridge_correction) {
        // L(0) = b is deterministic, deeper rows carry one unit of variance each from L(k-1)
        const double s2 = k == 1 ? 1.0 : 2.0;
        peak = bridge_max(Yprev[k - 1], Y, h, s2, stream);
      }
      R[k - 1] = std::max(R[k - 1], peak);
      Yprev[k - 1] = Y;
      L[k] = B[k - 1] + R[k - 1];
    }
  }
  return L[m];
}

double sample_piflat(const std::vector<double>& beta, RngStream& stream) {
  const std::size_t n = beta.size();
  if (n == 0) throw ParameterError("sample_piflat: empty rate vector");
  for (double v : beta)
    if (!(v > 0.0)) throw DomainError("sample_piflat: rates must be positive");
  // G(i, j) on i + j <= n + 1, 1-based
  std::vector<std::vector<double>> G(n + 1, std::vector<double>(n + 1, 0.0));
  double best = 0.0;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; i + j <= n + 1; ++j) {
      const double w = stream.exponential(beta[i - 1] + beta[n - j]);
      G[i][j] = std::max(G[i - 1][j], G[i][j - 1]) + w;
      if (i + j == n + 1) best = std::max(best, G[i][j]);
    }
  return best;
}

double sample_loe_max(int n, RngStream& stream) {
  if (n < 1) throw ParameterError("sample_loe_max: n must be positive");
  Eigen::MatrixXd X(n + 1, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i <= n; ++i) X(i, j) = stream.gaussian();
  const Eigen::MatrixXd G = X.transpose() * X;
  if (n == 1) return G(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

std::vector<double> sample_dyson_max(const std::vector<double>& nu, const std::vector<double>& times,
                                     RngStream& stream) {
  if (nu.empty()) throw ParameterError("sample_dyson_max: empty spectrum");
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  const auto n = static_cast<int>(nu.size());
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  std::vector<double> out(times.size());
  double now = 0.0;
  for (std::size_t k : order) {
    if (!(times[k] >= 0.0)) throw DomainError("sample_dyson_max: times must be nonnegative");
    if (times[k] > now) add_gue_increment(H, std::sqrt(times[k] - now), stream);
    now = times[k];
    Eigen::MatrixXcd X = H;
    for (int i = 0; i < n; ++i) X(i, i) += nu[static_cast<std::size_t>(i)];
    out[k] = top_eigenvalue(X);
  }
  return out;
}

double sample_bridge_topmax(int n, double s, const std::vector<double>& nu, RngStream& stream,
                            const PathOptions& opt) {
  if (n < 1) throw ParameterError("sample_bridge_topmax: n must be positive");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("sample_bridge_topmax: s must lie in [0,1]");
  if (!nu.empty() && static_cast<int>(nu.size()) != n) throw ParameterError("sample_bridge_topmax: nu has wrong size");
  const double h0 = opt.step > 0.0 ? opt.step : 1.0 / 2048.0;
  const auto steps = std::max(1L, static_cast<long>(std::ceil(s / h0 - 1e-9)));
  const double h = s / static_cast<double>(steps);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  auto top_at = [&](double t) {
    if (nu.empty()) return top_eigenvalue(H);
    Eigen::MatrixXcd X = H;
    for (int i = 0; i < n; ++i) X(i, i) += (1.0 - t) * nu[static_cast<std::size_t>(i)];
    return top_eigenvalue(X);
  };
  double prev = top_at(0.0), best = prev;
  if (s == 0.0) return best;
  double t = 0.0;
  for (long k = 1; k <= steps; ++k) {
    const double tn = k == steps ? s : h * static_cast<double>(k);
    // Brownian bridge to 0 at time 1: shrink toward 0 and add the conditional noise
    if (tn >= 1.0) {
      H.setZero();
    } else {
      H *= (1.0 - tn) / (1.0 - t);
      add_gue_increment(H, std::sqrt((tn - t) * (1.0 - tn) / (1.0 - t)), stream);
    }
    const double cur = top_at(tn);
    best = std::max(best, opt.bridge_correction ? bridge_max(prev, cur, tn - t, 1.0, stream) : cur);
    prev = cur;
    t = tn;
  }
  return best;
}

double sample_matrix_running_max(const DriftVector& mu, double t, RngStream& stream, const PathOptions& opt) {
  if (mu.empty()) throw ParameterError("sample_matrix_running_max: need at least one drift");
  if (!(t > 0.0)) throw DomainError("sample_matrix_running_max: t must be positive");
  const auto n = static_cast<int>(mu.size());
  const double h0 = opt.step > 0.0 ? opt.step : t / 2048.0;
  const auto steps = static_cast<long>(std::ceil(t / h0 - 1e-9));
  const double h = t / static_cast<double>(steps);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  double prev = 0.0, best = 0.0;
  for (long k = 1; k <= steps; ++k) {
    add_gue_increment(H, std::sqrt(h), stream);
    const double s = h * static_cast<double>(k);
    Eigen::MatrixXcd X = H;
    for (int i = 0; i < n; ++i) X(i, i) += s * mu[static_cast<std::size_t>(i)];
    const double cur = top_eigenvalue(X);
    best = std::max(best, opt.bridge_correction ? bridge_max(prev, cur, h, 1.0, stream) : cur);
    prev = cur;
  }
  return best;
}

}  // namespace edgelaw
