#include "edgelaw/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgelaw/errors.hpp"
#include "edgelaw/numerics.hpp"
#include "edgelaw/parallel.hpp"

namespace edgelaw {

Eigen::MatrixXd BlockKernel::sample(int i, const std::vector<double>& x, int j, const std::vector<double>& y) const {
  Eigen::MatrixXd m;
  if (block) {
    m = block(i, x, j, y);
  } else {
    m.resize(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(y.size()));
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b)
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = eval(i, x[a], j, y[b]);
  }
  if (conjugator) {
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double ca = conjugator(i, x[a]);
      if (!(ca > 0.0)) throw ParameterError("conjugation factor must be positive");
      for (std::size_t b = 0; b < y.size(); ++b) {
        const double cb = conjugator(j, y[b]);
        if (!(cb > 0.0)) throw ParameterError("conjugation factor must be positive");
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *= ca / cb;
      }
    }
  }
  return m;
}

BlockKernel single_slot(double a, double length, BlockKernel::BlockFn block) {
  BlockKernel K;
  K.k = 1;
  K.times = {0.0};
  K.thresholds = {a};
  K.lengths = {length};
  K.block = std::move(block);
  return K;
}

namespace {

struct Grid {
  std::vector<std::vector<double>> x, w;
};

Grid make_grid(const BlockKernel& K, int n) {
  if (n < 8) throw ParameterError("Fredholm determinant: need at least 8 nodes per slot");
  if (K.k < 1 || static_cast<int>(K.thresholds.size()) != K.k || static_cast<int>(K.lengths.size()) != K.k)
    throw ParameterError("Fredholm determinant: slot data does not match slot count");
  Grid g;
  for (int i = 0; i < K.k; ++i) {
    double bp = std::nan("");
    if (static_cast<int>(K.breakpoints.size()) > i) bp = K.breakpoints[static_cast<std::size_t>(i)];
    SemiInfiniteRule r = semi_infinite_rule(K.thresholds[static_cast<std::size_t>(i)],
                                            K.lengths[static_cast<std::size_t>(i)], n, bp);
    g.x.push_back(std::move(r.nodes));
    g.w.push_back(std::move(r.weights));
  }
  return g;
}

// W^{1/2} K W^{1/2} over all slots.
Eigen::MatrixXd weighted_matrix(const BlockKernel& K, const Grid& g) {
  std::vector<Eigen::Index> off{0};
  for (const auto& x : g.x) off.push_back(off.back() + static_cast<Eigen::Index>(x.size()));
  Eigen::MatrixXd A(off.back(), off.back());
  const int k = K.k;
  parallel_for(static_cast<std::size_t>(k * k), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / k, j = static_cast<int>(idx) % k;
    const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
    Eigen::MatrixXd b = K.sample(i, g.x[si], j, g.x[sj]);
    for (Eigen::Index a = 0; a < b.rows(); ++a)
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        const double v = b(a, c);
        if (!std::isfinite(v)) {
          std::ostringstream os;
          os << "non-finite kernel value at (slot " << i << ", x=" << g.x[si][static_cast<std::size_t>(a)]
             << "; slot " << j << ", y=" << g.x[sj][static_cast<std::size_t>(c)] << ")";
          throw EvaluationError(os.str());
        }
        A(off[si] + a, off[sj] + c) =
            std::sqrt(g.w[si][static_cast<std::size_t>(a)] * g.w[sj][static_cast<std::size_t>(c)]) * v;
      }
  });
  return A;
}

double max_length(const BlockKernel& K) { return *std::max_element(K.lengths.begin(), K.lengths.end()); }

}  // namespace

DetResult det_nystrom(const BlockKernel& K, int nodes_per_slot) {
  const Grid g = make_grid(K, nodes_per_slot);
  Eigen::MatrixXd A = weighted_matrix(K, g);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(A.rows(), A.cols()) - A;
  DetResult r;
  r.value = M.partialPivLu().determinant();
  r.resolution = nodes_per_slot;
  r.truncation = max_length(K);
  r.history.emplace_back(nodes_per_slot, r.value);
  return r;
}

DetResult det_series(const BlockKernel& K, int max_order, int nodes_per_slot) {
  if (max_order < 0 || max_order > 10) throw ParameterError("det_series: max_order must be in [0, 10]");
  const Grid g = make_grid(K, nodes_per_slot);
  const Eigen::MatrixXd A = weighted_matrix(K, g);
  // power traces, then elementary symmetric functions by Newton's identities
  std::vector<double> p(static_cast<std::size_t>(max_order) + 1, 0.0);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  for (int k = 1; k <= max_order; ++k) {
    P = P * A;
    p[static_cast<std::size_t>(k)] = P.trace();
  }
  std::vector<double> e(static_cast<std::size_t>(max_order) + 1, 0.0);
  e[0] = 1.0;
  DetResult r;
  r.value = 1.0;
  for (int k = 1; k <= max_order; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i)
      s += ((i % 2) ? 1.0 : -1.0) * e[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(k)] = s / k;
    const double term = ((k % 2) ? -1.0 : 1.0) * e[static_cast<std::size_t>(k)];
    r.value += term;
    r.history.emplace_back(k, r.value);
  }
  r.resolution = nodes_per_slot;
  r.truncation = max_length(K);
  r.last_term = max_order > 0 ? std::abs(e[static_cast<std::size_t>(max_order)]) : 0.0;
  r.error_estimate = r.last_term;
  if (r.last_term > 1e-6) {
    r.converged = false;
    r.warning = "series not converged: last term " + std::to_string(r.last_term);
  }
  return r;
}

DetResult det_adaptive(BlockKernel K, const DetOptions& opt) {
  std::vector<std::pair<int, double>> hist;
  int n = opt.initial_nodes;
  double err = 0.0;
  bool converged = false;
  DetResult cur;
  for (int step = 0; step <= opt.max_length_steps; ++step) {
    cur = det_nystrom(K, n);
    hist.push_back(cur.history.back());
    converged = false;
    while (2 * n <= opt.max_nodes) {
      DetResult next = det_nystrom(K, 2 * n);
      hist.push_back(next.history.back());
      err = std::abs(next.value - cur.value);
      n *= 2;
      cur = next;
      if (err < opt.tol) {
        converged = true;
        break;
      }
    }
    if (!converged || !opt.check_truncation) break;
    BlockKernel longer = K;
    for (auto& L : longer.lengths) L *= opt.length_factor;
    const int nl = 8 * static_cast<int>(std::ceil(n * opt.length_factor / 8.0));
    DetResult check = det_nystrom(longer, nl);
    hist.push_back(check.history.back());
    const double terr = std::abs(check.value - cur.value);
    err = std::max(err, terr);
    if (terr < opt.tol) break;
    // truncation too short: continue from the longer domain
    K = longer;
    n = nl;
    converged = false;
  }
  cur.history = hist;
  cur.error_estimate = err;
  cur.converged = converged;
  cur.truncation = max_length(K);
  if (!converged) cur.warning = "determinant did not converge to tolerance; error estimate " + std::to_string(err);
  return cur;
}

BlockKernel apply_conjugation(const BlockKernel& K, std::function<double(int, double)> c) {
  BlockKernel out = K;
  if (K.conjugator) {
    auto prev = K.conjugator;
    out.conjugator = [prev, c](int i, double x) { return prev(i, x) * c(i, x); };
  } else {
    out.conjugator = std::move(c);
  }
  return out;
}

std::function<double(int, double)> exponential_conjugator(double C) {
  return [C](int i, double x) { return std::exp(-(C - (i + 1)) * std::abs(x)); };
}

double det_ratio(const std::vector<double>& beta, double a) {
  const auto n = static_cast<Eigen::Index>(beta.size());
  if (n == 0) throw ParameterError("det_ratio: empty rate vector");
  if (a < 0.0) throw DomainError("det_ratio: a must be nonnegative");
  double scale = 0.0;
  for (double b : beta) {
    if (!(b > 0.0)) throw DomainError("det_ratio: rates must be positive");
    scale = std::max(scale, b);
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(beta[static_cast<std::size_t>(i)] - beta[static_cast<std::size_t>(j)]) <= 1e-12 * scale)
        throw DomainError("det_ratio: repeated rates make the Vandermonde matrix singular; perturb them");
  Eigen::MatrixXd N(n, n), D(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double b = beta[static_cast<std::size_t>(i)] / scale;
    const double e = std::exp(-2.0 * beta[static_cast<std::size_t>(i)] * a);
    double pw = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      // columns scaled by scale^{-(j-1)}, which cancels in the ratio
      const double neg = (j % 2) ? -pw : pw;
      D(i, j) = pw;
      N(i, j) = pw - e * neg;
      pw *= b;
    }
  }
  return N.partialPivLu().determinant() / D.partialPivLu().determinant();
}

}  // namespace edgelaw
